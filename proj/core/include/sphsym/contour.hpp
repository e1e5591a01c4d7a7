#pragma once

#include <vector>

namespace sphsym
{
/// Scalar samples on a regular grid with spacing h; sample (i, j, k) sits at
/// (i h, j h, k h) and is stored at (k ny + j) nx + i.
struct ScalarGrid final
{
        int nx = 0;
        int ny = 0;
        int nz = 1;
        double h = 1;
        std::vector<float> values;

        float at(int i, int j, int k = 0) const
        {
                return values[(static_cast<std::size_t>(k) * ny + j) * nx + i];
        }
};

/// Separable [1 2 1] / 4 filter along every axis, applied `passes` times.
/// Values beyond the border read as zero.
ScalarGrid binomial_smooth(const ScalarGrid& g, int passes);

/// Length of the marching-squares contour {f = level} of a 2D grid. Saddle
/// cells are resolved by the cell-centre average.
double contour_length(const ScalarGrid& g, double level);

/// Area of the {f = level} isosurface of a 3D grid, extracted with marching
/// tetrahedra on the six-tetrahedron split of each cube.
double isosurface_area(const ScalarGrid& g, double level);
}
