#pragma once

#include "sets.hpp"

#include <array>
#include <memory>
#include <vector>

namespace sphsym
{
/// Measured profile of a voxel set together with its spherical symmetral.
struct SphericalSymmetral final
{
        std::shared_ptr<const Profile> profile;
        CapFieldSet symmetral;
};

/// Shells r_i = i h (h the voxel spacing) up to the grid extent; the slice measure
/// of each shell is sampled with m directions and mapped to alpha. The centre
/// shell takes alpha = pi when the voxel at the origin is occupied.
SphericalSymmetral spherical_symmetrize(const VoxelSet& v, int m = 4096);

/// Circular distribution l(r, x') = 2 r alpha(r, x'), stored as one planar
/// (n = 2) angle profile per x' layer. n = 2 has a single layer.
struct CircularProfile final
{
        int n = 2;
        /// Canonical axis pair (1, axis) spanning the circle planes.
        int axis = 2;
        /// x' of layer 0 and the layer spacing (n = 3).
        double layer_origin = 0;
        double layer_spacing = 1;
        std::vector<Profile> layers;

        static CircularProfile planar(Profile p);

        double x_prime(int layer) const
        {
                return layer_origin + layer * layer_spacing;
        }
        /// l = 2 r alpha on the given layer.
        double ell(int layer, double r) const;
};

struct CircularSymmetral final
{
        CircularProfile profile;
        VoxelSet set;
};

/// Circular symmetrisation with respect to the canonical axes (1, axis): every
/// circle {|(x1, x_axis)| = r} inside a plane x' = const is replaced by the arc of
/// equal length centred on +e1. n = 2 requires axis = 2 and coincides with
/// spherical symmetrisation.
CircularSymmetral circular_symmetrize(const VoxelSet& v, int axis = 2, int m = 4096);

/// Rasterises E (n = 3) at spacing h, then applies circular symmetrisation with
/// respect to (e1, e2) and afterwards (e1, e3).
VoxelSet iterate_circular(const CapFieldSet& e, double h, int m = 4096);
}
