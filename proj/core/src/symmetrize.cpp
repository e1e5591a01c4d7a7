#include <sphsym/error.hpp>
#include <sphsym/parallel.hpp>
#include <sphsym/symmetrize.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace sphsym
{
namespace
{
// Shells r_i = i h, i = 0..count-1, that stay inside a grid of half-width `extent`.
RadialGrid shell_grid(double h, double extent)
{
        const int last = std::max(1, static_cast<int>(std::floor(extent / h)) - 1);
        return RadialGrid(0, last * h, last + 1);
}

// Plane coordinates (a, b) = (x1, x_axis) and the remaining coordinate x'.
struct PlaneAxes
{
        int b;
        int prime;
};

PlaneAxes plane_axes(int axis)
{
        return {axis - 1, axis == 2 ? 2 : 1};
}
}

SphericalSymmetral spherical_symmetrize(const VoxelSet& v, int m)
{
        const int n = v.dimension();
        const Dimension dim(n);
        const RadialGrid grid = shell_grid(v.spacing(), v.extent());
        std::vector<double> alpha(grid.count());
        const double full = unit_sphere_area(dim);
        parallel_for(alpha.size(),
                     [&](std::size_t i)
                     {
                             const double r = grid.node(static_cast<int>(i));
                             if (i == 0)
                             {
                                     alpha[i] = v.occupied_at({0, 0, 0}) ? kPi : 0.0;
                                     return;
                             }
                             alpha[i] = alpha_from_xi(dim, full * slice_fraction(v, r, m));
                     });
        AlphaSpec spec;
        spec.ac_samples = std::move(alpha);
        auto profile = std::make_shared<const Profile>(make_profile(dim, grid, std::move(spec)));
        return {profile, symmetral_from_profile(profile)};
}

CircularProfile CircularProfile::planar(Profile p)
{
        if (p.dimension().value() != 2)
        {
                invalid_argument("circular profile: planar layers need n = 2");
        }
        CircularProfile c;
        c.n = 2;
        c.axis = 2;
        c.layers.push_back(std::move(p));
        return c;
}

double CircularProfile::ell(int layer, double r) const
{
        const Profile& p = layers.at(layer);
        if (!p.grid().contains(r))
        {
                return 0;
        }
        return 2 * r * p.alpha(r);
}

CircularSymmetral circular_symmetrize(const VoxelSet& v, int axis, int m)
{
        const int n = v.dimension();
        if (n == 2)
        {
                if (axis != 2)
                {
                        invalid_argument("circular symmetrisation: n = 2 only admits the axes (1, 2)");
                }
                SphericalSymmetral s = spherical_symmetrize(v, m);
                return {CircularProfile::planar(*s.profile), rasterize_like(s.symmetral, v)};
        }
        if (axis != 2 && axis != 3)
        {
                invalid_argument("circular symmetrisation: axes must be (1, 2) or (1, 3), got (1, "
                                 + std::to_string(axis) + ")");
        }
        const PlaneAxes ax = plane_axes(axis);
        const auto& d = v.dims();
        const double h = v.spacing();
        const RadialGrid grid = shell_grid(h, 0.5 * std::min(d[0], d[ax.b]) * h);
        const int layers = d[ax.prime];

        std::vector<double> cos_t(m);
        std::vector<double> sin_t(m);
        for (int s = 0; s < m; ++s)
        {
                const double t = 2 * kPi * (s + 0.5) / m;
                cos_t[s] = std::cos(t);
                sin_t[s] = std::sin(t);
        }

        std::vector<std::vector<double>> alpha(layers, std::vector<double>(grid.count()));
        parallel_for(static_cast<std::size_t>(layers),
                     [&](std::size_t layer)
                     {
                             Vec3 x;
                             x[ax.prime] = (layer + 0.5 - 0.5 * layers) * h;
                             for (int i = 0; i < grid.count(); ++i)
                             {
                                     const double r = grid.node(i);
                                     if (i == 0)
                                     {
                                             x[0] = 0;
                                             x[ax.b] = 0;
                                             alpha[layer][i] = v.occupied_at(x) ? kPi : 0.0;
                                             continue;
                                     }
                                     int hits = 0;
                                     for (int s = 0; s < m; ++s)
                                     {
                                             x[0] = r * cos_t[s];
                                             x[ax.b] = r * sin_t[s];
                                             hits += v.occupied_at(x);
                                     }
                                     alpha[layer][i] = kPi * hits / m;
                             }
                     });

        CircularProfile profile;
        profile.n = 3;
        profile.axis = axis;
        profile.layer_spacing = h;
        profile.layer_origin = (0.5 - 0.5 * layers) * h;
        profile.layers.reserve(layers);
        for (auto& a : alpha)
        {
                AlphaSpec spec;
                spec.ac_samples = std::move(a);
                profile.layers.push_back(make_profile(Dimension(2), grid, std::move(spec)));
        }

        VoxelSet out(3, h, d);
        parallel_for(static_cast<std::size_t>(d[2]),
                     [&](std::size_t kk)
                     {
                             const int k = static_cast<int>(kk);
                             for (int j = 0; j < d[1]; ++j)
                             {
                                     for (int i = 0; i < d[0]; ++i)
                                     {
                                             const Vec3 c = out.center(i, j, k);
                                             const std::array<int, 3> idx{i, j, k};
                                             const Profile& p = profile.layers[idx[ax.prime]];
                                             const double a = c[0];
                                             const double b = c[ax.b];
                                             const double rho = std::hypot(a, b);
                                             if (rho > grid.r_max())
                                             {
                                                     continue;
                                             }
                                             if (std::atan2(std::fabs(b), a) < p.alpha(rho))
                                             {
                                                     out.set(i, j, k, true);
                                             }
                                     }
                             }
                     });
        return {std::move(profile), std::move(out)};
}

VoxelSet iterate_circular(const CapFieldSet& e, double h, int m)
{
        if (e.dimension() != 3)
        {
                invalid_argument("iterate_circular: needs n = 3");
        }
        const VoxelSet first = circular_symmetrize(rasterize(e, h), 2, m).set;
        return circular_symmetrize(first, 3, m).set;
}
}
