#include "../support/builders.hpp"

#include <sphsym/error.hpp>
#include <sphsym/perimeter.hpp>
#include <sphsym/symmetrize.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace sphsym;
using namespace sphsym::testing;

namespace
{
VoxelSet square(double h, double half_side)
{
        VoxelSet v = VoxelSet::covering(2, h, 1.5 * half_side);
        const auto& d = v.dims();
        for (int j = 0; j < d[1]; ++j)
        {
                for (int i = 0; i < d[0]; ++i)
                {
                        const Vec3 c = v.center(i, j, 0);
                        v.set(i, j, 0, std::fabs(c.x) < half_side && std::fabs(c.y) < half_side);
                }
        }
        return v;
}

// Angle of the centred arc with the same length as the circle of radius r inside the square.
double square_alpha(double r, double s)
{
        if (r <= s)
        {
                return kPi;
        }
        if (r >= s * std::sqrt(2.0))
        {
                return 0;
        }
        return 0.5 * (2 * kPi - 8 * std::acos(s / r));
}
}

TEST(Symmetrize, BallProfileIsFull)
{
        const double h = 1.0 / 32;
        const VoxelSet v = rasterize(symmetral_from_profile(sector(3, 0, 0.8, kPi)), h);
        const SphericalSymmetral s = spherical_symmetrize(v, 2048);
        for (int i = 0; i < s.profile->grid().count(); ++i)
        {
                const double r = s.profile->grid().node(i);
                if (r < 0.8 - 2 * h)
                {
                        EXPECT_EQ(s.profile->alpha(r), kPi) << r;
                }
                else if (r > 0.8 + 2 * h)
                {
                        EXPECT_EQ(s.profile->alpha(r), 0.0) << r;
                }
        }
}

TEST(Symmetrize, SquareSlicesMatchArcOracle)
{
        const double h = 1.0 / 256;
        const double side = 0.5;
        const VoxelSet v = square(h, side);
        const SphericalSymmetral s = spherical_symmetrize(v, 8192);
        for (double r : {0.3, 0.55, 0.6, 0.65, 0.68})
        {
                EXPECT_NEAR(s.profile->alpha(r), square_alpha(r, side), 0.03) << r;
        }
        // Centred arcs: the symmetral keeps every slice measure.
        const VoxelSet f = rasterize_like(s.symmetral, v);
        EXPECT_NEAR(f.volume(), v.volume(), 0.01);
}

TEST(Symmetrize, SymmetralIsIdempotent)
{
        const double h = 1.0 / 64;
        const VoxelSet v = rasterize(symmetral_from_profile(smooth(2, 0.1, 0.9, 1.0, 0.5, 5.0, 65)), h);
        const SphericalSymmetral s = spherical_symmetrize(v, 4096);
        const VoxelSet again = rasterize_like(s.symmetral, v);
        EXPECT_LE(symmetric_difference_volume(v, again), 4 * h * 2 * kPi);
}

TEST(Symmetrize, PlanarCircularEqualsSpherical)
{
        const VoxelSet v = square(1.0 / 64, 0.5);
        const CircularSymmetral c = circular_symmetrize(v, 2, 2048);
        const SphericalSymmetral s = spherical_symmetrize(v, 2048);
        ASSERT_EQ(c.profile.layers.size(), 1u);
        EXPECT_EQ(c.profile.layers[0].alpha_samples(), s.profile->alpha_samples());
        EXPECT_NEAR(perimeter_circular_symmetral(c.profile).total, perimeter_symmetral(*s.profile).total, 1e-9);
        EXPECT_THROW(circular_symmetrize(v, 3), InvalidArgument);
}

TEST(Symmetrize, CircularKeepsArcSymmetricSet)
{
        // F_v with axis e1 meets every circle of the (e1, e2) planes in an arc centred on e1.
        const double h = 1.0 / 32;
        const VoxelSet v = rasterize(symmetral_from_profile(smooth(3, 0.1, 0.9, 1.2, 0.4, 4.0, 65)), h);
        const CircularSymmetral c = circular_symmetrize(v, 2, 2048);
        EXPECT_EQ(c.profile.layers.size(), static_cast<std::size_t>(v.dims()[2]));
        EXPECT_LE(symmetric_difference_volume(v, c.set), 6 * h * 4 * kPi * 0.81);
}

TEST(Symmetrize, TorusCircularProfile)
{
        // Solid torus around the x3 axis; circles of the (e1, e2) planes are concentric with it.
        const double h = 1.0 / 48;
        const double big = 0.6;
        const double small = 0.25;
        VoxelSet v = VoxelSet::covering(3, h, big + small + 0.1);
        const auto& d = v.dims();
        for (int k = 0; k < d[2]; ++k)
        {
                for (int j = 0; j < d[1]; ++j)
                {
                        for (int i = 0; i < d[0]; ++i)
                        {
                                const Vec3 c = v.center(i, j, k);
                                const double q = std::hypot(c.x, c.y) - big;
                                v.set(i, j, k, q * q + c.z * c.z < small * small);
                        }
                }
        }
        const CircularSymmetral c = circular_symmetrize(v, 2, 1024);
        const int mid = d[2] / 2;
        const Profile& layer = c.profile.layers[mid];
        const double x = c.profile.x_prime(mid);
        const double reach = std::sqrt(small * small - x * x);
        EXPECT_NEAR(layer.alpha(big), kPi, 1e-9);
        EXPECT_EQ(layer.alpha(big - reach - 3 * h), 0.0);
        EXPECT_EQ(layer.alpha(big + reach + 3 * h), 0.0);
        EXPECT_NEAR(c.profile.ell(mid, big), 2 * kPi * big, 1e-9);
}

TEST(Symmetrize, IteratedCircularRecoversSymmetral)
{
        const double h = 1.0 / 32;
        const auto p = smooth(3, 0.2, 0.9, 1.0, 0.3, 4.0, 65);
        const CapFieldSet tilted(p, DirectionField::constant(3, 0.2, 0.9, normalized(Vec3{0.3, -0.5, 0.8})));
        const VoxelSet got = iterate_circular(tilted, h, 1024);
        const VoxelSet want = rasterize_like(symmetral_from_profile(p), got);
        const double area = perimeter_symmetral(*p).total;
        EXPECT_LE(symmetric_difference_volume(got, want), 20 * h * area);
}
