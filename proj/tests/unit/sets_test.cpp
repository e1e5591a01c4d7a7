#include "../support/builders.hpp"

#include <sphsym/error.hpp>
#include <sphsym/parallel.hpp>
#include <sphsym/voxel_io.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace sphsym;
using namespace sphsym::testing;

TEST(DirectionField, PiecewiseRotationIsLeftContinuous)
{
        const DirectionField d = DirectionField::piecewise_rotation(2, 0, 2, {1.0}, {0.0, kPi / 2});
        EXPECT_NEAR(geodesic_distance(d(1.0), kE1), 0, 1e-12);
        EXPECT_NEAR(geodesic_distance(d.right(1.0), kE2), 0, 1e-12);
        EXPECT_NEAR(d.angle(1.5), kPi / 2, 1e-12);
        ASSERT_EQ(d.breaks().size(), 1u);
        EXPECT_EQ(d.breaks()[0], 1.0);
}

TEST(DirectionField, CantorFlowFollowsStaircase)
{
        const CantorComponent c(1, 2, 0.6, 8);
        const DirectionField d = DirectionField::cantor_flow(2, 0, 3, c, 0.5, 1, 2);
        EXPECT_NEAR(d.angle(0.5), 0.0, 1e-15);
        EXPECT_NEAR(d.angle(1.5), 0.5 * 0.3, 1e-12);
        EXPECT_NEAR(d.angle(2.5), 0.5 * 0.6, 1e-12);
        EXPECT_NEAR(d.cantor_coefficient(1.5), 0.5 * 0.6, 1e-15);
        EXPECT_EQ(d.cantor_coefficient(2.5), 0.0);
        EXPECT_EQ(d.angle_derivative(1.5), 0.0);
        ASSERT_NE(d.flow_staircase(), nullptr);
}

TEST(DirectionField, FourierRandomIsSeeded)
{
        const DirectionField a = DirectionField::fourier_random(3, 0, 1, 42, 0.5);
        const DirectionField b = DirectionField::fourier_random(3, 0, 1, 42, 0.5);
        const DirectionField c = DirectionField::fourier_random(3, 0, 1, 43, 0.5);
        for (double r : {0.0, 0.3, 0.9})
        {
                EXPECT_EQ(a(r), b(r));
                EXPECT_NEAR(norm(a(r)), 1.0, 1e-12);
        }
        EXPECT_NE(a(0.5), c(0.5));
        EXPECT_EQ(DirectionField::fourier_random(3, 0, 1, 1, 0.0).oscillation(), 0.0);
}

TEST(DirectionField, TransformAndJoin)
{
        const DirectionField d = DirectionField::constant(3, 0, 2);
        const Mat3 R = axis_rotation(kE3, 0.4);
        const DirectionField j = join_fields(d, d.transformed(R), 1.0);
        EXPECT_NEAR(geodesic_distance(j(0.5), kE1), 0, 1e-12);
        EXPECT_NEAR(geodesic_distance(j(1.5), kE1), 0.4, 1e-12);
        EXPECT_NEAR(j.oscillation(), 0.4, 1e-12);
        EXPECT_EQ(j.clipped(1.2, 1.8).r_min(), 1.2);
}

TEST(DirectionField, RejectsInvalidPieces)
{
        EXPECT_THROW(DirectionField::piecewise_rotation(2, 0, 1, {0.5}, {0.0}), InvalidArgument);
        EXPECT_THROW(DirectionField(2, {{0, 1, ConstantDirection{kE3}, Mat3::identity()}}), InvalidArgument);
        EXPECT_THROW(DirectionField(3, {{0, 1, ConstantDirection{kE1}, Mat3::identity()},
                                        {1.5, 2, ConstantDirection{kE1}, Mat3::identity()}}),
                     InvalidArgument);
        EXPECT_THROW(DirectionField::constant(4, 0, 1), InvalidArgument);
}

TEST(CapFieldSet, Membership)
{
        const auto p = sector(2, 1, 2, kPi / 4);
        const CapFieldSet f = symmetral_from_profile(p);
        EXPECT_TRUE(f.contains({1.5, 0, 0}));
        EXPECT_TRUE(f.contains({1.2, 1.0, 0}));
        EXPECT_FALSE(f.contains({1.0, 1.2, 0}));
        EXPECT_FALSE(f.contains({0.5, 0, 0}));
        EXPECT_FALSE(f.contains({2.5, 0, 0}));
        const CapFieldSet ball = symmetral_from_profile(sector(3, 0, 1, kPi));
        EXPECT_TRUE(ball.contains({0, 0, 0}));
        EXPECT_TRUE(ball.contains({-0.5, 0.2, 0.1}));
}

TEST(CapFieldSet, GlueRotatesOuterPart)
{
        const auto p = sector(2, 1, 3, 0.3);
        const CapFieldSet f = symmetral_from_profile(p);
        const CapFieldSet g = glue(f, f, 2.0, planar_rotation(kPi));
        EXPECT_TRUE(g.contains({1.5, 0, 0}));
        EXPECT_TRUE(g.contains({-2.5, 0, 0}));
        EXPECT_FALSE(g.contains({2.5, 0, 0}));
        EXPECT_THROW(glue(f, f, 3.0, planar_rotation(1)), InvalidArgument);
        EXPECT_THROW(glue(f, symmetral_from_profile(sector(2, 1, 3, 0.4)), 2.0, planar_rotation(1)), InvalidArgument);
}

TEST(VoxelSet, RasterVolumeConverges)
{
        const CapFieldSet disc = symmetral_from_profile(sector(2, 0, 1, kPi));
        const VoxelSet v = rasterize(disc, 1.0 / 256);
        EXPECT_NEAR(v.volume(), kPi, 0.01);
        const CapFieldSet half = symmetral_from_profile(sector(3, 0, 1, kPi / 2));
        EXPECT_NEAR(rasterize(half, 1.0 / 48).volume(), 2 * kPi / 3, 0.03);
}

TEST(VoxelSet, SliceMeasureAndCentre)
{
        const auto p = sector(3, 0, 1, kPi / 3);
        const CapFieldSet e(p, DirectionField::constant(3, 0, 1, kE2));
        const VoxelSet v = rasterize(e, 1.0 / 64);
        EXPECT_NEAR(slice_measure(v, 0.7, 8192), cap_area(Dimension(3), 0.7, kPi / 3), 0.03);
        EXPECT_NEAR(geodesic_distance(slice_center(v, 0.7), kE2), 0, 0.02);
        EXPECT_EQ(slice_measure(v, 0, 64), 0.0);
        EXPECT_EQ(slice_center(VoxelSet(3, 0.1, {4, 4, 4}), 0.1), kE1);
}

TEST(VoxelSet, ParallelRasterIsDeterministic)
{
        const CapFieldSet e = random_capfield(smooth(3, 0.2, 1, 1.0, 0.3, 4.0, 65), 3, 0.6);
        set_thread_count(1);
        const VoxelSet a = rasterize(e, 1.0 / 32);
        set_thread_count(4);
        const VoxelSet b = rasterize(e, 1.0 / 32);
        set_thread_count(1);
        EXPECT_EQ(a.occupancy(), b.occupancy());
        EXPECT_EQ(symmetric_difference_volume(a, b), 0.0);
}

TEST(VoxelIo, RoundTrip)
{
        for (int n : {2, 3})
        {
                const VoxelSet v = rasterize(random_capfield(smooth(n, 0.2, 1, 1.0, 0.3, 4.0, 33), 5, 0.5), 1.0 / 16);
                std::stringstream s;
                write_voxels(s, v);
                const VoxelSet w = read_voxels(s);
                EXPECT_TRUE(v.same_geometry(w));
                EXPECT_EQ(v.occupancy(), w.occupancy());
        }
        std::stringstream bad("P5\n3 3\n1\n");
        EXPECT_THROW(read_voxels(bad), InvalidArgument);
}
