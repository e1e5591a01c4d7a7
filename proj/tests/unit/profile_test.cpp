#include <sphsym/error.hpp>
#include <sphsym/profile.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace sphsym;

TEST(Cantor, UnitStaircaseValues)
{
        EXPECT_DOUBLE_EQ(cantor::unit(0), 0.0);
        EXPECT_DOUBLE_EQ(cantor::unit(1), 1.0);
        EXPECT_DOUBLE_EQ(cantor::unit(0.5), 0.5);
        EXPECT_DOUBLE_EQ(cantor::unit(0.25), 1.0 / 3);
        EXPECT_DOUBLE_EQ(cantor::unit(1.0 / 9 + 1e-12), 0.25);
        EXPECT_NEAR(cantor::unit_integral(1), 0.5, 1e-12);
}

TEST(Cantor, GapsAndBreakpoints)
{
        const auto gaps = cantor::unit_gaps(2);
        ASSERT_EQ(gaps.size(), 3u);
        EXPECT_NEAR(gaps[0].first, 1.0 / 9, 1e-15);
        EXPECT_NEAR(gaps[1].first, 1.0 / 3, 1e-15);
        EXPECT_NEAR(gaps[2].second, 8.0 / 9, 1e-15);
        const CantorComponent c(1, 2, 0.4, 6);
        const auto bp = c.step_breakpoints(3);
        EXPECT_EQ(bp.size(), 8u);
        EXPECT_EQ(bp.back(), 2.0);
        EXPECT_NEAR(c.step_value(3, 1.5), 0.2, 1e-15);
        EXPECT_NEAR(c.step_value(3, 2.0), 0.4, 1e-15);
}

TEST(Cantor, StepApproximantConvergesUniformly)
{
        const CantorComponent c(0, 1, 1, 8);
        for (int k : {2, 4, 6, 8})
        {
                double worst = 0;
                for (int i = 0; i <= 999; ++i)
                {
                        const double r = i / 999.0;
                        worst = std::max(worst, std::fabs(c.step_value(k, r) - c(r)));
                }
                EXPECT_LE(worst, std::ldexp(1.0, -k) + 1e-12) << "k=" << k;
        }
}

TEST(Cantor, MeasureIntegrals)
{
        const CantorComponent c(1, 4, 2, 8);
        EXPECT_NEAR(c.measure(0, 5), 2, 1e-15);
        EXPECT_NEAR(c.variation(1, 2.5), 1, 1e-15);
        // Symmetric measure: the first moment is the midpoint times the mass.
        EXPECT_NEAR(c.first_moment(0, 5), 2 * 2.5, 1e-12);
        EXPECT_NEAR(c.integrate([](double r) { return r; }, 0, 5), 5.0, 1e-9);
        // Second moment: mass 2 times (variance 9/8 + mean^2) of 1 + 3 U, U Cantor-distributed.
        EXPECT_NEAR(c.integrate([](double r) { return r * r; }, 1, 4), 2 * (9.0 / 8 + 6.25), 1e-9);
}

TEST(BV, LeftContinuousRepresentative)
{
        const RadialGrid g(0, 2, 3);
        const BVDecomposition f(g, {0, 0, 0}, {{1.0, 0.0, 1.0}}, std::nullopt);
        EXPECT_EQ(f(1.0), 0.0);
        EXPECT_EQ(f.right_limit(1.0), 1.0);
        EXPECT_EQ(f(1.5), 1.0);
}

TEST(BV, VariationDecomposition)
{
        const RadialGrid g(0, 1, 11);
        std::vector<double> ac;
        for (int i = 0; i < g.count(); ++i)
        {
                ac.push_back(0.5 + g.node(i));
        }
        const BVDecomposition f = BVDecomposition::from_increments(g, ac, {{0.35, 0.5}}, CantorComponent(0.6, 0.9, 1.0, 8));
        const RadialRange all = RadialRange::closed(0, 1);
        EXPECT_NEAR(f.ac_variation(all), 1.0, 1e-12);
        EXPECT_NEAR(f.jump_variation(all), 0.5, 1e-15);
        EXPECT_NEAR(f.cantor_variation(all), 1.0, 1e-15);
        EXPECT_NEAR(total_variation(f, all), 2.5, 1e-12);
        EXPECT_NEAR(f.jump_variation(RadialRange::open(0.35, 1)), 0.0, 1e-15);
        EXPECT_FALSE(f.is_sobolev_on(0, 1));
        EXPECT_TRUE(f.is_sobolev_on(0.36, 0.59));
        EXPECT_NEAR(f.partition_variation(0, 1, 4096), 2.5, 1e-3);
        EXPECT_LE(f.partition_variation(0, 1, 4096), 2.5 + 1e-12);
}

TEST(BV, RejectsInconsistentJumps)
{
        const RadialGrid g(0, 1, 5);
        EXPECT_THROW(BVDecomposition(g, {0, 0, 0, 0, 0}, {{0.5, 0.2, 1.0}}, std::nullopt), InvalidArgument);
        EXPECT_THROW(BVDecomposition(g, {0, 0, 0, 0, 0}, {{1.0, 0.0, 1.0}}, std::nullopt), InvalidArgument);
        EXPECT_THROW(BVDecomposition(g, {0, 0, 0}, {}, std::nullopt), InvalidArgument);
        EXPECT_THROW(RadialGrid(1, 1, 4), InvalidArgument);
}

TEST(BV, DetectJumpsFindsStep)
{
        const RadialGrid g(0, 1, 101);
        std::vector<double> s;
        for (int i = 0; i < g.count(); ++i)
        {
                s.push_back(0.1 * g.node(i) + (g.node(i) > 0.5 ? 1.0 : 0.0));
        }
        const BVDecomposition f = detect_jumps(g, s);
        ASSERT_EQ(f.jumps().size(), 1u);
        EXPECT_NEAR(f.jumps()[0].size(), 1.0, 0.01);
        for (int i = 0; i < g.count(); ++i)
        {
                EXPECT_NEAR(f(g.node(i)), s[i], 1e-9);
        }
}

TEST(Profile, XiAndSliceMeasure)
{
        const Profile p = constant_profile(Dimension(3), RadialGrid(1, 2, 5), kPi / 3);
        EXPECT_NEAR(p.xi(1.5), kPi, 1e-14);
        EXPECT_NEAR(p.v(2), 4 * kPi, 1e-13);
        EXPECT_EQ(p.alpha(0.5), 0.0);
        EXPECT_EQ(p.xi(2.5), 0.0);
}

TEST(Profile, RescaledDerivative)
{
        const Profile p2 = sampled_profile(Dimension(2), RadialGrid(1, 2, 11), [](double r) { return r - 0.5; });
        EXPECT_NEAR(rescaled_derivative(p2, 1.5), 3.0, 1e-12);
        const Profile p3
                = sampled_profile(Dimension(3), RadialGrid(0.5, 1.5, 11), [](double r) { return kPi / 4 + 0.1 * (r - 1); });
        EXPECT_NEAR(rescaled_derivative(p3, 1.0), 2 * kPi * std::sin(kPi / 4) * 0.1, 1e-12);
}

TEST(Profile, DerivativeVanishesOnDegenerateShells)
{
        const Profile p = sampled_profile(Dimension(3), RadialGrid(0, 2, 21), [](double r) { return std::min(kPi, 2 * r); });
        EXPECT_EQ(p.xi_derivative(1.9), 0.0);
        EXPECT_GT(p.xi_derivative(0.5), 0.0);
}

TEST(Profile, ApproximateLimitsAtJump)
{
        const RadialGrid g(1, 3, 5);
        AlphaSpec spec;
        spec.ac_samples.assign(5, kPi / 3);
        spec.jumps.push_back({2.0, kPi / 3, kPi / 6});
        const Profile p = make_profile(Dimension(2), g, spec);
        const ApproxLimits l = approx_limits(p, 2.0);
        EXPECT_NEAR(l.lower, kPi / 6, 1e-15);
        EXPECT_NEAR(l.upper, kPi / 3, 1e-15);
        const ApproxLimits m = approx_limits(p, 1.5);
        EXPECT_EQ(m.lower, m.upper);
}

TEST(Profile, XiDecompositionFollowsChainRule)
{
        const RadialGrid g(1, 3, 9);
        AlphaSpec spec;
        for (int i = 0; i < g.count(); ++i)
        {
                spec.ac_samples.push_back(0.5 + 0.1 * g.node(i));
        }
        spec.jumps.push_back({2.0, 0.7, 1.2});
        spec.cantor = CantorComponent(2.2, 2.8, 0.3, 8);
        const Profile p = make_profile(Dimension(3), g, spec);
        const XiDecomposition x = p.xi_decomposition();
        ASSERT_EQ(x.jumps.size(), 1u);
        EXPECT_NEAR(x.jumps[0].left, cap_area(Dimension(3), 1, 0.7), 1e-12);
        EXPECT_NEAR(x.jumps[0].right, cap_area(Dimension(3), 1, 1.2), 1e-12);
        EXPECT_NEAR(x.ac_derivative[1], 2 * kPi * std::sin(p.alpha(1.25)) * 0.1, 1e-12);
        // |D^c xi| = integral of 2 pi sin(alpha) against |D^c alpha|.
        const double lo = 2 * kPi * std::sin(p.alpha(2.2)) * 0.3;
        const double hi = 2 * kPi * std::sin(p.alpha_limits(2.8).upper) * 0.3;
        EXPECT_GT(x.cantor_mass, std::min(lo, hi) - 1e-9);
        EXPECT_LT(x.cantor_mass, std::max(lo, hi) + 1e-9);
        EXPECT_FALSE(p.xi_is_sobolev_on(2.1, 2.9));
        EXPECT_TRUE(p.xi_is_sobolev_on(1.0, 1.9));
}

TEST(Profile, StepApproximantKeepsMass)
{
        const RadialGrid g(0, 4, 9);
        const Profile p = sampled_profile(Dimension(2), g, [](double) { return 0.5; }, {}, CantorComponent(1, 3, 1, 8));
        const Profile q = p.cantor_step_approximant(4);
        EXPECT_EQ(q.alpha_bv().jumps().size(), 16u);
        EXPECT_FALSE(q.alpha_bv().cantor().has_value());
        EXPECT_NEAR(q.alpha(3.5), p.alpha(3.5), 1e-12);
        EXPECT_NEAR(q.alpha_bv().jump_variation(RadialRange::closed(0, 4)), 1.0, 1e-12);
}
