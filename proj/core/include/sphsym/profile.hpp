#pragma once

#include "bv.hpp"
#include "sphere_geometry.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace sphsym
{
/// Input for make_profile: the pieces of the angle function alpha.
struct AlphaSpec final
{
        std::vector<double> ac_samples;
        std::vector<Jump> jumps;
        std::optional<CantorComponent> cantor;
};

/// Pair of approximate lower and upper limits.
struct ApproxLimits final
{
        double lower;
        double upper;
};

/// Decomposition of xi = cap_area(n, 1, alpha) induced by the chain rule.
struct XiDecomposition final
{
        /// xi' at each grid node (AC part only).
        std::vector<double> ac_derivative;
        /// Jumps of xi with mapped endpoint values.
        std::vector<Jump> jumps;
        /// Total Cantor variation |D^c xi| over the window.
        double cantor_mass = 0;
};

/// Distribution profile of a spherically symmetric arrangement: the cap angle
/// alpha(r) in [0, pi], the normalized slice measure xi(r) and the slice
/// measure v(r) = r^{n-1} xi(r). Outside the grid window the profile is zero.
class Profile final
{
        Dimension n_;
        BVDecomposition alpha_;

public:
        Profile(Dimension n, BVDecomposition alpha);

        Dimension dimension() const
        {
                return n_;
        }
        const RadialGrid& grid() const
        {
                return alpha_.grid();
        }
        const BVDecomposition& alpha_bv() const
        {
                return alpha_;
        }

        double alpha(double r) const;
        double xi(double r) const;
        double v(double r) const;

        ApproxLimits alpha_limits(double r) const;

        /// xi'(r) on the AC part; zero where alpha sits at 0 or pi.
        double xi_derivative(double r) const;

        /// Jumps of xi, i.e. alpha jumps mapped through cap_area.
        std::vector<Jump> xi_jumps() const;

        /// |D^c xi| restricted to the range.
        double xi_cantor_variation(const RadialRange& range) const;

        /// Integral of r^{n-1} against |D^c xi| over the range.
        double xi_cantor_weighted(const RadialRange& range) const;

        XiDecomposition xi_decomposition() const;

        /// True iff the xi decomposition restricted to (lo, hi) is purely AC.
        bool xi_is_sobolev_on(double lo, double hi) const;

        /// Same profile with the Cantor part of alpha replaced by its depth-k steps.
        Profile cantor_step_approximant(int k) const;

        /// alpha at the grid nodes (left-continuous representative).
        std::vector<double> alpha_samples() const;
};

Profile make_profile(Dimension n, const RadialGrid& grid, AlphaSpec spec);

/// Constant alpha on the window.
Profile constant_profile(Dimension n, const RadialGrid& grid, double alpha);

/// Profile whose AC part samples a callable at the grid nodes.
template <typename F>
Profile sampled_profile(Dimension n, const RadialGrid& grid, F&& f, std::vector<Jump> jumps = {},
                        std::optional<CantorComponent> cantor = std::nullopt)
{
        AlphaSpec spec;
        spec.ac_samples.reserve(grid.count());
        for (int i = 0; i < grid.count(); ++i)
        {
                spec.ac_samples.push_back(f(grid.node(i)));
        }
        spec.jumps = std::move(jumps);
        spec.cantor = std::move(cantor);
        return make_profile(n, grid, std::move(spec));
}

ApproxLimits approx_limits(const Profile& p, double r);

/// r^{n-1} xi'(r).
double rescaled_derivative(const Profile& p, double r);

double total_variation(const BVDecomposition& f, const RadialRange& range);
}
