#pragma once

#include <functional>
#include <vector>

namespace sphsym
{
/// Ternary Cantor staircase rescaled to rise by `scale` across `[a, b]`.
///
/// The function is continuous, monotone, constant outside [a, b] and has zero
/// derivative almost everywhere, so all of its variation is Cantor variation.
/// `depth` is the refinement level of the step approximants: at depth k the
/// staircase is replaced by a function with 2^k plateaus carrying the exact
/// dyadic values j / 2^k.
struct CantorComponent final
{
        double a = 0;
        double b = 1;
        double scale = 1;
        int depth = 8;

        CantorComponent() = default;
        CantorComponent(double a, double b, double scale, int depth);

        /// Value at r; 0 for r <= a and `scale` for r >= b.
        double operator()(double r) const;

        /// Signed Cantor measure of [x, y].
        double measure(double x, double y) const;

        /// Total variation on [x, y], i.e. |measure(x, y)|.
        double variation(double x, double y) const;

        /// Integral of g against |D c| over [x, y]. Uses the self-similar
        /// structure down to `levels` subdivisions with a midpoint rule per leaf;
        /// the rule is exact for affine g.
        double integrate(const std::function<double(double)>& g, double x, double y, int levels = 16) const;

        /// Exact integral of r against |D c| over [x, y].
        double first_moment(double x, double y) const;

        /// Breakpoints of the depth-k step approximant inside [a, b]: the radii where
        /// it jumps, each jump carrying scale / 2^k. The last breakpoint is b.
        std::vector<double> step_breakpoints(int k) const;

        /// Depth-k step approximant of the staircase (right-continuous at breakpoints).
        double step_value(int k, double r) const;
};

namespace cantor
{
/// Standard ternary Cantor function on [0, 1].
double unit(double t);

/// Integral of the standard Cantor function over [0, t].
double unit_integral(double t);

/// Left endpoints of the open middle-third gaps removed up to level k, in increasing
/// order, together with their right endpoints.
std::vector<std::pair<double, double>> unit_gaps(int k);
}
}
