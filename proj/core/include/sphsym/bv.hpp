#pragma once

#include "cantor.hpp"

#include <optional>
#include <vector>

namespace sphsym
{
/// Uniform radial nodes r_i = r_min + i h on [r_min, r_max].
class RadialGrid final
{
        double r_min_;
        double r_max_;
        int count_;

public:
        RadialGrid(double r_min, double r_max, int count);

        double r_min() const
        {
                return r_min_;
        }
        double r_max() const
        {
                return r_max_;
        }
        int count() const
        {
                return count_;
        }
        double spacing() const
        {
                return (r_max_ - r_min_) / (count_ - 1);
        }
        double node(int i) const;
        /// Index i of the cell [r_i, r_{i+1}] containing r (clamped to the window).
        int cell(double r) const;
        bool contains(double r) const
        {
                return r >= r_min_ && r <= r_max_;
        }

        friend bool operator==(const RadialGrid&, const RadialGrid&) = default;
};

/// A radial interval with explicit endpoint membership. Atoms (jumps) located
/// exactly at an endpoint count only when that endpoint is closed.
struct RadialRange final
{
        double lo = 0;
        double hi = 0;
        bool closed_lo = true;
        bool closed_hi = true;

        static RadialRange closed(double lo, double hi)
        {
                return {lo, hi, true, true};
        }
        static RadialRange open(double lo, double hi)
        {
                return {lo, hi, false, false};
        }
        static RadialRange half_open(double lo, double hi)
        {
                return {lo, hi, true, false};
        }

        bool contains(double r) const
        {
                return (closed_lo ? r >= lo : r > lo) && (closed_hi ? r <= hi : r < hi);
        }
};

/// Jump of a one-variable function: left and right limits at r.
struct Jump final
{
        double r;
        double left;
        double right;

        double size() const
        {
                return right - left;
        }
};

/// A BV function on a radial window written as AC part + jump part + Cantor part.
///
/// The AC part is piecewise linear through `ac_values` at the grid nodes. Jumps
/// shift the function by (right - left) strictly after r_j, so the stored
/// representative is left-continuous. The Cantor part is an optional staircase.
class BVDecomposition final
{
        RadialGrid grid_;
        std::vector<double> ac_values_;
        std::vector<Jump> jumps_;
        std::optional<CantorComponent> cantor_;

        double jump_offset(double r, bool include_at) const;

public:
        /// Validates that every jump is interior, non-trivial, and that its stored
        /// left/right values agree with the reconstruction within 1e-9.
        BVDecomposition(RadialGrid grid, std::vector<double> ac_values, std::vector<Jump> jumps,
                        std::optional<CantorComponent> cantor);

        /// Builds the decomposition from jump sizes only, filling in left/right values.
        static BVDecomposition from_increments(RadialGrid grid, std::vector<double> ac_values,
                                               const std::vector<std::pair<double, double>>& jump_sizes,
                                               std::optional<CantorComponent> cantor);

        const RadialGrid& grid() const
        {
                return grid_;
        }
        const std::vector<double>& ac_values() const
        {
                return ac_values_;
        }
        const std::vector<Jump>& jumps() const
        {
                return jumps_;
        }
        const std::optional<CantorComponent>& cantor() const
        {
                return cantor_;
        }

        double ac(double r) const;
        /// Derivative of the AC part; at a node the mean of the one-sided slopes.
        double ac_derivative(double r) const;
        double cantor_value(double r) const;

        /// Left-continuous representative.
        double operator()(double r) const
        {
                return left_limit(r);
        }
        double left_limit(double r) const;
        double right_limit(double r) const;

        /// |Df| over the range: integral of |f'| + jumps inside + Cantor variation.
        double total_variation(const RadialRange& range) const;
        double ac_variation(const RadialRange& range) const;
        double jump_variation(const RadialRange& range) const;
        double cantor_variation(const RadialRange& range) const;

        /// True when f has no jump and no Cantor mass inside the open interval (lo, hi).
        bool is_sobolev_on(double lo, double hi) const;

        /// Supremum over partitions of sum |f(t_{i+1}) - f(t_i)| using `pieces`
        /// uniform subintervals of [lo, hi] plus the jump radii; a lower bound that
        /// converges to the total variation.
        double partition_variation(double lo, double hi, int pieces) const;

        /// Same function with the Cantor part replaced by its depth-k step approximant.
        BVDecomposition cantor_step_approximant(int k) const;
};

/// Heuristic split of sampled data into AC samples and jumps: a jump is placed
/// between adjacent nodes whose difference exceeds 10 h median|f'|.
BVDecomposition detect_jumps(const RadialGrid& grid, const std::vector<double>& samples);
}
