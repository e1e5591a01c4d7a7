#include <sphsym/bv.hpp>
#include <sphsym/error.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace sphsym
{
namespace
{
constexpr double kJumpConsistency = 1e-9;
}

RadialGrid::RadialGrid(double r_min, double r_max, int count)
        : r_min_(r_min),
          r_max_(r_max),
          count_(count)
{
        if (!(r_min >= 0) || !std::isfinite(r_max))
        {
                invalid_argument("radial grid: r_min must be >= 0 and r_max finite");
        }
        if (!(r_max > r_min))
        {
                invalid_argument("radial grid: r_max must exceed r_min");
        }
        if (count < 2)
        {
                invalid_argument("radial grid: at least two nodes are required");
        }
}

double RadialGrid::node(int i) const
{
        if (i == count_ - 1)
        {
                return r_max_;
        }
        return r_min_ + i * spacing();
}

int RadialGrid::cell(double r) const
{
        const double t = (r - r_min_) / spacing();
        const int i = static_cast<int>(std::floor(t));
        return std::clamp(i, 0, count_ - 2);
}

BVDecomposition::BVDecomposition(RadialGrid grid, std::vector<double> ac_values, std::vector<Jump> jumps,
                                 std::optional<CantorComponent> cantor)
        : grid_(grid),
          ac_values_(std::move(ac_values)),
          jumps_(std::move(jumps)),
          cantor_(std::move(cantor))
{
        if (static_cast<int>(ac_values_.size()) != grid_.count())
        {
                invalid_argument("bv decomposition: expected " + std::to_string(grid_.count()) + " AC samples, got "
                                 + std::to_string(ac_values_.size()));
        }
        for (double v : ac_values_)
        {
                if (!std::isfinite(v))
                {
                        invalid_argument("bv decomposition: AC samples must be finite");
                }
        }
        std::sort(jumps_.begin(), jumps_.end(),
                  [](const Jump& x, const Jump& y)
                  {
                          return x.r < y.r;
                  });
        for (std::size_t i = 0; i < jumps_.size(); ++i)
        {
                const Jump& j = jumps_[i];
                if (!(j.r > grid_.r_min() && j.r < grid_.r_max()))
                {
                        invalid_argument("bv decomposition: jump at r=" + std::to_string(j.r)
                                         + " is not interior to the window");
                }
                if (i > 0 && j.r == jumps_[i - 1].r)
                {
                        invalid_argument("bv decomposition: two jumps at the same radius");
                }
                if (j.left == j.right)
                {
                        invalid_argument("bv decomposition: zero jump at r=" + std::to_string(j.r));
                }
        }
        if (cantor_ && (cantor_->a < grid_.r_min() || cantor_->b > grid_.r_max()))
        {
                invalid_argument("bv decomposition: cantor support must lie inside the window");
        }
        for (const Jump& j : jumps_)
        {
                const double left = left_limit(j.r);
                const double right = right_limit(j.r);
                if (std::fabs(left - j.left) > kJumpConsistency || std::fabs(right - j.right) > kJumpConsistency)
                {
                        invalid_argument("bv decomposition: jump at r=" + std::to_string(j.r)
                                         + " has limits inconsistent with the AC/Cantor parts (left "
                                         + std::to_string(left) + " vs " + std::to_string(j.left) + ")");
                }
        }
}

BVDecomposition BVDecomposition::from_increments(RadialGrid grid, std::vector<double> ac_values,
                                                 const std::vector<std::pair<double, double>>& jump_sizes,
                                                 std::optional<CantorComponent> cantor)
{
        BVDecomposition tmp(grid, ac_values, {}, cantor);
        std::vector<std::pair<double, double>> sorted = jump_sizes;
        std::sort(sorted.begin(), sorted.end());
        std::vector<Jump> jumps;
        double offset = 0;
        for (const auto& [r, size] : sorted)
        {
                const double base = tmp.ac(r) + tmp.cantor_value(r) + offset;
                jumps.push_back({r, base, base + size});
                offset += size;
        }
        return BVDecomposition(grid, std::move(ac_values), std::move(jumps), std::move(cantor));
}

double BVDecomposition::ac(double r) const
{
        const int i = grid_.cell(r);
        const double r0 = grid_.node(i);
        const double r1 = grid_.node(i + 1);
        const double t = (r - r0) / (r1 - r0);
        return ac_values_[i] + t * (ac_values_[i + 1] - ac_values_[i]);
}

double BVDecomposition::ac_derivative(double r) const
{
        const double h = grid_.spacing();
        const double t = (r - grid_.r_min()) / h;
        const double nearest = std::round(t);
        const auto slope = [&](int i)
        {
                return (ac_values_[i + 1] - ac_values_[i]) / (grid_.node(i + 1) - grid_.node(i));
        };
        if (std::fabs(t - nearest) < 1e-12)
        {
                const int k = static_cast<int>(nearest);
                if (k <= 0)
                {
                        return slope(0);
                }
                if (k >= grid_.count() - 1)
                {
                        return slope(grid_.count() - 2);
                }
                return 0.5 * (slope(k - 1) + slope(k));
        }
        return slope(grid_.cell(r));
}

double BVDecomposition::cantor_value(double r) const
{
        return cantor_ ? (*cantor_)(r) : 0.0;
}

double BVDecomposition::jump_offset(double r, bool include_at) const
{
        double s = 0;
        for (const Jump& j : jumps_)
        {
                if (j.r < r || (include_at && j.r == r))
                {
                        s += j.size();
                }
                else
                {
                        break;
                }
        }
        return s;
}

double BVDecomposition::left_limit(double r) const
{
        return ac(r) + jump_offset(r, false) + cantor_value(r);
}

double BVDecomposition::right_limit(double r) const
{
        return ac(r) + jump_offset(r, true) + cantor_value(r);
}

double BVDecomposition::ac_variation(const RadialRange& range) const
{
        const double lo = std::max(range.lo, grid_.r_min());
        const double hi = std::min(range.hi, grid_.r_max());
        if (hi <= lo)
        {
                return 0;
        }
        double total = 0;
        for (int i = grid_.cell(lo); i < grid_.count() - 1; ++i)
        {
                const double r0 = grid_.node(i);
                const double r1 = grid_.node(i + 1);
                if (r0 >= hi)
                {
                        break;
                }
                const double a = std::max(r0, lo);
                const double b = std::min(r1, hi);
                if (b > a)
                {
                        total += std::fabs(ac_values_[i + 1] - ac_values_[i]) * (b - a) / (r1 - r0);
                }
        }
        return total;
}

double BVDecomposition::jump_variation(const RadialRange& range) const
{
        double total = 0;
        for (const Jump& j : jumps_)
        {
                if (range.contains(j.r))
                {
                        total += std::fabs(j.size());
                }
        }
        return total;
}

double BVDecomposition::cantor_variation(const RadialRange& range) const
{
        return cantor_ ? cantor_->variation(range.lo, range.hi) : 0.0;
}

double BVDecomposition::total_variation(const RadialRange& range) const
{
        return ac_variation(range) + jump_variation(range) + cantor_variation(range);
}

bool BVDecomposition::is_sobolev_on(double lo, double hi) const
{
        for (const Jump& j : jumps_)
        {
                if (j.r > lo && j.r < hi)
                {
                        return false;
                }
        }
        return cantor_variation(RadialRange::open(lo, hi)) == 0;
}

double BVDecomposition::partition_variation(double lo, double hi, int pieces) const
{
        double total = 0;
        double prev = right_limit(lo);
        for (int i = 1; i <= pieces; ++i)
        {
                const double t = (i == pieces) ? hi : lo + (hi - lo) * i / pieces;
                const double cur = left_limit(t);
                total += std::fabs(cur - prev);
                prev = cur;
        }
        return total;
}

BVDecomposition BVDecomposition::cantor_step_approximant(int k) const
{
        if (!cantor_)
        {
                return *this;
        }
        if (!(cantor_->b < grid_.r_max()))
        {
                invalid_argument("cantor step approximant: support must end before the window edge");
        }
        std::map<double, double> sizes;
        for (const Jump& j : jumps_)
        {
                sizes[j.r] += j.size();
        }
        const double step = cantor_->scale * std::ldexp(1.0, -k);
        for (double r : cantor_->step_breakpoints(k))
        {
                sizes[r] += step;
        }
        std::vector<std::pair<double, double>> increments;
        for (const auto& [r, s] : sizes)
        {
                if (s != 0)
                {
                        increments.emplace_back(r, s);
                }
        }
        return from_increments(grid_, ac_values_, increments, std::nullopt);
}

BVDecomposition detect_jumps(const RadialGrid& grid, const std::vector<double>& samples)
{
        if (static_cast<int>(samples.size()) != grid.count())
        {
                invalid_argument("detect_jumps: sample count does not match the grid");
        }
        std::vector<double> diffs;
        diffs.reserve(samples.size() - 1);
        for (std::size_t i = 0; i + 1 < samples.size(); ++i)
        {
                diffs.push_back(std::fabs(samples[i + 1] - samples[i]));
        }
        std::vector<double> sorted = diffs;
        std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
        const double median = sorted[sorted.size() / 2];
        const double threshold = std::max(10 * median, 1e-12);

        std::vector<double> ac(samples.size());
        std::vector<std::pair<double, double>> jumps;
        double offset = 0;
        ac[0] = samples[0];
        for (std::size_t i = 0; i + 1 < samples.size(); ++i)
        {
                const double d = samples[i + 1] - samples[i];
                if (std::fabs(d) > threshold)
                {
                        const double r = 0.5 * (grid.node(static_cast<int>(i)) + grid.node(static_cast<int>(i) + 1));
                        jumps.emplace_back(r, d);
                        offset += d;
                }
                ac[i + 1] = samples[i + 1] - offset;
        }
        return BVDecomposition::from_increments(grid, std::move(ac), jumps, std::nullopt);
}
}
