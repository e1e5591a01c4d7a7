#include <sphsym/cantor.hpp>
#include <sphsym/error.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace sphsym
{
namespace cantor
{
double unit(double t)
{
        if (t <= 0)
        {
                return 0;
        }
        if (t >= 1)
        {
                return 1;
        }
        double result = 0;
        double weight = 0.5;
        for (int i = 0; i < 64; ++i)
        {
                if (t < 1.0 / 3.0)
                {
                        t *= 3;
                }
                else if (t <= 2.0 / 3.0)
                {
                        return result + weight;
                }
                else
                {
                        result += weight;
                        t = 3 * t - 2;
                }
                weight *= 0.5;
        }
        return result;
}

double unit_integral(double t)
{
        t = std::clamp(t, 0.0, 1.0);
        double acc = 0;
        double factor = 1;
        for (int i = 0; i < 64; ++i)
        {
                if (t <= 1.0 / 3.0)
                {
                        factor /= 6;
                        t *= 3;
                }
                else if (t <= 2.0 / 3.0)
                {
                        return acc + factor * (1.0 / 12.0 + (t - 1.0 / 3.0) / 2);
                }
                else
                {
                        acc += factor * (0.25 + (t - 2.0 / 3.0) / 2);
                        factor /= 6;
                        t = 3 * t - 2;
                }
        }
        return acc + factor * t / 2;
}

namespace
{
void collect_gaps(double lo, double hi, int level, int k, std::vector<std::pair<double, double>>& out)
{
        if (level >= k)
        {
                return;
        }
        const double third = (hi - lo) / 3;
        collect_gaps(lo, lo + third, level + 1, k, out);
        out.emplace_back(lo + third, hi - third);
        collect_gaps(hi - third, hi, level + 1, k, out);
}
}

std::vector<std::pair<double, double>> unit_gaps(int k)
{
        if (k < 0 || k > 24)
        {
                invalid_argument("cantor gaps: depth must be in [0, 24]");
        }
        std::vector<std::pair<double, double>> gaps;
        gaps.reserve((std::size_t{1} << k) - 1);
        collect_gaps(0, 1, 0, k, gaps);
        return gaps;
}
}

CantorComponent::CantorComponent(double a, double b, double scale, int depth)
        : a(a),
          b(b),
          scale(scale),
          depth(depth)
{
        if (!(b > a))
        {
                invalid_argument("cantor component: support must satisfy a < b");
        }
        if (depth < 0 || depth > 24)
        {
                invalid_argument("cantor component: depth must be in [0, 24], got " + std::to_string(depth));
        }
        if (!std::isfinite(scale))
        {
                invalid_argument("cantor component: scale must be finite");
        }
}

double CantorComponent::operator()(double r) const
{
        return scale * cantor::unit((r - a) / (b - a));
}

double CantorComponent::measure(double x, double y) const
{
        return (*this)(y) - (*this)(x);
}

double CantorComponent::variation(double x, double y) const
{
        if (y <= x)
        {
                return 0;
        }
        return std::fabs(measure(x, y));
}

double CantorComponent::first_moment(double x, double y) const
{
        x = std::clamp(x, a, b);
        y = std::clamp(y, a, b);
        if (y <= x)
        {
                return 0;
        }
        const double len = b - a;
        const double ux = (x - a) / len;
        const double uy = (y - a) / len;
        // integration by parts against the continuous staircase
        const double cx = cantor::unit(ux);
        const double cy = cantor::unit(uy);
        const double integral = len * (cantor::unit_integral(uy) - cantor::unit_integral(ux));
        return std::fabs(scale) * (y * cy - x * cx - integral);
}

double CantorComponent::integrate(const std::function<double(double)>& g, double x, double y, int levels) const
{
        x = std::max(x, a);
        y = std::min(y, b);
        if (y <= x || scale == 0)
        {
                return 0;
        }
        const double total = std::fabs(scale);
        double sum = 0;
        struct Node
        {
                double lo;
                double hi;
                int level;
        };
        std::vector<Node> stack;
        stack.push_back({a, b, 0});
        while (!stack.empty())
        {
                const Node node = stack.back();
                stack.pop_back();
                if (node.hi <= x || node.lo >= y)
                {
                        continue;
                }
                const bool inside = node.lo >= x && node.hi <= y;
                if (node.level == levels)
                {
                        if (inside)
                        {
                                sum += total * std::ldexp(1.0, -levels) * g(0.5 * (node.lo + node.hi));
                        }
                        else
                        {
                                const double lo = std::max(node.lo, x);
                                const double hi = std::min(node.hi, y);
                                sum += variation(lo, hi) * g(0.5 * (lo + hi));
                        }
                        continue;
                }
                const double third = (node.hi - node.lo) / 3;
                stack.push_back({node.hi - third, node.hi, node.level + 1});
                stack.push_back({node.lo, node.lo + third, node.level + 1});
        }
        return sum;
}

std::vector<double> CantorComponent::step_breakpoints(int k) const
{
        const auto gaps = cantor::unit_gaps(k);
        std::vector<double> points;
        points.reserve(gaps.size() + 1);
        for (const auto& gap : gaps)
        {
                points.push_back(a + (b - a) * gap.first);
        }
        points.push_back(b);
        return points;
}

double CantorComponent::step_value(int k, double r) const
{
        const auto points = step_breakpoints(k);
        const auto count = std::upper_bound(points.begin(), points.end(), r) - points.begin();
        return scale * std::ldexp(static_cast<double>(count), -k);
}
}
