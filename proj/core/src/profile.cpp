#include <sphsym/error.hpp>
#include <sphsym/profile.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace sphsym
{
namespace
{
constexpr double kAngleSlack = 1e-12;

void check_alpha(double a, double r)
{
        if (!(a >= -kAngleSlack && a <= kPi + kAngleSlack))
        {
                invalid_argument("profile: alpha(" + std::to_string(r) + ") = " + std::to_string(a)
                                 + " violates 0 <= alpha <= pi (admissibility of v)");
        }
}

double clamp_alpha(double a)
{
        return std::clamp(a, 0.0, kPi);
}
}

Profile::Profile(Dimension n, BVDecomposition alpha)
        : n_(n),
          alpha_(std::move(alpha))
{
        const RadialGrid& g = alpha_.grid();
        for (int i = 0; i < g.count(); ++i)
        {
                const double r = g.node(i);
                check_alpha(alpha_.left_limit(r), r);
                check_alpha(alpha_.right_limit(r), r);
                if (i + 1 < g.count() && alpha_.cantor())
                {
                        for (int s = 1; s < 4; ++s)
                        {
                                const double t = r + s * (g.node(i + 1) - r) / 4;
                                check_alpha(alpha_(t), t);
                        }
                }
        }
        for (const Jump& j : alpha_.jumps())
        {
                check_alpha(j.left, j.r);
                check_alpha(j.right, j.r);
        }
        if (const auto& c = alpha_.cantor())
        {
                check_alpha(alpha_.left_limit(c->a), c->a);
                check_alpha(alpha_.right_limit(c->b), c->b);
        }
}

double Profile::alpha(double r) const
{
        if (r < grid().r_min() || r > grid().r_max())
        {
                return 0;
        }
        return clamp_alpha(alpha_(r));
}

double Profile::xi(double r) const
{
        return cap_area(n_, 1, alpha(r));
}

double Profile::v(double r) const
{
        return std::pow(r, n_.value() - 1) * xi(r);
}

ApproxLimits Profile::alpha_limits(double r) const
{
        const RadialGrid& g = grid();
        double left = clamp_alpha(alpha_.left_limit(r));
        double right = clamp_alpha(alpha_.right_limit(r));
        if (r <= g.r_min())
        {
                left = right;
        }
        if (r >= g.r_max())
        {
                right = left;
        }
        return {std::min(left, right), std::max(left, right)};
}

double Profile::xi_derivative(double r) const
{
        const double a = alpha(r);
        if (a <= 0 || a >= kPi)
        {
                return 0;
        }
        return cap_area_derivative(n_, a) * alpha_.ac_derivative(r);
}

std::vector<Jump> Profile::xi_jumps() const
{
        std::vector<Jump> out;
        out.reserve(alpha_.jumps().size());
        for (const Jump& j : alpha_.jumps())
        {
                out.push_back({j.r, cap_area(n_, 1, clamp_alpha(j.left)), cap_area(n_, 1, clamp_alpha(j.right))});
        }
        return out;
}

double Profile::xi_cantor_variation(const RadialRange& range) const
{
        const auto& c = alpha_.cantor();
        if (!c)
        {
                return 0;
        }
        if (n_.value() == 2)
        {
                return 2 * c->variation(range.lo, range.hi);
        }
        return c->integrate(
                [this](double r)
                {
                        return cap_area_derivative(n_, alpha(r));
                },
                range.lo, range.hi);
}

double Profile::xi_cantor_weighted(const RadialRange& range) const
{
        const auto& c = alpha_.cantor();
        if (!c)
        {
                return 0;
        }
        if (n_.value() == 2)
        {
                return 2 * c->first_moment(range.lo, range.hi);
        }
        const int e = n_.value() - 1;
        return c->integrate(
                [this, e](double r)
                {
                        return std::pow(r, e) * cap_area_derivative(n_, alpha(r));
                },
                range.lo, range.hi);
}

XiDecomposition Profile::xi_decomposition() const
{
        XiDecomposition d;
        const RadialGrid& g = grid();
        d.ac_derivative.reserve(g.count());
        for (int i = 0; i < g.count(); ++i)
        {
                d.ac_derivative.push_back(xi_derivative(g.node(i)));
        }
        d.jumps = xi_jumps();
        d.cantor_mass = xi_cantor_variation(RadialRange::closed(g.r_min(), g.r_max()));
        return d;
}

bool Profile::xi_is_sobolev_on(double lo, double hi) const
{
        for (const Jump& j : xi_jumps())
        {
                if (j.r > lo && j.r < hi && j.left != j.right)
                {
                        return false;
                }
        }
        return xi_cantor_variation(RadialRange::open(lo, hi)) == 0;
}

Profile Profile::cantor_step_approximant(int k) const
{
        return Profile(n_, alpha_.cantor_step_approximant(k));
}

std::vector<double> Profile::alpha_samples() const
{
        std::vector<double> out;
        out.reserve(grid().count());
        for (int i = 0; i < grid().count(); ++i)
        {
                out.push_back(alpha(grid().node(i)));
        }
        return out;
}

Profile make_profile(Dimension n, const RadialGrid& grid, AlphaSpec spec)
{
        for (std::size_t i = 0; i < spec.ac_samples.size(); ++i)
        {
                if (!std::isfinite(spec.ac_samples[i]))
                {
                        invalid_argument("profile: non-finite alpha sample at node " + std::to_string(i));
                }
        }
        return Profile(n, BVDecomposition(grid, std::move(spec.ac_samples), std::move(spec.jumps),
                                          std::move(spec.cantor)));
}

Profile constant_profile(Dimension n, const RadialGrid& grid, double alpha)
{
        AlphaSpec spec;
        spec.ac_samples.assign(grid.count(), alpha);
        return make_profile(n, grid, std::move(spec));
}

ApproxLimits approx_limits(const Profile& p, double r)
{
        return p.alpha_limits(r);
}

double rescaled_derivative(const Profile& p, double r)
{
        return std::pow(r, p.dimension().value() - 1) * p.xi_derivative(r);
}

double total_variation(const BVDecomposition& f, const RadialRange& range)
{
        return f.total_variation(range);
}
}
