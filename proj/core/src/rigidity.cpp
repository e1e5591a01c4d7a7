#include <sphsym/error.hpp>
#include <sphsym/rigidity.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

namespace sphsym
{
namespace
{
struct Sample
{
        double r;
        ApproxLimits limits;
        bool good;
};

std::vector<Sample> samples(const Profile& p, double eps)
{
        std::set<double> radii;
        for (int i = 0; i < p.grid().count(); ++i)
        {
                radii.insert(p.grid().node(i));
        }
        for (const Jump& j : p.alpha_bv().jumps())
        {
                radii.insert(j.r);
        }
        std::vector<Sample> out;
        out.reserve(radii.size());
        for (double r : radii)
        {
                const ApproxLimits l = p.alpha_limits(r);
                out.push_back({r, l, eps < l.lower && l.upper < kPi - eps});
        }
        return out;
}

ViolationKind kind_of(const ApproxLimits& l, double eps)
{
        return l.lower <= eps ? ViolationKind::alpha_zero : ViolationKind::alpha_pi;
}

const Jump* jump_at(const Profile& p, double r)
{
        for (const Jump& j : p.alpha_bv().jumps())
        {
                if (std::fabs(j.r - r) <= 1e-12 * std::max(1.0, std::fabs(r)))
                {
                        return &j;
                }
        }
        return nullptr;
}

void check_interior(const Profile& p, double r_bar, const char* who)
{
        if (!(r_bar > p.grid().r_min() && r_bar < p.grid().r_max()))
        {
                invalid_argument(std::string(who) + ": r_bar = " + std::to_string(r_bar) + " is outside the open window");
        }
}
}

const char* violation_name(ViolationKind k)
{
        return k == ViolationKind::alpha_zero ? "alpha_zero" : "alpha_pi";
}

RigidityVerdict classify(const std::shared_ptr<const Profile>& p, double eps)
{
        if (!p)
        {
                invalid_argument("classify: missing profile");
        }
        RigidityVerdict v;
        const std::vector<Sample> s = samples(*p, eps);
        const auto first = std::find_if(s.begin(), s.end(), [](const Sample& x) { return x.good; });
        if (first == s.end())
        {
                return v;
        }
        const auto last = std::find_if(s.rbegin(), s.rend(), [](const Sample& x) { return x.good; }).base() - 1;
        v.good_lo = first->r;
        v.good_hi = last->r;

        std::optional<double> disconnect_at;
        for (auto it = first; it != last;)
        {
                if (it->good)
                {
                        ++it;
                        continue;
                }
                auto end = it;
                while (!end->good)
                {
                        ++end;
                }
                const Sample& mid = *(it + (end - it - 1) / 2);
                v.reasons.push_back(IntervalViolation{mid.r, kind_of(mid.limits, eps)});
                if (!disconnect_at)
                {
                        disconnect_at = mid.r;
                }
                it = end;
        }

        std::optional<JumpReason> first_jump;
        for (const Sample& x : s)
        {
                if (!(x.r > v.good_lo && x.r < v.good_hi) || !x.good || !jump_at(*p, x.r))
                {
                        continue;
                }
                const JumpReason j{x.r, x.limits.lower, x.limits.upper};
                v.reasons.push_back(j);
                if (!first_jump)
                {
                        first_jump = j;
                }
        }

        bool cantor_found = false;
        if (const auto& c = p->alpha_bv().cantor())
        {
                const double lo = std::max(c->a, v.good_lo);
                const double hi = std::min(c->b, v.good_hi);
                const double mass = hi > lo ? c->variation(lo, hi) : 0.0;
                if (mass > 0)
                {
                        v.reasons.push_back(CantorReason{lo, hi, mass});
                        cantor_found = true;
                }
        }

        v.holds = v.reasons.empty();
        if (disconnect_at)
        {
                v.witness = counterexample_disconnect(p, *disconnect_at, planar_rotation(kPi / 2), eps);
        }
        else if (first_jump)
        {
                const double lambda = 0.5;
                v.witness = counterexample_jump(p, first_jump->r, lambda,
                                                0.5 * lambda * (first_jump->upper - first_jump->lower));
        }
        else if (cantor_found)
        {
                v.witness = counterexample_cantor(p, 0.5).set();
        }
        return v;
}

CapFieldSet counterexample_disconnect(const std::shared_ptr<const Profile>& p, double r_bar, const Mat3& rotation,
                                      double eps)
{
        check_interior(*p, r_bar, "counterexample_disconnect");
        const ApproxLimits l = p->alpha_limits(r_bar);
        if (!(l.lower <= eps || l.upper >= kPi - eps))
        {
                invalid_argument("counterexample_disconnect: alpha is neither 0 nor pi at r_bar");
        }
        const std::vector<Sample> s = samples(*p, eps);
        const bool below = std::any_of(s.begin(), s.end(), [&](const Sample& x) { return x.good && x.r < r_bar; });
        const bool above = std::any_of(s.begin(), s.end(), [&](const Sample& x) { return x.good && x.r > r_bar; });
        if (!below || !above)
        {
                invalid_argument("counterexample_disconnect: r_bar does not separate two parts of {0 < alpha < pi}");
        }
        const CapFieldSet f = symmetral_from_profile(p);
        return glue(f, f, r_bar, rotation);
}

CapFieldSet counterexample_jump(const std::shared_ptr<const Profile>& p, double r_bar, double lambda, double gamma)
{
        check_interior(*p, r_bar, "counterexample_jump");
        const Jump* j = jump_at(*p, r_bar);
        if (!j)
        {
                invalid_argument("counterexample_jump: alpha does not jump at r_bar = " + std::to_string(r_bar));
        }
        if (!(lambda > 0 && lambda < 1))
        {
                invalid_argument("counterexample_jump: lambda must lie in (0, 1)");
        }
        const ApproxLimits l = p->alpha_limits(j->r);
        const double bound = lambda * (l.upper - l.lower);
        if (!(gamma > 0 && gamma < bound))
        {
                invalid_argument("counterexample_jump: gamma = " + std::to_string(gamma) + " must lie in (0, "
                                 + std::to_string(bound) + ")");
        }
        return probe_jump(p, j->r, gamma);
}

CapFieldSet probe_jump(const std::shared_ptr<const Profile>& p, double r_bar, double gamma)
{
        check_interior(*p, r_bar, "probe_jump");
        const CapFieldSet f = symmetral_from_profile(p);
        return glue(f, f, r_bar, planar_rotation(gamma));
}

CantorCounterexample::CantorCounterexample(std::shared_ptr<const Profile> p, double lambda)
        : profile_(std::move(p)),
          lambda_(lambda)
{
        if (!profile_)
        {
                invalid_argument("counterexample_cantor: missing profile");
        }
        const auto& c = profile_->alpha_bv().cantor();
        if (!c || c->scale == 0)
        {
                invalid_argument("counterexample_cantor: alpha has no Cantor part");
        }
        if (!(lambda > 0 && lambda < 1))
        {
                invalid_argument("counterexample_cantor: lambda must lie in (0, 1)");
        }
        const RadialGrid& g = profile_->grid();
        if (!(c->a > g.r_min() && c->b < g.r_max()))
        {
                invalid_argument("counterexample_cantor: Cantor support must lie inside the open window");
        }
        for (double r : {c->a, 0.5 * (c->a + c->b), c->b})
        {
                const ApproxLimits l = profile_->alpha_limits(r);
                if (!(l.lower > 0 && l.upper < kPi))
                {
                        invalid_argument("counterexample_cantor: Cantor support must lie inside {0 < alpha < pi}");
                }
        }
}

const CantorComponent& CantorCounterexample::staircase() const
{
        return *profile_->alpha_bv().cantor();
}

CapFieldSet CantorCounterexample::set() const
{
        const RadialGrid& g = profile_->grid();
        const CantorComponent& c = staircase();
        return CapFieldSet(profile_, DirectionField::cantor_flow(profile_->dimension().value(), g.r_min(), g.r_max(), c,
                                                                 lambda_, c.a, c.b));
}

std::shared_ptr<const Profile> CantorCounterexample::step_profile(int k) const
{
        if (k < 0 || k > 20)
        {
                invalid_argument("step approximant: depth must lie in [0, 20]");
        }
        return std::make_shared<const Profile>(profile_->cantor_step_approximant(k));
}

CapFieldSet CantorCounterexample::step_set(int k) const
{
        const CantorComponent& c = staircase();
        const RadialGrid& g = profile_->grid();
        const std::vector<double> breaks = c.step_breakpoints(k);
        std::vector<double> angles(breaks.size() + 1);
        for (std::size_t j = 0; j < angles.size(); ++j)
        {
                angles[j] = lambda_ * c.scale * std::ldexp(static_cast<double>(j), -k);
        }
        return CapFieldSet(step_profile(k), DirectionField::piecewise_rotation(profile_->dimension().value(), g.r_min(),
                                                                               g.r_max(), breaks, angles));
}

CantorCounterexample counterexample_cantor(const std::shared_ptr<const Profile>& p, double lambda)
{
        return CantorCounterexample(p, lambda);
}

double rotation_distance_bound(const CapFieldSet& e, int angles)
{
        if (e.dimension() != 2)
        {
                invalid_argument("rotation_distance_bound: only n = 2 is supported");
        }
        if (angles < 8)
        {
                invalid_argument("rotation_distance_bound: need at least 8 angles");
        }
        const Profile& p = e.profile();
        const RadialGrid& g = p.grid();
        std::set<double> cuts;
        for (int i = 0; i < g.count(); ++i)
        {
                cuts.insert(g.node(i));
        }
        for (double b : e.direction().breaks())
        {
                cuts.insert(b);
        }
        for (const Jump& j : p.alpha_bv().jumps())
        {
                cuts.insert(j.r);
        }
        const std::vector<double> pts(cuts.begin(), cuts.end());

        struct Node
        {
                double r;
                double weight;
                double alpha;
                Vec3 d;
        };
        std::vector<Node> nodes;
        double lipschitz = 0;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        {
                const double s = pts[i];
                const double t = pts[i + 1];
                const double mid = 0.5 * (s + t);
                const double half = 0.5 * (t - s);
                static constexpr double kX[5] = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                                                 0.9061798459386640};
                static constexpr double kW[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                                 0.2369268850561891, 0.2369268850561891};
                for (int q = 0; q < 5; ++q)
                {
                        const double r = mid + half * kX[q];
                        const double a = p.alpha(r);
                        if (a <= 0 || a >= kPi)
                        {
                                continue;
                        }
                        nodes.push_back({r, half * kW[q], a, normalized(e.direction()(r))});
                        lipschitz += half * kW[q] * 2 * r;
                }
        }
        const Dimension dim(2);
        double best = std::numeric_limits<double>::infinity();
        for (int k = 0; k < angles; ++k)
        {
                const double psi = 2 * kPi * k / angles;
                const Vec3 c{std::cos(psi), std::sin(psi), 0};
                double area = 0;
                for (const Node& x : nodes)
                {
                        area += x.weight * cap_symmetric_difference(dim, x.r, x.alpha, x.alpha, geodesic_distance(x.d, c));
                }
                best = std::min(best, area);
        }
        return best - lipschitz * kPi / angles;
}
}
