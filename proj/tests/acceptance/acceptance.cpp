#include "support/builders.hpp"

#include <sphsym/equality_analysis.hpp>
#include <sphsym/error.hpp>
#include <sphsym/parallel.hpp>
#include <sphsym/perimeter.hpp>
#include <sphsym/quadrature.hpp>
#include <sphsym/rigidity.hpp>
#include <sphsym/symmetrize.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace sphsym;
using namespace sphsym::testing;

namespace
{
struct Outcome
{
        bool pass;
        std::string detail;
};

struct Criterion
{
        int id;
        const char* name;
        double seconds;
        std::function<Outcome()> run;
};

std::string fmt(const char* f, double a)
{
        char buf[64];
        std::snprintf(buf, sizeof buf, f, a);
        return buf;
}

double uniform(std::mt19937_64& rng, double lo, double hi)
{
        return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Vec3 random_unit(std::mt19937_64& rng, int n)
{
        std::normal_distribution<double> g;
        const Vec3 v{g(rng), g(rng), n == 3 ? g(rng) : 0.0};
        return normalized(v);
}

struct Window
{
        double a;
        double b;
};

Window random_window(std::mt19937_64& rng)
{
        const double a = uniform(rng, 0.2, 1.0);
        return {a, a + uniform(rng, 0.6, 2.0)};
}

std::shared_ptr<const Profile> random_smooth(std::mt19937_64& rng, int n, Window w, int count = 129)
{
        const double base = uniform(rng, 0.7, 2.3);
        const double amp = uniform(rng, 0.05, 0.5);
        const double freq = uniform(rng, 1, 6);
        const double phase = uniform(rng, 0, 2 * kPi);
        return share(sampled_profile(Dimension(n), RadialGrid(w.a, w.b, count),
                                     [&](double r) { return base + amp * std::sin(freq * r + phase); }));
}

// Smooth AC part plus one jump at an interior grid node.
std::shared_ptr<const Profile> random_jumpy(std::mt19937_64& rng, int n, Window w, int count = 129)
{
        const RadialGrid g(w.a, w.b, count);
        const double base = uniform(rng, 0.8, 1.6);
        const double amp = uniform(rng, 0.05, 0.3);
        const double freq = uniform(rng, 1, 5);
        const auto f = [&](double r) { return base + amp * std::sin(freq * r); };
        const int node = static_cast<int>(uniform(rng, 0.25, 0.75) * (count - 1));
        const double r = g.node(node);
        // Either sign, keeping alpha inside [0.2, pi - 0.2] past the jump.
        const double size = rng() % 2 ? uniform(rng, 0.2, 0.9) : -uniform(rng, 0.2, 0.9) * (base - amp - 0.2);
        std::vector<double> ac;
        for (int i = 0; i < count; ++i)
        {
                ac.push_back(f(g.node(i)));
        }
        AlphaSpec spec;
        spec.ac_samples = ac;
        spec.jumps.push_back({r, ac[node], ac[node] + size});
        return share(make_profile(Dimension(n), g, std::move(spec)));
}

std::shared_ptr<const Profile> random_cantor(std::mt19937_64& rng, int n, Window w)
{
        const double len = w.b - w.a;
        const double c0 = w.a + uniform(rng, 0.1, 0.3) * len;
        const double c1 = w.a + uniform(rng, 0.6, 0.9) * len;
        const double base = uniform(rng, 0.5, 1.5);
        const double scale = uniform(rng, 0.2, 0.8);
        return cantor_profile(n, w.a, w.b, c0, c1, base, scale, 10);
}

// alpha = 0 on a stretch (or pi at a pinch) inside an otherwise smooth profile.
std::shared_ptr<const Profile> random_disconnected(std::mt19937_64& rng, int n, Window w, bool pinch, int count = 129)
{
        const double len = w.b - w.a;
        const double lo = w.a + uniform(rng, 0.3, 0.5) * len;
        const double hi = lo + uniform(rng, 0.05, 0.2) * len;
        const double base = uniform(rng, 0.8, 2.0);
        const double amp = uniform(rng, 0.05, 0.3);
        const double fill = pinch ? kPi : 0.0;
        return share(sampled_profile(Dimension(n), RadialGrid(w.a, w.b, count),
                                     [&](double r) { return r > lo && r < hi ? fill : base + amp * std::cos(3 * r); }));
}

DirectionField random_field(std::mt19937_64& rng, int n, Window w)
{
        switch (rng() % 4)
        {
        case 0:
                return DirectionField::fourier_random(n, w.a, w.b, rng(), uniform(rng, 0.1, 0.8));
        case 1:
        {
                const double mid = 0.5 * (w.a + w.b);
                const Vec3 d = random_unit(rng, n);
                return join_fields(DirectionField::constant(n, w.a, w.b, d),
                                   DirectionField::fourier_random(n, w.a, w.b, rng(), 0.5), mid);
        }
        case 2:
                return DirectionField::piecewise_rotation(n, w.a, w.b, {0.5 * (w.a + w.b)},
                                                          {0.0, uniform(rng, 0.05, 1.0)});
        default:
                return DirectionField::constant(n, w.a, w.b, random_unit(rng, n));
        }
}

VoxelSet random_blobs(std::mt19937_64& rng, int n, double h, int blobs)
{
        struct Ball
        {
                Vec3 c;
                double rho;
        };
        std::vector<Ball> balls;
        for (int k = 0; k < blobs; ++k)
        {
                const Vec3 c = uniform(rng, 0.1, 0.55) * random_unit(rng, n);
                balls.push_back({c, uniform(rng, 0.1, 0.3)});
        }
        VoxelSet v = VoxelSet::covering(n, h, 1.0);
        const auto& d = v.dims();
        for (int k = 0; k < d[2]; ++k)
        {
                for (int j = 0; j < d[1]; ++j)
                {
                        for (int i = 0; i < d[0]; ++i)
                        {
                                const Vec3 x = v.center(i, j, k);
                                const bool in = std::any_of(balls.begin(), balls.end(),
                                                            [&](const Ball& b) { return norm(x - b.c) < b.rho; });
                                v.set(i, j, k, in);
                        }
                }
        }
        return v;
}

VoxelSet centred_square(double h, double half_side)
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

double planar_perimeter(const CapFieldSet& e)
{
        return perimeter_capfield(e).total;
}

Outcome cap_areas()
{
        std::mt19937_64 rng(1);
        double worst3 = 0;
        double worst2 = 0;
        double worst_quad = 0;
        for (int k = 0; k < 1000; ++k)
        {
                const double beta = uniform(rng, 1e-3, kPi);
                const double r = uniform(rng, 0.1, 5);
                const double c3 = 2 * kPi * (1 - std::cos(beta));
                worst3 = std::max(worst3, std::fabs(cap_area(Dimension(3), 1, beta) - c3) / c3);
                worst2 = std::max(worst2, std::fabs(cap_area(Dimension(2), r, beta) - 2 * r * beta) / (2 * r * beta));
                // General-n expression (n - 1) omega_{n-1} int_0^beta sin^{n-2} by quadrature, n = 3.
                const double q = 2 * unit_ball_volume(2)
                                 * quadrature::integrate([](double t) { return std::sin(t); }, 0.0, beta);
                worst_quad = std::max(worst_quad, std::fabs(q - c3) / c3);
        }
        const bool pass = worst3 <= 1e-10 && worst2 <= 1e-10 && worst_quad <= 1e-9;
        return {pass, "n=3 rel " + fmt("%.2e", worst3) + ", n=2 rel " + fmt("%.2e", worst2) + ", quadrature rel "
                              + fmt("%.2e", worst_quad)};
}

Outcome perimeter_formula()
{
        std::mt19937_64 rng(2);
        double worst = 0;
        for (int k = 0; k < 100; ++k)
        {
                const double a = uniform(rng, 0.05, 2);
                const double b = a + uniform(rng, 0.05, 3);
                const double alpha0 = uniform(rng, 0.01, kPi - 0.01);
                const double want = 2 * (b - a) + 2 * alpha0 * (a + b);
                worst = std::max(worst, std::fabs(perimeter_symmetral(*sector(2, a, b, alpha0)).total - want));
        }
        double worst_ball = 0;
        for (double R : {0.3, 1.0, 2.5, 7.0})
        {
                const double want = 4 * kPi * R * R;
                worst_ball = std::max(worst_ball, std::fabs(perimeter_symmetral(*sector(3, 0, R, kPi)).total - want));
        }
        return {worst <= 1e-9 && worst_ball <= 1e-9,
                "sector max err " + fmt("%.2e", worst) + ", ball max err " + fmt("%.2e", worst_ball)};
}

Outcome inequality()
{
        std::mt19937_64 rng(3);
        int cases = 0;
        int violations = 0;
        int non_symmetral = 0;
        int strict = 0;
        double worst = 1e300;
        const auto record = [&](const InequalityCheck& c, bool symmetral)
        {
                ++cases;
                violations += c.slack < -c.budget;
                worst = std::min(worst, c.slack / std::max(c.budget, 1e-300));
                if (!symmetral)
                {
                        ++non_symmetral;
                        strict += c.slack > 10 * c.budget;
                }
        };
        for (int k = 0; k < 200; ++k)
        {
                const int n = k < 100 ? 2 : 3;
                const Window w = random_window(rng);
                const auto p = rng() % 3 == 0 ? random_jumpy(rng, n, w) : random_smooth(rng, n, w);
                const DirectionField d = random_field(rng, n, w);
                const bool symmetral = d.oscillation() == 0;
                record(check_inequality(CapFieldSet(p, d), std::nullopt, MeshOptions{512, 512}), symmetral);
        }
        for (int k = 0; k < 50; ++k)
        {
                const int n = k < 30 ? 2 : 3;
                const VoxelSet v = random_blobs(rng, n, n == 2 ? 1.0 / 128 : 1.0 / 32, 2 + static_cast<int>(rng() % 3));
                record(check_inequality(v, 4096), false);
        }
        const double share = static_cast<double>(strict) / non_symmetral;
        return {violations == 0 && share >= 0.3,
                std::to_string(cases) + " sets, " + std::to_string(violations) + " violations, min slack/budget "
                        + fmt("%.3g", worst) + ", strict share " + fmt("%.2f", share)};
}

Outcome equality_conditions()
{
        std::mt19937_64 rng(4);
        std::vector<CapFieldSet> witnesses;
        const EqualityOptions options{128, 512};
        for (int k = 0; k < 5; ++k)
        {
                const Window w{1, 3};
                const auto jumpy = random_jumpy(rng, 2, w);
                const RigidityVerdict v = classify(jumpy);
                if (v.witness)
                {
                        witnesses.push_back(*v.witness);
                }
                witnesses.push_back(counterexample_cantor(random_cantor(rng, 2, w), 0.5).set());
                for (int n : {2, 3})
                {
                        const auto gap = random_disconnected(rng, n, w, k % 2 == 1);
                        const RigidityVerdict g = classify(gap);
                        if (g.witness)
                        {
                                witnesses.push_back(*g.witness);
                        }
                        const auto smooth_p = random_smooth(rng, n, w);
                        witnesses.push_back(CapFieldSet(smooth_p, DirectionField::constant(n, 1, 3, random_unit(rng, n))));
                }
                const auto jumpy3 = random_jumpy(rng, 3, w);
                const JumpReason j = std::get<JumpReason>(classify(jumpy3).reasons.front());
                witnesses.push_back(glue(symmetral_from_profile(jumpy3), symmetral_from_profile(jumpy3), j.r,
                                         axis_rotation(random_unit(rng, 3), 0.25 * (j.upper - j.lower))));
        }
        double caps = 0;
        double normals = 0;
        for (const CapFieldSet& e : witnesses)
        {
                const EqualityScores s = verify_equality_conditions(e, RadialRange::open(e.r_min(), e.r_max()), options);
                caps = std::max(caps, s.slices_are_caps);
                normals = std::max(normals, s.normal_constancy);
        }
        const EqualityScores square
                = verify_equality_conditions(centred_square(1.0 / 256, 0.25), RadialRange::open(0.05, 0.37), {64, 4096});
        const bool pass = caps <= kExactScoreTolerance && normals <= kExactScoreTolerance && square.slices_are_caps > 0.1;
        return {pass, std::to_string(witnesses.size()) + " witnesses: caps " + fmt("%.2e", caps) + ", normals "
                              + fmt("%.2e", normals) + "; voxel square caps score " + fmt("%.3g", square.slices_are_caps)};
}

Outcome jump_counterexample()
{
        const auto p = single_jump();
        const double target = 7 * kPi / 3 + 4;
        const double pf = perimeter_symmetral(*p).total;
        const double pe = planar_perimeter(counterexample_jump(p, 2.0, 0.75, kPi / 12));
        const double slack = planar_perimeter(probe_jump(p, 2.0, kPi / 4)) - pf;
        const bool pass = std::fabs(pf - target) <= 1e-9 && std::fabs(pe - pf) <= 1e-9 && slack > 0.05;
        return {pass, "|P(F_v)-(7pi/3+4)| " + fmt("%.2e", std::fabs(pf - target)) + ", |P(E)-P(F_v)| "
                              + fmt("%.2e", std::fabs(pe - pf)) + ", probe slack " + fmt("%.6f", slack)};
}

Outcome cantor_counterexample()
{
        const auto p = cantor_profile(2, 1, 3, 1.5, 2.5, 0.8, 0.5, 16);
        const CantorCounterexample c = counterexample_cantor(p, 0.5);
        const double target = perimeter_symmetral(*p).total;
        double worst = 0;
        double previous = 1e300;
        bool monotone = true;
        double last = 0;
        for (int k : {2, 4, 6, 8})
        {
                const double pk = perimeter_symmetral(*c.step_profile(k)).total;
                worst = std::max(worst, std::fabs(planar_perimeter(c.step_set(k)) - pk));
                const double gap = std::fabs(pk - target);
                monotone = monotone && gap < previous;
                previous = gap;
                last = gap / target;
        }
        const bool pass = worst <= 1e-9 && monotone && last <= 1e-3;
        return {pass, "max |P(E^k)-P(F_{v^k})| " + fmt("%.2e", worst) + ", decreasing "
                              + (monotone ? std::string("yes") : std::string("no")) + ", rel gap at k=8 "
                              + fmt("%.2e", last)};
}

Outcome disconnect_counterexample()
{
        std::mt19937_64 rng(7);
        double worst = 0;
        bool classified = true;
        for (int k = 0; k < 10; ++k)
        {
                const Window w = random_window(rng);
                const auto p = random_disconnected(rng, 2, w, false);
                const RigidityVerdict v = classify(p);
                const IntervalViolation* iv
                        = v.reasons.empty() ? nullptr : std::get_if<IntervalViolation>(&v.reasons.front());
                classified = classified && !v.holds && iv && iv->kind == ViolationKind::alpha_zero;
                if (!iv)
                {
                        continue;
                }
                const CapFieldSet e = counterexample_disconnect(p, iv->r, planar_rotation(uniform(rng, 0.1, 2 * kPi - 0.1)));
                worst = std::max(worst, std::fabs(planar_perimeter(e) - perimeter_symmetral(*p).total));
        }
        return {worst <= 1e-9 && classified, "max |P(E)-P(F_v)| " + fmt("%.2e", worst) + ", classifier "
                                                     + (classified ? "interval_violation" : "MISSED")};
}

Outcome rigidity_dichotomy()
{
        std::mt19937_64 rng(8);
        int mismatches = 0;
        int witness_failures = 0;
        double min_bound = 1e300;
        double worst_extremal = 0;
        for (int cls = 0; cls < 4; ++cls)
        {
                for (int k = 0; k < 20; ++k)
                {
                        const Window w = random_window(rng);
                        std::shared_ptr<const Profile> p;
                        switch (cls)
                        {
                        case 0:
                                p = random_smooth(rng, 2, w);
                                break;
                        case 1:
                                p = random_jumpy(rng, 2, w);
                                break;
                        case 2:
                                p = random_cantor(rng, 2, w);
                                break;
                        default:
                                p = random_disconnected(rng, 2, w, k % 2 == 1);
                                break;
                        }
                        const RigidityVerdict v = classify(p);
                        bool label = false;
                        if (!v.reasons.empty())
                        {
                                const RigidityReason& r = v.reasons.front();
                                label = (cls == 1 && std::holds_alternative<JumpReason>(r))
                                        || (cls == 2 && std::holds_alternative<CantorReason>(r))
                                        || (cls == 3 && std::holds_alternative<IntervalViolation>(r));
                        }
                        if ((cls == 0) != v.holds || (cls != 0 && !label))
                        {
                                ++mismatches;
                        }
                        if (v.holds)
                        {
                                continue;
                        }
                        if (!v.witness)
                        {
                                ++witness_failures;
                                continue;
                        }
                        const double pf = perimeter_symmetral(*p).total;
                        const double err = std::fabs(planar_perimeter(*v.witness) - pf);
                        worst_extremal = std::max(worst_extremal, err);
                        const double bound = rotation_distance_bound(*v.witness);
                        min_bound = std::min(min_bound, bound);
                        if (err > engine_budget(Engine::planar_exact, pf) || !(bound > 0))
                        {
                                ++witness_failures;
                        }
                }
        }
        return {mismatches == 0 && witness_failures == 0,
                "80 profiles, " + std::to_string(mismatches) + " label mismatches, " + std::to_string(witness_failures)
                        + " witness failures, max |P(W)-P(F_v)| " + fmt("%.2e", worst_extremal)
                        + ", min distance bound " + fmt("%.3g", min_bound)};
}

Outcome ode_verification()
{
        std::mt19937_64 rng(9);
        double residual = 0;
        double drift = 0;
        for (int k = 0; k < 50; ++k)
        {
                const int n = k % 2 == 0 ? 2 : 3;
                const Window w = random_window(rng);
                const auto p = random_smooth(rng, n, w, 257);
                const CapFieldSet e(p, DirectionField::constant(n, w.a, w.b, random_unit(rng, n)));
                const OdeReport r = verify_ode(e, RadialRange::open(w.a, w.b));
                residual = std::max(residual, r.max_residual);
                drift = std::max(drift, r.max_direction_drift);
        }
        return {residual <= 1e-5 && drift <= 1e-6,
                "max ODE residual " + fmt("%.2e", residual) + ", max direction drift " + fmt("%.2e", drift)};
}

Outcome circular_coincidence()
{
        std::mt19937_64 rng(10);
        double worst = 0;
        bool samples_equal = true;
        for (int k = 0; k < 50; ++k)
        {
                const Window w = random_window(rng);
                std::shared_ptr<const Profile> p;
                switch (k % 3)
                {
                case 0:
                        p = random_smooth(rng, 2, w);
                        break;
                case 1:
                        p = random_jumpy(rng, 2, w);
                        break;
                default:
                        p = random_cantor(rng, 2, w);
                        break;
                }
                const double a = perimeter_symmetral(*p).total;
                const double b = perimeter_circular_symmetral(CircularProfile::planar(*p)).total;
                worst = std::max(worst, std::fabs(a - b));
                if (k < 10)
                {
                        const VoxelSet v = rasterize(random_capfield(p, rng(), 0.5), 1.0 / 64);
                        const CircularSymmetral c = circular_symmetrize(v, 2, 2048);
                        const SphericalSymmetral s = spherical_symmetrize(v, 2048);
                        samples_equal = samples_equal && c.profile.layers[0].alpha_samples() == s.profile->alpha_samples()
                                        && symmetric_difference_volume(c.set, rasterize_like(s.symmetral, v)) == 0;
                }
        }
        const double h = 1.0 / 128;
        double worst_ratio = 0;
        for (int k = 0; k < 10; ++k)
        {
                const Window w{uniform(rng, 0.1, 0.3), uniform(rng, 0.7, 0.9)};
                const auto p = random_smooth(rng, 3, w);
                const CapFieldSet tilted(p, DirectionField::constant(3, w.a, w.b, random_unit(rng, 3)));
                const VoxelSet got = iterate_circular(tilted, h, 2048);
                const VoxelSet want = rasterize_like(symmetral_from_profile(p), got);
                const double area = perimeter_symmetral(*p).total;
                worst_ratio = std::max(worst_ratio, symmetric_difference_volume(got, want) / (h * area));
        }
        return {worst <= 1e-9 && samples_equal && worst_ratio <= 20,
                "planar engines max diff " + fmt("%.2e", worst) + ", raster profiles "
                        + (samples_equal ? std::string("identical") : std::string("DIFFER"))
                        + ", iterated |diff|/(h P) max " + fmt("%.3g", worst_ratio)};
}

Outcome spherical_isoperimetry()
{
        std::mt19937_64 rng(11);
        double worst = 1e300;
        int shells = 0;
        for (int k = 0; k < 100; ++k)
        {
                const VoxelSet v = random_blobs(rng, 3, 1.0 / 32, 2 + static_cast<int>(rng() % 4));
                const EqualityScores s = verify_equality_conditions(v, RadialRange::open(0.1, 0.9), {16, 512});
                for (const ShellScore& row : s.per_shell)
                {
                        worst = std::min(worst, row.slices_are_caps);
                        ++shells;
                }
        }
        return {worst >= -kSampledScoreTolerance,
                std::to_string(shells) + " shells, min (boundary - cap boundary)/2 pi r " + fmt("%.3g", worst)};
}
}

int main()
{
        set_thread_count(static_cast<int>(std::max(1u, std::thread::hardware_concurrency())));
        const std::vector<Criterion> criteria{
                {1, "closed-form cap areas", 1, cap_areas},
                {2, "perimeter formula vs geometry", 1, perimeter_formula},
                {3, "perimeter inequality", 300, inequality},
                {4, "equality-case conditions", 60, equality_conditions},
                {5, "jump counterexample", 1, jump_counterexample},
                {6, "cantor counterexample", 10, cantor_counterexample},
                {7, "disconnection counterexample", 1, disconnect_counterexample},
                {8, "rigidity dichotomy", 120, rigidity_dichotomy},
                {9, "direction ODE", 30, ode_verification},
                {10, "circular/spherical coincidence", 300, circular_coincidence},
                {11, "spherical isoperimetry", 60, spherical_isoperimetry},
        };
        int failures = 0;
        for (const Criterion& c : criteria)
        {
                const auto start = std::chrono::steady_clock::now();
                Outcome o;
                try
                {
                        o = c.run();
                }
                catch (const std::exception& e)
                {
                        o = {false, std::string("exception: ") + e.what()};
                }
                const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                const bool in_time = elapsed < c.seconds;
                const bool pass = o.pass && in_time;
                failures += !pass;
                std::printf("criterion %2d %s  %s: %s (%.2f s of %.0f s)\n", c.id, pass ? "PASS" : "FAIL", c.name,
                            o.detail.c_str(), elapsed, c.seconds);
                std::fflush(stdout);
        }
        return failures == 0 ? 0 : 1;
}
