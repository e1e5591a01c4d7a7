#pragma once

#include <sphsym/rigidity.hpp>
#include <sphsym/sets.hpp>

#include <cmath>
#include <memory>
#include <random>
#include <vector>

namespace sphsym::testing
{
inline std::shared_ptr<const Profile> share(Profile p)
{
        return std::make_shared<const Profile>(std::move(p));
}

/// alpha = alpha0 on [a, b].
inline std::shared_ptr<const Profile> sector(int n, double a, double b, double alpha0, int count = 65)
{
        return share(constant_profile(Dimension(n), RadialGrid(a, b, count), alpha0));
}

/// pi/3 on (1, 2], pi/6 on (2, 3): jump at 2, window (1, 3).
inline std::shared_ptr<const Profile> single_jump(int n = 2, int count = 65)
{
        const RadialGrid g(1, 3, count);
        AlphaSpec spec;
        spec.ac_samples.assign(g.count(), kPi / 3);
        spec.jumps.push_back({2.0, kPi / 3, kPi / 6});
        return share(make_profile(Dimension(n), g, std::move(spec)));
}

/// Smooth alpha in (0, pi) on [a, b].
inline std::shared_ptr<const Profile> smooth(int n, double a, double b, double base, double amp, double freq,
                                             int count = 257)
{
        return share(sampled_profile(Dimension(n), RadialGrid(a, b, count),
                                     [&](double r) { return base + amp * std::sin(freq * r); }));
}

/// Linear ramp plus a ternary staircase rising by `scale` on [c0, c1].
inline std::shared_ptr<const Profile> cantor_profile(int n, double a, double b, double c0, double c1, double base,
                                                     double scale, int depth = 8, int count = 129)
{
        return share(sampled_profile(Dimension(n), RadialGrid(a, b, count), [&](double r) { return base + 0.05 * (r - a); },
                                     {}, CantorComponent(c0, c1, scale, depth)));
}

/// alpha vanishes on a middle stretch: two components of {0 < alpha < pi}.
inline std::shared_ptr<const Profile> gapped(int n, double a, double b, double gap_lo, double gap_hi, double level,
                                             int count = 129)
{
        return share(sampled_profile(Dimension(n), RadialGrid(a, b, count),
                                     [&](double r) { return r > gap_lo && r < gap_hi ? 0.0 : level; }));
}

/// Random smooth direction field composed with a rigid rotation.
inline CapFieldSet random_capfield(const std::shared_ptr<const Profile>& p, unsigned seed, double amplitude)
{
        return CapFieldSet(p, DirectionField::fourier_random(p->dimension().value(), p->grid().r_min(), p->grid().r_max(),
                                                             seed, amplitude));
}
}
