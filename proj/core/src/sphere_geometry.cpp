#include <sphsym/error.hpp>
#include <sphsym/quadrature.hpp>
#include <sphsym/sphere_geometry.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace sphsym
{
namespace
{
constexpr double kPi2 = kPi * kPi;

constexpr std::array<double, 9> kUnitBallVolumes = {
        1.0,
        2.0,
        kPi,
        4.0 * kPi / 3.0,
        kPi2 / 2.0,
        8.0 * kPi2 / 15.0,
        kPi2 * kPi / 6.0,
        16.0 * kPi2 * kPi / 105.0,
        kPi2 * kPi2 / 24.0};

constexpr double kUnitTolerance = 1e-9;
constexpr double kXiTolerance = 1e-12;

void check_angle(double beta, const char* what)
{
        if (!(beta >= 0 && beta <= kPi))
        {
                invalid_argument(std::string(what) + ": angle " + std::to_string(beta) + " outside [0, pi]");
        }
}

void check_radius(double r, const char* what)
{
        if (!(r >= 0) || !std::isfinite(r))
        {
                invalid_argument(std::string(what) + ": radius must be finite and non-negative");
        }
}

// integral of (sin t)^m on [0, beta]
double sine_power_integral(int m, double beta)
{
        if (m == 0)
        {
                return beta;
        }
        if (m == 1)
        {
                return 1 - std::cos(beta);
        }
        return quadrature::integrate(
                [m](double t)
                {
                        return std::pow(std::sin(t), m);
                },
                0.0, beta, 1e-13);
}

double arc_overlap(double a, double b, double separation)
{
        // arcs [-a, a] and [d - b, d + b] on the unit circle
        double total = 0;
        for (int k = -1; k <= 1; ++k)
        {
                const double shift = separation + 2 * kPi * k;
                const double lo = std::max(-a, shift - b);
                const double hi = std::min(a, shift + b);
                if (hi > lo)
                {
                        total += hi - lo;
                }
        }
        return std::min(total, std::min(2 * a, 2 * b));
}

double safe_acos(double x)
{
        return std::acos(std::clamp(x, -1.0, 1.0));
}

double lens_area_unit(double a, double b, double d)
{
        const double full = 4 * kPi;
        const double area_a = 2 * kPi * (1 - std::cos(a));
        const double area_b = 2 * kPi * (1 - std::cos(b));
        if (a <= 0 || b <= 0 || d >= a + b)
        {
                return 0;
        }
        if (d + std::min(a, b) <= std::max(a, b))
        {
                return std::min(area_a, area_b);
        }
        if (a + b + d >= 2 * kPi)
        {
                // complements are disjoint
                return std::max(0.0, area_a + area_b - full);
        }
        const double ca = std::cos(a);
        const double cb = std::cos(b);
        const double cd = std::cos(d);
        const double sa = std::sin(a);
        const double sb = std::sin(b);
        const double sd = std::sin(d);
        const double area = 2
                            * (kPi - safe_acos((cd - ca * cb) / (sa * sb)) - ca * safe_acos((cb - cd * ca) / (sd * sa))
                               - cb * safe_acos((ca - cd * cb) / (sd * sb)));
        return std::clamp(area, 0.0, std::min(area_a, area_b));
}
}

Dimension::Dimension(int n)
        : n_(n)
{
        if (n < 2)
        {
                invalid_argument("dimension must be >= 2, got " + std::to_string(n));
        }
}

GeodesicCap::GeodesicCap(double r, double beta, const Vec3& center)
        : r(r),
          beta(beta),
          center(center)
{
        if (!(r > 0))
        {
                invalid_argument("geodesic cap: radius must be positive");
        }
        check_angle(beta, "geodesic cap");
        if (std::fabs(norm(center) - 1) > 1e-12)
        {
                invalid_argument("geodesic cap: centre must be a unit vector");
        }
}

bool GeodesicCap::contains(const Vec3& x) const
{
        const double len = norm(x);
        if (std::fabs(len - r) > 1e-9 * std::max(1.0, r))
        {
                return false;
        }
        return geodesic_distance(x / len, center) < beta;
}

double unit_ball_volume(int k)
{
        if (k < 0)
        {
                invalid_argument("unit ball volume: negative dimension");
        }
        if (k < static_cast<int>(kUnitBallVolumes.size()))
        {
                return kUnitBallVolumes[k];
        }
        return std::pow(kPi, 0.5 * k) / std::tgamma(0.5 * k + 1);
}

double unit_sphere_area(Dimension n)
{
        return n.value() * unit_ball_volume(n.value());
}

double geodesic_distance(const Vec3& x, const Vec3& y)
{
        if (std::fabs(norm(x) - 1) > kUnitTolerance || std::fabs(norm(y) - 1) > kUnitTolerance)
        {
                invalid_argument("geodesic distance: arguments must be unit vectors");
        }
        // atan2 keeps full accuracy near 0 and pi, where acos loses digits
        return std::atan2(norm(cross(x, y)), dot(x, y));
}

double cap_area(Dimension n, double r, double beta)
{
        check_radius(r, "cap area");
        check_angle(beta, "cap area");
        const int d = n.value();
        if (d == 2)
        {
                return 2 * r * beta;
        }
        if (d == 3)
        {
                return 2 * kPi * r * r * (1 - std::cos(beta));
        }
        return (d - 1) * unit_ball_volume(d - 1) * std::pow(r, d - 1) * sine_power_integral(d - 2, beta);
}

double sphere_measure(Dimension n, double r, double beta)
{
        check_radius(r, "sphere measure");
        check_angle(beta, "sphere measure");
        const int d = n.value();
        if (d == 2)
        {
                return (beta > 0 && beta < kPi) ? 2.0 : 0.0;
        }
        return (d - 1) * unit_ball_volume(d - 1) * std::pow(r, d - 2) * std::pow(std::sin(beta), d - 2);
}

double cap_area_derivative(Dimension n, double beta)
{
        const int d = n.value();
        if (d == 2)
        {
                return 2.0;
        }
        return (d - 1) * unit_ball_volume(d - 1) * std::pow(std::sin(beta), d - 2);
}

double alpha_from_xi(Dimension n, double xi)
{
        const double full = unit_sphere_area(n);
        if (!(xi >= -kXiTolerance && xi <= full + kXiTolerance))
        {
                invalid_argument("alpha_from_xi: normalized measure " + std::to_string(xi) + " outside [0, n*omega_n]");
        }
        xi = std::clamp(xi, 0.0, full);
        const int d = n.value();
        if (d == 2)
        {
                return xi / 2;
        }
        if (d == 3)
        {
                return safe_acos(1 - xi / (2 * kPi));
        }
        if (xi == 0)
        {
                return 0;
        }
        if (xi == full)
        {
                return kPi;
        }
        // bracketed Newton; the derivative vanishes at both ends of [0, pi]
        double lo = 0;
        double hi = kPi;
        double beta = kPi * xi / full;
        for (int iter = 0; iter < 200; ++iter)
        {
                const double f = cap_area(n, 1, beta) - xi;
                if (f > 0)
                {
                        hi = beta;
                }
                else
                {
                        lo = beta;
                }
                const double df = cap_area_derivative(n, beta);
                double next = (df > 0) ? beta - f / df : 0.5 * (lo + hi);
                if (!(next > lo && next < hi))
                {
                        next = 0.5 * (lo + hi);
                }
                if (std::fabs(next - beta) < 1e-14 || hi - lo < 1e-12)
                {
                        return next;
                }
                beta = next;
        }
        return beta;
}

double cap_intersection_area(Dimension n, double r, double a, double b, double separation)
{
        check_radius(r, "cap intersection");
        check_angle(a, "cap intersection");
        check_angle(b, "cap intersection");
        check_angle(separation, "cap intersection");
        switch (n.value())
        {
        case 2:
                return r * arc_overlap(a, b, separation);
        case 3:
                return r * r * lens_area_unit(a, b, separation);
        default:
                invalid_argument("cap intersection: only n in {2, 3} is supported");
        }
}

double cap_symmetric_difference(Dimension n, double r, double a, double b, double separation)
{
        const double overlap = cap_intersection_area(n, r, a, b, separation);
        return std::max(0.0, cap_area(n, r, a) + cap_area(n, r, b) - 2 * overlap);
}
}
