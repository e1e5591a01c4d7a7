#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <utility>

namespace sphsym::quadrature
{
/// Adaptive 15-point Gauss-Kronrod integration of a smooth integrand on [a, b].
template <typename F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-12, unsigned max_depth = 20)
{
        if (!(b > a))
        {
                return 0;
        }
        double error = 0;
        return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
                std::forward<F>(f), a, b, max_depth, rel_tol, &error);
}

/// Fixed 5-point Gauss-Legendre rule on [a, b]; exact for polynomials of degree 9.
template <typename F>
double gauss_legendre_5(F&& f, double a, double b)
{
        static constexpr double kNodes[5] = {0.0, -0.5384693101056831, 0.5384693101056831,
                                             -0.9061798459386640, 0.9061798459386640};
        static constexpr double kWeights[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                               0.2369268850561891, 0.2369268850561891};
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        double s = 0;
        for (int i = 0; i < 5; ++i)
        {
                s += kWeights[i] * f(mid + half * kNodes[i]);
        }
        return s * half;
}
}
