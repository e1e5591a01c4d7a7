#pragma once

#include "vec.hpp"

namespace sphsym
{
/// Ambient dimension n >= 2.
class Dimension final
{
        int n_;

public:
        explicit Dimension(int n);

        constexpr int value() const
        {
                return n_;
        }
        friend constexpr bool operator==(Dimension, Dimension) = default;
};

/// Open geodesic ball of angular radius `beta` around `center` on the sphere of radius `r`.
struct GeodesicCap final
{
        double r;
        double beta;
        Vec3 center;

        GeodesicCap(double r, double beta, const Vec3& center);

        bool contains(const Vec3& x) const;
};

/// Volume of the unit ball in R^k (omega_k), k >= 0.
double unit_ball_volume(int k);

/// H^{n-1} of the unit sphere S^{n-1}, i.e. n * omega_n.
double unit_sphere_area(Dimension n);

/// Angle between unit vectors, in [0, pi].
double geodesic_distance(const Vec3& x, const Vec3& y);

/// H^{n-1} of a geodesic ball of angle beta on the sphere of radius r.
double cap_area(Dimension n, double r, double beta);

/// H^{n-2} of the geodesic sphere of angle beta on the sphere of radius r.
double sphere_measure(Dimension n, double r, double beta);

/// d/dbeta of cap_area(n, 1, beta); equals the geodesic sphere measure away from the
/// endpoints and stays finite (2 for n = 2) at beta in {0, pi}.
double cap_area_derivative(Dimension n, double beta);

/// Inverse of beta -> cap_area(n, 1, beta).
double alpha_from_xi(Dimension n, double xi);

/// H^{n-1} of the intersection of two caps with angles a, b whose centres are
/// `separation` radians apart, on the sphere of radius r. n in {2, 3}.
double cap_intersection_area(Dimension n, double r, double a, double b, double separation);

/// H^{n-1} of the symmetric difference of two caps; n in {2, 3}.
double cap_symmetric_difference(Dimension n, double r, double a, double b, double separation);
}
