#pragma once

#include "cantor.hpp"
#include "vec.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace sphsym
{
/// Fixed direction.
struct ConstantDirection final
{
        Vec3 direction = kE1;
};

/// Planar angle process theta(r) = theta0 + sum_k a_k sin(k pi (r - w0)/(w1 - w0)) + beta(r),
/// where beta(r) = lambda (c(clamp(r, flow_lo, flow_hi)) - c(flow_lo)) follows a Cantor staircase c.
/// The direction is (cos theta, sin theta, 0).
struct AngleProcess final
{
        double theta0 = 0;
        std::vector<double> coefficients;
        double w0 = 0;
        double w1 = 1;
        std::optional<CantorComponent> flow;
        double lambda = 0;
        double flow_lo = 0;
        double flow_hi = 0;

        double angle(double r) const;
        /// Derivative of the absolutely continuous part.
        double ac_derivative(double r) const;
        /// Coefficient of the staircase measure d|c|/|scale| in d theta near r.
        double cantor_coefficient(double r) const;
};

/// Direction on S^2: Rz(azimuth(r)) Ry(-elevation(r)) e1.
struct TiltProcess final
{
        AngleProcess azimuth;
        AngleProcess elevation;
};

using DirectionSource = std::variant<ConstantDirection, AngleProcess, TiltProcess>;

/// One radial piece [from, to] of a direction field, evaluated as transform * source(r).
struct DirectionPiece final
{
        double from;
        double to;
        DirectionSource source;
        Mat3 transform;
};

/// Radius-dependent centre direction d(r) in S^{n-1}, n in {2, 3}.
///
/// Pieces partition the window; at a break the inner piece owns the radius,
/// so evaluation is left-continuous like the profile representative.
class DirectionField final
{
        int n_;
        std::vector<DirectionPiece> pieces_;

        const DirectionPiece& piece_at(double r, bool right) const;

public:
        DirectionField(int n, std::vector<DirectionPiece> pieces);

        static DirectionField constant(int n, double r_min, double r_max, const Vec3& d = kE1);
        /// Planar rotations R_{angle_k} e1 on [breaks_k, breaks_{k+1}].
        static DirectionField piecewise_rotation(int n, double r_min, double r_max, const std::vector<double>& breaks,
                                                 const std::vector<double>& angles);
        static DirectionField cantor_flow(int n, double r_min, double r_max, const CantorComponent& cantor,
                                          double lambda, double flow_lo, double flow_hi);
        /// Seeded smooth random field: amplitude scales the Fourier coefficients.
        static DirectionField fourier_random(int n, double r_min, double r_max, unsigned seed, double amplitude,
                                             int modes = 4);

        int dimension() const
        {
                return n_;
        }
        const std::vector<DirectionPiece>& pieces() const
        {
                return pieces_;
        }
        double r_min() const
        {
                return pieces_.front().from;
        }
        double r_max() const
        {
                return pieces_.back().to;
        }

        Vec3 operator()(double r) const;
        Vec3 left(double r) const;
        Vec3 right(double r) const;

        /// Interior radii where pieces meet.
        std::vector<double> breaks() const;

        /// n = 2 only: signed angle of d(r) and the AC derivative of a continuous lift.
        double angle(double r, bool right = false) const;
        double angle_derivative(double r) const;
        /// n = 2 only: coefficient multiplying the flow staircase measure near r, and
        /// the staircase itself (if any piece carries one).
        double cantor_coefficient(double r) const;
        const CantorComponent* flow_staircase() const;

        /// Restricts to [lo, hi] (pieces clipped).
        DirectionField clipped(double lo, double hi) const;

        /// Field with every piece transformed by `rotation`.
        DirectionField transformed(const Mat3& rotation) const;

        /// max over samples of the geodesic distance from d(r_min).
        double oscillation(int samples = 2048) const;
};

/// inner on [r_min, r_bar], outer on [r_bar, r_max].
DirectionField join_fields(const DirectionField& inner, const DirectionField& outer, double r_bar);
}
