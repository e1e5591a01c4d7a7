#include <sphsym/direction_field.hpp>
#include <sphsym/error.hpp>
#include <sphsym/sphere_geometry.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace sphsym
{
namespace
{
constexpr double kUnit = 1e-12;

Vec3 source_direction(const DirectionSource& s, double r)
{
        return std::visit(
                [r](const auto& src) -> Vec3
                {
                        using T = std::decay_t<decltype(src)>;
                        if constexpr (std::is_same_v<T, ConstantDirection>)
                        {
                                return src.direction;
                        }
                        else if constexpr (std::is_same_v<T, AngleProcess>)
                        {
                                const double t = src.angle(r);
                                return {std::cos(t), std::sin(t), 0};
                        }
                        else
                        {
                                const double az = src.azimuth.angle(r);
                                const double el = src.elevation.angle(r);
                                return {std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el)};
                        }
                },
                s);
}

// n = 2: the transform acts on angles as theta -> s theta + phi
struct PlanarAction
{
        double sign;
        double phi;
};

PlanarAction planar_action(const Mat3& t)
{
        const Vec3 a = t * kE1;
        const Vec3 b = t * kE2;
        const double det = a.x * b.y - a.y * b.x;
        return {det >= 0 ? 1.0 : -1.0, std::atan2(a.y, a.x)};
}

double source_angle(const DirectionSource& s, double r)
{
        if (const auto* c = std::get_if<ConstantDirection>(&s))
        {
                return std::atan2(c->direction.y, c->direction.x);
        }
        if (const auto* p = std::get_if<AngleProcess>(&s))
        {
                return p->angle(r);
        }
        invalid_argument("direction field: tilt processes are not planar");
}

double source_angle_derivative(const DirectionSource& s, double r)
{
        if (const auto* p = std::get_if<AngleProcess>(&s))
        {
                return p->ac_derivative(r);
        }
        return 0;
}

double source_cantor(const DirectionSource& s, double r)
{
        if (const auto* p = std::get_if<AngleProcess>(&s))
        {
                return p->cantor_coefficient(r);
        }
        return 0;
}

AngleProcess random_process(std::mt19937_64& rng, double r_min, double r_max, double amplitude, int modes,
                            double theta_range)
{
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        AngleProcess p;
        p.theta0 = theta_range * unit(rng);
        p.w0 = r_min;
        p.w1 = r_max;
        for (int k = 1; k <= modes; ++k)
        {
                p.coefficients.push_back(amplitude * unit(rng) / k);
        }
        return p;
}
}

double AngleProcess::angle(double r) const
{
        double t = theta0;
        const double len = w1 - w0;
        for (std::size_t k = 0; k < coefficients.size(); ++k)
        {
                t += coefficients[k] * std::sin((k + 1) * kPi * (r - w0) / len);
        }
        if (flow && lambda != 0)
        {
                const double c = std::clamp(r, flow_lo, flow_hi);
                t += lambda * ((*flow)(c) - (*flow)(flow_lo));
        }
        return t;
}

double AngleProcess::ac_derivative(double r) const
{
        double d = 0;
        const double len = w1 - w0;
        for (std::size_t k = 0; k < coefficients.size(); ++k)
        {
                const double w = (k + 1) * kPi / len;
                d += coefficients[k] * w * std::cos(w * (r - w0));
        }
        return d;
}

double AngleProcess::cantor_coefficient(double r) const
{
        if (!flow || lambda == 0 || r < flow_lo || r > flow_hi)
        {
                return 0;
        }
        return lambda * flow->scale;
}

DirectionField::DirectionField(int n, std::vector<DirectionPiece> pieces)
        : n_(n),
          pieces_(std::move(pieces))
{
        if (n != 2 && n != 3)
        {
                invalid_argument("direction field: n must be 2 or 3, got " + std::to_string(n));
        }
        if (pieces_.empty())
        {
                invalid_argument("direction field: at least one piece is required");
        }
        for (std::size_t i = 0; i < pieces_.size(); ++i)
        {
                const DirectionPiece& p = pieces_[i];
                if (!(p.to > p.from))
                {
                        invalid_argument("direction field: piece with empty radial range");
                }
                if (i > 0 && std::fabs(p.from - pieces_[i - 1].to) > 1e-12)
                {
                        invalid_argument("direction field: pieces must be contiguous");
                }
                if (orthogonality_defect(p.transform) > 1e-9)
                {
                        invalid_argument("direction field: piece transform is not orthogonal");
                }
                if (n == 2)
                {
                        if (std::holds_alternative<TiltProcess>(p.source))
                        {
                                invalid_argument("direction field: tilt processes need n = 3");
                        }
                        if (std::fabs((p.transform * kE1).z) > 1e-12 || std::fabs((p.transform * kE2).z) > 1e-12)
                        {
                                invalid_argument("direction field: n = 2 transforms must preserve the (x1, x2) plane");
                        }
                }
                if (const auto* c = std::get_if<ConstantDirection>(&p.source))
                {
                        if (std::fabs(norm(c->direction) - 1) > kUnit || (n == 2 && c->direction.z != 0))
                        {
                                invalid_argument("direction field: constant direction must be a unit vector in R^"
                                                 + std::to_string(n));
                        }
                }
        }
}

DirectionField DirectionField::constant(int n, double r_min, double r_max, const Vec3& d)
{
        return DirectionField(n, {{r_min, r_max, ConstantDirection{d}, Mat3::identity()}});
}

DirectionField DirectionField::piecewise_rotation(int n, double r_min, double r_max, const std::vector<double>& breaks,
                                                  const std::vector<double>& angles)
{
        if (angles.size() != breaks.size() + 1)
        {
                invalid_argument("piecewise rotation: need one more angle than breaks");
        }
        std::vector<DirectionPiece> pieces;
        double from = r_min;
        for (std::size_t i = 0; i < angles.size(); ++i)
        {
                const double to = i < breaks.size() ? breaks[i] : r_max;
                pieces.push_back({from, to, ConstantDirection{kE1}, planar_rotation(angles[i])});
                from = to;
        }
        return DirectionField(n, std::move(pieces));
}

DirectionField DirectionField::cantor_flow(int n, double r_min, double r_max, const CantorComponent& cantor,
                                           double lambda, double flow_lo, double flow_hi)
{
        if (!(flow_hi > flow_lo))
        {
                invalid_argument("cantor flow: support must satisfy a < b");
        }
        AngleProcess p;
        p.w0 = r_min;
        p.w1 = r_max;
        p.flow = cantor;
        p.lambda = lambda;
        p.flow_lo = flow_lo;
        p.flow_hi = flow_hi;
        return DirectionField(n, {{r_min, r_max, p, Mat3::identity()}});
}

DirectionField DirectionField::fourier_random(int n, double r_min, double r_max, unsigned seed, double amplitude,
                                              int modes)
{
        std::mt19937_64 rng(seed);
        if (n == 2)
        {
                return DirectionField(
                        n, {{r_min, r_max, random_process(rng, r_min, r_max, amplitude, modes, kPi), Mat3::identity()}});
        }
        TiltProcess t;
        t.azimuth = random_process(rng, r_min, r_max, amplitude, modes, kPi);
        t.elevation = random_process(rng, r_min, r_max, amplitude, modes, kPi / 3);
        return DirectionField(n, {{r_min, r_max, t, Mat3::identity()}});
}

const DirectionPiece& DirectionField::piece_at(double r, bool right) const
{
        for (const DirectionPiece& p : pieces_)
        {
                if (right ? r < p.to : r <= p.to)
                {
                        return p;
                }
        }
        return pieces_.back();
}

Vec3 DirectionField::operator()(double r) const
{
        return left(r);
}

Vec3 DirectionField::left(double r) const
{
        const DirectionPiece& p = piece_at(r, false);
        return p.transform * source_direction(p.source, r);
}

Vec3 DirectionField::right(double r) const
{
        const DirectionPiece& p = piece_at(r, true);
        return p.transform * source_direction(p.source, r);
}

std::vector<double> DirectionField::breaks() const
{
        std::vector<double> out;
        for (std::size_t i = 1; i < pieces_.size(); ++i)
        {
                out.push_back(pieces_[i].from);
        }
        return out;
}

double DirectionField::angle(double r, bool right) const
{
        if (n_ != 2)
        {
                invalid_argument("direction field: angle() needs n = 2");
        }
        const DirectionPiece& p = piece_at(r, right);
        const PlanarAction act = planar_action(p.transform);
        return act.sign * source_angle(p.source, r) + act.phi;
}

double DirectionField::angle_derivative(double r) const
{
        const DirectionPiece& p = piece_at(r, false);
        return planar_action(p.transform).sign * source_angle_derivative(p.source, r);
}

double DirectionField::cantor_coefficient(double r) const
{
        const DirectionPiece& p = piece_at(r, false);
        return planar_action(p.transform).sign * source_cantor(p.source, r);
}

const CantorComponent* DirectionField::flow_staircase() const
{
        for (const DirectionPiece& p : pieces_)
        {
                if (const auto* a = std::get_if<AngleProcess>(&p.source); a && a->flow && a->lambda != 0)
                {
                        return &*a->flow;
                }
        }
        return nullptr;
}

DirectionField DirectionField::clipped(double lo, double hi) const
{
        std::vector<DirectionPiece> out;
        for (const DirectionPiece& p : pieces_)
        {
                const double from = std::max(p.from, lo);
                const double to = std::min(p.to, hi);
                if (to > from)
                {
                        DirectionPiece q = p;
                        q.from = from;
                        q.to = to;
                        out.push_back(std::move(q));
                }
        }
        return DirectionField(n_, std::move(out));
}

DirectionField DirectionField::transformed(const Mat3& rotation) const
{
        std::vector<DirectionPiece> out = pieces_;
        for (DirectionPiece& p : out)
        {
                p.transform = rotation * p.transform;
        }
        return DirectionField(n_, std::move(out));
}

double DirectionField::oscillation(int samples) const
{
        const Vec3 d0 = right(r_min());
        double worst = 0;
        for (int i = 0; i <= samples; ++i)
        {
                const double r = r_min() + (r_max() - r_min()) * i / samples;
                worst = std::max({worst, geodesic_distance(normalized(left(r)), d0),
                                  geodesic_distance(normalized(right(r)), d0)});
        }
        return worst;
}

DirectionField join_fields(const DirectionField& inner, const DirectionField& outer, double r_bar)
{
        if (inner.dimension() != outer.dimension())
        {
                invalid_argument("join: direction fields of different dimension");
        }
        std::vector<DirectionPiece> pieces = inner.clipped(inner.r_min(), r_bar).pieces();
        const DirectionField tail = outer.clipped(r_bar, outer.r_max());
        for (const DirectionPiece& p : tail.pieces())
        {
                pieces.push_back(p);
        }
        return DirectionField(inner.dimension(), std::move(pieces));
}
}
