#include <sphsym/contour.hpp>
#include <sphsym/equality_analysis.hpp>
#include <sphsym/error.hpp>
#include <sphsym/parallel.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

namespace sphsym
{
namespace
{
constexpr double kDegenerateSine = 1e-6;

struct Span
{
        double lo;
        double hi;
};

Span clip(const RadialRange& range, double lo, double hi)
{
        return {std::max(range.lo, lo), std::min(range.hi, hi)};
}

Vec3 any_orthogonal(const Vec3& d)
{
        const Vec3 helper = std::fabs(d.z) < 0.9 ? kE3 : kE1;
        return normalized(cross(helper, d));
}

double omega_sin(int n, double alpha)
{
        return unit_ball_volume(n - 1) * std::pow(std::sin(alpha), n - 1);
}

// Radii where alpha or the direction is singular.
std::vector<double> singular_radii(const CapFieldSet& e)
{
        std::vector<double> out = e.direction().breaks();
        for (const Jump& j : e.profile().alpha_bv().jumps())
        {
                out.push_back(j.r);
        }
        std::sort(out.begin(), out.end());
        return out;
}

bool near_any(const std::vector<double>& radii, double s, double t)
{
        return std::any_of(radii.begin(), radii.end(), [&](double x) { return x >= s && x <= t; });
}

// d'(r) on a smooth stretch of the direction field.
Vec3 direction_derivative(const CapFieldSet& e, double r)
{
        const DirectionField& f = e.direction();
        if (e.dimension() == 2)
        {
                const double t = f.angle(r);
                return f.angle_derivative(r) * Vec3{-std::sin(t), std::cos(t), 0};
        }
        if (f.flow_staircase())
        {
                invalid_argument("equality analysis: n = 3 direction flows have no closed-form derivative");
        }
        const double delta = 1e-6 * std::max(1.0, r);
        return (normalized(f(r + delta)) - normalized(f(r - delta))) / (2 * delta);
}

double normal_radial(double r, double s)
{
        return -r * s / std::sqrt(1 + r * r * s * s);
}

// Cells [s, t] of the profile grid inside the span that avoid singular radii.
std::vector<Span> smooth_cells(const CapFieldSet& e, const Span& w)
{
        const RadialGrid& g = e.profile().grid();
        const std::vector<double> sing = singular_radii(e);
        std::vector<Span> out;
        for (int i = 0; i + 1 < g.count(); ++i)
        {
                const double s = std::max(g.node(i), w.lo);
                const double t = std::min(g.node(i + 1), w.hi);
                if (t > s && !near_any(sing, s, t))
                {
                        out.push_back({s, t});
                }
        }
        return out;
}

// Number of value changes around a cyclic sequence.
int cyclic_transitions(const std::vector<std::uint8_t>& v)
{
        int c = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
        {
                c += v[i] != v[(i + 1) % v.size()];
        }
        return c;
}

// Flips cyclic runs shorter than `min_run` samples until none remain.
void merge_short_runs(std::vector<std::uint8_t>& v, int min_run)
{
        const int m = static_cast<int>(v.size());
        for (bool changed = true; changed;)
        {
                changed = false;
                int start = 0;
                while (start < m && v[start] == v[(start + m - 1) % m])
                {
                        ++start;
                }
                if (start == m)
                {
                        return;
                }
                for (int k = 0; k < m;)
                {
                        const int i0 = (start + k) % m;
                        int len = 1;
                        while (len < m && v[(i0 + len) % m] == v[i0])
                        {
                                ++len;
                        }
                        if (len < min_run)
                        {
                                for (int q = 0; q < len; ++q)
                                {
                                        v[(i0 + q) % m] ^= 1;
                                }
                                changed = true;
                                break;
                        }
                        k += len;
                }
        }
}

struct SliceScore
{
        bool valid;
        double score;
};

// Planar slice: count boundary points against the two of a cap.
SliceScore planar_slice(std::vector<std::uint8_t> hits, int min_run)
{
        if (min_run > 1)
        {
                merge_short_runs(hits, min_run);
        }
        const auto occupied = std::count(hits.begin(), hits.end(), std::uint8_t{1});
        if (occupied == 0 || occupied == static_cast<long>(hits.size()))
        {
                return {false, 0};
        }
        return {true, (cyclic_transitions(hits) - 2) / 2.0};
}

// Spherical slice sampled on a (theta, phi) grid around `pole`: boundary length by
// binary marching squares against the cap of equal measured area.
template <typename Inside>
SliceScore spherical_slice(Inside&& inside, double r, int rows, std::optional<Vec3> pole = std::nullopt)
{
        const int cols = 2 * rows;
        const double dt = kPi / rows;
        const double dp = 2 * kPi / cols;
        const auto sample = [&](const Vec3& pole)
        {
                const Vec3 u = any_orthogonal(pole);
                const Vec3 w = cross(pole, u);
                std::vector<std::uint8_t> grid(static_cast<std::size_t>(rows) * cols);
                for (int i = 0; i < rows; ++i)
                {
                        const double t = (i + 0.5) * dt;
                        for (int j = 0; j < cols; ++j)
                        {
                                const double p = (j + 0.5) * dp;
                                const Vec3 x = std::cos(t) * pole + std::sin(t) * (std::cos(p) * u + std::sin(p) * w);
                                grid[static_cast<std::size_t>(i) * cols + j] = inside(r * x) ? 1 : 0;
                        }
                }
                return grid;
        };
        const auto band = [&](int i)
        {
                return (std::cos(i * dt) - std::cos((i + 1) * dt)) * dp;
        };

        std::vector<std::uint8_t> g;
        Vec3 mean;
        if (pole)
        {
                mean = *pole;
        }
        else
        {
                g = sample(kE3);
                const Vec3 u = any_orthogonal(kE3);
                const Vec3 w = cross(kE3, u);
                for (int i = 0; i < rows; ++i)
                {
                        const double t = (i + 0.5) * dt;
                        for (int j = 0; j < cols; ++j)
                        {
                                if (g[static_cast<std::size_t>(i) * cols + j])
                                {
                                        const double p = (j + 0.5) * dp;
                                        mean += band(i)
                                                * (std::cos(t) * kE3 + std::sin(t) * (std::cos(p) * u + std::sin(p) * w));
                                }
                        }
                }
        }
        if (norm(mean) < 1e-12)
        {
                return {false, 0};
        }
        g = sample(normalized(mean));

        double area = 0;
        for (int i = 0; i < rows; ++i)
        {
                for (int j = 0; j < cols; ++j)
                {
                        area += g[static_cast<std::size_t>(i) * cols + j] * band(i);
                }
        }
        if (area <= 0 || area >= 4 * kPi * (1 - 1e-12))
        {
                return {false, 0};
        }

        double length = 0;
        const auto seg = [&](double t0, double p0, double t1, double p1)
        {
                const double tm = 0.5 * (t0 + t1);
                length += std::hypot(t1 - t0, std::sin(tm) * (p1 - p0));
        };
        for (int i = 0; i + 1 < rows; ++i)
        {
                const double t0 = (i + 0.5) * dt;
                for (int j = 0; j < cols; ++j)
                {
                        const int jn = (j + 1) % cols;
                        const double p0 = (j + 0.5) * dp;
                        const int a = g[static_cast<std::size_t>(i) * cols + j];
                        const int b = g[static_cast<std::size_t>(i) * cols + jn];
                        const int c = g[static_cast<std::size_t>(i + 1) * cols + jn];
                        const int d = g[static_cast<std::size_t>(i + 1) * cols + j];
                        // Edge midpoints: bottom (a-b), right (b-c), top (d-c), left (a-d).
                        const double tb = t0;
                        const double tt = t0 + dt;
                        const double tm = t0 + 0.5 * dt;
                        const double pl = p0;
                        const double pr = p0 + dp;
                        const double pm = p0 + 0.5 * dp;
                        std::vector<std::pair<double, double>> pts;
                        if (a != b)
                        {
                                pts.emplace_back(tb, pm);
                        }
                        if (b != c)
                        {
                                pts.emplace_back(tm, pr);
                        }
                        if (d != c)
                        {
                                pts.emplace_back(tt, pm);
                        }
                        if (a != d)
                        {
                                pts.emplace_back(tm, pl);
                        }
                        if (pts.size() == 2)
                        {
                                seg(pts[0].first, pts[0].second, pts[1].first, pts[1].second);
                        }
                        else if (pts.size() == 4)
                        {
                                // Saddle: the centre average is 1/2; cut off the corners a and c.
                                seg(pts[0].first, pts[0].second, pts[3].first, pts[3].second);
                                seg(pts[1].first, pts[1].second, pts[2].first, pts[2].second);
                        }
                }
        }
        const double alpha = alpha_from_xi(Dimension(3), area);
        if (std::sin(alpha) < kDegenerateSine)
        {
                return {false, 0};
        }
        return {true, (length - 2 * kPi * std::sin(alpha)) / (2 * kPi)};
}

// Smoothed occupancy with trilinear sampling in world coordinates.
class SmoothField
{
        ScalarGrid g_;
        int pad_;
        std::array<int, 3> dims_;
        int n_;

public:
        SmoothField(const VoxelSet& v, int passes)
                : pad_(passes + 2),
                  dims_(v.dims()),
                  n_(v.dimension())
        {
                g_.h = v.spacing();
                g_.nx = dims_[0] + 2 * pad_;
                g_.ny = dims_[1] + 2 * pad_;
                g_.nz = n_ == 3 ? dims_[2] + 2 * pad_ : 1;
                g_.values.assign(static_cast<std::size_t>(g_.nx) * g_.ny * g_.nz, 0.0f);
                const int kp = n_ == 3 ? pad_ : 0;
                for (int k = 0; k < dims_[2]; ++k)
                {
                        for (int j = 0; j < dims_[1]; ++j)
                        {
                                for (int i = 0; i < dims_[0]; ++i)
                                {
                                        if (v.at(i, j, k))
                                        {
                                                g_.values[(static_cast<std::size_t>(k + kp) * g_.ny + j + pad_) * g_.nx
                                                          + i + pad_] = 1.0f;
                                        }
                                }
                        }
                }
                g_ = binomial_smooth(g_, passes);
        }

        double operator()(const Vec3& x) const
        {
                const double h = g_.h;
                std::array<double, 3> c{x.x / h + 0.5 * dims_[0] - 0.5 + pad_, x.y / h + 0.5 * dims_[1] - 0.5 + pad_,
                                        n_ == 3 ? x.z / h + 0.5 * dims_[2] - 0.5 + pad_ : 0.0};
                const std::array<int, 3> size{g_.nx, g_.ny, g_.nz};
                std::array<int, 3> i0{};
                std::array<double, 3> f{};
                for (int a = 0; a < 3; ++a)
                {
                        if (size[a] == 1)
                        {
                                continue;
                        }
                        c[a] = std::clamp(c[a], 0.0, size[a] - 1.000001);
                        i0[a] = static_cast<int>(std::floor(c[a]));
                        f[a] = c[a] - i0[a];
                }
                double s = 0;
                for (int corner = 0; corner < 8; ++corner)
                {
                        double w = 1;
                        std::array<int, 3> idx = i0;
                        for (int a = 0; a < 3; ++a)
                        {
                                const int bit = (corner >> a) & 1;
                                if (size[a] == 1)
                                {
                                        if (bit)
                                        {
                                                w = 0;
                                        }
                                        continue;
                                }
                                idx[a] += bit;
                                w *= bit ? f[a] : 1 - f[a];
                        }
                        if (w != 0)
                        {
                                s += w * g_.at(idx[0], idx[1], idx[2]);
                        }
                }
                return s;
        }

        Vec3 gradient(const Vec3& x) const
        {
                const double h = g_.h;
                Vec3 out;
                for (int a = 0; a < n_; ++a)
                {
                        Vec3 e;
                        e[a] = h;
                        out[a] = ((*this)(x + e) - (*this)(x - e)) / (2 * h);
                }
                return out;
        }
};

double spread(const std::vector<double>& values)
{
        if (values.size() < 2)
        {
                return 0;
        }
        const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
        return *hi - *lo;
}

void fold(EqualityScores& out, const Span& w, const std::vector<SliceScore>& caps, const std::vector<double>& normals,
          const std::vector<std::uint8_t>& valid)
{
        const double shells = static_cast<double>(caps.size());
        for (std::size_t i = 0; i < caps.size(); ++i)
        {
                if (!valid[i] || !caps[i].valid)
                {
                        ++out.excluded;
                        continue;
                }
                ++out.shells;
                out.slices_are_caps = std::max(out.slices_are_caps, caps[i].score);
                out.normal_constancy = std::max(out.normal_constancy, normals[i]);
                out.per_shell.push_back({w.lo + (w.hi - w.lo) * (i + 0.5) / shells, caps[i].score, normals[i]});
        }
}
}

Vec3 DirectionTrace::geometric_barycentre(int i, int n) const
{
        const double xi = cap_area(Dimension(n), 1, alpha.at(i));
        return xi > 0 ? (r.at(i) / xi) * b.at(i) : Vec3{};
}

DirectionTrace direction_trace(const CapFieldSet& e, const RadialRange& range, int samples)
{
        if (samples < 2)
        {
                invalid_argument("direction trace: need at least 2 samples");
        }
        const Span w = clip(range, e.r_min(), e.r_max());
        DirectionTrace t;
        if (!(w.hi > w.lo))
        {
                return t;
        }
        const int n = e.dimension();
        for (int i = 0; i < samples; ++i)
        {
                const double r = w.lo + (w.hi - w.lo) * i / (samples - 1);
                const double a = e.profile().alpha(r);
                const bool degenerate = std::sin(a) < kDegenerateSine;
                const Vec3 d = degenerate ? kE1 : normalized(e.direction()(r));
                t.r.push_back(r);
                t.alpha.push_back(a);
                t.d.push_back(d);
                t.b.push_back(omega_sin(n, a) * normalized(e.direction()(r)));
                t.degenerate.push_back(degenerate);
                t.excluded += degenerate;
        }
        return t;
}

DirectionTrace direction_trace(const VoxelSet& v, const RadialRange& range, int m)
{
        const double h = v.spacing();
        const int n = v.dimension();
        const Dimension dim(n);
        const double full = unit_sphere_area(dim);
        const Span w = clip(range, h, v.extent() - h);
        DirectionTrace t;
        const int first = static_cast<int>(std::ceil(w.lo / h - 1e-9));
        const int last = static_cast<int>(std::floor(w.hi / h + 1e-9));
        const int count = std::max(0, last - first + 1);
        t.r.resize(count);
        t.alpha.resize(count);
        t.d.resize(count);
        t.b.resize(count);
        std::vector<std::uint8_t> degenerate(count);
        parallel_for(static_cast<std::size_t>(count),
                     [&](std::size_t i)
                     {
                             const double r = (first + static_cast<int>(i)) * h;
                             const double a = alpha_from_xi(dim, full * slice_fraction(v, r, m));
                             const Vec3 b = slice_moment(v, r, m);
                             const bool bad = std::sin(a) < kDegenerateSine;
                             t.r[i] = r;
                             t.alpha[i] = a;
                             t.b[i] = b;
                             t.d[i] = bad ? kE1 : b / omega_sin(n, a);
                             degenerate[i] = bad;
                     });
        for (std::uint8_t d : degenerate)
        {
                t.degenerate.push_back(d != 0);
                t.excluded += d;
        }
        return t;
}

OdeReport verify_ode(const CapFieldSet& e, const RadialRange& range, double tolerance)
{
        const Profile& p = e.profile();
        const int n = e.dimension();
        const Span w = clip(range, e.r_min(), e.r_max());
        OdeReport rep;
        const auto b_at = [&](double r)
        {
                return omega_sin(n, p.alpha(r)) * normalized(e.direction()(r));
        };
        const double h = p.grid().spacing();
        const double delta = std::min(0.25 * h, 1e-4);
        std::optional<Vec3> d0;
        for (const Span& cell : smooth_cells(e, w))
        {
                const double r = 0.5 * (cell.lo + cell.hi);
                const double a = p.alpha(r);
                if (std::sin(a) < kDegenerateSine)
                {
                        ++rep.excluded;
                        continue;
                }
                const double dl = std::min(delta, 0.25 * (cell.hi - cell.lo));
                const Vec3 db = (b_at(r + dl) - b_at(r - dl)) / (2 * dl);
                const Vec3 rhs = ((n - 1) * p.alpha_bv().ac_derivative(r) * std::cos(a) / std::sin(a)) * b_at(r);
                const double res = norm(db - rhs);
                rep.rows.push_back({r, db, rhs, res});
                rep.max_residual = std::max(rep.max_residual, res);
                const Vec3 d = normalized(e.direction()(r));
                if (!d0)
                {
                        d0 = d;
                }
                rep.max_direction_drift = std::max(rep.max_direction_drift, norm(d - *d0));
        }
        rep.constant_direction = rep.max_residual <= tolerance && rep.max_direction_drift <= tolerance;
        return rep;
}

EqualityScores verify_equality_conditions(const CapFieldSet& e, const RadialRange& range, EqualityOptions options)
{
        if (options.shells < 1 || options.angular < 8)
        {
                invalid_argument("equality analysis: need at least 1 shell and 8 angular samples");
        }
        const Span w = clip(range, e.r_min(), e.r_max());
        EqualityScores out;
        if (!(w.hi > w.lo))
        {
                return out;
        }
        const int n = e.dimension();
        const Profile& p = e.profile();
        const std::vector<double> sing = singular_radii(e);
        const int shells = options.shells;
        std::vector<SliceScore> caps(shells);
        std::vector<double> normals(shells);
        std::vector<std::uint8_t> valid(shells);
        const std::vector<Vec3> circle = sphere_samples(2, options.angular);
        parallel_for(static_cast<std::size_t>(shells),
                     [&](std::size_t i)
                     {
                             const double r = w.lo + (w.hi - w.lo) * (i + 0.5) / shells;
                             const double a = p.alpha(r);
                             const double pad = 1e-9 * std::max(1.0, r);
                             if (std::sin(a) < kDegenerateSine || r <= 0 || near_any(sing, r - pad, r + pad))
                             {
                                     return;
                             }
                             valid[i] = 1;
                             if (n == 2)
                             {
                                     std::vector<std::uint8_t> hits(circle.size());
                                     for (std::size_t k = 0; k < circle.size(); ++k)
                                     {
                                             hits[k] = e.contains(r * circle[k]) ? 1 : 0;
                                     }
                                     caps[i] = planar_slice(std::move(hits), 1);
                             }
                             else
                             {
                                     caps[i] = spherical_slice([&](const Vec3& x) { return e.contains(x); }, r,
                                                               std::max(16, options.angular / 8),
                                                               normalized(e.direction()(r)));
                             }
                             const double s0 = p.alpha_bv().ac_derivative(r);
                             const double ds = norm(direction_derivative(e, r));
                             normals[i] = std::fabs(normal_radial(r, s0 + ds) - normal_radial(r, s0 - ds));
                     });
        fold(out, w, caps, normals, valid);
        return out;
}

EqualityScores verify_equality_conditions(const VoxelSet& v, const RadialRange& range, EqualityOptions options)
{
        if (options.shells < 1 || options.angular < 8)
        {
                invalid_argument("equality analysis: need at least 1 shell and 8 angular samples");
        }
        const double h = v.spacing();
        const int n = v.dimension();
        const Span w = clip(range, 2 * h, v.extent() - 2 * h);
        EqualityScores out;
        if (!(w.hi > w.lo))
        {
                return out;
        }
        const SmoothField field(v, 2);
        const int shells = options.shells;
        std::vector<SliceScore> caps(shells);
        std::vector<double> normals(shells);
        std::vector<std::uint8_t> valid(shells, 1);
        const std::vector<Vec3> circle = sphere_samples(2, options.angular);
        const std::vector<Vec3> sphere = n == 3 ? sphere_samples(3, 4 * options.angular) : std::vector<Vec3>{};
        const auto radial_normal = [&](const Vec3& x)
        {
                const Vec3 g = field.gradient(x);
                const double len = norm(g);
                return len > 0 ? -dot(g, x) / (len * norm(x)) : 0.0;
        };
        parallel_for(static_cast<std::size_t>(shells),
                     [&](std::size_t i)
                     {
                             const double r = w.lo + (w.hi - w.lo) * (i + 0.5) / shells;
                             std::vector<double> nu;
                             if (n == 2)
                             {
                                     const int m = static_cast<int>(circle.size());
                                     std::vector<std::uint8_t> hits(m);
                                     for (int k = 0; k < m; ++k)
                                     {
                                             hits[k] = v.occupied_at(r * circle[k]) ? 1 : 0;
                                     }
                                     const int min_run = static_cast<int>(std::ceil(1.5 * h / r * m / (2 * kPi)));
                                     caps[i] = planar_slice(hits, min_run);
                                     for (int k = 0; k < m; ++k)
                                     {
                                             const int next = (k + 1) % m;
                                             if (hits[k] != hits[next])
                                             {
                                                     nu.push_back(radial_normal(r * normalized(circle[k] + circle[next])));
                                             }
                                     }
                             }
                             else
                             {
                                     caps[i] = spherical_slice([&](const Vec3& x) { return v.occupied_at(x); }, r,
                                                               std::max(16, options.angular / 8));
                                     for (const Vec3& u : sphere)
                                     {
                                             const double f = field(r * u);
                                             if (f > 0.25 && f < 0.75)
                                             {
                                                     nu.push_back(radial_normal(r * u));
                                             }
                                     }
                             }
                             normals[i] = spread(nu);
                     });
        fold(out, w, caps, normals, valid);
        return out;
}

std::vector<LemmaRow> normal_identity(const CapFieldSet& e, const RadialRange& range, int samples)
{
        const Span w = clip(range, e.r_min(), e.r_max());
        std::vector<LemmaRow> out;
        if (!(w.hi > w.lo) || samples < 1)
        {
                return out;
        }
        const Profile& p = e.profile();
        const int n = e.dimension();
        const std::vector<double> sing = singular_radii(e);
        for (int i = 0; i < samples; ++i)
        {
                const double r = w.lo + (w.hi - w.lo) * (i + 0.5) / samples;
                const double a = p.alpha(r);
                const double pad = 1e-9 * std::max(1.0, r);
                if (!(a > 0 && a < kPi) || near_any(sing, r - pad, r + pad))
                {
                        continue;
                }
                const Vec3 d = normalized(e.direction()(r));
                const Vec3 u = n == 2 ? Vec3{-d.y, d.x, 0} : any_orthogonal(d);
                const double s = p.alpha_bv().ac_derivative(r) + dot(direction_derivative(e, r), u);
                const double nu_r = normal_radial(r, s);
                const double nu_t = 1 / std::sqrt(1 + r * r * s * s);
                out.push_back({r, rescaled_derivative(p, r), -sphere_measure(Dimension(n), r, a) * nu_r / nu_t});
        }
        return out;
}
}
