#include <sphsym/contour.hpp>
#include <sphsym/error.hpp>
#include <sphsym/perimeter.hpp>
#include <sphsym/quadrature.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace sphsym
{
namespace
{
constexpr int kCantorSubcells = 16;

struct Window
{
        double lo;
        double hi;
        RadialRange range;
        bool empty() const
        {
                return !(hi > lo);
        }
};

Window clip(const RadialGrid& g, const std::optional<RadialRange>& range)
{
        const RadialRange r = range.value_or(RadialRange::closed(g.r_min(), g.r_max()));
        if (r.hi < r.lo)
        {
                invalid_argument("perimeter: range with hi < lo");
        }
        return {std::max(r.lo, g.r_min()), std::min(r.hi, g.r_max()), r};
}

// Sorted cut points in [lo, hi]: grid nodes plus extra radii.
std::vector<double> cut_points(const Window& w, const RadialGrid& g, const std::vector<double>& extra)
{
        std::set<double> pts{w.lo, w.hi};
        for (int i = 0; i < g.count(); ++i)
        {
                const double r = g.node(i);
                if (r > w.lo && r < w.hi)
                {
                        pts.insert(r);
                }
        }
        for (double r : extra)
        {
                if (r > w.lo && r < w.hi)
                {
                        pts.insert(r);
                }
        }
        return {pts.begin(), pts.end()};
}

bool is_node(const RadialGrid& g, double r)
{
        const double t = (r - g.r_min()) / g.spacing();
        return std::fabs(t - std::round(t)) < 1e-9;
}

double piece_integral(const std::function<double(double)>& f, double s, double t, bool rough)
{
        if (!rough)
        {
                return quadrature::gauss_legendre_5(f, s, t);
        }
        double total = 0;
        for (int i = 0; i < kCantorSubcells; ++i)
        {
                total += quadrature::gauss_legendre_5(f, s + (t - s) * i / kCantorSubcells,
                                                      s + (t - s) * (i + 1) / kCantorSubcells);
        }
        return total;
}

bool touches_cantor(const std::optional<CantorComponent>& c, double s, double t)
{
        return c && t > c->a && s < c->b;
}

bool interior_angle(double a)
{
        return a > 0 && a < kPi;
}

double radial_offset(double r)
{
        return 1e-12 * std::max(1.0, std::fabs(r));
}

void finish(PerimeterReport& rep)
{
        rep.total = rep.ac_part + rep.singular_part;
}

// Boundary curves and jump terms of a planar layer described by its angle alpha;
// l = 2 r alpha, xi^l = 2 alpha.
PerimeterReport planar_layer(const Profile& layer, const std::optional<RadialRange>& range)
{
        const BVDecomposition& a = layer.alpha_bv();
        const RadialGrid& g = a.grid();
        PerimeterReport rep;
        const Window w = clip(g, range);
        if (w.empty())
        {
                return rep;
        }
        const auto angle = [&](double r)
        {
                return std::clamp(a(r), 0.0, kPi);
        };
        const auto p = [&](double r)
        {
                return interior_angle(angle(r)) ? 2.0 : 0.0;
        };
        const auto radial = [&](double r)
        {
                return interior_angle(angle(r)) ? r * 2 * a.ac_derivative(r) : 0.0;
        };
        const auto integrand = [&](double r)
        {
                return std::hypot(p(r), radial(r));
        };
        const auto ell_jump = [](double r, double left, double right)
        {
                return 2 * r * std::fabs(std::clamp(right, 0.0, kPi) - std::clamp(left, 0.0, kPi));
        };
        std::vector<double> extra;
        for (const Jump& j : a.jumps())
        {
                extra.push_back(j.r);
        }
        if (a.cantor())
        {
                extra.push_back(a.cantor()->a);
                extra.push_back(a.cantor()->b);
        }
        const std::vector<double> pts = cut_points(w, g, extra);
        const auto events = [&](double r)
        {
                double s = 0;
                if (r == g.r_min() && w.range.contains(r))
                {
                        s += ell_jump(r, 0, a.right_limit(r));
                }
                for (const Jump& j : a.jumps())
                {
                        if (j.r == r && w.range.contains(r))
                        {
                                s += ell_jump(r, j.left, j.right);
                        }
                }
                if (r == g.r_max() && w.range.contains(r))
                {
                        s += ell_jump(r, a.left_limit(r), 0);
                }
                return s;
        };
        const auto row = [&](double r)
        {
                rep.per_shell.push_back({r, p(r), radial(r), integrand(r), rep.ac_part + rep.singular_part});
        };
        rep.singular_part += events(pts.front());
        if (is_node(g, pts.front()))
        {
                row(pts.front());
        }
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        {
                const double s = pts[i];
                const double t = pts[i + 1];
                const bool rough = touches_cantor(a.cantor(), s, t);
                rep.ac_part += piece_integral(integrand, s, t, rough);
                rep.tangential_total += piece_integral(p, s, t, rough);
                if (a.cantor())
                {
                        rep.singular_part += 2 * a.cantor()->first_moment(s, t);
                }
                rep.singular_part += events(t);
                if (is_node(g, t))
                {
                        row(t);
                }
        }
        finish(rep);
        return rep;
}

// Jumps of l on one layer, including the implicit ones at the window ends.
struct EllJump
{
        double r;
        double size;
};

std::vector<EllJump> layer_jumps(const Profile& layer, const Window& w)
{
        const BVDecomposition& a = layer.alpha_bv();
        const RadialGrid& g = a.grid();
        std::vector<EllJump> out;
        const auto add = [&](double r, double left, double right)
        {
                const double size = 2 * r * (std::clamp(right, 0.0, kPi) - std::clamp(left, 0.0, kPi));
                if (size != 0 && w.range.contains(r) && r >= w.lo && r <= w.hi)
                {
                        out.push_back({r, size});
                }
        };
        add(g.r_min(), 0, a.right_limit(g.r_min()));
        for (const Jump& j : a.jumps())
        {
                add(j.r, j.left, j.right);
        }
        add(g.r_max(), a.left_limit(g.r_max()), 0);
        return out;
}

int jumps_below(const std::vector<EllJump>& jumps, double r)
{
        int c = 0;
        for (const EllJump& j : jumps)
        {
                c += j.r < r;
        }
        return c;
}

double ell_at(const Profile& layer, double r)
{
        if (!layer.grid().contains(r))
        {
                return 0;
        }
        return 2 * r * layer.alpha(r);
}

PerimeterReport layered_circular(const CircularProfile& l, const std::optional<RadialRange>& range)
{
        PerimeterReport rep;
        const int count = static_cast<int>(l.layers.size());
        const double hx = l.layer_spacing;
        std::vector<Window> windows;
        std::vector<std::vector<EllJump>> jumps;
        for (const Profile& layer : l.layers)
        {
                windows.push_back(clip(layer.grid(), range));
                jumps.push_back(layer_jumps(layer, windows.back()));
        }

        for (int k = 0; k < count; ++k)
        {
                const Profile& layer = l.layers[k];
                const Window& w = windows[k];
                if (w.empty())
                {
                        continue;
                }
                const BVDecomposition& a = layer.alpha_bv();
                const auto gradient = [&](double r)
                {
                        const int below = jumps_below(jumps[k], r);
                        const bool lo_ok = k > 0 && jumps_below(jumps[k - 1], r) == below;
                        const bool hi_ok = k + 1 < count && jumps_below(jumps[k + 1], r) == below;
                        if (lo_ok && hi_ok)
                        {
                                return (ell_at(l.layers[k + 1], r) - ell_at(l.layers[k - 1], r)) / (2 * hx);
                        }
                        if (hi_ok)
                        {
                                return (ell_at(l.layers[k + 1], r) - ell_at(layer, r)) / hx;
                        }
                        if (lo_ok)
                        {
                                return (ell_at(layer, r) - ell_at(l.layers[k - 1], r)) / hx;
                        }
                        return 0.0;
                };
                const auto p = [&](double r)
                {
                        return interior_angle(layer.alpha(r)) ? 2.0 : 0.0;
                };
                const auto integrand = [&](double r)
                {
                        const double radial = interior_angle(layer.alpha(r)) ? 2 * r * a.ac_derivative(r) : 0.0;
                        const double g = gradient(r);
                        return std::sqrt(p(r) * p(r) + radial * radial + g * g);
                };
                std::vector<double> extra;
                for (const Jump& j : a.jumps())
                {
                        extra.push_back(j.r);
                }
                const std::vector<double> pts = cut_points(w, layer.grid(), extra);
                for (std::size_t i = 0; i + 1 < pts.size(); ++i)
                {
                        rep.ac_part += hx * quadrature::gauss_legendre_5(integrand, pts[i], pts[i + 1]);
                        rep.tangential_total += hx * quadrature::gauss_legendre_5(p, pts[i], pts[i + 1]);
                }
        }

        const auto half_walls = [&](int k)
        {
                double s = 0;
                for (const EllJump& j : jumps[k])
                {
                        s += 0.5 * hx * std::fabs(j.size);
                }
                return s;
        };
        const auto mid_plane = [&](int lower, int upper)
        {
                std::vector<double> extra;
                const Profile* ref = nullptr;
                for (int k : {lower, upper})
                {
                        if (k >= 0 && k < count)
                        {
                                ref = &l.layers[k];
                                for (const EllJump& j : jumps[k])
                                {
                                        extra.push_back(j.r);
                                }
                        }
                }
                const Window w = clip(ref->grid(), range);
                if (w.empty())
                {
                        return 0.0;
                }
                const auto diff = [&](double r)
                {
                        const double a = lower >= 0 ? ell_at(l.layers[lower], r) : 0.0;
                        const double b = upper < count ? ell_at(l.layers[upper], r) : 0.0;
                        return std::fabs(b - a);
                };
                const std::vector<double> pts = cut_points(w, ref->grid(), extra);
                double s = 0;
                for (std::size_t i = 0; i + 1 < pts.size(); ++i)
                {
                        s += quadrature::gauss_legendre_5(diff, pts[i], pts[i + 1]);
                }
                return s;
        };

        for (int k = -1; k < count; ++k)
        {
                const int upper = k + 1;
                const bool both = k >= 0 && upper < count;
                if (both && jumps[k].size() == jumps[upper].size())
                {
                        for (std::size_t i = 0; i < jumps[k].size(); ++i)
                        {
                                const double dr = jumps[upper][i].r - jumps[k][i].r;
                                rep.singular_part += 0.5 * (std::fabs(jumps[k][i].size) + std::fabs(jumps[upper][i].size))
                                                     * std::hypot(dr, hx);
                        }
                        continue;
                }
                if (k >= 0)
                {
                        rep.singular_part += half_walls(k);
                }
                if (upper < count)
                {
                        rep.singular_part += half_walls(upper);
                }
                rep.singular_part += mid_plane(k, upper);
        }
        finish(rep);
        return rep;
}
}

double singular_slice_contribution(Dimension n, double r, double alpha_minus, double alpha_plus, double separation)
{
        return cap_symmetric_difference(n, r, std::clamp(alpha_minus, 0.0, kPi), std::clamp(alpha_plus, 0.0, kPi),
                                        std::clamp(separation, 0.0, kPi));
}

PerimeterReport perimeter_symmetral(const Profile& p, const std::optional<RadialRange>& range)
{
        const Dimension dim = p.dimension();
        const int e = dim.value() - 1;
        const BVDecomposition& a = p.alpha_bv();
        const RadialGrid& g = p.grid();
        PerimeterReport rep;
        const Window w = clip(g, range);
        if (w.empty())
        {
                return rep;
        }
        const auto slice_boundary = [&](double r)
        {
                const double al = p.alpha(r);
                return interior_angle(al) ? sphere_measure(dim, r, al) : 0.0;
        };
        const auto integrand = [&](double r)
        {
                return std::hypot(slice_boundary(r), rescaled_derivative(p, r));
        };
        const auto xi_of = [&](double al)
        {
                return cap_area(dim, 1, std::clamp(al, 0.0, kPi));
        };
        std::vector<double> extra;
        for (const Jump& j : a.jumps())
        {
                extra.push_back(j.r);
        }
        if (a.cantor())
        {
                extra.push_back(a.cantor()->a);
                extra.push_back(a.cantor()->b);
        }
        const std::vector<double> pts = cut_points(w, g, extra);
        const auto events = [&](double r)
        {
                double s = 0;
                const double weight = std::pow(r, e);
                if (r == g.r_min() && w.range.contains(r))
                {
                        s += weight * xi_of(a.right_limit(r));
                }
                for (const Jump& j : a.jumps())
                {
                        if (j.r == r && w.range.contains(r))
                        {
                                s += weight * std::fabs(xi_of(j.right) - xi_of(j.left));
                        }
                }
                if (r == g.r_max() && w.range.contains(r))
                {
                        s += weight * xi_of(a.left_limit(r));
                }
                return s;
        };
        const auto row = [&](double r)
        {
                rep.per_shell.push_back(
                        {r, slice_boundary(r), rescaled_derivative(p, r), integrand(r), rep.ac_part + rep.singular_part});
        };
        rep.singular_part += events(pts.front());
        if (is_node(g, pts.front()))
        {
                row(pts.front());
        }
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        {
                const double s = pts[i];
                const double t = pts[i + 1];
                const bool rough = touches_cantor(a.cantor(), s, t);
                rep.ac_part += piece_integral(integrand, s, t, rough);
                rep.tangential_total += piece_integral(slice_boundary, s, t, rough);
                if (rough)
                {
                        rep.singular_part += p.xi_cantor_weighted(RadialRange::closed(s, t));
                }
                rep.singular_part += events(t);
                if (is_node(g, t))
                {
                        row(t);
                }
        }
        finish(rep);
        return rep;
}

PerimeterReport perimeter_circular_symmetral(const CircularProfile& l, const std::optional<RadialRange>& range)
{
        if (l.layers.empty())
        {
                invalid_argument("circular perimeter: profile has no layers");
        }
        for (const Profile& layer : l.layers)
        {
                if (layer.dimension().value() != 2)
                {
                        invalid_argument("circular perimeter: layers must be planar angle profiles");
                }
        }
        if (l.n == 2)
        {
                if (l.layers.size() != 1)
                {
                        invalid_argument("circular perimeter: n = 2 profiles have exactly one layer");
                }
                return planar_layer(l.layers.front(), range);
        }
        if (l.n != 3)
        {
                invalid_argument("circular perimeter: n must be 2 or 3");
        }
        if (!(l.layer_spacing > 0))
        {
                invalid_argument("circular perimeter: layer spacing must be positive");
        }
        return layered_circular(l, range);
}

namespace
{
struct SingularRadius
{
        double r;
        double alpha_minus;
        double alpha_plus;
        double separation;
};

std::vector<SingularRadius> singular_radii(const CapFieldSet& e, const Profile& prof, const Window& w)
{
        const BVDecomposition& a = prof.alpha_bv();
        const DirectionField& d = e.direction();
        std::set<double> radii;
        for (const Jump& j : a.jumps())
        {
                radii.insert(j.r);
        }
        for (double b : d.breaks())
        {
                radii.insert(b);
        }
        std::vector<SingularRadius> out;
        const double r_min = prof.grid().r_min();
        const double r_max = prof.grid().r_max();
        if (w.lo == r_min && w.range.contains(r_min))
        {
                out.push_back({r_min, 0, a.right_limit(r_min), 0});
        }
        for (double r : radii)
        {
                if (!(r > r_min && r < r_max) || !(r >= w.lo && r <= w.hi) || !w.range.contains(r))
                {
                        continue;
                }
                const double dr = radial_offset(r);
                const Vec3 dm = normalized(d.left(r - dr));
                const Vec3 dp = normalized(d.right(r + dr));
                out.push_back({r, a.left_limit(r), a.right_limit(r), geodesic_distance(dm, dp)});
        }
        if (w.hi == r_max && w.range.contains(r_max))
        {
                out.push_back({r_max, a.left_limit(r_max), 0, 0});
        }
        return out;
}

PerimeterReport planar_capfield(const CapFieldSet& e, const Window& w)
{
        const Profile& prof = e.profile();
        const BVDecomposition& a = prof.alpha_bv();
        const DirectionField& d = e.direction();
        const RadialGrid& g = prof.grid();
        PerimeterReport rep;

        const auto count = [&](double r)
        {
                return interior_angle(prof.alpha(r)) ? 2.0 : 0.0;
        };
        const auto integrand = [&](double r)
        {
                if (!interior_angle(prof.alpha(r)))
                {
                        return 0.0;
                }
                const double da = a.ac_derivative(r);
                const double dt = d.angle_derivative(r);
                return std::hypot(1.0, r * (dt + da)) + std::hypot(1.0, r * (dt - da));
        };

        std::vector<double> extra = d.breaks();
        for (const Jump& j : a.jumps())
        {
                extra.push_back(j.r);
        }
        if (a.cantor())
        {
                extra.push_back(a.cantor()->a);
                extra.push_back(a.cantor()->b);
        }
        for (const DirectionPiece& piece : d.pieces())
        {
                if (const auto* proc = std::get_if<AngleProcess>(&piece.source); proc && proc->flow)
                {
                        extra.push_back(proc->flow_lo);
                        extra.push_back(proc->flow_hi);
                }
        }
        const std::vector<double> pts = cut_points(w, g, extra);
        const std::vector<SingularRadius> sing = singular_radii(e, prof, w);
        const CantorComponent* flow = d.flow_staircase();
        const auto& alpha_cantor = a.cantor();

        const auto events = [&](double r)
        {
                double s = 0;
                for (const SingularRadius& x : sing)
                {
                        if (x.r == r)
                        {
                                s += singular_slice_contribution(Dimension(2), r, x.alpha_minus, x.alpha_plus, x.separation);
                        }
                }
                return s;
        };
        const auto cantor_piece = [&](double s, double t)
        {
                const double kt = d.cantor_coefficient(0.5 * (s + t));
                const bool alpha_here = alpha_cantor && alpha_cantor->variation(s, t) > 0;
                if (alpha_here)
                {
                        if (kt != 0 && !(flow && flow->a == alpha_cantor->a && flow->b == alpha_cantor->b))
                        {
                                invalid_argument("cap-field perimeter: direction and angle carry different overlapping "
                                                 "Cantor staircases");
                        }
                        const double ka = alpha_cantor->scale;
                        return (std::fabs(kt + ka) + std::fabs(kt - ka)) / std::fabs(ka)
                               * alpha_cantor->first_moment(s, t);
                }
                if (kt != 0 && flow)
                {
                        return 2 * std::fabs(kt) / std::fabs(flow->scale) * flow->first_moment(s, t);
                }
                return 0.0;
        };
        const auto row = [&](double r)
        {
                rep.per_shell.push_back(
                        {r, count(r), 2 * r * a.ac_derivative(r), integrand(r), rep.ac_part + rep.singular_part});
        };

        rep.singular_part += events(pts.front());
        if (is_node(g, pts.front()))
        {
                row(pts.front());
        }
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        {
                const double s = pts[i];
                const double t = pts[i + 1];
                const bool rough = touches_cantor(alpha_cantor, s, t);
                rep.ac_part += piece_integral(integrand, s, t, rough);
                rep.tangential_total += piece_integral(count, s, t, rough);
                rep.singular_part += cantor_piece(s, t);
                rep.singular_part += events(t);
                if (is_node(g, t))
                {
                        row(t);
                }
        }
        finish(rep);
        return rep;
}

Vec3 any_orthogonal(const Vec3& d)
{
        const Vec3 helper = std::fabs(d.z) < 0.9 ? kE3 : kE1;
        return normalized(cross(helper, d));
}

PerimeterReport meshed_capfield(const CapFieldSet& e, const Window& w, MeshOptions mesh)
{
        PerimeterReport rep;
        if (e.direction().flow_staircase())
        {
                invalid_argument("cap-field perimeter: the n = 3 mesh engine does not resolve Cantor direction flows");
        }
        if (mesh.radial < 2 || mesh.angular < 3)
        {
                invalid_argument("cap-field perimeter: mesh needs at least 2 radial rows and 3 angular columns");
        }
        std::shared_ptr<const Profile> prof_ptr = e.profile_ptr();
        if (const auto& c = e.profile().alpha_bv().cantor())
        {
                prof_ptr = std::make_shared<const Profile>(e.profile().cantor_step_approximant(c->depth));
                rep.warnings.push_back("Cantor part of alpha replaced by its depth-" + std::to_string(c->depth)
                                       + " step approximant");
        }
        const Profile& prof = *prof_ptr;
        const BVDecomposition& a = prof.alpha_bv();
        const DirectionField& d = e.direction();
        const Dimension dim(3);

        const std::vector<SingularRadius> sing = singular_radii(e, prof, w);
        std::vector<double> cuts{w.lo};
        for (const SingularRadius& x : sing)
        {
                rep.singular_part += singular_slice_contribution(dim, x.r, x.alpha_minus, x.alpha_plus, x.separation);
                if (x.r > w.lo && x.r < w.hi)
                {
                        cuts.push_back(x.r);
                }
        }
        cuts.push_back(w.hi);

        const int cols = mesh.angular;
        std::vector<double> cphi(cols + 1);
        std::vector<double> sphi(cols + 1);
        for (int j = 0; j <= cols; ++j)
        {
                const double phi = 2 * kPi * (j % cols) / cols;
                cphi[j] = std::cos(phi);
                sphi[j] = std::sin(phi);
        }

        for (std::size_t c = 0; c + 1 < cuts.size(); ++c)
        {
                const double s = cuts[c];
                const double t = cuts[c + 1];
                const int rows = std::max(2, static_cast<int>(std::lround(mesh.radial * (t - s) / (w.hi - w.lo))));
                std::vector<Vec3> prev(cols + 1);
                std::vector<Vec3> cur(cols + 1);
                Vec3 u;
                for (int i = 0; i <= rows; ++i)
                {
                        const double r = i == rows ? t : s + (t - s) * i / rows;
                        const double al = std::clamp(i == 0 ? a.right_limit(r) : (i == rows ? a.left_limit(r) : a(r)), 0.0,
                                                     kPi);
                        const Vec3 dir = normalized(i == 0 ? d.right(r) : d.left(r));
                        u = i == 0 ? any_orthogonal(dir) : normalized(u - dot(u, dir) * dir);
                        const Vec3 v = cross(dir, u);
                        const double ca = std::cos(al);
                        const double sa = std::sin(al);
                        for (int j = 0; j <= cols; ++j)
                        {
                                cur[j] = r * (ca * dir + sa * (cphi[j] * u + sphi[j] * v));
                        }
                        if (i > 0)
                        {
                                const double r0 = s + (t - s) * (i - 1) / rows;
                                double strip = 0;
                                double tangential = 0;
                                for (int j = 0; j < cols; ++j)
                                {
                                        const Vec3* tri[2][3] = {{&prev[j], &cur[j], &cur[j + 1]},
                                                                 {&prev[j], &cur[j + 1], &prev[j + 1]}};
                                        for (const auto& tr : tri)
                                        {
                                                const Vec3 nrm = cross(*tr[1] - *tr[0], *tr[2] - *tr[0]);
                                                const double twice = norm(nrm);
                                                if (twice == 0)
                                                {
                                                        continue;
                                                }
                                                const Vec3 centroid = (*tr[0] + *tr[1] + *tr[2]) / 3.0;
                                                const double cn = norm(centroid);
                                                const Vec3 nu = nrm / twice;
                                                double tan_part = 1;
                                                if (cn > 0)
                                                {
                                                        const Vec3 xh = centroid / cn;
                                                        tan_part = norm(nu - dot(nu, xh) * xh);
                                                }
                                                strip += 0.5 * twice;
                                                tangential += 0.5 * twice * tan_part;
                                        }
                                }
                                rep.ac_part += strip;
                                rep.tangential_total += tangential;
                                const double rm = 0.5 * (r0 + r);
                                const double am = prof.alpha(rm);
                                rep.per_shell.push_back({rm, interior_angle(am) ? sphere_measure(dim, rm, am) : 0.0,
                                                         rescaled_derivative(prof, rm), strip / (r - r0),
                                                         rep.ac_part + rep.singular_part});
                        }
                        std::swap(prev, cur);
                }
        }
        finish(rep);
        return rep;
}
}

PerimeterReport perimeter_capfield(const CapFieldSet& e, const std::optional<RadialRange>& range, MeshOptions mesh)
{
        const Window w = clip(e.profile().grid(), range);
        if (w.empty())
        {
                return {};
        }
        switch (e.dimension())
        {
        case 2:
                return planar_capfield(e, w);
        case 3:
                return meshed_capfield(e, w, mesh);
        default:
                invalid_argument("cap-field perimeter: n must be 2 or 3");
        }
}

double perimeter_voxel(const VoxelSet& v, int smoothing_passes)
{
        if (smoothing_passes < 0)
        {
                invalid_argument("voxel perimeter: smoothing passes must be >= 0");
        }
        const int pad = smoothing_passes + 2;
        const auto& d = v.dims();
        ScalarGrid g;
        g.h = v.spacing();
        g.nx = d[0] + 2 * pad;
        g.ny = d[1] + 2 * pad;
        g.nz = v.dimension() == 3 ? d[2] + 2 * pad : 1;
        g.values.assign(static_cast<std::size_t>(g.nx) * g.ny * g.nz, 0.0f);
        const int kp = v.dimension() == 3 ? pad : 0;
        for (int k = 0; k < d[2]; ++k)
        {
                for (int j = 0; j < d[1]; ++j)
                {
                        for (int i = 0; i < d[0]; ++i)
                        {
                                if (v.at(i, j, k))
                                {
                                        g.values[(static_cast<std::size_t>(k + kp) * g.ny + j + pad) * g.nx + i + pad] = 1.0f;
                                }
                        }
                }
        }
        const ScalarGrid s = binomial_smooth(g, smoothing_passes);
        return v.dimension() == 2 ? contour_length(s, 0.5) : isosurface_area(s, 0.5);
}

const char* engine_name(Engine e)
{
        switch (e)
        {
        case Engine::formula:
                return "formula";
        case Engine::planar_exact:
                return "planar_exact";
        case Engine::mesh:
                return "mesh";
        case Engine::voxel:
                return "voxel";
        }
        return "unknown";
}

double engine_budget(Engine e, double perimeter, double h)
{
        switch (e)
        {
        case Engine::formula:
                return 1e-9;
        case Engine::planar_exact:
                return 1e-6 * perimeter + 1e-9;
        case Engine::mesh:
                return 2e-3 * perimeter;
        case Engine::voxel:
                return 5 * h * perimeter;
        }
        return 0;
}

InequalityCheck check_inequality(const CapFieldSet& e, const std::optional<RadialRange>& range, MeshOptions mesh)
{
        InequalityCheck c;
        c.engine = e.dimension() == 2 ? Engine::planar_exact : Engine::mesh;
        c.p_set = perimeter_capfield(e, range, mesh).total;
        c.p_symmetral = perimeter_symmetral(e.profile(), range).total;
        c.p_symmetral_formula = c.p_symmetral;
        c.slack = c.p_set - c.p_symmetral;
        c.budget = engine_budget(c.engine, std::max(c.p_set, c.p_symmetral));
        c.holds = c.slack >= -c.budget;
        return c;
}

InequalityCheck check_inequality(const VoxelSet& v, int m)
{
        InequalityCheck c;
        c.engine = Engine::voxel;
        const SphericalSymmetral sym = spherical_symmetrize(v, m);
        c.p_set = perimeter_voxel(v);
        c.p_symmetral = perimeter_voxel(rasterize_like(sym.symmetral, v));
        c.p_symmetral_formula = perimeter_symmetral(*sym.profile).total;
        c.slack = c.p_set - c.p_symmetral;
        c.budget = engine_budget(c.engine, c.p_set, v.spacing());
        c.holds = c.slack >= -c.budget;
        return c;
}
}
