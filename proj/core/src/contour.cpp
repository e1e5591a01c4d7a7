#include <sphsym/contour.hpp>
#include <sphsym/error.hpp>
#include <sphsym/vec.hpp>

#include <array>
#include <cmath>

namespace sphsym
{
namespace
{
double crossing(double a, double b, double level)
{
        return (level - a) / (b - a);
}

struct Corner
{
        Vec3 p;
        double f;
};

Vec3 edge_point(const Corner& a, const Corner& b, double level)
{
        const double t = crossing(a.f, b.f, level);
        return a.p + t * (b.p - a.p);
}

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c)
{
        return 0.5 * norm(cross(b - a, c - a));
}

double tetra_area(const std::array<Corner, 4>& t, double level)
{
        std::array<int, 4> in{};
        std::array<int, 4> out{};
        int ni = 0;
        int no = 0;
        for (int v = 0; v < 4; ++v)
        {
                if (t[v].f > level)
                {
                        in[ni++] = v;
                }
                else
                {
                        out[no++] = v;
                }
        }
        if (ni == 0 || ni == 4)
        {
                return 0;
        }
        if (ni == 1 || ni == 3)
        {
                const int lone = ni == 1 ? in[0] : out[0];
                const std::array<int, 4>& others = ni == 1 ? out : in;
                const std::array<int, 3> rest{others[0], others[1], others[2]};
                return triangle_area(edge_point(t[lone], t[rest[0]], level), edge_point(t[lone], t[rest[1]], level),
                                     edge_point(t[lone], t[rest[2]], level));
        }
        const Vec3 ac = edge_point(t[in[0]], t[out[0]], level);
        const Vec3 ad = edge_point(t[in[0]], t[out[1]], level);
        const Vec3 bd = edge_point(t[in[1]], t[out[1]], level);
        const Vec3 bc = edge_point(t[in[1]], t[out[0]], level);
        return triangle_area(ac, ad, bd) + triangle_area(ac, bd, bc);
}
}

ScalarGrid binomial_smooth(const ScalarGrid& g, int passes)
{
        ScalarGrid cur = g;
        ScalarGrid next = g;
        const std::array<int, 3> n{g.nx, g.ny, g.nz};
        for (int pass = 0; pass < passes; ++pass)
        {
                for (int axis = 0; axis < 3; ++axis)
                {
                        if (n[axis] == 1)
                        {
                                continue;
                        }
                        const std::size_t stride = axis == 0 ? 1 : (axis == 1 ? static_cast<std::size_t>(g.nx)
                                                                              : static_cast<std::size_t>(g.nx) * g.ny);
                        for (int k = 0; k < g.nz; ++k)
                        {
                                for (int j = 0; j < g.ny; ++j)
                                {
                                        for (int i = 0; i < g.nx; ++i)
                                        {
                                                const std::array<int, 3> idx{i, j, k};
                                                const std::size_t c = (static_cast<std::size_t>(k) * g.ny + j) * g.nx + i;
                                                const float lo = idx[axis] > 0 ? cur.values[c - stride] : 0.0f;
                                                const float hi = idx[axis] + 1 < n[axis] ? cur.values[c + stride] : 0.0f;
                                                next.values[c] = 0.25f * lo + 0.5f * cur.values[c] + 0.25f * hi;
                                        }
                                }
                        }
                        std::swap(cur.values, next.values);
                }
        }
        return cur;
}

double contour_length(const ScalarGrid& g, double level)
{
        if (g.nz != 1)
        {
                invalid_argument("contour_length: grid must be two-dimensional");
        }
        double total = 0;
        for (int j = 0; j + 1 < g.ny; ++j)
        {
                for (int i = 0; i + 1 < g.nx; ++i)
                {
                        // corners counterclockwise: (i,j), (i+1,j), (i+1,j+1), (i,j+1)
                        const std::array<Corner, 4> c{Corner{{0, 0, 0}, g.at(i, j)}, Corner{{g.h, 0, 0}, g.at(i + 1, j)},
                                                      Corner{{g.h, g.h, 0}, g.at(i + 1, j + 1)},
                                                      Corner{{0, g.h, 0}, g.at(i, j + 1)}};
                        std::array<bool, 4> inside{};
                        int count = 0;
                        for (int v = 0; v < 4; ++v)
                        {
                                inside[v] = c[v].f > level;
                                count += inside[v];
                        }
                        if (count == 0 || count == 4)
                        {
                                continue;
                        }
                        // edge e joins corner e and corner e+1
                        std::array<Vec3, 4> pts{};
                        std::array<bool, 4> cut{};
                        for (int e = 0; e < 4; ++e)
                        {
                                const int f = (e + 1) % 4;
                                cut[e] = inside[e] != inside[f];
                                if (cut[e])
                                {
                                        pts[e] = edge_point(c[e], c[f], level);
                                }
                        }
                        const bool saddle = cut[0] && cut[1] && cut[2] && cut[3];
                        if (!saddle)
                        {
                                Vec3 ends[2];
                                int m = 0;
                                for (int e = 0; e < 4; ++e)
                                {
                                        if (cut[e])
                                        {
                                                ends[m++] = pts[e];
                                        }
                                }
                                total += norm(ends[1] - ends[0]);
                                continue;
                        }
                        const bool centre = 0.25 * (c[0].f + c[1].f + c[2].f + c[3].f) > level;
                        for (int v = 0; v < 4; ++v)
                        {
                                if (inside[v] != centre)
                                {
                                        total += norm(pts[v] - pts[(v + 3) % 4]);
                                }
                        }
                }
        }
        return total;
}

double isosurface_area(const ScalarGrid& g, double level)
{
        static constexpr int kPaths[6][2] = {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}};
        double total = 0;
        for (int k = 0; k + 1 < g.nz; ++k)
        {
                for (int j = 0; j + 1 < g.ny; ++j)
                {
                        for (int i = 0; i + 1 < g.nx; ++i)
                        {
                                std::array<Corner, 8> c{};
                                bool any_in = false;
                                bool any_out = false;
                                for (int v = 0; v < 8; ++v)
                                {
                                        const int di = v & 1;
                                        const int dj = (v >> 1) & 1;
                                        const int dk = (v >> 2) & 1;
                                        c[v] = {{di * g.h, dj * g.h, dk * g.h}, g.at(i + di, j + dj, k + dk)};
                                        (c[v].f > level ? any_in : any_out) = true;
                                }
                                if (!any_in || !any_out)
                                {
                                        continue;
                                }
                                for (const auto& path : kPaths)
                                {
                                        const int a = 1 << path[0];
                                        const int b = a | (1 << path[1]);
                                        total += tetra_area({c[0], c[a], c[b], c[7]}, level);
                                }
                        }
                }
        }
        return total;
}
}
