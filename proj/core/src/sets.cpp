#include <sphsym/error.hpp>
#include <sphsym/parallel.hpp>
#include <sphsym/sets.hpp>
#include <sphsym/sphere_geometry.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace sphsym
{
CapFieldSet::CapFieldSet(std::shared_ptr<const Profile> profile, DirectionField direction)
        : profile_(std::move(profile)),
          direction_(std::move(direction))
{
        if (!profile_)
        {
                invalid_argument("cap-field set: missing profile");
        }
        if (direction_.dimension() != profile_->dimension().value())
        {
                invalid_argument("cap-field set: direction field and profile disagree on n");
        }
        if (std::fabs(direction_.r_min() - r_min()) > 1e-12 || std::fabs(direction_.r_max() - r_max()) > 1e-12)
        {
                invalid_argument("cap-field set: direction field must cover the profile window");
        }
}

bool CapFieldSet::contains(const Vec3& x) const
{
        const Vec3 p = dimension() == 2 ? Vec3{x.x, x.y, 0} : x;
        const double r = norm(p);
        if (r < r_min() || r > r_max())
        {
                return false;
        }
        const double a = profile_->alpha(r);
        if (a <= 0)
        {
                return false;
        }
        if (r == 0)
        {
                return true;
        }
        return geodesic_distance(p / r, direction_(r)) < a;
}

CapFieldSet symmetral_from_profile(std::shared_ptr<const Profile> p)
{
        const int n = p->dimension().value();
        const double lo = p->grid().r_min();
        const double hi = p->grid().r_max();
        return CapFieldSet(std::move(p), DirectionField::constant(n, lo, hi));
}

CapFieldSet symmetral_from_profile(const Profile& p)
{
        return symmetral_from_profile(std::make_shared<const Profile>(p));
}

CapFieldSet glue(const CapFieldSet& inner, const CapFieldSet& outer, double r_bar, const Mat3& rotation)
{
        if (!(r_bar > inner.r_min() && r_bar < inner.r_max()))
        {
                invalid_argument("glue: r_bar = " + std::to_string(r_bar) + " is outside the window");
        }
        if (inner.profile_ptr() != outer.profile_ptr())
        {
                const Profile& a = inner.profile();
                const Profile& b = outer.profile();
                if (!(a.grid() == b.grid()) || a.alpha_samples() != b.alpha_samples()
                    || a.alpha_bv().jumps().size() != b.alpha_bv().jumps().size())
                {
                        invalid_argument("glue: the two sets must carry the same profile");
                }
        }
        if (orthogonality_defect(rotation) > 1e-9)
        {
                invalid_argument("glue: rotation is not orthogonal");
        }
        return CapFieldSet(inner.profile_ptr(),
                           join_fields(inner.direction(), outer.direction().transformed(rotation), r_bar));
}

VoxelSet::VoxelSet(int n, double h, std::array<int, 3> dims)
        : VoxelSet(n, h, dims,
                   std::vector<std::uint8_t>(static_cast<std::size_t>(std::max(dims[0], 0))
                                             * std::max(dims[1], 0) * std::max(dims[2], 0)))
{
}

VoxelSet::VoxelSet(int n, double h, std::array<int, 3> dims, std::vector<std::uint8_t> occupancy)
        : n_(n),
          h_(h),
          dims_(dims),
          occupancy_(std::move(occupancy))
{
        if (n != 2 && n != 3)
        {
                invalid_argument("voxel set: n must be 2 or 3, got " + std::to_string(n));
        }
        if (!(h > 0) || !std::isfinite(h))
        {
                invalid_argument("voxel set: spacing h must be positive");
        }
        if (dims[0] < 1 || dims[1] < 1 || dims[2] < 1 || (n == 2 && dims[2] != 1))
        {
                invalid_argument("voxel set: invalid grid dimensions");
        }
        if (occupancy_.size() != static_cast<std::size_t>(dims[0]) * dims[1] * dims[2])
        {
                invalid_argument("voxel set: occupancy size does not match the grid");
        }
}

VoxelSet VoxelSet::covering(int n, double h, double extent)
{
        if (!(h > 0))
        {
                invalid_argument("voxel set: spacing h must be positive");
        }
        const int cells = 2 * static_cast<int>(std::ceil(extent / h)) + 2;
        return VoxelSet(n, h, {cells, cells, n == 3 ? cells : 1});
}

bool VoxelSet::at_or_empty(int i, int j, int k) const
{
        if (i < 0 || j < 0 || k < 0 || i >= dims_[0] || j >= dims_[1] || k >= dims_[2])
        {
                return false;
        }
        return at(i, j, k);
}

Vec3 VoxelSet::center(int i, int j, int k) const
{
        const double z = n_ == 3 ? (k + 0.5 - 0.5 * dims_[2]) * h_ : 0.0;
        return {(i + 0.5 - 0.5 * dims_[0]) * h_, (j + 0.5 - 0.5 * dims_[1]) * h_, z};
}

bool VoxelSet::occupied_at(const Vec3& x) const
{
        const int i = static_cast<int>(std::floor(x.x / h_ + 0.5 * dims_[0]));
        const int j = static_cast<int>(std::floor(x.y / h_ + 0.5 * dims_[1]));
        const int k = n_ == 3 ? static_cast<int>(std::floor(x.z / h_ + 0.5 * dims_[2])) : 0;
        return at_or_empty(i, j, k);
}

double VoxelSet::extent() const
{
        const int d = n_ == 3 ? std::min({dims_[0], dims_[1], dims_[2]}) : std::min(dims_[0], dims_[1]);
        return 0.5 * d * h_;
}

std::size_t VoxelSet::occupied_count() const
{
        return static_cast<std::size_t>(std::count(occupancy_.begin(), occupancy_.end(), std::uint8_t{1}));
}

double VoxelSet::volume() const
{
        return static_cast<double>(occupied_count()) * std::pow(h_, n_);
}

bool VoxelSet::same_geometry(const VoxelSet& other) const
{
        return n_ == other.n_ && h_ == other.h_ && dims_ == other.dims_;
}

double symmetric_difference_volume(const VoxelSet& a, const VoxelSet& b)
{
        if (!a.same_geometry(b))
        {
                invalid_argument("symmetric difference: voxel sets on different grids");
        }
        std::size_t count = 0;
        for (std::size_t i = 0; i < a.occupancy().size(); ++i)
        {
                count += (a.occupancy()[i] != 0) != (b.occupancy()[i] != 0);
        }
        return static_cast<double>(count) * std::pow(a.spacing(), a.dimension());
}

VoxelSet rasterize(const CapFieldSet& s, double h)
{
        if (!(h > 0))
        {
                invalid_argument("rasterize: spacing h must be positive, got " + std::to_string(h));
        }
        return rasterize_like(s, VoxelSet::covering(s.dimension(), h, s.r_max()));
}

VoxelSet rasterize_like(const CapFieldSet& s, const VoxelSet& like)
{
        if (like.dimension() != s.dimension())
        {
                invalid_argument("rasterize: voxel grid and set disagree on n");
        }
        VoxelSet v(like.dimension(), like.spacing(), like.dims());
        const auto& d = v.dims();
        parallel_for(static_cast<std::size_t>(d[2]) * d[1],
                     [&](std::size_t row)
                     {
                             const int k = static_cast<int>(row / d[1]);
                             const int j = static_cast<int>(row % d[1]);
                             for (int i = 0; i < d[0]; ++i)
                             {
                                     if (s.contains(v.center(i, j, k)))
                                     {
                                             v.set(i, j, k, true);
                                     }
                             }
                     });
        return v;
}

std::vector<Vec3> sphere_samples(int n, int m)
{
        if (m < 1)
        {
                invalid_argument("sphere samples: m must be positive");
        }
        std::vector<Vec3> out;
        out.reserve(m);
        if (n == 2)
        {
                for (int k = 0; k < m; ++k)
                {
                        const double t = 2 * kPi * (k + 0.5) / m;
                        out.push_back({std::cos(t), std::sin(t), 0});
                }
                return out;
        }
        const double golden = kPi * (3 - std::sqrt(5.0));
        for (int k = 0; k < m; ++k)
        {
                const double z = 1 - (2.0 * k + 1) / m;
                const double s = std::sqrt(std::max(0.0, 1 - z * z));
                const double phi = golden * k;
                out.push_back({s * std::cos(phi), s * std::sin(phi), z});
        }
        return out;
}

namespace
{
struct ShellSample
{
        int hits = 0;
        Vec3 sum;
};

ShellSample sample_shell(const VoxelSet& v, double r, int m)
{
        ShellSample s;
        for (const Vec3& u : sphere_samples(v.dimension(), m))
        {
                if (v.occupied_at(r * u))
                {
                        ++s.hits;
                        s.sum += u;
                }
        }
        return s;
}
}

double slice_fraction(const VoxelSet& v, double r, int m)
{
        if (r <= 0)
        {
                return 0;
        }
        return static_cast<double>(sample_shell(v, r, m).hits) / m;
}

double slice_measure(const VoxelSet& v, double r, int m)
{
        if (r <= 0)
        {
                return 0;
        }
        const int n = v.dimension();
        const ShellSample s = sample_shell(v, r, m);
        return unit_sphere_area(Dimension(n)) * std::pow(r, n - 1) * s.hits / m;
}

Vec3 slice_center(const VoxelSet& v, double r, int m)
{
        const ShellSample s = sample_shell(v, r, m);
        if (s.hits == 0)
        {
                return kE1;
        }
        const Vec3 mean = s.sum / s.hits;
        return norm(mean) < 1e-9 ? kE1 : normalized(mean);
}

Vec3 slice_moment(const VoxelSet& v, double r, int m)
{
        const int n = v.dimension();
        const ShellSample s = sample_shell(v, r, m);
        return (unit_sphere_area(Dimension(n)) / m) * s.sum;
}
}
