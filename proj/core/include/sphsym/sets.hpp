#pragma once

#include "direction_field.hpp"
#include "profile.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

namespace sphsym
{
/// Set whose slice at radius r is the open geodesic cap of angle alpha(r)
/// centred at r d(r). Outside the profile window the set is empty.
class CapFieldSet final
{
        std::shared_ptr<const Profile> profile_;
        DirectionField direction_;

public:
        CapFieldSet(std::shared_ptr<const Profile> profile, DirectionField direction);

        int dimension() const
        {
                return profile_->dimension().value();
        }
        const Profile& profile() const
        {
                return *profile_;
        }
        const std::shared_ptr<const Profile>& profile_ptr() const
        {
                return profile_;
        }
        const DirectionField& direction() const
        {
                return direction_;
        }
        double r_min() const
        {
                return profile_->grid().r_min();
        }
        double r_max() const
        {
                return profile_->grid().r_max();
        }

        /// Membership of a point; n = 2 reads only (x, y).
        bool contains(const Vec3& x) const;
};

/// F_v: the cap-field set with d = e1.
CapFieldSet symmetral_from_profile(std::shared_ptr<const Profile> p);
CapFieldSet symmetral_from_profile(const Profile& p);

/// inner on B(r_bar), `rotation` applied to outer outside B(r_bar). Both sets
/// must carry the same profile.
CapFieldSet glue(const CapFieldSet& inner, const CapFieldSet& outer, double r_bar, const Mat3& rotation);

/// Boolean occupancy on an origin-centred grid. Voxel (i, j, k) has centre
/// ((i + 1/2 - N_x/2) h, (j + 1/2 - N_y/2) h, (k + 1/2 - N_z/2) h); n = 2 uses N_z = 1
/// and z = 0.
class VoxelSet final
{
        int n_;
        double h_;
        std::array<int, 3> dims_;
        std::vector<std::uint8_t> occupancy_;

public:
        VoxelSet(int n, double h, std::array<int, 3> dims);
        VoxelSet(int n, double h, std::array<int, 3> dims, std::vector<std::uint8_t> occupancy);

        /// Cubic grid with N = 2 ceil(extent / h) + 2 cells per axis.
        static VoxelSet covering(int n, double h, double extent);

        int dimension() const
        {
                return n_;
        }
        double spacing() const
        {
                return h_;
        }
        const std::array<int, 3>& dims() const
        {
                return dims_;
        }
        const std::vector<std::uint8_t>& occupancy() const
        {
                return occupancy_;
        }
        std::size_t index(int i, int j, int k) const
        {
                return (static_cast<std::size_t>(k) * dims_[1] + j) * dims_[0] + i;
        }
        bool at(int i, int j, int k) const
        {
                return occupancy_[index(i, j, k)] != 0;
        }
        /// Occupancy with out-of-range indices reading as empty.
        bool at_or_empty(int i, int j, int k) const;
        void set(int i, int j, int k, bool value)
        {
                occupancy_[index(i, j, k)] = value ? 1 : 0;
        }
        Vec3 center(int i, int j, int k) const;

        /// Occupancy of the voxel containing x (empty outside the grid).
        bool occupied_at(const Vec3& x) const;

        /// Largest radius whose sphere stays inside the grid.
        double extent() const;

        std::size_t occupied_count() const;
        /// h^n times the occupied count.
        double volume() const;

        bool same_geometry(const VoxelSet& other) const;
};

/// h^n times the number of voxels occupied in exactly one of the two sets.
double symmetric_difference_volume(const VoxelSet& a, const VoxelSet& b);

/// Centre-point rasterisation of a cap-field set.
VoxelSet rasterize(const CapFieldSet& s, double h);

/// Centre-point rasterisation onto the grid of `like`.
VoxelSet rasterize_like(const CapFieldSet& s, const VoxelSet& like);

/// Stratified sample directions on S^{n-1}: midpoint angles (n = 2) or a
/// Fibonacci lattice (n = 3).
std::vector<Vec3> sphere_samples(int n, int m);

/// Fraction of the m stratified directions on ∂B(r) that land in V.
double slice_fraction(const VoxelSet& v, double r, int m = 4096);
/// Measured slice measure H^{n-1}(V ∩ ∂B(r)) from m stratified directions.
double slice_measure(const VoxelSet& v, double r, int m = 4096);

/// Normalised mean of the occupied sample directions; e1 for an empty slice or a
/// mean shorter than 1e-9.
Vec3 slice_center(const VoxelSet& v, double r, int m = 4096);

/// (1 / r^{n-1}) times the integral of the unit radial vector over V ∩ ∂B(r), sampled.
Vec3 slice_moment(const VoxelSet& v, double r, int m = 4096);
}
