#pragma once

#include "sets.hpp"

#include <vector>

namespace sphsym
{
/// Average direction d_E and barycentre b_E sampled on shells.
struct DirectionTrace final
{
        std::vector<double> r;
        std::vector<double> alpha;
        std::vector<Vec3> d;
        std::vector<Vec3> b;
        /// True where sin(alpha) < 1e-6 or the slice is empty; d falls back to e1 there.
        std::vector<bool> degenerate;
        int excluded = 0;

        /// Geometric barycentre (r / xi) b_E of shell i.
        Vec3 geometric_barycentre(int i, int n) const;
};

/// Closed form: the integral of x-hat over a cap slice is
/// omega_{n-1} r^{n-1} sin^{n-1}(alpha) d(r), so d_E = d and b_E = omega_{n-1} sin^{n-1}(alpha) d.
/// Shells sit at `samples` uniform radii of the range.
DirectionTrace direction_trace(const CapFieldSet& e, const RadialRange& range, int samples = 1024);

/// Sampled trace: on each shell r_i = i h inside the range, alpha comes from the
/// measured slice measure and d_E from the sampled integral of x-hat.
DirectionTrace direction_trace(const VoxelSet& v, const RadialRange& range, int m = 4096);

struct OdeRow final
{
        double r;
        Vec3 b_derivative;
        Vec3 rhs;
        double residual;
};

struct OdeReport final
{
        /// max |b' - (n-1) alpha' cot(alpha) b| over non-degenerate cell midpoints.
        double max_residual = 0;
        /// max_r |d_E(r) - d_E(r_0)|.
        double max_direction_drift = 0;
        /// Both quantities below `tolerance`.
        bool constant_direction = false;
        int excluded = 0;
        std::vector<OdeRow> rows;
};

/// Central differences of b_E at the midpoints of the profile cells inside the range.
OdeReport verify_ode(const CapFieldSet& e, const RadialRange& range, double tolerance = 1e-6);

struct ShellScore final
{
        double r;
        /// (boundary measure - matched cap boundary) / H^{n-2}(great sphere of radius r); negative
        /// values would contradict the isoperimetric inequality on the sphere.
        double slices_are_caps;
        double normal_constancy;
};

struct EqualityScores final
{
        /// max over shells of (boundary measure - matched cap boundary) / H^{n-2}(great sphere of radius r).
        double slices_are_caps = 0;
        /// max over shells of the spread of nu . x-hat along the slice boundary.
        double normal_constancy = 0;
        int shells = 0;
        int excluded = 0;
        /// Scored shells only.
        std::vector<ShellScore> per_shell;
};

struct EqualityOptions final
{
        int shells = 256;
        /// Angular samples per shell (n = 2) or polar rows (n = 3, twice as many columns).
        int angular = 2048;
};

/// Tolerances of the two scoring engines.
inline constexpr double kExactScoreTolerance = 1e-9;
inline constexpr double kSampledScoreTolerance = 2e-2;

/// Cap-field sets: caps are tested on sampled slices, normals by the closed form
/// nu . x-hat = -r s / sqrt(1 + r^2 s^2) with s = alpha' + d' . e along the slice boundary.
EqualityScores verify_equality_conditions(const CapFieldSet& e, const RadialRange& range, EqualityOptions options = {});

/// Voxel sets: sampled slices (runs shorter than 1.5 h are merged) and normals from
/// the gradient of the smoothed occupancy.
EqualityScores verify_equality_conditions(const VoxelSet& v, const RadialRange& range, EqualityOptions options = {});

struct LemmaRow final
{
        double r;
        double lhs;
        double rhs;
};

/// r^{n-1} xi'(r) against -p(r) (nu . x-hat) / |nu_tangential| on good shells.
std::vector<LemmaRow> normal_identity(const CapFieldSet& e, const RadialRange& range, int samples = 256);
}
