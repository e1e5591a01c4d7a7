#pragma once

#include "sets.hpp"

#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace sphsym
{
enum class ViolationKind
{
        alpha_zero,
        alpha_pi
};

const char* violation_name(ViolationKind k);

/// A radius where {0 < alpha < pi} is cut in two.
struct IntervalViolation final
{
        double r;
        ViolationKind kind;
};

/// A jump of alpha inside the open good interval, with its approximate limits.
struct JumpReason final
{
        double r;
        double lower;
        double upper;
};

/// Cantor mass of alpha inside the open good interval.
struct CantorReason final
{
        double lo;
        double hi;
        double mass;
};

using RigidityReason = std::variant<IntervalViolation, JumpReason, CantorReason>;

struct RigidityVerdict final
{
        bool holds = true;
        std::vector<RigidityReason> reasons;
        /// Extremal set that is not a rotation of F_v; present iff !holds.
        std::optional<CapFieldSet> witness;
        /// Extent [lo, hi] of the sampled good set (empty when lo > hi).
        double good_lo = 0;
        double good_hi = -1;
};

/// Default numerical guard for "alpha = 0" and "alpha = pi" at sample level.
inline constexpr double kRigidityEpsilon = 1e-9;

/// Samples the approximate limits at the grid nodes and jump radii, builds the
/// good set {eps < alpha^ and alpha_v < pi - eps} and checks that it is an
/// interval on which alpha has no jump and no Cantor part.
RigidityVerdict classify(const std::shared_ptr<const Profile>& p, double eps = kRigidityEpsilon);

/// F_v on B(r_bar), rotation * F_v outside. r_bar must have alpha^ = 0 or
/// alpha_v = pi with good samples on both sides.
CapFieldSet counterexample_disconnect(const std::shared_ptr<const Profile>& p, double r_bar, const Mat3& rotation,
                                      double eps = kRigidityEpsilon);

/// F_v glued with the planar rotation by gamma outside B(r_bar), at a jump of
/// alpha; requires 0 < gamma < lambda (alpha_v - alpha^) and lambda in (0, 1).
CapFieldSet counterexample_jump(const std::shared_ptr<const Profile>& p, double r_bar, double lambda, double gamma);

/// Same construction without the bound on gamma.
CapFieldSet probe_jump(const std::shared_ptr<const Profile>& p, double r_bar, double gamma);

/// Cantor flow witness: direction R_{beta(r)} e1 with beta = lambda times the
/// Cantor part of alpha, plus its pure-jump step approximants.
class CantorCounterexample final
{
        std::shared_ptr<const Profile> profile_;
        double lambda_;

public:
        CantorCounterexample(std::shared_ptr<const Profile> p, double lambda);

        double lambda() const
        {
                return lambda_;
        }
        const CantorComponent& staircase() const;
        CapFieldSet set() const;
        /// F_{v^k}: the profile with its Cantor part replaced by depth-k steps.
        std::shared_ptr<const Profile> step_profile(int k) const;
        /// E^k: step profile with the direction rotated by lambda times each step.
        CapFieldSet step_set(int k) const;
};

CantorCounterexample counterexample_cantor(const std::shared_ptr<const Profile>& p, double lambda);

/// n = 2: lower bound for min over rotations R of |E symmetric-difference R F_v|,
/// from a grid of `angles` rotations and the Lipschitz constant of the area in the angle.
double rotation_distance_bound(const CapFieldSet& e, int angles = 720);
}
