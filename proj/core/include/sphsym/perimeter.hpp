#pragma once

#include "sets.hpp"
#include "symmetrize.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sphsym
{
/// One sampled shell of a perimeter computation.
struct ShellRow final
{
        double r;
        /// p(r): H^{n-2} of the slice boundary.
        double p;
        /// Radial tilt term, r^{n-1} xi'(r) for symmetrals.
        double tilt;
        /// AC integrand at r.
        double integrand;
        /// Perimeter accumulated up to and including r.
        double cumulative;
};

struct PerimeterReport final
{
        double total = 0;
        /// Absolutely continuous part of the boundary.
        double ac_part = 0;
        /// Jump and Cantor contributions carried by spheres ∂B(r).
        double singular_part = 0;
        /// Integral of |nu_tangential| over the boundary; equals the integral of p(r) dr.
        double tangential_total = 0;
        std::vector<ShellRow> per_shell;
        std::vector<std::string> warnings;
};

/// Perimeter of F_v inside the annulus over `range` (default: closed window):
/// int sqrt(p^2 + (r^{n-1} xi')^2) dr + int r^{n-1} d|D^s xi|. The profile vanishes
/// outside its window, so a window endpoint r_0 > 0 carries an implicit jump of xi.
PerimeterReport perimeter_symmetral(const Profile& p, const std::optional<RadialRange>& range = std::nullopt);

/// Perimeter of the circular symmetral F^l. n = 2 uses the planar identities
/// l = 2 r alpha, xi^l = 2 alpha; n = 3 integrates over the (r, x') layers with
/// jump curves joined between adjacent layers.
PerimeterReport perimeter_circular_symmetral(const CircularProfile& l,
                                             const std::optional<RadialRange>& range = std::nullopt);

struct MeshOptions final
{
        /// Radial rows (n = 3).
        int radial = 512;
        /// Angular columns (n = 3).
        int angular = 512;
};

/// Perimeter of a cap-field set. n = 2 integrates the two boundary curves
/// theta_c +- alpha exactly; n = 3 triangulates the boundary surface with a
/// parallel-transported frame. Singular radii contribute the slice
/// symmetric-difference measure.
PerimeterReport perimeter_capfield(const CapFieldSet& e, const std::optional<RadialRange>& range = std::nullopt,
                                   MeshOptions mesh = {});

/// Marching-squares length (n = 2) or marching-tetrahedra area (n = 3) of the 1/2
/// level set of the binomially smoothed occupancy.
double perimeter_voxel(const VoxelSet& v, int smoothing_passes = 2);

/// H^{n-1} of the symmetric difference of the two caps meeting at a singular radius.
double singular_slice_contribution(Dimension n, double r, double alpha_minus, double alpha_plus,
                                   double separation);

enum class Engine
{
        formula,
        planar_exact,
        mesh,
        voxel
};

const char* engine_name(Engine e);

/// Documented error bound of an engine at the given perimeter scale.
double engine_budget(Engine e, double perimeter, double h = 0);

struct InequalityCheck final
{
        double p_set = 0;
        double p_symmetral = 0;
        double slack = 0;
        double budget = 0;
        bool holds = false;
        Engine engine = Engine::formula;
        /// Formula value of P(F_v) (voxel checks compare raster against raster).
        double p_symmetral_formula = 0;
};

/// P(E) >= P(F_v) - budget over the annulus of `range`.
InequalityCheck check_inequality(const CapFieldSet& e, const std::optional<RadialRange>& range = std::nullopt,
                                 MeshOptions mesh = {});

/// Voxel engine on V versus voxel engine on the rasterised symmetral of V.
InequalityCheck check_inequality(const VoxelSet& v, int m = 4096);
}
