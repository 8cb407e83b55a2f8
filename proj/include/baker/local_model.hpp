#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "baker/errors.hpp"
#include "baker/sphere.hpp"

namespace baker {

/// One surgically inserted local model on the disc D(center, radius).
///
/// In unit coordinates w = (z - center)/radius the map is
///
///     phi(w) = w + eps/(w - pole),   pole = -eps/alpha,
///
/// conjugated by A(w) = radius*w + center and post-composed with
/// multiplication by mu. On the inner disc |w| <= inner_radius/radius the
/// model is this meromorphic map; on the remaining annulus it is the radial
/// linear interpolation between the inner-circle values and mu*z on the
/// boundary, so the glued map extends the base map continuously across the
/// disc boundary.
///
/// alpha = (target - mu*center)/(radius*mu), which makes the center map
/// exactly to `target`. The two critical points sit at pole +- sqrt(eps)
/// (unit coordinates) with critical values pole +- 2*sqrt(eps).
struct LocalModelSpec {
    cplx center{0.0, 0.0};
    double radius = 0.0;          // r
    double inner_radius = 0.0;    // eta, 0 < eta < r
    double value_clearance = 0.0; // theta, 0 < theta < mu*eta
    cplx target{0.0, 0.0};        // a, outside mu*D(center, radius)
    double mu = 0.0;

    cplx alpha{0.0, 0.0};
    double eps = 0.0;
    cplx pole{0.0, 0.0};          // unit coordinates

    // Cached special points. Plane-coordinate doubles are the stored identity
    // anchors: evaluation at exactly these inputs returns the stored images,
    // which is what makes the recorded critical pairing an exact 2-cycle of
    // the artifact's map.
    std::array<cplx, 2> crit_w{};      // pole +- sqrt(eps)
    std::array<cplx, 2> crit_point{};  // A(crit_w)
    std::array<cplx, 2> crit_value{};  // mu*A(pole +- 2*sqrt(eps))
    cplx pole_plane{0.0, 0.0};
    bool pole_plane_distinct = true;

    int eps_halvings = 0;

    double unit_inner() const { return inner_radius / radius; }
};

/// Populates derived fields (alpha, pole, critical data) from the primary
/// parameters; eps must already be chosen.
LocalModelSpec make_local_model(cplx center, double radius, double inner_radius,
                                double value_clearance, cplx target, double mu,
                                double eps, int eps_halvings = 0);

/// phi in unit coordinates; the pole is a legitimate sphere value.
SphereValue phi_eval(const LocalModelSpec& spec, cplx w);

/// phi(w1) - phi(w2) in cancellation-free form
/// (w1 - w2) * (1 - eps/((w1 - pole)(w2 - pole))).
cplx phi_diff(const LocalModelSpec& spec, cplx w1, cplx w2);

/// The composite displacement map Phi on the closed unit disc:
/// g(z) = mu*center + mu*radius*Phi((z - center)/radius).
/// Meromorphic piece for |w| <= eta/r, radial interpolation outside.
SphereValue local_unit_map(const LocalModelSpec& spec, cplx w);

/// Full local evaluation on D(center, radius). Inputs bit-equal to the stored
/// special points (center, critical points, pole) return their stored images.
SphereValue g_eval(const LocalModelSpec& spec, cplx z);

struct CriticalData {
    cplx c1, c2; // plane critical points
    cplx v1, v2; // plane critical values
};
CriticalData critical_data(const LocalModelSpec& spec);

struct SelectOptions {
    int circle_samples = 512;  // admissibility samples on the inner circle
    int grid_radial = 24;      // dilatation grid over the interpolation annulus
    int grid_angular = 96;
    double fd_step = 1e-5;     // unit-coordinate Wirtinger stencil
    double dilatation_margin = -1.0; // < 0: max(1e-3, 2% of the bound)
    bool skip_dilatation_check = false;
    // When set, records (eps, max sampled |mu_G|) for every candidate that
    // reached the dilatation stage.
    std::vector<std::pair<double, double>>* dilatation_history = nullptr;
};

/// The five admissibility checks run on a candidate eps:
///   (i)   pole, pole +- sqrt(eps), pole +- 2 sqrt(eps) are in D(0, eta/(2r)),
///   (ii)  both critical values are within theta/2 of mu*center,
///   (iii) theta < |g - mu*center| < mu*r on the sampled inner circle,
///   (iv)  the sampled inner-circle image winds once around mu*center and is
///         simple,
///   (v)   the sampled Beltrami coefficient of the interpolation stays below
///         (K-1)/(K+1) minus a safety margin.
/// Checks run cheapest first; later flags are false when an earlier one
/// failed and the stage was skipped.
struct Admissibility {
    bool points_inside = false;
    bool values_within_half = false;
    bool circle_clearance = false;
    bool winding_simple = false;
    bool dilatation_ok = false;
    bool dilatation_evaluated = false;
    double max_dilatation = 0.0;
    bool admissible(bool ignore_dilatation = false) const {
        return points_inside && values_within_half && circle_clearance && winding_simple &&
               (ignore_dilatation || dilatation_ok);
    }
};
Admissibility check_admissibility(const LocalModelSpec& spec, double K,
                                  const SelectOptions& options = {});

/// Halving search for eps: starts at eps = (eta*|alpha|/(4r)) * min(1, eta/(4r))
/// and halves until check_admissibility passes; throws eps_search_exhausted
/// below 10*machine-epsilon*(eta/r)^2.
LocalModelSpec select_epsilon(cplx center, double radius, double inner_radius,
                              double value_clearance, cplx target, double mu, double K,
                              const SelectOptions& options = {});

/// Central-difference Wirtinger quotient dbar(map)/d(map) at z with step h.
/// Returns nullopt when a stencil point comes within 10h of a known pole.
std::optional<cplx> beltrami_at(const std::function<cplx(cplx)>& map, cplx z, double h,
                                std::span<const cplx> poles = {});

struct CircleImageAudit {
    int winding = 0;
    bool simple = false;
    double min_abs = 0.0;           // min |Phi| over the sampled circle
    double max_abs = 0.0;
    double min_pair_separation = 0.0; // over sample pairs at circular distance >= 2
};
CircleImageAudit audit_inner_circle_image(const LocalModelSpec& spec, int samples);

/// Max |mu_G| over a polar grid of the interpolation annulus, finite
/// differences in unit coordinates.
double max_interpolation_dilatation(const LocalModelSpec& spec, int radial, int angular,
                                    double fd_step);

} // namespace baker
