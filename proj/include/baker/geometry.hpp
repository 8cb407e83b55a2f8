#pragma once

#include <complex>
#include <optional>
#include <utility>

#include "baker/errors.hpp"
#include "baker/sphere.hpp"

namespace baker {

/// Global construction parameters.
///
/// The base map is z -> mu*z. The invariant skeleton is the right half-plane
/// together with the round annuli {mu^j <= |z| <= mu^(j+1/2)}, j >= 0. The
/// disc chain D_j = closed disc(mu^j*zeta0, mu^j*r0) lives in the gaps
/// {Re z < 0, sqrt(mu) < |z|/mu^j < mu} between consecutive annuli.
struct ModelParams {
    double mu = 0.0;              // expansion factor, > 1
    double rho = 0.0;             // target annulus ratio, > 1
    double K = 0.0;               // dilatation bound, > 1
    cplx zeta0{0.0, 0.0};         // center of D_0
    double r0 = 0.0;              // radius of D_0
    int j_max = 12;               // recursion-depth cap
    double teich_constant = 0.0;  // C in the modulus surrogate log(rho) + C
};

/// Round annulus {z : inner < |z| < ratio*inner}, centred at 0.
/// Modulus convention: log(outer/inner), no 2*pi factor.
struct RoundAnnulus {
    double inner = 1.0;
    double ratio = 2.0;
    double modulus() const;
};

double default_teich_constant(); // log 16

/// Upper surrogate for the separating-annulus modulus threshold at ratio rho.
/// Over-estimation is safe: it only enlarges mu.
double teichmuller_modulus_bound(double rho, double teich_constant);

/// mu = exp(2 * teichmuller_modulus_bound(rho)), so the skeleton annuli have
/// modulus (log mu)/2 at or above the threshold.
double choose_mu(double rho, double teich_constant);

/// Canonical base disc for a given mu: center -mu^(3/4), radius half the
/// smaller gap to the bounding circles |z| = sqrt(mu) and |z| = mu.
std::pair<cplx, double> default_base_disc(double mu);

ModelParams make_params(double rho, double K, int j_max);
ModelParams make_params(double rho, double K, int j_max, double teich_constant);

/// Throws invalid_parameter unless ranges and the base-disc placement
/// constraints hold (Re z < 0 and sqrt(mu) < |z| < mu on all of D_0).
void validate(const ModelParams& params);

/// base^e for integer e >= 0, by squaring (no libm pow).
double power_int(double base, int e);

bool u0_contains(cplx z, double mu);
inline bool u0_contains(cplx z, const ModelParams& p) { return u0_contains(z, p.mu); }

cplx disc_center(const ModelParams& params, int j);
double disc_radius(const ModelParams& params, int j);

/// Geometric membership z in D_j for some j >= 0; independent of any built
/// tower level, so it is meaningful past the recursion cap.
std::optional<int> enclosing_disc_level(cplx z, const ModelParams& params);

/// Skeleton annulus {mu^j <= |z| <= mu^(j+1/2)}.
RoundAnnulus skeleton_annulus(const ModelParams& params, int j);

/// Witness annulus {mu^j < |z| < rho*mu^j}; contained in the skeleton annulus
/// whenever sqrt(mu) >= rho.
RoundAnnulus witness_annulus(const ModelParams& params, int j);

} // namespace baker
