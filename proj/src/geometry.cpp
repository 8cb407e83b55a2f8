#include "baker/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace baker {

double RoundAnnulus::modulus() const { return std::log(ratio); }

double default_teich_constant() { return std::log(16.0); }

double teichmuller_modulus_bound(double rho, double teich_constant) {
    if (!(rho > 1.0)) throw invalid_parameter("annulus ratio must exceed 1, got " + std::to_string(rho));
    return std::log(rho) + teich_constant;
}

double choose_mu(double rho, double teich_constant) {
    return std::exp(2.0 * teichmuller_modulus_bound(rho, teich_constant));
}

std::pair<cplx, double> default_base_disc(double mu) {
    if (!(mu > 1.0)) throw invalid_parameter("expansion factor must exceed 1");
    const double half = std::sqrt(mu);
    const double three_quarter = half * std::sqrt(half);
    const double r0 = 0.5 * std::min(mu - three_quarter, three_quarter - half);
    return {cplx{-three_quarter, 0.0}, r0};
}

ModelParams make_params(double rho, double K, int j_max) {
    return make_params(rho, K, j_max, default_teich_constant());
}

ModelParams make_params(double rho, double K, int j_max, double teich_constant) {
    ModelParams p;
    p.rho = rho;
    p.K = K;
    p.j_max = j_max;
    p.teich_constant = teich_constant;
    p.mu = choose_mu(rho, teich_constant);
    auto [zeta0, r0] = default_base_disc(p.mu);
    p.zeta0 = zeta0;
    p.r0 = r0;
    validate(p);
    return p;
}

void validate(const ModelParams& p) {
    if (!(p.mu > 1.0)) throw invalid_parameter("mu must exceed 1");
    if (!(p.rho > 1.0)) throw invalid_parameter("rho must exceed 1");
    if (!(p.K > 1.0)) throw invalid_parameter("K must exceed 1");
    if (!(p.r0 > 0.0)) throw invalid_parameter("r0 must be positive");
    if (p.j_max < 1) throw invalid_parameter("level cap must be at least 1");

    const double c = std::abs(p.zeta0);
    // Base disc must sit in {Re z < 0, sqrt(mu) < |z| < mu}. These two radial
    // inequalities are scale-free, so they certify every D_j at once:
    // D_j stays strictly between the annuli at mu^(j+1/2) and mu^(j+1).
    if (!(p.zeta0.real() + p.r0 < 0.0))
        throw invalid_parameter("base disc must stay in the left half-plane");
    if (!(c - p.r0 > std::sqrt(p.mu)))
        throw invalid_parameter("base disc reaches below |z| = sqrt(mu)");
    if (!(c + p.r0 < p.mu))
        throw invalid_parameter("base disc reaches past |z| = mu");
}

double power_int(double base, int e) {
    double acc = 1.0;
    double b = base;
    for (unsigned n = static_cast<unsigned>(e); n != 0; n >>= 1) {
        if (n & 1u) acc *= b;
        if (n > 1u) b *= b;
    }
    return acc;
}

bool u0_contains(cplx z, double mu) {
    if (z.real() >= 0.0) return true;
    const double a = std::abs(z);
    if (!std::isfinite(a) || a < 1.0) return false;
    const double root = std::sqrt(mu);
    const int guess = static_cast<int>(std::floor(std::log(a) / std::log(mu)));
    for (int j = std::max(0, guess - 1); j <= guess + 1; ++j) {
        const double pj = power_int(mu, j);
        if (pj <= a && a <= pj * root) return true;
    }
    return false;
}

cplx disc_center(const ModelParams& p, int j) { return power_int(p.mu, j) * p.zeta0; }

double disc_radius(const ModelParams& p, int j) { return power_int(p.mu, j) * p.r0; }

std::optional<int> enclosing_disc_level(cplx z, const ModelParams& p) {
    const double a = std::abs(z);
    const double c0 = std::abs(p.zeta0);
    if (!std::isfinite(a) || !(a > 0.0)) return std::nullopt;
    const int guess = static_cast<int>(std::lround(std::log(a / c0) / std::log(p.mu)));
    for (int j = std::max(0, guess - 1); j <= guess + 1; ++j) {
        const double scale = power_int(p.mu, j);
        if (std::abs(z - scale * p.zeta0) <= scale * p.r0) return j;
    }
    return std::nullopt;
}

RoundAnnulus skeleton_annulus(const ModelParams& p, int j) {
    return RoundAnnulus{power_int(p.mu, j), std::sqrt(p.mu)};
}

RoundAnnulus witness_annulus(const ModelParams& p, int j) {
    return RoundAnnulus{power_int(p.mu, j), p.rho};
}

} // namespace baker
