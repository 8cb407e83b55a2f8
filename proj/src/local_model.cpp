#include "baker/local_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace baker {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double wrap_angle(double a) {
    while (a > kPi) a -= 2.0 * kPi;
    while (a < -kPi) a += 2.0 * kPi;
    return a;
}

} // namespace

LocalModelSpec make_local_model(cplx center, double radius, double inner_radius,
                                double value_clearance, cplx target, double mu,
                                double eps, int eps_halvings) {
    if (!(radius > 0.0) || !(inner_radius > 0.0) || !(inner_radius < radius))
        throw invalid_parameter("inner radius must satisfy 0 < eta < r");
    if (!(value_clearance > 0.0) || !(value_clearance < mu * inner_radius))
        throw invalid_parameter("value clearance must satisfy 0 < theta < mu*eta");
    if (!(std::abs(target - mu * center) > mu * radius))
        throw invalid_parameter("target must lie outside the image of the model disc");
    if (!(eps > 0.0)) throw invalid_parameter("eps must be positive");

    LocalModelSpec s;
    s.center = center;
    s.radius = radius;
    s.inner_radius = inner_radius;
    s.value_clearance = value_clearance;
    s.target = target;
    s.mu = mu;
    s.eps = eps;
    s.eps_halvings = eps_halvings;
    s.alpha = (target - mu * center) / (radius * mu);
    s.pole = -eps / s.alpha;

    const double sq = std::sqrt(eps);
    s.crit_w = {s.pole + sq, s.pole - sq};
    for (int k = 0; k < 2; ++k) {
        const double sign = (k == 0) ? 1.0 : -1.0;
        s.crit_point[k] = center + radius * s.crit_w[k];
        s.crit_value[k] = mu * (center + radius * (s.pole + sign * 2.0 * sq));
    }
    s.pole_plane = center + radius * s.pole;
    s.pole_plane_distinct = s.pole_plane != s.center &&
                            s.pole_plane != s.crit_point[0] &&
                            s.pole_plane != s.crit_point[1];
    return s;
}

SphereValue phi_eval(const LocalModelSpec& spec, cplx w) {
    if (w == spec.pole) return SphereValue::infinity();
    return finite_or_infinity(w + spec.eps / (w - spec.pole));
}

cplx phi_diff(const LocalModelSpec& spec, cplx w1, cplx w2) {
    return (w1 - w2) * (1.0 - spec.eps / ((w1 - spec.pole) * (w2 - spec.pole)));
}

SphereValue local_unit_map(const LocalModelSpec& spec, cplx w) {
    const double ce = spec.unit_inner();
    const double s = std::abs(w);
    if (s <= ce) return phi_eval(spec, w);
    const cplx dir = w / s;
    const double lambda = (s - ce) / (1.0 - ce);
    const SphereValue inner = phi_eval(spec, ce * dir);
    if (!inner.finite) return SphereValue::infinity();
    return finite_or_infinity(lambda * dir + (1.0 - lambda) * inner.value);
}

SphereValue g_eval(const LocalModelSpec& spec, cplx z) {
    if (z == spec.center) return SphereValue::of(spec.target);
    if (z == spec.crit_point[0]) return SphereValue::of(spec.crit_value[0]);
    if (z == spec.crit_point[1]) return SphereValue::of(spec.crit_value[1]);
    if (spec.pole_plane_distinct && z == spec.pole_plane) return SphereValue::infinity();

    const cplx w = (z - spec.center) / spec.radius;
    const SphereValue displaced = local_unit_map(spec, w);
    if (!displaced.finite) return SphereValue::infinity();
    return finite_or_infinity(spec.mu * spec.center + (spec.mu * spec.radius) * displaced.value);
}

CriticalData critical_data(const LocalModelSpec& spec) {
    return CriticalData{spec.crit_point[0], spec.crit_point[1],
                        spec.crit_value[0], spec.crit_value[1]};
}

CircleImageAudit audit_inner_circle_image(const LocalModelSpec& spec, int samples) {
    const double ce = spec.unit_inner();
    std::vector<cplx> image(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        const double a = 2.0 * kPi * k / samples;
        const SphereValue v = phi_eval(spec, ce * cplx{std::cos(a), std::sin(a)});
        image[static_cast<std::size_t>(k)] =
            v.finite ? v.value : cplx{std::numeric_limits<double>::infinity(), 0.0};
    }

    CircleImageAudit audit;
    audit.min_abs = std::numeric_limits<double>::infinity();
    audit.max_abs = 0.0;
    double total_turn = 0.0;
    bool regular = true;
    for (int k = 0; k < samples; ++k) {
        const cplx cur = image[static_cast<std::size_t>(k)];
        const cplx nxt = image[static_cast<std::size_t>((k + 1) % samples)];
        const double m = std::abs(cur);
        if (!std::isfinite(m) || m == 0.0) {
            regular = false;
            break;
        }
        audit.min_abs = std::min(audit.min_abs, m);
        audit.max_abs = std::max(audit.max_abs, m);
        const double turn = wrap_angle(std::arg(nxt) - std::arg(cur));
        if (std::abs(turn) > kPi / 2.0) regular = false;
        total_turn += turn;
    }
    audit.winding = regular ? static_cast<int>(std::lround(total_turn / (2.0 * kPi))) : 0;

    double min_sep = std::numeric_limits<double>::infinity();
    if (regular) {
        for (int i = 0; i < samples; ++i) {
            for (int k = i + 2; k < samples; ++k) {
                if (i == 0 && k == samples - 1) continue; // circularly adjacent
                min_sep = std::min(min_sep, std::abs(image[static_cast<std::size_t>(i)] -
                                                     image[static_cast<std::size_t>(k)]));
            }
        }
    } else {
        min_sep = 0.0;
    }
    audit.min_pair_separation = min_sep;
    audit.simple = regular && min_sep > 1e-9 * ce;
    return audit;
}

double max_interpolation_dilatation(const LocalModelSpec& spec, int radial, int angular,
                                    double fd_step) {
    const double ce = spec.unit_inner();
    const double h = fd_step;
    const double lo = ce + 2.0 * h;
    const double hi = 1.0 - 2.0 * h;
    if (!(hi > lo)) return std::numeric_limits<double>::infinity();

    auto annulus_piece = [&](cplx w) {
        const double s = std::abs(w);
        const cplx dir = w / s;
        const double lambda = (s - ce) / (1.0 - ce);
        const SphereValue inner = phi_eval(spec, ce * dir);
        return lambda * dir + (1.0 - lambda) * inner.value;
    };

    double worst = 0.0;
    for (int m = 0; m < radial; ++m) {
        // Includes rings hugging both circles, where the blend coefficient
        // changes fastest.
        const double t = (radial == 1) ? 0.5 : static_cast<double>(m) / (radial - 1);
        const double s = lo + (hi - lo) * t;
        for (int k = 0; k < angular; ++k) {
            const double a = 2.0 * kPi * (k + 0.5) / angular;
            const cplx w{s * std::cos(a), s * std::sin(a)};
            const cplx fx = annulus_piece(w + h) - annulus_piece(w - h);
            const cplx fy = annulus_piece(w + cplx{0.0, h}) - annulus_piece(w - cplx{0.0, h});
            const cplx dw = fx / (4.0 * h) + fy / (cplx{0.0, 4.0 * h});
            const cplx dwbar = fx / (4.0 * h) - fy / (cplx{0.0, 4.0 * h});
            const double denom = std::abs(dw);
            const double ratio = denom > 0.0 ? std::abs(dwbar) / denom
                                             : std::numeric_limits<double>::infinity();
            worst = std::max(worst, ratio);
        }
    }
    return worst;
}

Admissibility check_admissibility(const LocalModelSpec& spec, double K,
                                  const SelectOptions& options) {
    Admissibility adm;
    const double ce = spec.unit_inner();
    const double reach = std::abs(spec.pole) + 2.0 * std::sqrt(spec.eps);

    adm.points_inside = reach < ce / 2.0;
    adm.values_within_half = spec.mu * spec.radius * reach < spec.value_clearance / 2.0;
    if (!adm.points_inside || !adm.values_within_half) return adm;

    const CircleImageAudit circle = audit_inner_circle_image(spec, options.circle_samples);
    const double lo_needed = spec.value_clearance / (spec.mu * spec.radius);
    adm.circle_clearance = circle.min_abs > lo_needed && circle.max_abs < 1.0;
    adm.winding_simple = circle.winding == 1 && circle.simple;
    if (!adm.circle_clearance || !adm.winding_simple) return adm;

    const double bound = (K - 1.0) / (K + 1.0);
    const double margin = options.dilatation_margin >= 0.0
                              ? options.dilatation_margin
                              : std::max(1e-3, 0.02 * bound);
    adm.max_dilatation = max_interpolation_dilatation(spec, options.grid_radial,
                                                      options.grid_angular, options.fd_step);
    adm.dilatation_evaluated = true;
    adm.dilatation_ok = adm.max_dilatation <= bound - margin;
    return adm;
}

LocalModelSpec select_epsilon(cplx center, double radius, double inner_radius,
                              double value_clearance, cplx target, double mu, double K,
                              const SelectOptions& options) {
    if (!(K > 1.0)) throw invalid_parameter("dilatation bound must exceed 1");
    const double ce = inner_radius / radius;
    const cplx alpha = (target - mu * center) / (radius * mu);
    if (!(std::abs(alpha) > 1.0 - 1e-12))
        throw invalid_parameter("target lies inside the image of the model disc");

    const double eps_start =
        (inner_radius * std::abs(alpha) / (4.0 * radius)) * std::min(1.0, inner_radius / (4.0 * radius));
    const double eps_floor = 10.0 * std::numeric_limits<double>::epsilon() * ce * ce;

    int halvings = 0;
    for (double eps = eps_start; eps >= eps_floor; eps *= 0.5, ++halvings) {
        LocalModelSpec cand = make_local_model(center, radius, inner_radius, value_clearance,
                                               target, mu, eps, halvings);
        const Admissibility adm = check_admissibility(cand, K, options);
        if (options.dilatation_history != nullptr && adm.dilatation_evaluated)
            options.dilatation_history->emplace_back(eps, adm.max_dilatation);
        if (adm.admissible(options.skip_dilatation_check)) return cand;
    }
    throw eps_search_exhausted(
        "no admissible eps above the double-precision floor for the local model at (" +
        std::to_string(center.real()) + ", " + std::to_string(center.imag()) + ")");
}

std::optional<cplx> beltrami_at(const std::function<cplx(cplx)>& map, cplx z, double h,
                                std::span<const cplx> poles) {
    const cplx stencil[4] = {z + h, z - h, z + cplx{0.0, h}, z - cplx{0.0, h}};
    for (const cplx& s : stencil)
        for (const cplx& p : poles)
            if (std::abs(s - p) < 10.0 * h) return std::nullopt;

    const cplx fx = map(stencil[0]) - map(stencil[1]);
    const cplx fy = map(stencil[2]) - map(stencil[3]);
    const cplx dw = fx / (4.0 * h) + fy / (cplx{0.0, 4.0 * h});
    const cplx dwbar = fx / (4.0 * h) - fy / (cplx{0.0, 4.0 * h});
    if (std::abs(dw) == 0.0) return std::nullopt;
    return dwbar / dw;
}

} // namespace baker
