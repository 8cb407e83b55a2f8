#include "baker/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "baker/rng.hpp"

namespace baker {

double overflow_guard(const ModelParams& params) {
    return std::numeric_limits<double>::max() / (4.0 * params.mu);
}

std::string to_string(OrbitClass c) {
    switch (c) {
        case OrbitClass::EscapingU0: return "escaping-U0";
        case OrbitClass::Period2Cycle: return "period2-cycle";
        case OrbitClass::PoleTerminated: return "pole-terminated";
        case OrbitClass::CapExceeded: return "cap-exceeded";
        case OrbitClass::Undecided: return "undecided";
    }
    return "undecided";
}

DiscIndex disc_index(cplx z, const Tower& tower) {
    DiscIndex out;
    const std::optional<int> j = enclosing_disc_level(z, tower.params());
    if (!j) return out;
    if (*j > tower.params().j_max) {
        out.level = *j;
        out.cap_exceeded = true;
        return out;
    }
    const LevelData& level = tower.level(*j);
    for (int i = 0; i < static_cast<int>(level.subdiscs.size()); ++i) {
        const SubDisc& sd = level.subdiscs[static_cast<std::size_t>(i)];
        if (std::abs(z - sd.model.center) <= sd.model.radius) {
            out.level = *j;
            out.index = i;
            return out;
        }
    }
    return out; // inside D_j but in the V region; the base map applies
}

EvalResult eval_F(cplx z, const Tower& tower) {
    const DiscIndex where = disc_index(z, tower);
    if (where.cap_exceeded) return EvalResult{SphereValue::of(z), true};
    if (where.in_subdisc()) {
        const SubDisc& sd =
            tower.level(where.level).subdiscs[static_cast<std::size_t>(where.index)];
        return EvalResult{g_eval(sd.model, z), false};
    }
    return EvalResult{SphereValue::of(tower.params().mu * z), false};
}

OrbitRecord iterate(cplx z, int n_max, const Tower& tower) {
    OrbitRecord rec;
    rec.start = z;
    rec.points.push_back(SphereValue::of(z));

    cplx cur = z;
    for (int n = 0; n <= n_max; ++n) {
        const std::size_t count = rec.points.size();
        if (count >= 3) {
            const cplx a = rec.points[count - 3].value;
            const cplx b = rec.points[count - 2].value;
            const cplx c = rec.points[count - 1].value;
            const double scale = std::max({1.0, std::abs(a), std::abs(b), std::abs(c)});
            if (std::abs(c - a) <= 1e-9 * scale) {
                rec.classification = OrbitClass::Period2Cycle;
                rec.cycle = std::make_pair(a, b);
                return rec;
            }
        }
        // Forward-invariant escaping skeleton: the base map applies forever,
        // so |F^n| = mu^n |z| -> infinity for every nonzero point.
        if (cur != cplx{0.0, 0.0} && u0_contains(cur, tower.params())) {
            rec.classification = OrbitClass::EscapingU0;
            return rec;
        }
        if (n == n_max) break;
        // Only gap orbits (off the skeleton and the disc chain, where the
        // base map applies forever) can approach the double range; their fate
        // stays undecided rather than overflowing into a fake pole hit.
        if (!(std::abs(cur) < overflow_guard(tower.params()))) break;

        const EvalResult step = eval_F(cur, tower);
        ++rec.iterations;
        if (step.cap_exceeded) {
            rec.classification = OrbitClass::CapExceeded;
            return rec;
        }
        if (!step.value.finite) {
            rec.points.push_back(SphereValue::infinity());
            rec.classification = OrbitClass::PoleTerminated;
            return rec;
        }
        cur = step.value.value;
        rec.points.push_back(step.value);
    }
    rec.classification = OrbitClass::Undecided;
    return rec;
}

double quadratic_probe(const LocalModelSpec& spec, cplx w0, double h) {
    const cplx w1 = w0 + h / spec.radius;
    const cplx displaced = phi_diff(spec, w1, w0);
    return spec.mu * spec.radius * std::abs(displaced) / (h * h);
}

namespace {

struct CritLocation {
    int level = -1;
    int subdisc = -1;
    int slot = -1;
};

std::optional<CritLocation> locate_critical_point(cplx c, const Tower& tower) {
    for (int j = 0; j < tower.params().j_max; ++j) {
        const LevelData& level = tower.level(j);
        for (int i = 0; i < static_cast<int>(level.subdiscs.size()); ++i)
            for (int k = 0; k < 2; ++k)
                if (level.subdiscs[static_cast<std::size_t>(i)]
                        .model.crit_point[static_cast<std::size_t>(k)] == c)
                    return CritLocation{j, i, k};
    }
    return std::nullopt;
}

} // namespace

SuperattractReport verify_superattracting(cplx c, const Tower& tower,
                                          const std::vector<double>& steps) {
    SuperattractReport rep;
    const std::optional<CritLocation> loc = locate_critical_point(c, tower);
    if (!loc) {
        rep.failure = "point is not a stored critical point of a built level";
        return rep;
    }
    rep.level = loc->level;
    rep.subdisc = loc->subdisc;
    rep.slot = loc->slot;

    const SubDisc& own =
        tower.level(loc->level).subdiscs[static_cast<std::size_t>(loc->subdisc)];
    const cplx v = own.model.crit_value[static_cast<std::size_t>(loc->slot)];

    const EvalResult leg1 = eval_F(c, tower);
    if (!leg1.value.finite || leg1.cap_exceeded) {
        rep.failure = "first cycle leg did not stay finite";
        return rep;
    }
    const EvalResult leg2 = eval_F(leg1.value.value, tower);
    if (!leg2.value.finite || leg2.cap_exceeded) {
        rep.failure = "second cycle leg did not stay finite";
        return rep;
    }
    rep.cycle_error = std::abs(leg2.value.value - c);
    rep.cycle_tolerance = 1e-9 * std::max(1.0, std::abs(c));

    // Partner sub-disc: the level-(j+1) model centred at the critical value.
    const LevelData& next = tower.level(loc->level + 1);
    const int child = 2 * loc->subdisc + loc->slot;
    const SubDisc& partner = next.subdiscs[static_cast<std::size_t>(child)];
    if (partner.model.center != v) {
        rep.failure = "stored pairing does not match the partner model center";
        return rep;
    }
    const SphereValue back = g_eval(partner.model, v);
    rep.partner_error = back.finite ? std::abs(back.value - c)
                                    : std::numeric_limits<double>::infinity();

    // Quadratic leg: probe distances default to {1e-3,1e-4} of a local scale
    // chosen so both probes sit inside the quadratic regime of the critical
    // leg (cubic corrections bounded by the r*sqrt(eps)/30 ceiling).
    std::vector<double> probe = steps;
    if (probe.empty()) {
        const double top = own.model.radius * std::sqrt(own.model.eps) / 30.0;
        probe = {top, top / 10.0};
    }
    std::sort(probe.begin(), probe.end(), std::greater<double>());
    rep.probe_scale = probe.front();
    const cplx w_crit = own.model.crit_w[static_cast<std::size_t>(loc->slot)];
    for (double h : probe) rep.q_values.push_back(quadratic_probe(own.model, w_crit, h));
    rep.q_ratio = rep.q_values.back() / rep.q_values.front();

    // Chain rule factor at the partner center: g'(center) = mu*(1 - alpha^2/eps).
    rep.partner_derivative = std::abs(
        partner.model.mu *
        (1.0 - partner.model.alpha * partner.model.alpha / partner.model.eps));

    const bool cycle_ok = rep.cycle_error <= rep.cycle_tolerance;
    const bool partner_ok = rep.partner_error <= rep.cycle_tolerance;
    const bool ratio_ok = rep.q_ratio >= 0.2 && rep.q_ratio <= 5.0;
    const bool derivative_ok =
        std::isfinite(rep.partner_derivative) && rep.partner_derivative > 0.0;
    rep.pass = cycle_ok && partner_ok && ratio_ok && derivative_ok;
    if (!cycle_ok) rep.failure = "cycle closure error above tolerance";
    else if (!partner_ok) rep.failure = "partner return error above tolerance";
    else if (!ratio_ok) rep.failure = "quadratic probe ratio outside [0.2, 5]";
    else if (!derivative_ok) rep.failure = "partner derivative not finite and nonzero";
    return rep;
}

ForwardImageReport check_forward_images(int j, int n, long samples, const Tower& tower,
                                        std::uint64_t seed) {
    if (j < 0 || n < 1 || j + n > tower.params().j_max)
        throw invalid_parameter("forward-image check needs 0 <= j and 1 <= n with j+n <= cap");

    ForwardImageReport rep;
    rep.start_level = j;
    rep.steps = n;
    rep.samples = samples;
    rep.worst_boundary_margin = std::numeric_limits<double>::infinity();

    const LevelData& level = tower.level(j);
    Rng rng(seed, "forward-images", static_cast<std::uint64_t>(j) * 64 + static_cast<std::uint64_t>(n));
    const double edge = 1e-6;

    for (long s = 0; s < samples; ++s) {
        const SubDisc& sd = level.subdiscs[rng.index(level.subdiscs.size())];
        const double ce = sd.model.unit_inner();
        const cplx w = rng.in_round_annulus(ce + edge, 1.0 - edge);
        cplx cur = sd.model.center + sd.model.radius * w;

        for (int step = 1; step <= n; ++step) {
            const EvalResult r = eval_F(cur, tower);
            if (r.cap_exceeded || !r.value.finite) {
                ++rep.violations;
                if (!rep.first_counterexample) {
                    rep.first_counterexample = cur;
                    rep.counterexample_step = step;
                }
                break;
            }
            cur = r.value.value;
            const LevelData& target = tower.level(j + step);
            if (region_of(cur, target) != Region::V) {
                ++rep.violations;
                if (!rep.first_counterexample) {
                    rep.first_counterexample = cur;
                    rep.counterexample_step = step;
                }
                break;
            }
            double margin = target.disc_radius - std::abs(cur - target.disc_center);
            for (const SubDisc& other : target.subdiscs)
                margin = std::min(margin, std::abs(cur - other.model.center) - other.model.radius);
            rep.worst_boundary_margin = std::min(rep.worst_boundary_margin, margin);
        }
    }
    return rep;
}

long pole_count_through(const Tower& tower, int j) {
    long n = 0;
    for (int lv = 0; lv <= j; ++lv) n += static_cast<long>(tower.level(lv).subdiscs.size());
    return n;
}

} // namespace baker
