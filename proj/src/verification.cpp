#include "baker/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "baker/model_io.hpp"

namespace baker {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.141592653589793238462643383279502884;
} // namespace

const CheckEntry* VerificationReport::find(const std::string& check) const {
    for (const CheckEntry& e : entries)
        if (e.check == check) return &e;
    return nullptr;
}

CheckRegistry::Slot& CheckRegistry::at(const std::string& check) {
    for (Slot& s : slots_)
        if (s.check == check) return s;
    throw invalid_parameter("unknown check " + check);
}

void CheckRegistry::declare_max(const std::string& check, const std::string& anchor, double tol) {
    slots_.push_back(Slot{check, anchor, tol, false, false, false, 0, -kInf});
}

void CheckRegistry::declare_min(const std::string& check, const std::string& anchor, double tol) {
    slots_.push_back(Slot{check, anchor, tol, true, false, false, 0, kInf});
}

void CheckRegistry::observe(const std::string& check, double value, long samples) {
    Slot& s = at(check);
    s.touched = true;
    s.samples += samples;
    s.worst = s.min_type ? std::min(s.worst, value) : std::max(s.worst, value);
}

void CheckRegistry::force_fail(const std::string& check, const std::string&) {
    Slot& s = at(check);
    s.touched = true;
    s.forced_fail = true;
}

std::vector<CheckEntry> CheckRegistry::finalize() const {
    std::vector<CheckEntry> out;
    out.reserve(slots_.size());
    for (const Slot& s : slots_) {
        if (!s.touched) throw invalid_parameter("check " + s.check + " was never observed");
        CheckEntry e;
        e.check = s.check;
        e.anchor = s.anchor;
        e.samples = s.samples;
        e.worst = s.worst;
        e.tol = s.tol;
        e.pass = !s.forced_fail && (s.min_type ? s.worst >= s.tol : s.worst <= s.tol);
        out.push_back(std::move(e));
    }
    return out;
}

bool CheckRegistry::all_pass() const {
    for (const CheckEntry& e : finalize())
        if (!e.pass) return false;
    return true;
}

// ---------------------------------------------------------------------------
// samplers

cplx sample_skeleton_point(Rng& rng, const ModelParams& params) {
    if (rng.uniform() < 0.5) {
        const double r_hi = power_int(params.mu, std::min(params.j_max, 6));
        const double r = std::exp(rng.uniform(std::log(0.5), std::log(r_hi)));
        const double a = rng.uniform(-0.49 * kPi, 0.49 * kPi);
        return r * cplx{std::cos(a), std::sin(a)};
    }
    const int j = static_cast<int>(rng.index(static_cast<std::size_t>(params.j_max)));
    const double lo = power_int(params.mu, j) * (1.0 + 1e-6);
    const double hi = power_int(params.mu, j) * std::sqrt(params.mu) * (1.0 - 1e-6);
    return rng.in_round_annulus(lo, hi);
}

cplx sample_v_region(Rng& rng, const LevelData& level, double clear) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
        const cplx z = rng.in_disc(level.disc_center, level.disc_radius - clear);
        bool ok = true;
        for (const SubDisc& sd : level.subdiscs)
            if (std::abs(z - sd.model.center) <= sd.model.radius + clear) {
                ok = false;
                break;
            }
        if (ok) return z;
    }
    throw invalid_parameter("V-region sampling failed; sub-discs fill the level disc");
}

std::pair<const SubDisc*, cplx> sample_annulus_point(Rng& rng, const LevelData& level,
                                                     double edge) {
    const SubDisc& sd = level.subdiscs[rng.index(level.subdiscs.size())];
    const double ce = sd.model.unit_inner();
    const cplx w = rng.in_round_annulus(ce + edge, 1.0 - edge);
    return {&sd, sd.model.center + sd.model.radius * w};
}

cplx sample_inner_unit_point(Rng& rng, const SubDisc& sd, double fd_step) {
    const double ce = sd.model.unit_inner();
    // The 1e-6 dilatation tolerance needs the stencil well clear of the pole
    // (truncation scales like (h/d)^2 at distance d) and of the two critical
    // points, where the derivative vanishes and the Wirtinger quotient
    // degenerates to 0/0 (noise scales like h^2/(sqrt(eps)*delta)).
    const double d_pole = std::max(0.1 * ce, 1000.0 * fd_step);
    const double d_crit = std::max(0.02 * ce, 500.0 * fd_step);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        const cplx w = rng.in_disc(cplx{0.0, 0.0}, ce * (1.0 - 1e-3) - 2.0 * fd_step);
        if (std::abs(w - sd.model.pole) < d_pole) continue;
        if (std::abs(w - sd.model.crit_w[0]) < d_crit) continue;
        if (std::abs(w - sd.model.crit_w[1]) < d_crit) continue;
        return w;
    }
    throw invalid_parameter("inner-piece sampling failed");
}

// ---------------------------------------------------------------------------
// audits

void audit_annuli(const Tower& tower, CheckRegistry& reg) {
    const ModelParams& p = tower.params();
    const double c0 = std::abs(p.zeta0);
    const double root = std::sqrt(p.mu);

    // Scale-free placement margins certify every level at once; also check
    // the first j_max+1 discs against the witness annuli explicitly.
    double worst = std::min({c0 - p.r0 - root, p.mu - (c0 + p.r0), -(p.zeta0.real() + p.r0)});
    for (int j = 0; j <= p.j_max; ++j) {
        const RoundAnnulus w = witness_annulus(p, j);
        const double outer = w.inner * w.ratio;
        for (int i = 0; i <= p.j_max; ++i) {
            const double lo = power_int(p.mu, i) * (c0 - p.r0);
            const double hi = power_int(p.mu, i) * (c0 + p.r0);
            // D_i misses {w.inner <= |z| <= outer} iff it sits entirely inside
            // or entirely outside that radial band.
            worst = std::min(worst, std::max(lo - outer, w.inner - hi));
        }
    }
    reg.observe("base-disc-between-annuli", worst, (p.j_max + 1) * (p.j_max + 1));

    reg.observe("witness-annuli-in-skeleton", root - p.rho, p.j_max + 1);
    reg.observe("skeleton-annulus-modulus",
                std::log(p.mu) / 2.0 - teichmuller_modulus_bound(p.rho, p.teich_constant), 1);
}

void audit_skeleton(const Tower& tower, long samples, std::uint64_t seed, CheckRegistry& reg) {
    const ModelParams& p = tower.params();
    Rng rng(seed, "skeleton");
    double worst_map = 0.0;
    long invariance_fail = 0;
    long classify_fail = 0;
    double worst_growth = kInf;
    for (long s = 0; s < samples; ++s) {
        const cplx z = sample_skeleton_point(rng, p);
        const EvalResult r = eval_F(z, tower);
        if (!r.value.finite || r.cap_exceeded) {
            ++invariance_fail;
            continue;
        }
        worst_map = std::max(worst_map, std::abs(r.value.value - p.mu * z));
        if (!u0_contains(r.value.value, p)) ++invariance_fail;
        if (iterate(z, 16, tower).classification != OrbitClass::EscapingU0) ++classify_fail;
        if (s % 16 == 0) {
            cplx cur = z;
            bool grew = true;
            double prev = std::abs(cur);
            for (int n = 0; n < 5; ++n) {
                const EvalResult step = eval_F(cur, tower);
                if (!step.value.finite || step.cap_exceeded || std::abs(step.value.value) <= prev) {
                    grew = false;
                    break;
                }
                cur = step.value.value;
                prev = std::abs(cur);
            }
            worst_growth = std::min(worst_growth, grew ? std::abs(cur) / std::abs(z) : 0.0);
        }
    }
    reg.observe("skeleton-maps-by-base-map", worst_map, samples);
    reg.observe("skeleton-forward-invariance", static_cast<double>(invariance_fail), samples);
    reg.observe("skeleton-escape-classification", static_cast<double>(classify_fail), samples);
    reg.observe("escaping-orbit-growth", worst_growth, samples / 16);
}

void audit_level(const Tower& tower, int j, long samples, std::uint64_t seed, CheckRegistry& reg) {
    const ModelParams& p = tower.params();
    const LevelData& level = tower.level(j);
    const std::size_t m = level.subdiscs.size();
    Rng rng(seed, "level", static_cast<std::uint64_t>(j));

    reg.observe("level-population-doubling",
                std::abs(static_cast<double>(m) - power_int(2.0, j)), 1);

    const cplx next_center = disc_center(p, j + 1);
    const double next_radius = disc_radius(p, j + 1);

    double worst_inside = 0.0;
    double min_gap = kInf;
    double worst_value_inside = 0.0;
    double min_value_sep = kInf;
    double min_sibling_ratio = kInf;
    double min_clearance = kInf;
    double worst_outer_glue = 0.0;
    double worst_inner_glue = 0.0;
    double worst_center_identity = 0.0;
    double worst_crit_identity = 0.0;
    double worst_half_clearance = 0.0;
    long circle_clearance_fail = 0;
    long winding_fail = 0;
    long admissibility_fail = 0;

    std::vector<cplx> values;
    values.reserve(2 * m);

    for (std::size_t i = 0; i < m; ++i) {
        const SubDisc& sd = level.subdiscs[i];
        const LocalModelSpec& mod = sd.model;
        const double ce = mod.unit_inner();

        worst_inside = std::max(worst_inside,
                                (std::abs(mod.center - level.disc_center) + mod.radius) /
                                    level.disc_radius);
        for (std::size_t k = i + 1; k < m; ++k)
            min_gap = std::min(min_gap,
                               std::abs(mod.center - level.subdiscs[k].model.center) -
                                   mod.radius - level.subdiscs[k].model.radius);

        for (const cplx& v : mod.crit_value) {
            values.push_back(v);
            worst_value_inside =
                std::max(worst_value_inside, std::abs(v - next_center) / next_radius);
            worst_half_clearance = std::max(
                worst_half_clearance, std::abs(v - p.mu * mod.center) / mod.value_clearance);
        }
        min_sibling_ratio = std::min(min_sibling_ratio,
                                     std::abs(mod.crit_value[0] - mod.crit_value[1]) /
                                         sd.sibling_value_separation);
        if (sd.parent_index >= 0) min_clearance = std::min(min_clearance, sd.radius_terms.clearance);

        // Boundary agreement in unit coordinates: the interpolation pins the
        // outer circle to the base map, and matches the meromorphic branch on
        // the inner circle.
        for (int a = 0; a < 512; ++a) {
            const double ang = 2.0 * kPi * a / 512.0;
            const cplx dir{std::cos(ang), std::sin(ang)};
            const SphereValue outer = local_unit_map(mod, dir);
            if (outer.finite)
                worst_outer_glue = std::max(worst_outer_glue, std::abs(outer.value - dir));
            const SphereValue mero = phi_eval(mod, ce * dir);
            const SphereValue blend = local_unit_map(mod, ce * dir * (1.0 + 1e-15));
            if (mero.finite && blend.finite)
                worst_inner_glue = std::max(worst_inner_glue, std::abs(mero.value - blend.value));
        }

        // g(center) = target, honest displacement residual plus the stored
        // identity through the full evaluator.
        const cplx phi0 = -mod.eps / mod.pole;
        worst_center_identity =
            std::max(worst_center_identity, std::abs(phi0 - mod.alpha) / std::abs(mod.alpha));
        const SphereValue at_center = g_eval(mod, mod.center);
        worst_center_identity = std::max(
            worst_center_identity,
            at_center.finite
                ? std::abs(at_center.value - mod.target) / std::max(1.0, std::abs(mod.target))
                : kInf);

        // phi'(crit) = 0 and phi(crit) = pole +- 2 sqrt(eps), through the
        // cancellation-free difference quotient.
        const double sq = std::sqrt(mod.eps);
        for (int k = 0; k < 2; ++k) {
            const cplx wc = mod.crit_w[static_cast<std::size_t>(k)];
            const double h = 1e-8;
            const cplx fd = 1.0 - mod.eps / ((wc + h - mod.pole) * (wc - h - mod.pole));
            worst_crit_identity = std::max(worst_crit_identity, std::abs(fd));
            const cplx expected = mod.pole + (k == 0 ? 2.0 : -2.0) * sq;
            const SphereValue got = phi_eval(mod, wc);
            worst_crit_identity = std::max(
                worst_crit_identity,
                got.finite ? std::abs(got.value - expected) / std::abs(expected) : kInf);
        }

        const CircleImageAudit circle = audit_inner_circle_image(mod, 512);
        const double lo_needed = mod.value_clearance / (p.mu * mod.radius);
        if (!(circle.min_abs > lo_needed && circle.max_abs < 1.0)) ++circle_clearance_fail;
        if (circle.winding != 1 || !circle.simple) ++winding_fail;

        if (!check_admissibility(mod, p.K).admissible()) ++admissibility_fail;
    }

    for (std::size_t a = 0; a < values.size(); ++a)
        for (std::size_t b = a + 1; b < values.size(); ++b)
            min_value_sep = std::min(min_value_sep, std::abs(values[a] - values[b]));

    reg.observe("subdiscs-compactly-inside", worst_inside, static_cast<long>(m));
    reg.observe("subdiscs-pairwise-disjoint", m > 1 ? min_gap : kInf, static_cast<long>(m));
    reg.observe("critical-values-in-next-disc", worst_value_inside, static_cast<long>(2 * m));
    reg.observe("critical-value-separation", min_value_sep, static_cast<long>(2 * m));
    reg.observe("sibling-separation-matches-bound", min_sibling_ratio, static_cast<long>(m));
    reg.observe("parent-clearance-positive", j > 0 ? min_clearance : kInf, static_cast<long>(m));
    reg.observe("glueing-outer-boundary", worst_outer_glue, static_cast<long>(m) * 512);
    reg.observe("glueing-inner-circle", worst_inner_glue, static_cast<long>(m) * 512);
    reg.observe("center-maps-to-target", worst_center_identity, static_cast<long>(m));
    reg.observe("critical-identities", worst_crit_identity, static_cast<long>(2 * m));
    reg.observe("critical-values-within-half-clearance", worst_half_clearance,
                static_cast<long>(2 * m));
    reg.observe("inner-circle-value-clearance", static_cast<double>(circle_clearance_fail),
                static_cast<long>(m) * 512);
    reg.observe("inner-circle-winding", static_cast<double>(winding_fail), static_cast<long>(m));
    reg.observe("epsilon-admissibility", static_cast<double>(admissibility_fail),
                static_cast<long>(m));

    long cumulative = 0;
    for (int lv = 0; lv <= j; ++lv)
        cumulative += static_cast<long>(tower.level(lv).subdiscs.size());
    reg.observe("pole-census",
                std::abs(static_cast<double>(cumulative) - (power_int(2.0, j + 1) - 1.0)), 1);

    // Level-disc boundary: both dispatch branches are the base map there.
    double worst_disc_glue = 0.0;
    for (int a = 0; a < 512; ++a) {
        const double ang = 2.0 * kPi * a / 512.0;
        const cplx z = level.disc_center + level.disc_radius * cplx{std::cos(ang), std::sin(ang)};
        const EvalResult r = eval_F(z, tower);
        worst_disc_glue =
            std::max(worst_disc_glue, r.value.finite ? std::abs(r.value.value - p.mu * z) : kInf);
    }
    reg.observe("glueing-level-disc-boundary", worst_disc_glue, 512);

    // Sampled region behaviour.
    double worst_v_exact = 0.0;
    const long v_samples = std::max<long>(64, samples / 4);
    for (long s = 0; s < v_samples; ++s) {
        const cplx z = sample_v_region(rng, level, 1e-9 * level.disc_radius);
        const EvalResult r = eval_F(z, tower);
        worst_v_exact =
            std::max(worst_v_exact, r.value.finite ? std::abs(r.value.value - p.mu * z) : kInf);
    }
    reg.observe("base-map-on-v-region", worst_v_exact, v_samples);

    if (j < p.j_max) {
        const LevelData& next = tower.level(j + 1);
        long region_fail = 0;
        double min_next_value_dist = kInf;
        const long w_samples = std::max<long>(64, samples / 2);
        for (long s = 0; s < w_samples; ++s) {
            const bool from_annulus = (s % 2) == 0;
            cplx z;
            if (from_annulus) {
                z = sample_annulus_point(rng, level).second;
            } else {
                z = sample_v_region(rng, level, 1e-9 * level.disc_radius);
            }
            const EvalResult r = eval_F(z, tower);
            if (!r.value.finite || r.cap_exceeded) {
                ++region_fail;
                continue;
            }
            const cplx img = r.value.value;
            if (region_of(img, next) != Region::V ||
                !(std::abs(img - next.disc_center) < next.disc_radius))
                ++region_fail;
            if (from_annulus)
                for (const SubDisc& nsd : next.subdiscs)
                    min_next_value_dist =
                        std::min(min_next_value_dist, std::abs(img - nsd.model.center));
        }
        reg.observe("images-of-w-in-next-v", static_cast<double>(region_fail), w_samples);
        reg.observe("image-avoids-next-values", min_next_value_dist, w_samples / 2);

        // Injectivity on W: distinct sampled points keep distinct images.
        double min_image_sep = kInf;
        const long pair_samples = std::max<long>(64, samples / 4);
        for (long s = 0; s < pair_samples; ++s) {
            const cplx z1 = (s % 2 == 0) ? sample_annulus_point(rng, level).second
                                         : sample_v_region(rng, level, 1e-9 * level.disc_radius);
            const cplx z2 = (s % 3 == 0) ? sample_annulus_point(rng, level).second
                                         : sample_v_region(rng, level, 1e-9 * level.disc_radius);
            if (z1 == z2) continue;
            const EvalResult r1 = eval_F(z1, tower);
            const EvalResult r2 = eval_F(z2, tower);
            if (r1.value.finite && r2.value.finite)
                min_image_sep = std::min(min_image_sep, std::abs(r1.value.value - r2.value.value));
        }
        reg.observe("w-injectivity-sampled-pairs", min_image_sep, pair_samples);

        // Stored 2-cycles and the vanishing return-map derivative.
        double worst_cycle = 0.0;
        double worst_ratio = 1.0;
        double min_partner_derivative = kInf;
        for (std::size_t i = 0; i < m; ++i) {
            const SubDisc& sd = level.subdiscs[i];
            for (int k = 0; k < 2; ++k) {
                const cplx c = sd.model.crit_point[static_cast<std::size_t>(k)];
                const EvalResult leg1 = eval_F(c, tower);
                if (!leg1.value.finite) {
                    worst_cycle = kInf;
                    continue;
                }
                const EvalResult leg2 = eval_F(leg1.value.value, tower);
                if (!leg2.value.finite) {
                    worst_cycle = kInf;
                    continue;
                }
                worst_cycle = std::max(worst_cycle, std::abs(leg2.value.value - c) /
                                                        std::max(1.0, std::abs(c)));

                const double top = sd.model.radius * std::sqrt(sd.model.eps) / 30.0;
                const cplx wc = sd.model.crit_w[static_cast<std::size_t>(k)];
                const double q3 = quadratic_probe(sd.model, wc, top);
                const double q4 = quadratic_probe(sd.model, wc, top / 10.0);
                const double ratio = q4 / q3;
                worst_ratio = std::max(worst_ratio, std::max(ratio, 1.0 / ratio));

                const SubDisc& child =
                    next.subdiscs[static_cast<std::size_t>(2 * static_cast<int>(i) + k)];
                min_partner_derivative = std::min(
                    min_partner_derivative,
                    std::abs(child.model.mu *
                             (1.0 - child.model.alpha * child.model.alpha / child.model.eps)));
            }
        }
        reg.observe("period2-cycle-closure", worst_cycle, static_cast<long>(2 * m));
        reg.observe("superattract-quadratic-ratio", worst_ratio, static_cast<long>(2 * m));
        reg.observe("partner-derivative-finite",
                    std::isfinite(min_partner_derivative) ? min_partner_derivative : 0.0,
                    static_cast<long>(2 * m));
    }
}

void audit_dilatation(const Tower& tower, long samples, std::uint64_t seed, CheckRegistry& reg) {
    const ModelParams& p = tower.params();
    Rng rng(seed, "dilatation");
    const double fd = 1e-5;

    auto plane_map = [&](cplx z) {
        const EvalResult r = eval_F(z, tower);
        return r.value.finite ? r.value.value : cplx{kInf, kInf};
    };

    double worst_u0 = 0.0;
    double min_deriv = kInf;
    for (long s = 0; s < samples; ++s) {
        const cplx z = sample_skeleton_point(rng, p);
        const double h = fd * std::abs(z);
        const auto mu_fd = beltrami_at(plane_map, z, h);
        if (mu_fd) worst_u0 = std::max(worst_u0, std::abs(*mu_fd));
        const cplx d = (plane_map(z + h) - plane_map(z - h)) / (2.0 * h);
        min_deriv = std::min(min_deriv, std::abs(d) / p.mu);
    }
    reg.observe("dilatation-on-skeleton", worst_u0, samples);

    double worst_v = 0.0;
    double worst_inner = 0.0;
    double worst_x = 0.0;
    const long per_level = std::max<long>(64, samples); // full budget per level
    for (int j = 0; j <= p.j_max; ++j) {
        const LevelData& level = tower.level(j);
        for (long s = 0; s < per_level; ++s) {
            const double h = fd * level.disc_radius;
            const cplx z = sample_v_region(rng, level, 4.0 * h);
            const auto mu_fd = beltrami_at(plane_map, z, h);
            if (mu_fd) worst_v = std::max(worst_v, std::abs(*mu_fd));
            const cplx d = (plane_map(z + h) - plane_map(z - h)) / (2.0 * h);
            min_deriv = std::min(min_deriv, std::abs(d) / p.mu);
        }
        for (long s = 0; s < per_level; ++s) {
            const SubDisc& sd = level.subdiscs[rng.index(level.subdiscs.size())];
            // Dilatation is invariant under the affine changes to unit
            // coordinates, so both inner-piece and annulus audits run on the
            // displacement map where differences carry full precision.
            auto unit_map = [&](cplx w) {
                const SphereValue v = local_unit_map(sd.model, w);
                return v.finite ? v.value : cplx{kInf, kInf};
            };
            const cplx wi = sample_inner_unit_point(rng, sd, fd);
            const cplx pole = sd.model.pole;
            const auto mu_in = beltrami_at(unit_map, wi, fd, std::span<const cplx>(&pole, 1));
            if (mu_in) worst_inner = std::max(worst_inner, std::abs(*mu_in));

            const double ce = sd.model.unit_inner();
            const cplx wx = rng.in_round_annulus(ce + 3.0 * fd, 1.0 - 3.0 * fd);
            const auto mu_x = beltrami_at(unit_map, wx, fd);
            if (mu_x) worst_x = std::max(worst_x, std::abs(*mu_x));
            const cplx dx = (unit_map(wx + fd) - unit_map(wx - fd)) / (2.0 * fd);
            min_deriv = std::min(min_deriv, std::abs(dx));
        }
    }
    reg.observe("dilatation-on-v-regions", worst_v, per_level * (p.j_max + 1));
    reg.observe("dilatation-on-meromorphic-pieces", worst_inner, per_level * (p.j_max + 1));
    reg.observe("dilatation-on-interpolation-annuli", worst_x, per_level * (p.j_max + 1));
    reg.observe("derivative-bounded-off-critical-set", min_deriv,
                samples + 2 * per_level * (p.j_max + 1));
}

void audit_forward_images(const Tower& tower, long samples, std::uint64_t seed,
                          CheckRegistry& reg) {
    const ModelParams& p = tower.params();
    long violations = 0;
    long total = 0;
    for (int j = 0; j < p.j_max; ++j)
        for (int n = 1; j + n <= p.j_max; ++n) {
            const ForwardImageReport r = check_forward_images(j, n, samples, tower, seed);
            violations += r.violations;
            total += r.samples;
        }
    reg.observe("forward-images-stay-conformal", static_cast<double>(violations), total);
}

namespace {

void declare_all(CheckRegistry& reg, const ModelParams& p) {
    reg.declare_min("base-disc-between-annuli",
                    "disc chain stays in the gaps between skeleton annuli", 0.0);
    reg.declare_min("witness-annuli-in-skeleton",
                    "witness ratio fits inside the skeleton annulus ratio", 0.0);
    reg.declare_min("skeleton-annulus-modulus",
                    "skeleton annulus modulus meets the separating threshold", 0.0);
    reg.declare_max("skeleton-maps-by-base-map", "map equals mu*z exactly on the skeleton", 0.0);
    reg.declare_max("skeleton-forward-invariance", "skeleton maps into itself", 0.0);
    reg.declare_max("skeleton-escape-classification", "skeleton orbits classify as escaping", 0.0);
    reg.declare_min("escaping-orbit-growth", "escaping orbits grow without bound",
                    power_int(p.mu, 4));
    reg.declare_max("level-population-doubling", "level j carries 2^j value points", 0.0);
    reg.declare_max("subdiscs-compactly-inside", "sub-discs compactly inside the level disc", 1.0);
    reg.declare_min("subdiscs-pairwise-disjoint", "sub-discs pairwise disjoint", 0.0);
    reg.declare_max("critical-values-in-next-disc", "critical values land in the next disc", 1.0);
    reg.declare_min("critical-value-separation", "critical values pairwise distinct", 0.0);
    // The stored values round at the scale of the next disc (up to ~1e-3 of
    // the sibling gap at the deepest level), so the record is validated to 1%.
    reg.declare_min("sibling-separation-matches-bound",
                    "sibling value gap matches the 4*mu*r*sqrt(eps) record", 0.99);
    reg.declare_min("parent-clearance-positive",
                    "sub-discs clear the closure of the previous image", 0.0);
    reg.declare_max("glueing-outer-boundary", "local models agree with mu*z on disc boundaries",
                    1e-12);
    reg.declare_max("glueing-inner-circle", "interpolation matches the meromorphic piece", 1e-12);
    reg.declare_max("glueing-level-disc-boundary", "dispatch agrees across level-disc boundaries",
                    0.0);
    reg.declare_max("center-maps-to-target", "each center maps to its recorded target", 1e-12);
    reg.declare_max("critical-identities", "critical points and values satisfy closed forms",
                    1e-12);
    reg.declare_max("critical-values-within-half-clearance",
                    "critical values within half the value clearance", 0.5);
    reg.declare_max("inner-circle-value-clearance",
                    "inner-circle images stay in the clearance band", 0.0);
    reg.declare_max("inner-circle-winding", "inner-circle image winds once and is simple", 0.0);
    reg.declare_max("epsilon-admissibility", "stored eps passes all selection checks", 0.0);
    reg.declare_max("pole-census", "pole count doubles and adds one per level", 0.0);
    reg.declare_max("base-map-on-v-region", "map equals mu*z exactly off the sub-discs", 0.0);
    reg.declare_max("images-of-w-in-next-v", "off-inner-disc images land in the next V region",
                    0.0);
    reg.declare_min("image-avoids-next-values", "images keep clear of next-level value points",
                    0.0);
    reg.declare_min("w-injectivity-sampled-pairs", "distinct points keep distinct images", 0.0);
    reg.declare_max("period2-cycle-closure", "critical points close into 2-cycles", 1e-9);
    reg.declare_max("superattract-quadratic-ratio",
                    "critical leg displacement scales quadratically", 5.0);
    reg.declare_min("partner-derivative-finite", "partner leg derivative finite and nonzero",
                    0.0);
    reg.declare_max("dilatation-on-skeleton", "conformal on the skeleton", 1e-8);
    reg.declare_max("dilatation-on-v-regions", "conformal off the sub-discs", 1e-8);
    reg.declare_max("dilatation-on-meromorphic-pieces", "conformal on the meromorphic pieces",
                    1e-6);
    reg.declare_max("dilatation-on-interpolation-annuli",
                    "distortion bounded by the quasiregularity budget",
                    (p.K - 1.0) / (p.K + 1.0) + 1e-4);
    reg.declare_min("derivative-bounded-off-critical-set",
                    "derivative bounded below away from critical points", 0.25);
    reg.declare_max("forward-images-stay-conformal",
                    "forward images of the distortion support stay in V regions", 0.0);
}

} // namespace

VerificationReport run_verification(const Tower& tower, long samples, std::uint64_t seed) {
    tower.build_all();
    CheckRegistry reg;
    declare_all(reg, tower.params());

    audit_annuli(tower, reg);
    audit_skeleton(tower, samples, seed, reg);
    for (int j = 0; j <= tower.params().j_max; ++j) audit_level(tower, j, samples, seed, reg);
    audit_dilatation(tower, samples, seed, reg);
    audit_forward_images(tower, samples, seed, reg);

    VerificationReport report;
    report.fingerprint = model_fingerprint(tower);
    report.seed = seed;
    report.samples_per_check = samples;
    report.entries = reg.finalize();
    report.all_pass = true;
    for (const CheckEntry& e : report.entries) report.all_pass = report.all_pass && e.pass;
    return report;
}

std::string serialize_report(const VerificationReport& report) {
    std::string out = "{\"fingerprint\":\"" + report.fingerprint + "\"";
    out += ",\"seed\":" + std::to_string(report.seed);
    out += ",\"samples\":" + std::to_string(report.samples_per_check);
    out += ",\"checks\":[";
    for (std::size_t i = 0; i < report.entries.size(); ++i) {
        const CheckEntry& e = report.entries[i];
        if (i > 0) out += ",";
        out += "{\"check\":\"" + e.check + "\"";
        out += ",\"anchor\":\"" + e.anchor + "\"";
        out += ",\"samples\":" + std::to_string(e.samples);
        out += ",\"worst\":" + canonical_double(e.worst);
        out += ",\"tol\":" + canonical_double(e.tol);
        out += ",\"pass\":";
        out += e.pass ? "true" : "false";
        out += "}";
    }
    out += "],\"all_pass\":";
    out += report.all_pass ? "true" : "false";
    out += "}\n";
    return out;
}

// ---------------------------------------------------------------------------
// negative-control mutations

Tower mutate_doubled_eps(const Tower& tower, int level, int index) {
    tower.build_all();
    std::vector<LevelData> levels;
    for (int j = 0; j <= tower.params().j_max; ++j) levels.push_back(tower.level(j));
    SubDisc& sd = levels[static_cast<std::size_t>(level)].subdiscs[static_cast<std::size_t>(index)];
    const LocalModelSpec& m = sd.model;
    sd.model = make_local_model(m.center, m.radius, m.inner_radius, m.value_clearance, m.target,
                                m.mu, 2.0 * m.eps, m.eps_halvings);
    sd.sibling_value_separation =
        4.0 * m.mu * m.radius * std::sqrt(sd.model.eps);
    return Tower(tower.params(), std::move(levels));
}

Tower mutate_swapped_targets(const Tower& tower, int level, int i1, int i2) {
    tower.build_all();
    std::vector<LevelData> levels;
    for (int j = 0; j <= tower.params().j_max; ++j) levels.push_back(tower.level(j));
    SubDisc& a = levels[static_cast<std::size_t>(level)].subdiscs[static_cast<std::size_t>(i1)];
    SubDisc& b = levels[static_cast<std::size_t>(level)].subdiscs[static_cast<std::size_t>(i2)];
    const cplx ta = a.model.target;
    const cplx tb = b.model.target;
    a.model = make_local_model(a.model.center, a.model.radius, a.model.inner_radius,
                               a.model.value_clearance, tb, a.model.mu, a.model.eps,
                               a.model.eps_halvings);
    b.model = make_local_model(b.model.center, b.model.radius, b.model.inner_radius,
                               b.model.value_clearance, ta, b.model.mu, b.model.eps,
                               b.model.eps_halvings);
    return Tower(tower.params(), std::move(levels));
}

Tower mutate_oversized_base_disc(const Tower& tower) {
    ModelParams p = tower.params();
    // Push the disc chain out past |z| = mu; skips parameter validation.
    p.zeta0 = cplx{-0.95 * p.mu, 0.0};
    return Tower(p, std::vector<LevelData>{});
}

} // namespace baker
