// Acceptance suite: builds the default model (rho = 2, K = 1.5, levels 0..8)
// and checks every gate at its pinned tolerance, one pass/fail line each.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "baker/model_io.hpp"
#include "baker/render.hpp"
#include "baker/verification.hpp"

using namespace baker;

namespace {

struct Criterion {
    int id;
    std::string label;
    bool pass = true;
    std::string detail;
};

std::vector<Criterion> results;

void record(int id, const std::string& label, bool pass, const std::string& detail) {
    results.push_back(Criterion{id, label, pass, detail});
    std::printf("%s  criterion %d: %s  (%s)\n", pass ? "PASS" : "FAIL", id, label.c_str(),
                detail.c_str());
    std::fflush(stdout);
}

bool entry_pass(const VerificationReport& rep, const std::string& name, std::string& note) {
    const CheckEntry* e = rep.find(name);
    if (e == nullptr) {
        note += " missing:" + name;
        return false;
    }
    if (!e->pass) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), " %s worst=%.3g tol=%.3g;", name.c_str(), e->worst,
                      e->tol);
        note += buf;
    }
    return e->pass;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main() {
    const auto suite_start = std::chrono::steady_clock::now();

    // ---- criterion 1: build gate -------------------------------------------------
    const auto build_start = std::chrono::steady_clock::now();
    Tower tower(make_params(2.0, 1.5, 8));
    bool build_ok = true;
    std::string build_detail;
    try {
        tower.build_all();
    } catch (const std::exception& e) {
        build_ok = false;
        build_detail = e.what();
    }
    const double build_seconds = seconds_since(build_start);
    const long models = tower.total_local_models();
    {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%.2f s, %ld local models, min clearance %.3g",
                      build_seconds, models, tower.min_parent_clearance());
        record(1, "build levels 0..8 in under 60 s with 511 converged local models",
               build_ok && build_seconds < 60.0 && models == 511 &&
                   tower.min_parent_clearance() > 0.0,
               std::string(buf) + (build_detail.empty() ? "" : " [" + build_detail + "]"));
        if (!build_ok) {
            std::printf("build failed; remaining criteria skipped\n");
            return 1;
        }
    }

    // One full audit backs criteria 3..7.
    const long kSamples = 10000;
    const VerificationReport report = run_verification(tower, kSamples, 1);

    // ---- criterion 2: superattracting 2-cycles -----------------------------------
    {
        long tested = 0;
        long cycle_fail = 0;
        long ratio_fail = 0;
        double worst_cycle = 0.0;
        double worst_ratio = 1.0;
        for (int j = 0; j <= 7; ++j) {
            for (const SubDisc& sd : tower.level(j).subdiscs) {
                for (int k = 0; k < 2; ++k) {
                    const cplx c = sd.model.crit_point[k];
                    ++tested;
                    const EvalResult leg1 = eval_F(c, tower);
                    const EvalResult leg2 =
                        leg1.value.finite ? eval_F(leg1.value.value, tower) : leg1;
                    if (!leg1.value.finite || !leg2.value.finite) {
                        ++cycle_fail;
                        continue;
                    }
                    const double err =
                        std::abs(leg2.value.value - c) / std::max(1.0, std::abs(c));
                    worst_cycle = std::max(worst_cycle, err);
                    if (err > 1e-9) ++cycle_fail;

                    const SuperattractReport rep = verify_superattracting(c, tower);
                    worst_ratio = std::max(worst_ratio, std::max(rep.q_ratio, 1.0 / rep.q_ratio));
                    if (!rep.pass) ++ratio_fail;
                }
            }
        }
        const OrbitRecord anchor = iterate(tower.params().zeta0, 64, tower);
        const bool anchor_ok = anchor.classification == OrbitClass::Period2Cycle &&
                               anchor.cycle.has_value() &&
                               anchor.cycle->first == cplx{0.0, 0.0} &&
                               anchor.cycle->second == cplx{0.0, 0.0};
        char buf[200];
        std::snprintf(buf, sizeof(buf),
                      "%ld critical points, worst |F^2(c)-c| rel %.3g, worst probe ratio %.3g, "
                      "anchor %s",
                      tested, worst_cycle, worst_ratio,
                      to_string(anchor.classification).c_str());
        record(2, "every stored critical point closes into a superattracting 2-cycle",
               tested == 510 && cycle_fail == 0 && ratio_fail == 0 && anchor_ok, buf);
    }

    // ---- criterion 3: glueing exactness ------------------------------------------
    {
        std::string note;
        bool ok = entry_pass(report, "glueing-outer-boundary", note);
        ok = entry_pass(report, "glueing-level-disc-boundary", note) && ok;
        ok = entry_pass(report, "glueing-inner-circle", note) && ok;
        record(3, "boundary agreement at 1e-12 of the local scale", ok,
               ok ? "sup residuals within tolerance on 512 samples per boundary" : note);
    }

    // ---- criterion 4: quasiregularity bounds -------------------------------------
    {
        std::string note;
        bool ok = entry_pass(report, "dilatation-on-interpolation-annuli", note);
        ok = entry_pass(report, "dilatation-on-meromorphic-pieces", note) && ok;
        ok = entry_pass(report, "dilatation-on-v-regions", note) && ok;
        ok = entry_pass(report, "dilatation-on-skeleton", note) && ok;
        char buf[160];
        const CheckEntry* x = report.find("dilatation-on-interpolation-annuli");
        std::snprintf(buf, sizeof(buf), "max |mu| on annuli %.4g (bound %.4g)",
                      x ? x->worst : -1.0, x ? x->tol : -1.0);
        record(4, "sampled distortion respects the K budget and conformal regions", ok,
               ok ? buf : note);
    }

    // ---- criterion 5: forward-image conformality ---------------------------------
    {
        std::string note;
        const bool ok = entry_pass(report, "forward-images-stay-conformal", note);
        const CheckEntry* e = report.find("forward-images-stay-conformal");
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%ld pushed samples, %g violations",
                      e ? e->samples : -1, e ? e->worst : -1.0);
        record(5, "images of the distortion annuli stay in V regions for j+n <= 8", ok,
               ok ? buf : note);
    }

    // ---- criterion 6: escape and invariance --------------------------------------
    {
        std::string note;
        bool ok = entry_pass(report, "skeleton-maps-by-base-map", note);
        ok = entry_pass(report, "skeleton-forward-invariance", note) && ok;
        ok = entry_pass(report, "skeleton-escape-classification", note) && ok;
        ok = entry_pass(report, "base-disc-between-annuli", note) && ok;
        ok = entry_pass(report, "witness-annuli-in-skeleton", note) && ok;
        ok = entry_pass(report, "skeleton-annulus-modulus", note) && ok;
        const double ratio_margin = std::sqrt(tower.params().mu) - tower.params().rho;
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "10^4 skeleton samples exact, witness ratio margin %.4g", ratio_margin);
        record(6, "skeleton escapes exactly and witness annuli are certified", ok,
               ok ? buf : note);
    }

    // ---- criterion 7: inductive hypotheses ---------------------------------------
    {
        std::string note;
        bool ok = entry_pass(report, "level-population-doubling", note);
        ok = entry_pass(report, "critical-values-in-next-disc", note) && ok;
        ok = entry_pass(report, "critical-value-separation", note) && ok;
        ok = entry_pass(report, "sibling-separation-matches-bound", note) && ok;
        ok = entry_pass(report, "parent-clearance-positive", note) && ok;
        ok = entry_pass(report, "images-of-w-in-next-v", note) && ok;
        const CheckEntry* sep = report.find("critical-value-separation");
        char buf[160];
        std::snprintf(buf, sizeof(buf), "value counts 2^j, min value separation %.4g",
                      sep ? sep->worst : -1.0);
        record(7, "containment, bijectivity, and clearance hold at all levels", ok,
               ok ? buf : note);
    }

    // ---- criterion 8: negative controls ------------------------------------------
    {
        Tower base(make_params(2.0, 1.5, 2));
        base.build_all();
        const std::set<std::string> eps_family{
            "epsilon-admissibility", "critical-values-within-half-clearance",
            "inner-circle-value-clearance", "dilatation-on-interpolation-annuli"};

        bool ok = true;
        std::string note;

        const VerificationReport doubled =
            run_verification(mutate_doubled_eps(base, 2, 0), 300, 7);
        if (doubled.find("epsilon-admissibility")->pass) {
            ok = false;
            note += " doubled-eps not detected;";
        }
        for (const CheckEntry& e : doubled.entries)
            if (!e.pass && eps_family.count(e.check) == 0) {
                ok = false;
                note += " doubled-eps spilled into " + e.check + ";";
            }

        const VerificationReport swapped =
            run_verification(mutate_swapped_targets(base, 2, 0, 1), 300, 7);
        if (swapped.find("period2-cycle-closure")->pass) {
            ok = false;
            note += " swapped-targets not detected;";
        }
        for (const CheckEntry& e : swapped.entries)
            if (!e.pass && e.check != "period2-cycle-closure") {
                ok = false;
                note += " swapped-targets spilled into " + e.check + ";";
            }

        const VerificationReport oversized =
            run_verification(mutate_oversized_base_disc(base), 300, 7);
        if (oversized.find("base-disc-between-annuli")->pass) {
            ok = false;
            note += " oversized-disc not detected;";
        }
        for (const CheckEntry& e : oversized.entries)
            if (!e.pass && e.check != "base-disc-between-annuli") {
                ok = false;
                note += " oversized-disc spilled into " + e.check + ";";
            }

        record(8, "each mutation trips exactly its designated audit", ok,
               ok ? "doubled eps, swapped targets, oversized disc all detected cleanly" : note);
    }

    // ---- criterion 9: determinism -------------------------------------------------
    {
        Tower again(make_params(2.0, 1.5, 8));
        again.build_all();
        const bool model_same = serialize_model(tower) == serialize_model(again) &&
                                model_fingerprint(tower) == model_fingerprint(again);

        const VerificationReport r1 = run_verification(tower, 500, 21);
        const VerificationReport r2 = run_verification(again, 500, 21);
        const bool report_same = serialize_report(r1) == serialize_report(r2);

        RenderSpec spec;
        spec.center = cplx{0.0, 0.0};
        spec.span_x = 8.0;
        spec.span_y = 8.0;
        spec.width = 96;
        spec.height = 96;
        spec.max_iter = 32;
        spec.overlays = OverlayWitnessAnnuli;
        const bool image_same = render(tower, spec).rgb == render(again, spec).rgb;

        record(9, "repeated build, verify, and render are byte-identical",
               model_same && report_same && image_same,
               std::string("model ") + (model_same ? "ok" : "DIFFERS") + ", report " +
                   (report_same ? "ok" : "DIFFERS") + ", image " +
                   (image_same ? "ok" : "DIFFERS"));
    }

    const double total = seconds_since(suite_start);
    int failures = 0;
    for (const Criterion& c : results)
        if (!c.pass) ++failures;
    std::printf("----\n%d/%zu criteria passed in %.1f s%s\n", static_cast<int>(results.size()) - failures,
                results.size(), total, total < 300.0 ? "" : " (over the 5-minute budget)");
    return failures == 0 && total < 300.0 ? 0 : 1;
}
