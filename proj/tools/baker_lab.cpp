// Command-line front end: parameter planning, model build/serialize,
// verification, orbit queries, and classification-image rendering.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "baker/model_io.hpp"
#include "baker/render.hpp"
#include "baker/verification.hpp"

namespace {

using baker::cplx;

// Grammar: "a", "bi", "a+bi", "a-bi"; whitespace allowed around tokens, "i"
// and "-i" stand for unit imaginary parts.
cplx parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw baker::invalid_parameter("empty complex literal");

    auto parse_part = [](std::string part, bool imaginary) -> double {
        if (imaginary) {
            if (part.empty() || part.back() != 'i')
                throw baker::invalid_parameter("imaginary part must end in i");
            part.pop_back();
            if (part.empty() || part == "+") part = "1";
            else if (part == "-") part = "-1";
        }
        std::size_t used = 0;
        const double v = std::stod(part, &used);
        if (used != part.size()) throw baker::invalid_parameter("bad number: " + part);
        return v;
    };

    // Split before the sign of the imaginary part, skipping exponent signs.
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') split = i;
    }
    try {
        if (s.back() == 'i') {
            if (split == std::string::npos) return cplx{0.0, parse_part(s, true)};
            return cplx{parse_part(s.substr(0, split), false), parse_part(s.substr(split), true)};
        }
        if (split != std::string::npos && split > 0)
            throw baker::invalid_parameter("real literal with stray sign: " + s);
        return cplx{parse_part(s, false), 0.0};
    } catch (const std::exception&) {
        throw baker::invalid_parameter("cannot parse complex number '" + text +
                                       "' (expected a+bi / a-bi / a / bi)");
    }
}

std::string format_complex(cplx z) {
    std::string out = baker::canonical_double(z.real());
    if (z.imag() >= 0.0 || std::isnan(z.imag())) out += "+";
    out += baker::canonical_double(z.imag()) + "i";
    return out;
}

int cmd_plan(double rho, double teich_constant) {
    const double bound = baker::teichmuller_modulus_bound(rho, teich_constant);
    const double mu = baker::choose_mu(rho, teich_constant);
    const auto [zeta0, r0] = baker::default_base_disc(mu);
    std::printf("rho:                 %s\n", baker::canonical_double(rho).c_str());
    std::printf("teich constant:      %s\n", baker::canonical_double(teich_constant).c_str());
    std::printf("modulus bound:       %s\n", baker::canonical_double(bound).c_str());
    std::printf("mu:                  %s\n", baker::canonical_double(mu).c_str());
    std::printf("annulus modulus:     %s\n", baker::canonical_double(std::log(mu) / 2.0).c_str());
    std::printf("base disc center:    %s\n", format_complex(zeta0).c_str());
    std::printf("base disc radius:    %s\n", baker::canonical_double(r0).c_str());
    for (int j = 0; j < 3; ++j) {
        const double inner = baker::power_int(mu, j);
        std::printf("witness annulus %d:   %s < |z| < %s\n", j,
                    baker::canonical_double(inner).c_str(),
                    baker::canonical_double(inner * rho).c_str());
    }
    return 0;
}

baker::OrbitRecord run_orbit(const baker::Tower& tower, cplx z, int n) {
    return baker::iterate(z, n, tower);
}

std::string orbit_json(const baker::OrbitRecord& rec) {
    std::string out = "{\"start\":[" + baker::canonical_double(rec.start.real()) + "," +
                      baker::canonical_double(rec.start.imag()) + "]";
    out += ",\"classification\":\"" + baker::to_string(rec.classification) + "\"";
    out += ",\"iterations\":" + std::to_string(rec.iterations);
    const baker::SphereValue last = rec.points.back();
    out += ",\"final\":";
    if (last.finite)
        out += "[" + baker::canonical_double(last.value.real()) + "," +
               baker::canonical_double(last.value.imag()) + "]";
    else
        out += "\"inf\"";
    if (rec.cycle) {
        out += ",\"cycle\":[[" + baker::canonical_double(rec.cycle->first.real()) + "," +
               baker::canonical_double(rec.cycle->first.imag()) + "],[" +
               baker::canonical_double(rec.cycle->second.real()) + "," +
               baker::canonical_double(rec.cycle->second.imag()) + "]]";
    }
    out += "}";
    return out;
}

unsigned parse_overlays(const std::string& list) {
    unsigned bits = 0;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        if (item == "discs") bits |= baker::OverlayDiscs;
        else if (item == "subdiscs") bits |= baker::OverlaySubdiscs;
        else if (item == "annuli") bits |= baker::OverlayWitnessAnnuli;
        else if (item == "skeleton" || item == "u0") bits |= baker::OverlaySkeleton;
        else throw baker::invalid_parameter("unknown overlay '" + item + "'");
    }
    return bits;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"baker_lab: an expanding map with surgically inserted local models "
                 "whose critical points all close into superattracting 2-cycles"};
    app.require_subcommand(1);

    // plan
    double rho = 2.0;
    double teich = baker::default_teich_constant();
    CLI::App* plan = app.add_subcommand("plan", "print derived parameters for a target ratio");
    plan->add_option("--rho", rho, "target annulus ratio (> 1)")->required();
    plan->add_option("--teich-constant", teich, "constant in the modulus surrogate");

    // build
    double b_rho = 2.0, b_K = 1.5, b_teich = baker::default_teich_constant();
    double b_mu = 0.0, b_r0 = 0.0;
    std::string b_zeta0, b_out;
    int b_levels = 8;
    bool b_lazy = false;
    CLI::App* build = app.add_subcommand("build", "build a model and write it to disk");
    build->add_option("--rho", b_rho, "target annulus ratio (derives mu)");
    build->add_option("--mu", b_mu, "expansion factor (overrides the derived value)");
    build->add_option("--K", b_K, "dilatation bound (> 1)");
    build->add_option("--levels", b_levels, "deepest level to build (>= 1)");
    build->add_option("--teich-constant", b_teich, "constant in the modulus surrogate");
    build->add_option("--zeta0", b_zeta0, "base disc center, a+bi");
    build->add_option("--r0", b_r0, "base disc radius");
    build->add_option("--out", b_out, "output model file")->required();
    build->add_flag("--lazy", b_lazy, "write parameters only; levels rebuild on demand");

    // verify
    std::string v_model, v_report;
    long v_samples = 10000;
    std::uint64_t v_seed = 1;
    CLI::App* verify = app.add_subcommand("verify", "audit a model and write a JSON report");
    verify->add_option("model", v_model, "model file")->required();
    verify->add_option("--samples", v_samples, "sample budget per check");
    verify->add_option("--seed", v_seed, "sampling seed");
    verify->add_option("--report", v_report, "report output path");

    // orbit
    std::string o_model, o_z;
    int o_n = 100;
    bool o_json = false;
    CLI::App* orbit = app.add_subcommand("orbit", "iterate a point and classify its orbit");
    orbit->add_option("model", o_model, "model file")->required();
    orbit->add_option("--z", o_z, "start point, a+bi")->required();
    orbit->add_option("--n", o_n, "iteration cap");
    orbit->add_flag("--json", o_json, "print one JSON line instead of text");

    // render
    std::string r_model, r_out, r_center = "0+0i", r_overlays;
    double r_span_x = 4.0, r_span_y = 4.0;
    int r_width = 512, r_height = 512, r_iter = 64;
    CLI::App* render = app.add_subcommand("render", "write a classification image (binary PPM)");
    render->add_option("model", r_model, "model file")->required();
    render->add_option("--center", r_center, "window center, a+bi");
    render->add_option("--span-x", r_span_x, "window width in the plane");
    render->add_option("--span-y", r_span_y, "window height in the plane");
    render->add_option("--width", r_width, "pixels across");
    render->add_option("--height", r_height, "pixels down");
    render->add_option("--max-iter", r_iter, "iteration cap per pixel");
    render->add_option("--overlays", r_overlays, "comma list: discs,subdiscs,annuli,skeleton");
    render->add_option("--out", r_out, "output image path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (plan->parsed()) return cmd_plan(rho, teich);

        if (build->parsed()) {
            baker::ModelParams params;
            params.rho = b_rho;
            params.K = b_K;
            params.j_max = b_levels;
            params.teich_constant = b_teich;
            params.mu = b_mu > 0.0 ? b_mu : baker::choose_mu(b_rho, b_teich);
            if (!b_zeta0.empty() || b_r0 > 0.0) {
                if (b_zeta0.empty() || !(b_r0 > 0.0))
                    throw baker::invalid_parameter("--zeta0 and --r0 must be given together");
                params.zeta0 = parse_complex(b_zeta0);
                params.r0 = b_r0;
            } else {
                const auto [zeta0, r0] = baker::default_base_disc(params.mu);
                params.zeta0 = zeta0;
                params.r0 = r0;
            }
            baker::validate(params);
            baker::Tower tower(params);
            if (!b_lazy) tower.build_all();
            baker::write_model_file(tower, b_out, b_lazy);
            if (!b_lazy) {
                std::printf("built levels 0..%d: %ld local models, %ld poles\n", params.j_max,
                            tower.total_local_models(), tower.total_local_models());
                std::printf("min parent clearance: %s\n",
                            baker::canonical_double(tower.min_parent_clearance()).c_str());
                std::printf("fingerprint: %s\n", baker::model_fingerprint(tower).c_str());
            }
            std::printf("wrote %s\n", b_out.c_str());
            return 0;
        }

        if (verify->parsed()) {
            const baker::Tower tower = baker::read_model_file(v_model);
            const baker::VerificationReport report =
                baker::run_verification(tower, v_samples, v_seed);
            for (const baker::CheckEntry& e : report.entries)
                std::printf("%-42s %s  worst=%.6g tol=%.6g samples=%ld\n", e.check.c_str(),
                            e.pass ? "pass" : "FAIL", e.worst, e.tol, e.samples);
            if (!v_report.empty())
                baker::write_text_file(v_report, baker::serialize_report(report));
            std::printf("%s (fingerprint %s)\n", report.all_pass ? "ALL CHECKS PASS" : "FAILURES",
                        report.fingerprint.c_str());
            return report.all_pass ? 0 : 1;
        }

        if (orbit->parsed()) {
            const baker::Tower tower = baker::read_model_file(o_model);
            const baker::OrbitRecord rec = run_orbit(tower, parse_complex(o_z), o_n);
            if (o_json) {
                std::printf("%s\n", orbit_json(rec).c_str());
            } else {
                std::printf("start:          %s\n", format_complex(rec.start).c_str());
                std::printf("classification: %s\n", baker::to_string(rec.classification).c_str());
                std::printf("iterations:     %d\n", rec.iterations);
                const std::size_t shown = std::min<std::size_t>(rec.points.size(), 8);
                for (std::size_t i = 0; i < shown; ++i) {
                    const baker::SphereValue& v = rec.points[i];
                    std::printf("  z_%zu = %s\n", i,
                                v.finite ? format_complex(v.value).c_str() : "inf");
                }
                if (rec.points.size() > shown) std::printf("  ...\n");
                if (rec.cycle)
                    std::printf("cycle: (%s, %s)\n", format_complex(rec.cycle->first).c_str(),
                                format_complex(rec.cycle->second).c_str());
            }
            return 0;
        }

        if (render->parsed()) {
            const baker::Tower tower = baker::read_model_file(r_model);
            baker::RenderSpec spec;
            spec.center = parse_complex(r_center);
            spec.span_x = r_span_x;
            spec.span_y = r_span_y;
            spec.width = r_width;
            spec.height = r_height;
            spec.max_iter = r_iter;
            spec.overlays = parse_overlays(r_overlays);
            const baker::Image img = baker::render(tower, spec);
            baker::write_ppm(img, r_out);
            std::printf("wrote %s (%dx%d)\n", r_out.c_str(), img.width, img.height);
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
