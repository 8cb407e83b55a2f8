#include "baker/model_io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "baker/rng.hpp"

namespace baker {

namespace {

using nlohmann::json;

std::string cpx(const cplx& z) {
    return "[" + canonical_double(z.real()) + "," + canonical_double(z.imag()) + "]";
}

// Radius terms that do not apply (no siblings, no parent) are +infinity;
// JSON has no literal for that, so they travel as null.
std::string num_or_null(double x) { return std::isfinite(x) ? canonical_double(x) : "null"; }

double double_or_inf(const json& v) {
    return v.is_null() ? std::numeric_limits<double>::infinity() : v.get<double>();
}

void append_params(std::string& out, const ModelParams& p) {
    out += "\"params\":{";
    out += "\"mu\":" + canonical_double(p.mu);
    out += ",\"rho\":" + canonical_double(p.rho);
    out += ",\"K\":" + canonical_double(p.K);
    out += ",\"zeta0\":" + cpx(p.zeta0);
    out += ",\"r0\":" + canonical_double(p.r0);
    out += ",\"j_max\":" + std::to_string(p.j_max);
    out += ",\"teich_constant\":" + canonical_double(p.teich_constant);
    out += "}";
}

void append_subdisc(std::string& out, const SubDisc& sd) {
    const LocalModelSpec& m = sd.model;
    out += "{\"center\":" + cpx(m.center);
    out += ",\"radius\":" + canonical_double(m.radius);
    out += ",\"inner_radius\":" + canonical_double(m.inner_radius);
    out += ",\"value_clearance\":" + canonical_double(m.value_clearance);
    out += ",\"target\":" + cpx(m.target);
    out += ",\"alpha\":" + cpx(m.alpha);
    out += ",\"eps\":" + canonical_double(m.eps);
    out += ",\"pole\":" + cpx(m.pole);
    out += ",\"crit_points\":[" + cpx(m.crit_point[0]) + "," + cpx(m.crit_point[1]) + "]";
    out += ",\"crit_values\":[" + cpx(m.crit_value[0]) + "," + cpx(m.crit_value[1]) + "]";
    out += ",\"parent\":[" + std::to_string(sd.parent_index) + "," +
           std::to_string(sd.parent_slot) + "]";
    out += ",\"radius_terms\":{";
    out += "\"sibling\":" + num_or_null(sd.radius_terms.sibling);
    out += ",\"boundary\":" + canonical_double(sd.radius_terms.boundary);
    out += ",\"parent_theta_half\":" + num_or_null(sd.radius_terms.parent_theta_half);
    out += ",\"parent_image_margin\":" + num_or_null(sd.radius_terms.parent_image_margin);
    out += ",\"parent_sibling_gap\":" + num_or_null(sd.radius_terms.parent_sibling_gap);
    out += ",\"clearance\":" + num_or_null(sd.radius_terms.clearance);
    out += ",\"chosen\":" + canonical_double(sd.radius_terms.chosen);
    out += "}";
    out += ",\"sibling_value_separation\":" + canonical_double(sd.sibling_value_separation);
    out += ",\"eps_halvings\":" + std::to_string(sd.model.eps_halvings);
    out += "}";
}

std::string payload(const Tower& tower, bool lazy) {
    std::string out;
    append_params(out, tower.params());
    out += ",\"lazy\":";
    out += lazy ? "true" : "false";
    out += ",\"levels\":[";
    if (!lazy) {
        tower.build_all();
        for (int j = 0; j <= tower.params().j_max; ++j) {
            const LevelData& lv = tower.level(j);
            if (j > 0) out += ",";
            out += "{\"j\":" + std::to_string(lv.j);
            out += ",\"disc_center\":" + cpx(lv.disc_center);
            out += ",\"disc_radius\":" + canonical_double(lv.disc_radius);
            out += ",\"subdiscs\":[";
            for (std::size_t i = 0; i < lv.subdiscs.size(); ++i) {
                if (i > 0) out += ",";
                append_subdisc(out, lv.subdiscs[i]);
            }
            out += "]}";
        }
    }
    out += "]";
    return out;
}

cplx parse_cpx(const json& a) { return cplx{a.at(0).get<double>(), a.at(1).get<double>()}; }

} // namespace

std::string canonical_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string serialize_model(const Tower& tower, bool lazy) {
    std::string body = payload(tower, lazy);
    std::string out = "{\"format_version\":" + std::to_string(kModelFormatVersion) + ",";
    out += body;
    long models = 0;
    if (!lazy) models = tower.total_local_models();
    out += ",\"metadata\":{\"builder\":\"baker-lab\",\"local_models\":" + std::to_string(models);
    out += ",\"poles\":" + std::to_string(models) + "}}";
    out += "\n";
    return out;
}

std::string model_fingerprint(const Tower& tower) {
    tower.build_all();
    const std::uint64_t h = fnv1a64(payload(tower, false));
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Tower parse_model(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw model_io_error(std::string("model file is not valid JSON: ") + e.what());
    }
    if (!doc.contains("format_version") || !doc["format_version"].is_number_integer())
        throw model_io_error("model file has no format version");
    const int version = doc["format_version"].get<int>();
    if (version != kModelFormatVersion)
        throw model_io_error("unsupported model format version " + std::to_string(version) +
                             " (expected " + std::to_string(kModelFormatVersion) + ")");

    ModelParams p;
    try {
        const json& jp = doc.at("params");
        p.mu = jp.at("mu").get<double>();
        p.rho = jp.at("rho").get<double>();
        p.K = jp.at("K").get<double>();
        p.zeta0 = parse_cpx(jp.at("zeta0"));
        p.r0 = jp.at("r0").get<double>();
        p.j_max = jp.at("j_max").get<int>();
        p.teich_constant = jp.at("teich_constant").get<double>();

        const bool lazy = doc.value("lazy", false);
        if (lazy || doc.at("levels").empty()) return Tower(p);

        std::vector<LevelData> levels;
        for (const json& jl : doc.at("levels")) {
            LevelData lv;
            lv.j = jl.at("j").get<int>();
            lv.disc_center = parse_cpx(jl.at("disc_center"));
            lv.disc_radius = jl.at("disc_radius").get<double>();
            for (const json& js : jl.at("subdiscs")) {
                SubDisc sd;
                sd.model = make_local_model(parse_cpx(js.at("center")),
                                            js.at("radius").get<double>(),
                                            js.at("inner_radius").get<double>(),
                                            js.at("value_clearance").get<double>(),
                                            parse_cpx(js.at("target")), p.mu,
                                            js.at("eps").get<double>(),
                                            js.at("eps_halvings").get<int>());
                sd.parent_index = js.at("parent").at(0).get<int>();
                sd.parent_slot = js.at("parent").at(1).get<int>();
                const json& rt = js.at("radius_terms");
                sd.radius_terms.sibling = double_or_inf(rt.at("sibling"));
                sd.radius_terms.boundary = rt.at("boundary").get<double>();
                sd.radius_terms.parent_theta_half = double_or_inf(rt.at("parent_theta_half"));
                sd.radius_terms.parent_image_margin = double_or_inf(rt.at("parent_image_margin"));
                sd.radius_terms.parent_sibling_gap = double_or_inf(rt.at("parent_sibling_gap"));
                sd.radius_terms.clearance = double_or_inf(rt.at("clearance"));
                sd.radius_terms.chosen = rt.at("chosen").get<double>();
                sd.sibling_value_separation = js.at("sibling_value_separation").get<double>();
                lv.subdiscs.push_back(std::move(sd));
            }
            levels.push_back(std::move(lv));
        }
        return Tower(p, std::move(levels));
    } catch (const json::exception& e) {
        throw model_io_error(std::string("model file is missing fields: ") + e.what());
    }
}

void write_model_file(const Tower& tower, const std::string& path, bool lazy) {
    write_text_file(path, serialize_model(tower, lazy));
}

Tower read_model_file(const std::string& path) { return parse_model(read_text_file(path)); }

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw model_io_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw model_io_error("cannot write " + path);
    out << contents;
    if (!out.good()) throw model_io_error("short write to " + path);
}

} // namespace baker
