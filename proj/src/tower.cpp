#include "baker/tower.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace baker {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Region region_of(cplx z, const LevelData& level) {
    if (std::abs(z - level.disc_center) > level.disc_radius) return Region::Outside;
    for (const SubDisc& sd : level.subdiscs) {
        const double d = std::abs(z - sd.model.center);
        if (d <= sd.model.inner_radius) return Region::Inner;
        if (d <= sd.model.radius) return Region::X;
    }
    return Region::V;
}

RadiusTerms choose_subdisc_radius(const RadiusContext& ctx) {
    RadiusTerms t;
    t.sibling = ctx.min_sibling_distance;
    t.boundary = ctx.boundary_distance;
    double limit = std::min(t.sibling, t.boundary);
    if (ctx.has_parent) {
        t.parent_theta_half = ctx.parent_theta / 2.0;
        t.parent_image_margin =
            ctx.mu * ctx.parent_radius - std::abs(ctx.omega - ctx.parent_image_center);
        t.parent_sibling_gap = ctx.mu * ctx.parent_sibling_gap;
        t.clearance = std::min({t.parent_theta_half, t.parent_image_margin, t.parent_sibling_gap});
        limit = std::min(limit, t.clearance);
    } else {
        t.parent_theta_half = t.parent_image_margin = t.parent_sibling_gap = t.clearance = kInf;
    }
    t.chosen = limit / 3.0;
    return t;
}

LevelData build_level(int j, const ModelParams& params, const LevelData* prev,
                      const SelectOptions& options) {
    if (j == 0 ? prev != nullptr : (prev == nullptr || prev->j != j - 1))
        throw invalid_parameter("level " + std::to_string(j) + " needs exactly its predecessor");

    LevelData level;
    level.j = j;
    level.disc_center = disc_center(params, j);
    level.disc_radius = disc_radius(params, j);

    struct Seed {
        cplx omega;
        cplx target;
        int parent_index;
        int parent_slot;
    };
    std::vector<Seed> seeds;
    if (j == 0) {
        seeds.push_back(Seed{params.zeta0, cplx{0.0, 0.0}, -1, -1});
    } else {
        seeds.reserve(prev->subdiscs.size() * 2);
        for (int i = 0; i < static_cast<int>(prev->subdiscs.size()); ++i) {
            const SubDisc& parent = prev->subdiscs[static_cast<std::size_t>(i)];
            for (int slot = 0; slot < 2; ++slot)
                seeds.push_back(Seed{parent.model.crit_value[static_cast<std::size_t>(slot)],
                                     parent.model.crit_point[static_cast<std::size_t>(slot)], i, slot});
        }
    }
    const std::size_t m = seeds.size();

    // Min gap from each parent sub-disc to its level siblings, shared by both
    // of its children.
    std::vector<double> parent_gap;
    if (j > 0) {
        const auto& ps = prev->subdiscs;
        parent_gap.assign(ps.size(), kInf);
        for (std::size_t a = 0; a < ps.size(); ++a)
            for (std::size_t b = a + 1; b < ps.size(); ++b) {
                const double gap = std::abs(ps[a].model.center - ps[b].model.center) -
                                   ps[a].model.radius - ps[b].model.radius;
                parent_gap[a] = std::min(parent_gap[a], gap);
                parent_gap[b] = std::min(parent_gap[b], gap);
            }
    }

    level.subdiscs.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Seed& seed = seeds[i];

        RadiusContext ctx;
        ctx.omega = seed.omega;
        ctx.mu = params.mu;
        ctx.min_sibling_distance = kInf;
        for (std::size_t k = 0; k < m; ++k)
            if (k != i)
                ctx.min_sibling_distance =
                    std::min(ctx.min_sibling_distance, std::abs(seed.omega - seeds[k].omega));
        ctx.boundary_distance = level.disc_radius - std::abs(seed.omega - level.disc_center);
        if (j > 0) {
            const SubDisc& parent = prev->subdiscs[static_cast<std::size_t>(seed.parent_index)];
            ctx.has_parent = true;
            ctx.parent_theta = parent.model.value_clearance;
            ctx.parent_radius = parent.model.radius;
            ctx.parent_image_center = params.mu * parent.model.center;
            ctx.parent_sibling_gap = parent_gap[static_cast<std::size_t>(seed.parent_index)];
        }

        const RadiusTerms terms = choose_subdisc_radius(ctx);
        const double collapse_floor =
            1e3 * std::numeric_limits<double>::epsilon() * std::abs(seed.omega);
        if (!(terms.chosen > collapse_floor))
            throw radius_collapse("sub-disc radius " + std::to_string(terms.chosen) +
                                      " at level " + std::to_string(j) + " index " +
                                      std::to_string(i) +
                                      " fell below the double-precision floor",
                                  j, static_cast<int>(i));

        const double rho = terms.chosen;
        const double eta = rho / 2.0;
        const double theta = params.mu * eta / 2.0;

        SubDisc sd;
        sd.model = select_epsilon(seed.omega, rho, eta, theta, seed.target, params.mu, params.K,
                                  options);
        sd.parent_index = seed.parent_index;
        sd.parent_slot = seed.parent_slot;
        sd.radius_terms = terms;
        sd.sibling_value_separation =
            4.0 * params.mu * rho * std::sqrt(sd.model.eps);
        level.subdiscs.push_back(std::move(sd));
    }

    // Inductive sanity: value points of this level must land inside the next
    // disc, pairwise distinct.
    const cplx next_center = disc_center(params, j + 1);
    const double next_radius = disc_radius(params, j + 1);
    for (const SubDisc& sd : level.subdiscs)
        for (const cplx& v : sd.model.crit_value)
            if (!(std::abs(v - next_center) < next_radius))
                throw invalid_parameter("critical value escaped the next-level disc at level " +
                                        std::to_string(j));
    for (std::size_t a = 0; a < level.subdiscs.size(); ++a)
        for (int sa = 0; sa < 2; ++sa)
            for (std::size_t b = a; b < level.subdiscs.size(); ++b)
                for (int sb = (b == a ? sa + 1 : 0); sb < 2; ++sb)
                    if (level.subdiscs[a].model.crit_value[static_cast<std::size_t>(sa)] ==
                        level.subdiscs[b].model.crit_value[static_cast<std::size_t>(sb)])
                        throw invalid_parameter("coincident critical values at level " +
                                                std::to_string(j));

    return level;
}

Tower::Tower(ModelParams params) : params_(std::move(params)) { validate(params_); }

Tower::Tower(ModelParams params, std::vector<LevelData> prebuilt) : params_(std::move(params)) {
    levels_.reserve(prebuilt.size());
    for (LevelData& lv : prebuilt) levels_.push_back(std::make_unique<LevelData>(std::move(lv)));
}

const LevelData& Tower::level(int j) const {
    if (j < 0 || j > params_.j_max)
        throw cap_exceeded("level " + std::to_string(j) + " is past the recursion cap " +
                           std::to_string(params_.j_max));
    std::lock_guard<std::mutex> lock(mutex_);
    while (static_cast<int>(levels_.size()) <= j) {
        const int next = static_cast<int>(levels_.size());
        const LevelData* prev = next == 0 ? nullptr : levels_.back().get();
        levels_.push_back(std::make_unique<LevelData>(build_level(next, params_, prev)));
    }
    return *levels_[static_cast<std::size_t>(j)];
}

void Tower::build_all() const { level(params_.j_max); }

int Tower::levels_built() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return static_cast<int>(levels_.size());
}

long Tower::total_local_models() const {
    std::lock_guard<std::mutex> lock(mutex_);
    long n = 0;
    for (const auto& lv : levels_) n += static_cast<long>(lv->subdiscs.size());
    return n;
}

double Tower::min_parent_clearance() const {
    std::lock_guard<std::mutex> lock(mutex_);
    double worst = kInf;
    for (const auto& lv : levels_)
        for (const SubDisc& sd : lv->subdiscs)
            if (sd.parent_index >= 0) worst = std::min(worst, sd.radius_terms.clearance);
    return worst;
}

} // namespace baker
