#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "baker/geometry.hpp"
#include "baker/local_model.hpp"

namespace baker {

/// How a sub-disc radius was derived: one third of the smallest of the
/// sibling spacing, the distance to the level-disc boundary, and the analytic
/// clearance to the closure of the previous level's image (three sub-terms).
struct RadiusTerms {
    double sibling = 0.0;          // min distance to other level-j value points
    double boundary = 0.0;         // dist(omega, boundary of D_j)
    double parent_theta_half = 0.0;
    double parent_image_margin = 0.0;  // mu*rho* - |omega - mu*center*|
    double parent_sibling_gap = 0.0;   // mu * min gap between parent sub-discs
    double clearance = 0.0;            // min of the three parent terms
    double chosen = 0.0;               // the resulting sub-disc radius
};

struct SubDisc {
    LocalModelSpec model;
    int parent_index = -1; // sub-disc index at the previous level
    int parent_slot = -1;  // which of its two critical values spawned this one
    RadiusTerms radius_terms;
    double sibling_value_separation = 0.0; // 4*mu*r*sqrt(eps), the two children of this model
};

/// Everything at one recursion level: the level disc D_j and its sub-discs in
/// creation order. Sub-disc i at level j+1 descends from sub-disc i/2, slot
/// i%2, at level j; that index pairing is the critical point <-> value
/// bijection.
struct LevelData {
    int j = 0;
    cplx disc_center{0.0, 0.0};
    double disc_radius = 0.0;
    std::vector<SubDisc> subdiscs;
};

enum class Region { V, X, Inner, Outside };

/// V: in D_j but outside every closed sub-disc (the map is the base map
/// there). X: in a sub-disc's interpolation annulus. Inner: in a closed inner
/// disc (meromorphic piece).
Region region_of(cplx z, const LevelData& level);

LevelData build_level(int j, const ModelParams& params, const LevelData* prev,
                      const SelectOptions& options = {});

/// Lazily built, internally synchronized stack of levels. Levels are
/// immutable once published; building depends only on the parameters, so any
/// access order yields identical data.
class Tower {
public:
    explicit Tower(ModelParams params);
    Tower(ModelParams params, std::vector<LevelData> prebuilt); // for loaders and mutation tests

    const ModelParams& params() const { return params_; }

    /// Builds through level j if needed. Throws cap_exceeded for j > j_max.
    const LevelData& level(int j) const;

    void build_all() const; // levels 0..j_max

    int levels_built() const;

    long total_local_models() const; // over built levels
    double min_parent_clearance() const;

private:
    ModelParams params_;
    SelectOptions options_;
    mutable std::mutex mutex_;
    // unique_ptr keeps published LevelData addresses stable while deeper
    // levels are appended.
    mutable std::vector<std::unique_ptr<LevelData>> levels_;
};

/// Radius rule inputs for one value point, exposed for direct testing.
struct RadiusContext {
    cplx omega;
    double min_sibling_distance = 0.0; // +inf when the level has a single point
    double boundary_distance = 0.0;
    bool has_parent = false;
    double parent_theta = 0.0;
    double parent_radius = 0.0;        // rho of the parent sub-disc
    cplx parent_image_center{0.0, 0.0}; // mu * parent center
    double parent_sibling_gap = 0.0;   // min gap between the parent and its level siblings
    double mu = 0.0;
};
RadiusTerms choose_subdisc_radius(const RadiusContext& ctx);

} // namespace baker
