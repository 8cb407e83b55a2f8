#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "baker/dynamics.hpp"
#include "baker/rng.hpp"
#include "baker/tower.hpp"

namespace baker {

/// One verification entry. `worst` is compared against `tol` in the direction
/// the check declares internally; `pass` carries the verdict.
struct CheckEntry {
    std::string check;
    std::string anchor; // short statement of the audited property
    long samples = 0;
    double worst = 0.0;
    double tol = 0.0;
    bool pass = true;
};

struct VerificationReport {
    std::string fingerprint;
    std::uint64_t seed = 0;
    long samples_per_check = 0;
    std::vector<CheckEntry> entries;
    bool all_pass = true;

    const CheckEntry* find(const std::string& check) const;
};

/// Accumulates observations per named check; worst-case across levels is kept.
class CheckRegistry {
public:
    void declare_max(const std::string& check, const std::string& anchor, double tol);
    void declare_min(const std::string& check, const std::string& anchor, double tol);
    void observe(const std::string& check, double value, long samples);
    void force_fail(const std::string& check, const std::string& note);
    std::vector<CheckEntry> finalize() const; // in declaration order
    bool all_pass() const;

private:
    struct Slot {
        std::string check;
        std::string anchor;
        double tol = 0.0;
        bool min_type = false;
        bool touched = false;
        bool forced_fail = false;
        long samples = 0;
        double worst = 0.0;
    };
    Slot& at(const std::string& check);
    std::vector<Slot> slots_;
};

/// Whole-model audit with the given per-check sample budget. Deterministic
/// for a fixed model and seed.
VerificationReport run_verification(const Tower& tower, long samples, std::uint64_t seed);

/// Deterministic canonical JSON: schema
/// {fingerprint, seed, samples, checks:[{check, anchor, samples, worst, tol, pass}], all_pass}.
std::string serialize_report(const VerificationReport& report);

// Individual audit passes; run_verification composes them in a fixed order.
void audit_annuli(const Tower& tower, CheckRegistry& reg);
void audit_skeleton(const Tower& tower, long samples, std::uint64_t seed, CheckRegistry& reg);
void audit_level(const Tower& tower, int j, long samples, std::uint64_t seed, CheckRegistry& reg);
void audit_dilatation(const Tower& tower, long samples, std::uint64_t seed, CheckRegistry& reg);
void audit_forward_images(const Tower& tower, long samples, std::uint64_t seed, CheckRegistry& reg);

// Region samplers shared by audits and tests. All deterministic in the rng.
cplx sample_skeleton_point(Rng& rng, const ModelParams& params);
cplx sample_v_region(Rng& rng, const LevelData& level, double clear);
std::pair<const SubDisc*, cplx> sample_annulus_point(Rng& rng, const LevelData& level,
                                                     double edge = 1e-6);
cplx sample_inner_unit_point(Rng& rng, const SubDisc& sd, double fd_step); // unit coordinates

// Negative-control mutations. Each yields a tower whose designated audit
// fails while the remaining audits stay green.
Tower mutate_doubled_eps(const Tower& tower, int level, int index);
Tower mutate_swapped_targets(const Tower& tower, int level, int i1, int i2);
Tower mutate_oversized_base_disc(const Tower& tower);

} // namespace baker
