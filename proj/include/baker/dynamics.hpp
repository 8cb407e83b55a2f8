#pragma once

#include <optional>
#include <string>
#include <vector>

#include "baker/tower.hpp"

namespace baker {

enum class OrbitClass { EscapingU0, Period2Cycle, PoleTerminated, CapExceeded, Undecided };

std::string to_string(OrbitClass c);

/// Largest |z| the iteration will push through the map; beyond it a gap
/// orbit's fate is reported undecided instead of overflowing.
double overflow_guard(const ModelParams& params);

struct OrbitRecord {
    cplx start{0.0, 0.0};
    std::vector<SphereValue> points; // points[0] == start
    OrbitClass classification = OrbitClass::Undecided;
    int iterations = 0;
    std::optional<std::pair<cplx, cplx>> cycle;
};

struct EvalResult {
    SphereValue value;
    bool cap_exceeded = false;
};

/// Sub-disc containing z, if any, as (level, index). Errors with
/// cap_exceeded=true when z sits in a level disc past the recursion cap.
struct DiscIndex {
    int level = -1;
    int index = -1;
    bool cap_exceeded = false;
    bool in_subdisc() const { return level >= 0 && !cap_exceeded; }
};
DiscIndex disc_index(cplx z, const Tower& tower);

/// The global map: the local model inside a sub-disc, mu*z everywhere else.
EvalResult eval_F(cplx z, const Tower& tower);

/// Iterates until a pole, a detected 2-cycle (relative tolerance 1e-9 on the
/// recent window), entry into the escaping skeleton minus the origin, the
/// recursion cap, or n_max.
OrbitRecord iterate(cplx z, int n_max, const Tower& tower);

/// Quadratic-probe diagnostic: |g(c + h) - g(c)| / h^2 evaluated through the
/// cancellation-free displacement difference, at unit-coordinate anchor w0.
double quadratic_probe(const LocalModelSpec& spec, cplx w0, double h);

struct SuperattractReport {
    int level = -1;
    int subdisc = -1;
    int slot = -1;
    double cycle_error = 0.0;      // |F^2(c) - c|
    double cycle_tolerance = 0.0;  // 1e-9 * max(1, |c|)
    double partner_error = 0.0;    // |F(F(c)) - c| through the stored partner
    double probe_scale = 0.0;      // the larger probe step
    std::vector<double> q_values;  // one per probe step, descending steps
    double q_ratio = 0.0;          // q(smallest)/q(largest)
    double partner_derivative = 0.0; // |g'(partner center)|
    bool pass = false;
    std::string failure;
};

/// Verifies that the stored critical point c closes into a 2-cycle and that
/// the return map has vanishing derivative there: the cycle leg through c is
/// quadratic (probe ratio within [0.2, 5]) and the partner leg has finite
/// nonzero derivative, so (F^2)'(c) = g'(F(c)) * g'(c) = 0.
/// `steps` are absolute probe distances; empty selects
/// {1e-3, 1e-4} * (1000 * r * sqrt(eps) / 30).
SuperattractReport verify_superattracting(cplx c, const Tower& tower,
                                          const std::vector<double>& steps = {});

struct ForwardImageReport {
    int start_level = 0;
    int steps = 0;
    long samples = 0;
    long violations = 0;
    std::optional<cplx> first_counterexample;
    int counterexample_step = -1;
    double worst_boundary_margin = 0.0; // min distance of any image to a forbidden region
};

/// Pushes `samples` points of the level-j interpolation annuli forward n
/// times and checks each image lies in the V region of the next levels.
ForwardImageReport check_forward_images(int j, int n, long samples, const Tower& tower,
                                        std::uint64_t seed);

/// Number of poles stored through level j inclusive.
long pole_count_through(const Tower& tower, int j);

} // namespace baker
