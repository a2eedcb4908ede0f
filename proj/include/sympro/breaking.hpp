#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sympro/systems.hpp"

namespace sympro {

struct LifetimeRecord {
    BreakingConfig config;
    double gap_measured = 0.0;
    double gap_predicted = 0.0;
    double lifetime_measured = 0.0;
    double lifetime_predicted = 0.0;
    bool censored = false;
    double theta0 = 0.0;
    double theta_threshold = 0.0;
    double equivariance_error = 0.0;
    std::string error; // row-level failure tag, empty on success
};

struct PseudoGapDetail {
    double eigenvalue = 0.0;   // Rayleigh-refined mode along the former group tangent
    double direct_rate = 0.0;  // finite-time direct tangent exponent cross-check
    double overlap = 0.0;      // |<eigvec, xi_M>| at the pinned point
    Vec pinned_point;
};

// Eigenvalue of the broken linearization at the pinned fixed point whose
// eigenvector has maximal overlap with the former group tangent, refined by
// Rayleigh-quotient iteration and cross-checked against the direct exponent.
PseudoGapDetail measure_pseudo_gap_detail(const SystemSpec& broken);
double measure_pseudo_gap(const SystemSpec& broken);

// First-order prediction: the phase-drift of the breaking term averaged over
// the unbroken orbit, linearized at its stable zero.
double predict_gap_perturbative(const SystemSpec& base, const BreakingConfig& cfg);

// Stable and unstable pinned phases of the reduced drift (radians, measured
// on the unbroken orbit).
struct PinnedPhases {
    double stable = 0.0;
    double unstable = 0.0;
};
PinnedPhases pinned_phases(const SystemSpec& base, const BreakingConfig& cfg);

struct LifetimeMeasurement {
    double lifetime = 0.0;
    bool censored = false;
};

// Starts on the unbroken orbit at theta0 from the unstable pinned phase
// (toward the stable one) and integrates the broken system until the phase
// deviation from its initial phase exceeds theta_threshold.
LifetimeMeasurement measure_lifetime(const SystemSpec& broken, const SystemSpec& base,
                                     double theta0, double theta_threshold, double t_max, double dt);

// Closed form for the sinusoidal reduced model theta' = -|gap| sin(theta);
// throws ZeroGap when gap = 0.
double predict_lifetime(double gap, double theta0, double theta_threshold);
// Generic log-ratio fallback for non-sinusoidal reductions.
double predict_lifetime_generic(double gap, double theta0, double theta_threshold);

struct SweepSettings {
    double theta0 = 0.1;
    double theta_threshold = 1.0;
    double dt = 1e-2;
    double t_max_cap = 1e5;
    int pin_order = 1;
    std::uint64_t seed = 0;
    std::size_t equivariance_samples = 100;
    std::size_t jobs = 0; // 0 = available cores; merge order is fixed either way
};

struct SweepSummary {
    bool defined = false;
    double log_lifetime_correlation = 0.0;
    double uncensored_fraction = 0.0;
    double median_ratio = 0.0;
};

struct SweepResult {
    std::vector<LifetimeRecord> records;
    SweepSummary summary;
};

// Full factorial sweep over families x eps_grid x seeds on the given base
// system. Row failures are recorded as error tags, not thrown.
SweepResult lifetime_sweep(const SystemSpec& base, const std::vector<BreakingFamily>& families,
                           const std::vector<double>& eps_grid,
                           const std::vector<std::uint64_t>& seeds, const SweepSettings& settings);

double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y);

} // namespace sympro
