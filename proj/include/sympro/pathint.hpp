#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sympro/systems.hpp"

namespace sympro {

enum class VelocityKind { gaussian, piecewise_constant, correlated_walk };

std::string to_string(VelocityKind k);
VelocityKind velocity_kind_from_string(const std::string& s);

struct VelocitySequence {
    VelocityKind kind = VelocityKind::gaussian;
    std::vector<double> values; // one angular velocity per step
    double dt = 0.05;
    std::uint64_t seed = 0;
    double scale = 1.0;
};

// gaussian: iid normal(0, scale^2); piecewise_constant: a held normal value
// resampled every 16 steps; correlated_walk: AR(1) with coefficient 0.95 and
// stationary std = scale. All seeded and reproducible.
VelocitySequence generate_velocity(VelocityKind kind, std::size_t horizon, double dt,
                                   std::uint64_t seed, double scale);

enum class TaskCondition { in_dist, speed_ood, restricted_phase };
std::string to_string(TaskCondition c);

struct TaskResult {
    std::size_t horizon = 0;
    double circular_rmse = 0.0;            // radians, in [0, pi]
    std::vector<double> per_step_error;    // wrapped to (-pi, pi]
    std::string model;
    TaskCondition condition = TaskCondition::in_dist;
};

// Drives the model with one integration step per velocity sample from the
// phase cue phi0; the readout is the analytic phase of the z block. Ground
// truth is the accumulated wrapped phase.
TaskResult run_task(const SystemSpec& model, double phi0, const VelocitySequence& v,
                    TaskCondition label);

struct GridNullResult {
    std::size_t n = 0;
    double discrete_error = 0.0; // integer-roll step equivariance error
    std::vector<std::pair<double, double>> continuous_error_curve; // (offset, error)
};

// Step-equivariance of the circulant grid under integer rolls and Fourier
// shifts at the given fractional offsets, sampled on settled bump states.
GridNullResult grid_null(std::size_t n, const std::vector<double>& shift_offsets,
                         std::uint64_t seed = 0);

struct ConsequenceRow {
    std::string model;
    TaskCondition condition = TaskCondition::in_dist;
    std::uint64_t seed = 0;
    std::size_t horizon = 0;
    double speed_scale = 1.0;
    double rmse = 0.0;
    std::string error; // row-level tag
};

struct ConsequenceCell {
    std::string model;
    TaskCondition condition = TaskCondition::in_dist;
    std::size_t horizon = 0;
    double speed_scale = 1.0;
    double mean_rmse = 0.0;
    double stderr_rmse = 0.0;
    std::size_t count = 0;
};

struct ConsequenceTable {
    std::vector<ConsequenceRow> rows;
    std::vector<ConsequenceCell> cells;
};

struct ConsequenceSettings {
    double dt = 0.05;
    double broken_epsilon = 0.05;
    VelocityKind velocity = VelocityKind::correlated_walk;
    double in_dist_scale = 1.0;
    std::uint64_t seed = 0;
    std::size_t jobs = 0;
    // each row averages this many independently drawn velocity sequences
    std::size_t eval_rows_per_seed = 16;
};

// Factorial exact-vs-broken comparison over seeds x horizons x speed scales.
// Each row's RMSE averages a batch of eval_rows_per_seed fresh velocity
// sequences (and phase cues) drawn from the row seed's stream; cells
// aggregate rows as mean +- standard error across seeds.
ConsequenceTable consequence_suite(const std::vector<std::uint64_t>& seeds,
                                   const std::vector<std::size_t>& horizons,
                                   const std::vector<double>& speed_scales,
                                   const ConsequenceSettings& settings);

double wrap_to_pi(double angle);

} // namespace sympro
