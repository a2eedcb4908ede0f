#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sympro/groups.hpp"
#include "sympro/lyapunov.hpp"
#include "sympro/rng.hpp"
#include "sympro/systems.hpp"

namespace sympro {

struct FlowZero {
    std::size_t rank_eg = 0;
    std::size_t rank_f_union_eg = 0;
    bool fixed_point = false; // |f(x)| at or below the flow threshold
    double flow_norm = 0.0;
};

struct DiagSettings {
    double spectrum_T = 200.0;
    double covariance_T = 100.0;
    double dt = 1e-2;
    std::size_t renorm_every = 10;
    double near_zero_tol = 1e-4;
    double rank_tol = 1e-8;
    std::size_t equivariance_samples = 200;
    std::uint64_t seed = 0;
    double orbit_diag_T = 50.0;
};

struct DiagnosticsReport {
    std::string system;
    double equivariance_error = 0.0;
    std::optional<double> tangent_covariance_angle_deg;
    std::vector<double> neutral_principal_angles_deg;
    FlowZero flow_zero;
    OrbitDiagnostics orbit;
    LyapunovReport spectrum;
    DiagSettings settings;
    std::string note; // degenerate-diagnostic explanations (collapse control)
};

// Normalized equivariance error, maximized over seeded random (x, g) pairs:
// x in an annulus [0.5, 1.5] * attractor scale, g = exp of a random algebra
// element with coefficients in [-pi, pi].
double equivariance_error(const SystemSpec& s, std::size_t n_samples, std::uint64_t seed);

// One-step analogue for discrete maps: max |Step(g x) - g Step(x)| / (1 + |Step(x)|)
// over sampled states and the supplied state operators.
using StepMap = std::function<Vec(const Vec&)>;
using StateOp = std::function<Vec(const Vec&)>;
double step_equivariance_error(const StepMap& step, const std::vector<StateOp>& ops,
                               const std::function<Vec(Rng&)>& draw_state,
                               std::size_t n_samples, std::uint64_t seed);
// same check over an explicit sample set (reused across operator families)
double step_equivariance_error(const StepMap& step, const std::vector<StateOp>& ops,
                               const std::vector<Vec>& samples);

// Propagates every basis tangent jointly and returns the largest principal
// angle between the propagated span and the group-tangent space at the
// endpoint.
double tangent_covariance_angle(const SystemSpec& s, const Vec& x0, double T, double dt);

// Principal angles between the near-zero columns of the Benettin frame and
// the group-tangent space at the final state.
std::vector<double> neutral_alignment(const SystemSpec& s, const LyapunovReport& report,
                                      const Vec& x_final);

// Rank of the group-tangent space and of [f(x) | E^G_x]; classifies the flow
// direction (fixed point / f in E^G / f outside E^G).
FlowZero flow_zero_diagnostic(const SystemSpec& s, const Vec& x, double rank_tol);

// Burn-in, spectrum, and the full diagnostic battery with one seed.
DiagnosticsReport full_report(const SystemSpec& s, const DiagSettings& settings);

} // namespace sympro
