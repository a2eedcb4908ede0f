#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "sympro/systems.hpp"

namespace sympro {

inline constexpr const char* kToolVersion = "sympro 1.0.0";

// Experiment registry: every runnable experiment name, in execution order.
const std::vector<std::string>& experiment_names();

struct ExperimentConfig {
    std::string experiment = "all";
    std::uint64_t seed = 7;
    std::filesystem::path out_dir = "out";
    std::size_t jobs = 0; // 0 = available cores

    // integration settings (echoed into the manifest)
    double T = 200.0;
    double dt = 1e-2;
    std::size_t renorm_every = 10;
    double tangent_warmup = 50.0;
    double near_zero_tol = 1e-4;
    double rank_tol = 1e-8;
    std::size_t equivariance_samples = 200;

    // pseudo-gap study
    std::vector<double> eps_grid = {0.005, 0.01, 0.02, 0.05, 0.1};
    std::size_t sweep_seeds = 5;
    std::size_t anisotropic_seeds = 30;
    double anisotropic_epsilon = 0.02;
    double theta0 = 0.1;
    double theta_threshold = 1.0;
    double rnn_broken_epsilon = 0.01;

    // path-integration consequence suite
    std::vector<std::size_t> horizons = {64, 256};
    std::vector<double> speed_scales = {1.0, 1.5, 2.0};
    std::size_t task_seeds = 6;
    double task_dt = 0.05;
    double broken_epsilon = 0.05;

    // finite-grid null
    std::vector<std::size_t> grid_sizes = {16, 32, 64, 128};
    std::vector<double> shift_offsets = {0.1, 0.25, 0.5};

    // optional override of the geometry experiment's system list, as
    // name+parameter selectors (see system_from_json)
    std::vector<nlohmann::json> geometry_systems;

    // Strict parsing: unknown fields are ConfigErrors naming the field.
    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig from_json_file(const std::filesystem::path& path);
    nlohmann::json to_json() const;
};

struct RunArtifacts {
    std::vector<std::filesystem::path> files; // everything written under out_dir
};

// The exact continuous-symmetry families of the dimension-law study.
std::vector<SystemSpec> dimension_law_zoo();
// Dimension-law zoo plus the remaining exact autonomous systems.
std::vector<SystemSpec> exact_zoo();

// Systems are addressable by name + parameters in experiment configs, e.g.
// {"system": "sphere", "n": 4} or
// {"system": "coupled_irrep", "breaking": {"family": "phase_pinning", "epsilon": 0.01}}.
SystemSpec system_from_json(const nlohmann::json& j);
BreakingConfig breaking_config_from_json(const nlohmann::json& j);
// Group actions serialize as {"name": "circle"|"torus"|"so"|"u"|"product", ...}
// with weights/q/n/m/factors; the summary form echoes expected_orbit_dim.
GroupSpec group_spec_from_json(const nlohmann::json& j);
nlohmann::json group_spec_json(const GroupSpec& g);

RunArtifacts run_experiment(const std::string& name, const ExperimentConfig& cfg);

// Writes <out>/manifest.json covering the artifact files; returns its path.
std::filesystem::path write_manifest(const ExperimentConfig& cfg, const RunArtifacts& artifacts,
                                     double wall_seconds);
// Re-hashes every file listed in a manifest; false on any mismatch.
bool verify_manifest(const std::filesystem::path& manifest_path);

} // namespace sympro
