#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sympro/acceptance.hpp"
#include "sympro/errors.hpp"
#include "sympro/experiments.hpp"
#include "sympro/kernels.hpp"

namespace {

sympro::ExperimentConfig load_config(const std::string& config_path, const std::string& experiment,
                                     long long seed_flag, const std::string& out_dir,
                                     long long jobs) {
    sympro::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = sympro::ExperimentConfig::from_json_file(config_path);
    if (!experiment.empty()) cfg.experiment = experiment;
    if (seed_flag >= 0)
        cfg.seed = static_cast<std::uint64_t>(seed_flag);
    else if (config_path.empty()) {
        if (const char* env = std::getenv("SYMPRO_SEED")) cfg.seed = std::strtoull(env, nullptr, 10);
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (jobs >= 0) cfg.jobs = static_cast<std::size_t>(jobs);
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sympro: symmetry-protected neutral-mode experiments"};
    app.require_subcommand(1);

    std::string experiment, config_path, out_dir;
    long long seed_flag = -1, jobs = -1;
    bool check_after = false;

    CLI::App* run = app.add_subcommand("run", "run an experiment and write CSV/JSON/SVG tables");
    run->add_option("--experiment", experiment, "experiment name or 'all'");
    run->add_option("--config", config_path, "JSON config file (strict schema)");
    run->add_option("--seed", seed_flag, "RNG seed (overrides SYMPRO_SEED)");
    run->add_option("--jobs", jobs, "worker threads for independent rows (default: cores)");
    run->add_option("--out", out_dir, "output directory");
    run->add_flag("--check", check_after, "run the matching acceptance criteria afterwards");

    CLI::App* check = app.add_subcommand("check", "run the acceptance suite");
    check->add_option("--experiment", experiment, "restrict to one experiment's criteria");
    check->add_option("--config", config_path, "JSON config file");
    check->add_option("--seed", seed_flag, "RNG seed");
    check->add_option("--jobs", jobs, "worker threads");
    std::vector<int> criterion_ids;
    check->add_option("--criterion", criterion_ids, "criterion ids to run (default: all)");

    CLI::App* list = app.add_subcommand("list", "list experiments and acceptance criteria");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            std::printf("experiments:\n");
            for (const std::string& name : sympro::experiment_names())
                std::printf("  %s\n", name.c_str());
            std::printf("  all\nacceptance criteria: 1..%zu (see 'check')\n",
                        sympro::all_criterion_ids().size());
            std::printf("kernel backend: %s%s\n", sympro::kernels::backend_name().data(),
                        sympro::kernels::avx2_available() ? " (avx2 available)" : "");
            return 0;
        }

        const sympro::ExperimentConfig cfg =
            load_config(config_path, experiment, seed_flag, out_dir, jobs);

        if (run->parsed()) {
            const auto t0 = std::chrono::steady_clock::now();
            const sympro::RunArtifacts artifacts = sympro::run_experiment(cfg.experiment, cfg);
            const double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            const auto manifest = sympro::write_manifest(cfg, artifacts, secs);
            std::printf("wrote %zu files under %s (%.1fs); manifest: %s\n", artifacts.files.size(),
                        cfg.out_dir.string().c_str(), secs, manifest.string().c_str());
            if (check_after) {
                const auto criteria =
                    sympro::run_all_criteria(cfg.seed, sympro::criteria_for_experiment(cfg.experiment),
                                             cfg.near_zero_tol);
                if (!sympro::print_report(criteria, stdout)) return 2;
            }
            return 0;
        }

        if (check->parsed()) {
            std::vector<int> ids = criterion_ids;
            if (ids.empty() && !experiment.empty() && experiment != "all")
                ids = sympro::criteria_for_experiment(experiment);
            const auto criteria = sympro::run_all_criteria(cfg.seed, ids, cfg.near_zero_tol);
            return sympro::print_report(criteria, stdout) ? 0 : 2;
        }
    } catch (const sympro::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
