#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "sympro/experiments.hpp"
#include "sympro/report_io.hpp"
#include "sympro/rng.hpp"

using namespace sympro;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("config: defaults fill omitted settings; echo round-trips") {
    const ExperimentConfig cfg = ExperimentConfig::from_json(nlohmann::json::object());
    CHECK(cfg.experiment == "all");
    CHECK(cfg.T == 200.0);
    CHECK(cfg.dt == 1e-2);
    CHECK(cfg.near_zero_tol == 1e-4);
    CHECK(cfg.eps_grid.size() == 5);

    const ExperimentConfig round = ExperimentConfig::from_json(cfg.to_json());
    CHECK(round.to_json() == cfg.to_json());
}

TEST_CASE("config: unknown fields are rejected by name") {
    nlohmann::json j = {{"experiment", "pathint"}, {"unknown_knob", 3}};
    try {
        (void)ExperimentConfig::from_json(j);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("unknown_knob") != std::string::npos);
    }
}

TEST_CASE("config: type and value errors name the field") {
    CHECK_THROWS_AS((void)ExperimentConfig::from_json({{"dt", "fast"}}), ConfigError);
    CHECK_THROWS_AS((void)ExperimentConfig::from_json({{"dt", -1.0}}), ConfigError);
    CHECK_THROWS_AS((void)ExperimentConfig::from_json({{"experiment", "warp_drive"}}), ConfigError);
}

TEST_CASE("format_g17 round-trips doubles exactly") {
    Rng rng(77);
    for (int trial = 0; trial < 500; ++trial) {
        const double v = std::exp(rng.uniform(-20.0, 20.0)) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
        CHECK(std::stod(format_g17(v)) == v);
    }
}

TEST_CASE("csv writer enforces the header width") {
    TempDir tmp("sympro_csv_test");
    CsvWriter w(tmp.path / "t.csv", {"a", "b"});
    w.write_row({"1", "2"});
    CHECK_THROWS_AS(w.write_row({"only_one"}), Error);
    w.close();
    CHECK(slurp(tmp.path / "t.csv") == "a,b\n1,2\n");
}

TEST_CASE("fnv1a64 known vectors") {
    CHECK(fnv1a64("", 0) == 14695981039346656037ull);
    CHECK(fnv1a64("a", 1) == 12638187200555641996ull);
}

TEST_CASE("manifest hashes verify and catch tampering") {
    TempDir tmp("sympro_manifest_test");
    ExperimentConfig cfg;
    cfg.out_dir = tmp.path;
    write_text_file(tmp.path / "x" / "data.csv", "h\n1\n");
    RunArtifacts artifacts{{tmp.path / "x" / "data.csv"}};
    const fs::path manifest = write_manifest(cfg, artifacts, 0.1);
    CHECK(verify_manifest(manifest));
    write_text_file(tmp.path / "x" / "data.csv", "h\n2\n");
    CHECK(!verify_manifest(manifest));
}

TEST_CASE("svg plot renders the declared elements") {
    SvgPlot plot(300, 200, "title");
    plot.set_axes(0, 1, 0, 1, "x", "y");
    plot.polyline({{0.0, 0.0}, {1.0, 1.0}}, "steelblue");
    plot.scatter({{0.5, 0.5}}, "firebrick");
    const std::string svg = plot.render();
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("circle") != std::string::npos);
    CHECK(svg.find("title") != std::string::npos);
}

TEST_CASE("experiment runs are byte-deterministic given the seed") {
    TempDir tmp("sympro_determinism_lite");
    ExperimentConfig cfg;
    cfg.experiment = "pathint";
    cfg.seed = 20260808;
    cfg.task_seeds = 2;
    cfg.horizons = {32};
    cfg.speed_scales = {1.0};
    cfg.jobs = 2;

    cfg.out_dir = tmp.path / "a";
    const RunArtifacts first = run_experiment("pathint", cfg);
    cfg.out_dir = tmp.path / "b";
    const RunArtifacts second = run_experiment("pathint", cfg);
    REQUIRE(first.files.size() == second.files.size());
    std::size_t compared = 0;
    for (std::size_t i = 0; i < first.files.size(); ++i) {
        if (first.files[i].extension() != ".csv") continue;
        CHECK(slurp(first.files[i]) == slurp(second.files[i]));
        ++compared;
    }
    CHECK(compared >= 2);
}

TEST_CASE("systems are addressable by name and parameters") {
    const SystemSpec sphere = system_from_json({{"system", "sphere"}, {"n", 4}});
    CHECK(sphere.dim == 4);
    CHECK(sphere.group.expected_orbit_dim == 3);

    const SystemSpec broken = system_from_json(
        {{"system", "coupled_irrep"},
         {"breaking", {{"family", "phase_pinning"}, {"epsilon", 0.01}}}});
    REQUIRE(broken.breaking.has_value());
    CHECK(broken.breaking->epsilon == 0.01);

    const SystemSpec prod = system_from_json(
        {{"system", "product"},
         {"factors", nlohmann::json::array({{{"system", "s1_radial"}}, {{"system", "sphere"}, {"n", 3}}})}});
    CHECK(prod.dim == 5);
    CHECK(prod.group.expected_orbit_dim == 3);

    CHECK_THROWS_AS((void)system_from_json({{"system", "unobtainium"}}), ConfigError);
    CHECK_THROWS_AS((void)system_from_json({{"system", "sphere"}, {"bogus", 1}}), ConfigError);

    const nlohmann::json g = group_spec_json(sphere.group);
    CHECK(g.at("expected_orbit_dim") == 3);
    CHECK(g.at("name") == "SO4");
}

TEST_CASE("group actions round-trip through config selectors") {
    const GroupSpec torus = group_spec_from_json({{"name", "torus"}, {"q", 3}});
    CHECK(torus.expected_orbit_dim == 3);
    CHECK(torus.algebra_dim() == 3);

    const GroupSpec weighted =
        group_spec_from_json({{"name", "circle"}, {"weights", {1, 2}}, {"invariant_dims", 1}});
    CHECK(weighted.dim == 5);

    const GroupSpec prod = group_spec_from_json(
        {{"name", "product"},
         {"factors", nlohmann::json::array({{{"name", "circle"}}, {{"name", "so"}, {"n", 3}}})}});
    CHECK(prod.expected_orbit_dim == 3);
    CHECK(group_spec_json(prod).at("algebra_dim") == 4);

    CHECK_THROWS_AS((void)group_spec_from_json({{"name", "e8"}}), ConfigError);
}

TEST_CASE("config can route custom systems into the geometry experiment") {
    nlohmann::json j;
    j["geometry_systems"] = nlohmann::json::array({{{"system", "torus"}, {"q", 3}}});
    const ExperimentConfig cfg = ExperimentConfig::from_json(j);
    REQUIRE(cfg.geometry_systems.size() == 1);
    CHECK(ExperimentConfig::from_json(cfg.to_json()).geometry_systems.size() == 1);
    nlohmann::json bad;
    bad["geometry_systems"] = nlohmann::json::array({{{"system", "nope"}}});
    CHECK_THROWS_AS((void)ExperimentConfig::from_json(bad), ConfigError);
}

TEST_CASE("runs with different job counts produce identical bytes") {
    TempDir tmp("sympro_jobs_determinism");
    ExperimentConfig cfg;
    cfg.experiment = "grid_null";
    cfg.seed = 3;
    cfg.grid_sizes = {16};
    cfg.shift_offsets = {0.5};

    cfg.jobs = 1;
    cfg.out_dir = tmp.path / "serial";
    const RunArtifacts serial = run_experiment("grid_null", cfg);
    cfg.jobs = 2;
    cfg.out_dir = tmp.path / "parallel";
    const RunArtifacts parallel = run_experiment("grid_null", cfg);
    REQUIRE(serial.files.size() == parallel.files.size());
    for (std::size_t i = 0; i < serial.files.size(); ++i) {
        if (serial.files[i].extension() != ".csv") continue;
        CHECK(slurp(serial.files[i]) == slurp(parallel.files[i]));
    }
}

TEST_CASE("grid_null experiment emits the documented table") {
    TempDir tmp("sympro_grid_exp");
    ExperimentConfig cfg;
    cfg.experiment = "grid_null";
    cfg.out_dir = tmp.path;
    cfg.grid_sizes = {16};
    cfg.shift_offsets = {0.5};
    const RunArtifacts artifacts = run_experiment("grid_null", cfg);
    REQUIRE(!artifacts.files.empty());
    const std::string csv = slurp(tmp.path / "grid_null" / "errors.csv");
    CHECK(csv.find("N,operator,offset_bins,error") == 0);
    CHECK(csv.find("integer_roll") != std::string::npos);
    CHECK(csv.find("fourier_shift") != std::string::npos);
}
