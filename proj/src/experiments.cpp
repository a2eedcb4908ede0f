#include "sympro/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "sympro/breaking.hpp"
#include "sympro/diagnostics.hpp"
#include "sympro/kernels.hpp"
#include "sympro/linalg.hpp"
#include "sympro/parallel.hpp"
#include "sympro/pathint.hpp"
#include "sympro/report_io.hpp"

namespace sympro {

using nlohmann::json;

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {"dimension_law", "geometry", "rnn_branch",
                                                   "pseudogap",     "pathint",  "grid_null"};
    return names;
}

// --- config -------------------------------------------------------------------

namespace {

template <class T>
void read_field(const json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field '") + key + "': " + e.what());
    }
}

} // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    static const std::set<std::string> known = {
        "experiment",       "seed",          "out_dir",          "jobs",
        "T",                "dt",            "renorm_every",     "tangent_warmup",
        "near_zero_tol",    "rank_tol",      "equivariance_samples",
        "eps_grid",         "sweep_seeds",   "anisotropic_seeds", "anisotropic_epsilon",
        "theta0",           "theta_threshold", "rnn_broken_epsilon",
        "horizons",         "speed_scales",  "task_seeds",       "task_dt",
        "broken_epsilon",   "grid_sizes",    "shift_offsets",    "geometry_systems"};
    for (const auto& item : j.items()) {
        if (!known.count(item.key()))
            throw ConfigError("unknown config field '" + item.key() + "'");
    }
    ExperimentConfig cfg;
    read_field(j, "experiment", cfg.experiment);
    read_field(j, "seed", cfg.seed);
    std::string out;
    read_field(j, "out_dir", out);
    if (!out.empty()) cfg.out_dir = out;
    read_field(j, "jobs", cfg.jobs);
    read_field(j, "T", cfg.T);
    read_field(j, "dt", cfg.dt);
    read_field(j, "renorm_every", cfg.renorm_every);
    read_field(j, "tangent_warmup", cfg.tangent_warmup);
    read_field(j, "near_zero_tol", cfg.near_zero_tol);
    read_field(j, "rank_tol", cfg.rank_tol);
    read_field(j, "equivariance_samples", cfg.equivariance_samples);
    read_field(j, "eps_grid", cfg.eps_grid);
    read_field(j, "sweep_seeds", cfg.sweep_seeds);
    read_field(j, "anisotropic_seeds", cfg.anisotropic_seeds);
    read_field(j, "anisotropic_epsilon", cfg.anisotropic_epsilon);
    read_field(j, "theta0", cfg.theta0);
    read_field(j, "theta_threshold", cfg.theta_threshold);
    read_field(j, "rnn_broken_epsilon", cfg.rnn_broken_epsilon);
    read_field(j, "horizons", cfg.horizons);
    read_field(j, "speed_scales", cfg.speed_scales);
    read_field(j, "task_seeds", cfg.task_seeds);
    read_field(j, "task_dt", cfg.task_dt);
    read_field(j, "broken_epsilon", cfg.broken_epsilon);
    read_field(j, "grid_sizes", cfg.grid_sizes);
    read_field(j, "shift_offsets", cfg.shift_offsets);
    if (j.contains("geometry_systems")) {
        const json& arr = j.at("geometry_systems");
        if (!arr.is_array()) throw ConfigError("config field 'geometry_systems' must be an array");
        for (const json& sel : arr) {
            (void)system_from_json(sel); // validate now, construct again at run time
            cfg.geometry_systems.push_back(sel);
        }
    }

    const auto& names = experiment_names();
    if (cfg.experiment != "all" &&
        std::find(names.begin(), names.end(), cfg.experiment) == names.end())
        throw ConfigError("unknown experiment '" + cfg.experiment + "'");
    if (cfg.dt <= 0.0 || cfg.T <= 0.0) throw ConfigError("config: T and dt must be positive");
    if (cfg.near_zero_tol <= 0.0) throw ConfigError("config: near_zero_tol must be positive");
    return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config parse error in '" + path.string() + "': " + e.what());
    }
    return from_json(j);
}

json ExperimentConfig::to_json() const {
    json j;
    j["experiment"] = experiment;
    j["seed"] = seed;
    j["out_dir"] = out_dir.string();
    j["jobs"] = jobs;
    j["T"] = T;
    j["dt"] = dt;
    j["renorm_every"] = renorm_every;
    j["tangent_warmup"] = tangent_warmup;
    j["near_zero_tol"] = near_zero_tol;
    j["rank_tol"] = rank_tol;
    j["equivariance_samples"] = equivariance_samples;
    j["eps_grid"] = eps_grid;
    j["sweep_seeds"] = sweep_seeds;
    j["anisotropic_seeds"] = anisotropic_seeds;
    j["anisotropic_epsilon"] = anisotropic_epsilon;
    j["theta0"] = theta0;
    j["theta_threshold"] = theta_threshold;
    j["rnn_broken_epsilon"] = rnn_broken_epsilon;
    j["horizons"] = horizons;
    j["speed_scales"] = speed_scales;
    j["task_seeds"] = task_seeds;
    j["task_dt"] = task_dt;
    j["broken_epsilon"] = broken_epsilon;
    j["grid_sizes"] = grid_sizes;
    j["shift_offsets"] = shift_offsets;
    if (!geometry_systems.empty()) j["geometry_systems"] = geometry_systems;
    return j;
}

// --- system addressing ------------------------------------------------------------

BreakingConfig breaking_config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("breaking config must be an object");
    static const std::set<std::string> known = {"family", "epsilon", "pin_order", "rotation_deg",
                                                "seed"};
    for (const auto& item : j.items())
        if (!known.count(item.key()))
            throw ConfigError("unknown breaking field '" + item.key() + "'");
    BreakingConfig cfg;
    std::string family = to_string(cfg.family);
    read_field(j, "family", family);
    cfg.family = breaking_family_from_string(family);
    read_field(j, "epsilon", cfg.epsilon);
    read_field(j, "pin_order", cfg.pin_order);
    read_field(j, "rotation_deg", cfg.rotation_deg);
    read_field(j, "seed", cfg.seed);
    if (cfg.epsilon < 0.0) throw ConfigError("breaking field 'epsilon' must be >= 0");
    return cfg;
}

SystemSpec system_from_json(const json& j) {
    if (!j.is_object() || !j.contains("system"))
        throw ConfigError("system selector must be an object with a 'system' field");
    static const std::set<std::string> known = {"system", "q", "n", "m", "N", "exact",
                                                "factors", "breaking"};
    for (const auto& item : j.items())
        if (!known.count(item.key()))
            throw ConfigError("unknown system field '" + item.key() + "'");
    const std::string name = j.at("system").get<std::string>();
    std::size_t q = 2, n = 3, m = 2, grid_n = 32;
    read_field(j, "q", q);
    read_field(j, "n", n);
    read_field(j, "m", m);
    read_field(j, "N", grid_n);

    SystemSpec s;
    if (name == "s1_radial") s = s1_radial();
    else if (name == "torus") s = torus_system(q);
    else if (name == "sphere") s = sphere_system(n);
    else if (name == "complex_sphere") s = complex_sphere_system(m);
    else if (name == "coupled_irrep") s = coupled_irrep_rnn();
    else if (name == "relative_equilibrium") s = relative_equilibrium();
    else if (name == "collapse") s = collapse_system();
    else if (name == "circulant_grid") s = circulant_grid(grid_n);
    else if (name == "path_integrator") {
        bool exact = true;
        read_field(j, "exact", exact);
        if (exact) s = controlled_path_integrator(true);
        else s = controlled_path_integrator(false, breaking_config_from_json(j.at("breaking")));
        return s;
    } else if (name == "product") {
        const json& factors = j.at("factors");
        if (!factors.is_array() || factors.size() != 2)
            throw ConfigError("product system needs a 'factors' array of two selectors");
        s = product_system(system_from_json(factors[0]), system_from_json(factors[1]));
    } else {
        throw ConfigError("unknown system '" + name + "'");
    }
    if (j.contains("breaking")) s = apply_breaking(s, breaking_config_from_json(j.at("breaking")));
    return s;
}

GroupSpec group_spec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("name"))
        throw ConfigError("group selector must be an object with a 'name' field");
    const std::string name = j.at("name").get<std::string>();
    if (name == "circle") {
        std::vector<int> weights = {1};
        std::size_t invariant_dims = 0;
        read_field(j, "weights", weights);
        read_field(j, "invariant_dims", invariant_dims);
        return circle_rep(weights, invariant_dims);
    }
    if (name == "torus") {
        std::size_t q = 2;
        read_field(j, "q", q);
        return torus_rep(q);
    }
    if (name == "so") {
        std::size_t n = 3;
        read_field(j, "n", n);
        return so_n_rep(n);
    }
    if (name == "u") {
        std::size_t m = 2;
        read_field(j, "m", m);
        return u_m_rep(m);
    }
    if (name == "product") {
        const json& factors = j.at("factors");
        if (!factors.is_array() || factors.size() != 2)
            throw ConfigError("product group needs a 'factors' array of two selectors");
        return product_rep(group_spec_from_json(factors[0]), group_spec_from_json(factors[1]));
    }
    throw ConfigError("unknown group '" + name + "'");
}

json group_spec_json(const GroupSpec& g) {
    return {{"name", g.name},
            {"dim", g.dim},
            {"algebra_dim", g.algebra_dim()},
            {"expected_orbit_dim", g.expected_orbit_dim}};
}

// --- model zoos -----------------------------------------------------------------

std::vector<SystemSpec> dimension_law_zoo() {
    std::vector<SystemSpec> zoo;
    for (std::size_t q = 1; q <= 4; ++q) zoo.push_back(torus_system(q));
    for (std::size_t n = 2; n <= 5; ++n) zoo.push_back(sphere_system(n));
    for (std::size_t m = 1; m <= 3; ++m) zoo.push_back(complex_sphere_system(m));
    zoo.push_back(product_system(s1_radial(), sphere_system(3)));
    return zoo;
}

std::vector<SystemSpec> exact_zoo() {
    std::vector<SystemSpec> zoo = dimension_law_zoo();
    zoo.push_back(s1_radial());
    zoo.push_back(relative_equilibrium());
    zoo.push_back(coupled_irrep_rnn());
    zoo.push_back(collapse_system());
    return zoo;
}

// --- experiment runners ----------------------------------------------------------

namespace {

json lyapunov_report_json(const LyapunovReport& rep) {
    return {{"exponents", rep.exponents},
            {"near_zero_count", rep.near_zero_count},
            {"tolerance", rep.tolerance},
            {"T", rep.total_time},
            {"dt", rep.dt},
            {"renorm_interval", rep.renorm_interval},
            {"non_converged", rep.non_converged}};
}

json diagnostics_report_json(const DiagnosticsReport& r, const GroupSpec& group) {
    json j = {{"system", r.system},
              {"group", group_spec_json(group)},
              {"equivariance_error", r.equivariance_error},
              {"neutral_principal_angles_deg", r.neutral_principal_angles_deg},
              {"flow_zero",
               {{"rank_EG", r.flow_zero.rank_eg},
                {"rank_f_union_EG", r.flow_zero.rank_f_union_eg},
                {"fixed_point", r.flow_zero.fixed_point},
                {"flow_norm", r.flow_zero.flow_norm}}},
              {"orbit",
               {{"orbit_rank", r.orbit.orbit_rank},
                {"sigma_min_nonzero", r.orbit.sigma_min_nonzero},
                {"sigma_max", r.orbit.sigma_max},
                {"uniform_lower", r.orbit.uniform_lower},
                {"uniform_upper", r.orbit.uniform_upper},
                {"constant_rank_violation", r.orbit.constant_rank_violation}}},
              {"spectrum", lyapunov_report_json(r.spectrum)},
              {"settings",
               {{"spectrum_T", r.settings.spectrum_T},
                {"covariance_T", r.settings.covariance_T},
                {"dt", r.settings.dt},
                {"renorm_every", r.settings.renorm_every},
                {"near_zero_tol", r.settings.near_zero_tol},
                {"rank_tol", r.settings.rank_tol},
                {"equivariance_samples", r.settings.equivariance_samples},
                {"seed", r.settings.seed}}},
              {"note", r.note}};
    if (r.tangent_covariance_angle_deg)
        j["tangent_covariance_angle_deg"] = *r.tangent_covariance_angle_deg;
    return j;
}

DiagSettings diag_settings(const ExperimentConfig& cfg) {
    DiagSettings s;
    s.spectrum_T = cfg.T;
    s.covariance_T = 100.0;
    s.dt = cfg.dt;
    s.renorm_every = cfg.renorm_every;
    s.near_zero_tol = cfg.near_zero_tol;
    s.rank_tol = cfg.rank_tol;
    s.equivariance_samples = cfg.equivariance_samples;
    s.seed = cfg.seed;
    return s;
}

RunArtifacts run_dimension_law(const ExperimentConfig& cfg) {
    const std::filesystem::path dir = cfg.out_dir / "dimension_law";
    const std::vector<SystemSpec> zoo = dimension_law_zoo();

    struct Row {
        std::string name;
        std::size_t dim, algebra_dim, q_expected, q_observed;
        double margin, nearest_excluded;
        bool converged;
        std::vector<double> exponents;
    };
    std::vector<Row> rows(zoo.size());
    parallel_for(zoo.size(), cfg.jobs, [&](std::size_t i) {
        const SystemSpec& sys = zoo[i];
        const Vec x0 = find_orbit_point(sys);
        const LyapunovReport rep = benettin_spectrum(sys, x0, sys.dim, cfg.T, cfg.dt,
                                                     cfg.renorm_every, cfg.near_zero_tol,
                                                     cfg.tangent_warmup);
        const NearZeroCount nz = count_near_zero(rep, cfg.near_zero_tol);
        rows[i] = {sys.name,
                   sys.dim,
                   sys.group.algebra_dim(),
                   sys.group.expected_orbit_dim,
                   nz.count,
                   nz.margin,
                   nz.margin + cfg.near_zero_tol,
                   !rep.non_converged,
                   rep.exponents};
    });

    CsvWriter counts(dir / "counts.csv",
                     {"system", "dim", "algebra_dim", "q_expected", "q_observed", "margin",
                      "nearest_excluded_abs", "converged"});
    CsvWriter spectra(dir / "spectra.csv", {"system", "rank", "exponent"});
    SvgPlot plot(640, 420, "Lyapunov spectra across the exact zoo");
    double lambda_min = 0.0;
    for (const Row& r : rows)
        for (double l : r.exponents) lambda_min = std::min(lambda_min, l);
    plot.set_axes(0, static_cast<double>(rows.size()) + 1.0, lambda_min - 0.3, 0.5, "system index",
                  "exponent");
    plot.hline(0.0, "gray");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& r = rows[i];
        counts.write_row({r.name, cell(r.dim), cell(r.algebra_dim), cell(r.q_expected),
                          cell(r.q_observed), cell(r.margin), cell(r.nearest_excluded),
                          r.converged ? "1" : "0"});
        std::vector<std::pair<double, double>> pts;
        for (std::size_t k = 0; k < r.exponents.size(); ++k) {
            spectra.write_row({r.name, cell(k), cell(r.exponents[k])});
            pts.emplace_back(static_cast<double>(i) + 1.0, r.exponents[k]);
        }
        plot.scatter(pts, "steelblue");
    }
    counts.close();
    spectra.close();
    plot.save(dir / "spectra.svg");
    json spectra_json = json::array();
    for (const Row& r : rows) {
        json entry = {{"system", r.name},
                      {"q_expected", r.q_expected},
                      {"q_observed", r.q_observed},
                      {"exponents", r.exponents}};
        spectra_json.push_back(entry);
    }
    write_text_file(dir / "spectra.json", spectra_json.dump(2) + "\n");
    return {{counts.path(), spectra.path(), dir / "spectra.json", dir / "spectra.svg"}};
}

std::string flow_status_label(const FlowZero& fz) {
    if (fz.fixed_point) return "fixed_point";
    return fz.rank_f_union_eg == fz.rank_eg ? "flow_in_group_tangent" : "flow_outside_group_tangent";
}

RunArtifacts run_geometry(const ExperimentConfig& cfg) {
    const std::filesystem::path dir = cfg.out_dir / "geometry";
    std::vector<SystemSpec> systems;
    if (!cfg.geometry_systems.empty()) {
        for (const json& sel : cfg.geometry_systems) systems.push_back(system_from_json(sel));
    } else {
        systems.push_back(s1_radial());
        systems.push_back(torus_system(2));
        systems.push_back(sphere_system(3));
        systems.push_back(complex_sphere_system(2));
        systems.push_back(coupled_irrep_rnn());
        systems.push_back(relative_equilibrium());
        systems.push_back(product_system(s1_radial(), sphere_system(3)));
        systems.push_back(collapse_system());
    }

    std::vector<DiagnosticsReport> reports(systems.size());
    const DiagSettings ds = diag_settings(cfg);
    parallel_for(systems.size(), cfg.jobs, [&](std::size_t i) {
        reports[i] = full_report(systems[i], ds);
    });

    CsvWriter diag(dir / "diagnostics.csv",
                   {"system", "equivariance_error", "tangent_covariance_angle_deg",
                    "max_neutral_angle_deg", "near_zero_count", "orbit_rank", "uniform_lower",
                    "uniform_upper", "constant_rank_violation", "note"});
    CsvWriter flow(dir / "flow_zero.csv",
                   {"case", "flow_status", "flow_norm", "rank_EG", "rank_f_union_EG"});
    for (const DiagnosticsReport& r : reports) {
        const double max_neutral = r.neutral_principal_angles_deg.empty()
                                       ? std::nan("")
                                       : r.neutral_principal_angles_deg.back();
        diag.write_row({r.system, cell(r.equivariance_error),
                        r.tangent_covariance_angle_deg ? cell(*r.tangent_covariance_angle_deg) : "",
                        std::isnan(max_neutral) ? "" : cell(max_neutral),
                        cell(r.spectrum.near_zero_count), cell(r.orbit.orbit_rank),
                        cell(r.orbit.uniform_lower), cell(r.orbit.uniform_upper),
                        r.orbit.constant_rank_violation ? "1" : "0", r.note});
        flow.write_row({r.system, flow_status_label(r.flow_zero), cell(r.flow_zero.flow_norm),
                        cell(r.flow_zero.rank_eg), cell(r.flow_zero.rank_f_union_eg)});
    }
    diag.close();
    flow.close();
    json diag_json = json::array();
    for (std::size_t i = 0; i < reports.size(); ++i)
        diag_json.push_back(diagnostics_report_json(reports[i], systems[i].group));
    write_text_file(dir / "diagnostics.json", diag_json.dump(2) + "\n");

    // flat form, one metric per row, for downstream table tooling
    CsvWriter flat(dir / "metrics_flat.csv", {"system", "metric", "value"});
    for (const DiagnosticsReport& r : reports) {
        flat.write_row({r.system, "equivariance_error", cell(r.equivariance_error)});
        if (r.tangent_covariance_angle_deg)
            flat.write_row({r.system, "tangent_covariance_angle_deg",
                            cell(*r.tangent_covariance_angle_deg)});
        if (!r.neutral_principal_angles_deg.empty())
            flat.write_row({r.system, "max_neutral_angle_deg",
                            cell(r.neutral_principal_angles_deg.back())});
        flat.write_row({r.system, "near_zero_count", cell(r.spectrum.near_zero_count)});
        flat.write_row({r.system, "orbit_rank", cell(r.orbit.orbit_rank)});
        flat.write_row({r.system, "uniform_lower", cell(r.orbit.uniform_lower)});
        flat.write_row({r.system, "rank_EG", cell(r.flow_zero.rank_eg)});
        flat.write_row({r.system, "rank_f_union_EG", cell(r.flow_zero.rank_f_union_eg)});
    }
    flat.close();

    // neutral alignment as the spectrum horizon grows, on the circle system
    CsvWriter align(dir / "alignment_vs_T.csv", {"T", "max_neutral_angle_deg"});
    std::vector<std::pair<double, double>> curve;
    {
        const SystemSpec s = s1_radial();
        const Vec x0 = find_orbit_point(s);
        for (double horizon : {50.0, 100.0, 200.0, 400.0}) {
            const LyapunovReport rep = benettin_spectrum(s, x0, s.dim, horizon, cfg.dt,
                                                         cfg.renorm_every, cfg.near_zero_tol,
                                                         cfg.tangent_warmup);
            const std::vector<double> angles = neutral_alignment(s, rep, rep.final_state);
            align.write_row({cell(horizon), cell(angles.back())});
            curve.emplace_back(horizon, std::max(angles.back(), 1e-16));
        }
    }
    align.close();
    SvgPlot aplot(520, 380, "Neutral alignment vs averaging time (circle system)");
    aplot.set_axes(40.0, 500.0, 1e-16, 1.0, "T", "max principal angle (deg)", true, true);
    aplot.polyline(curve, "firebrick");
    aplot.scatter(curve, "firebrick");
    aplot.save(dir / "alignment_vs_T.svg");

    return {{diag.path(), flow.path(), dir / "diagnostics.json", dir / "metrics_flat.csv",
             align.path(), dir / "alignment_vs_T.svg"}};
}

RunArtifacts run_rnn_branch(const ExperimentConfig& cfg) {
    const std::filesystem::path dir = cfg.out_dir / "rnn_branch";
    const SystemSpec exact = coupled_irrep_rnn();
    BreakingConfig bc;
    bc.family = BreakingFamily::phase_pinning;
    bc.epsilon = cfg.rnn_broken_epsilon;
    bc.seed = cfg.seed;
    const SystemSpec broken = apply_breaking(exact, bc);

    const Vec x0 = find_orbit_point(exact);
    const double eeq_exact = equivariance_error(exact, cfg.equivariance_samples, cfg.seed);
    const double eeq_broken = equivariance_error(broken, cfg.equivariance_samples, cfg.seed);

    Vec xi(exact.group.algebra_dim(), 0.0);
    xi[0] = 1.0;
    const double direct_exact = direct_tangent_exponent(exact, x0, xi, 2 * cfg.T, cfg.dt);
    const PseudoGapDetail gap = measure_pseudo_gap_detail(broken);
    const double cov_exact = tangent_covariance_angle(exact, x0, 100.0, cfg.dt);

    const LyapunovReport rep_exact = benettin_spectrum(exact, x0, exact.dim, cfg.T, cfg.dt,
                                                       cfg.renorm_every, cfg.near_zero_tol,
                                                       cfg.tangent_warmup);
    const LyapunovReport rep_broken = benettin_spectrum(broken, gap.pinned_point, broken.dim, cfg.T,
                                                        cfg.dt, cfg.renorm_every, cfg.near_zero_tol,
                                                        cfg.tangent_warmup);

    CsvWriter metrics(dir / "metrics.csv", {"metric", "exact_branch", "broken_control"});
    metrics.write_row({"equivariance_error", cell(eeq_exact), cell(eeq_broken)});
    metrics.write_row({"direct_group_tangent_exponent", cell(direct_exact), cell(gap.eigenvalue)});
    metrics.write_row({"tangent_covariance_angle_deg", cell(cov_exact), ""});
    metrics.write_row(
        {"near_zero_count", cell(rep_exact.near_zero_count), cell(rep_broken.near_zero_count)});
    metrics.write_row({"pseudo_gap_direct_rate", "", cell(gap.direct_rate)});
    metrics.close();

    CsvWriter spectra(dir / "spectra.csv", {"branch", "rank", "exponent"});
    for (std::size_t k = 0; k < rep_exact.exponents.size(); ++k)
        spectra.write_row({"exact", cell(k), cell(rep_exact.exponents[k])});
    for (std::size_t k = 0; k < rep_broken.exponents.size(); ++k)
        spectra.write_row({"broken", cell(k), cell(rep_broken.exponents[k])});
    spectra.close();
    return {{metrics.path(), spectra.path()}};
}

RunArtifacts run_pseudogap(const ExperimentConfig& cfg) {
    const std::filesystem::path dir = cfg.out_dir / "pseudogap";
    const SystemSpec base = s1_radial();

    SweepSettings sweep_cfg;
    sweep_cfg.theta0 = cfg.theta0;
    sweep_cfg.theta_threshold = cfg.theta_threshold;
    sweep_cfg.dt = cfg.dt;
    sweep_cfg.seed = cfg.seed;
    sweep_cfg.jobs = cfg.jobs;
    sweep_cfg.equivariance_samples = 100;
    std::vector<std::uint64_t> seeds(cfg.sweep_seeds);
    for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = cfg.seed + i + 1;

    const SweepResult sweep = lifetime_sweep(
        base,
        {BreakingFamily::weak_axis, BreakingFamily::unit_axis, BreakingFamily::rotated_strong,
         BreakingFamily::phase_pinning},
        cfg.eps_grid, seeds, sweep_cfg);

    CsvWriter rows(dir / "lifetimes.csv",
                   {"family", "epsilon", "seed", "rotation_deg", "pin_order", "gap_predicted",
                    "gap_measured", "lifetime_predicted", "lifetime_measured", "censored",
                    "theta0", "theta_threshold", "equivariance_error", "error"});
    std::vector<std::pair<double, double>> scatter_pts;
    for (const LifetimeRecord& r : sweep.records) {
        rows.write_row({to_string(r.config.family), cell(r.config.epsilon), cell(r.config.seed),
                        cell(r.config.rotation_deg), cell(r.config.pin_order),
                        cell(r.gap_predicted), cell(r.gap_measured), cell(r.lifetime_predicted),
                        cell(r.lifetime_measured), r.censored ? "1" : "0", cell(r.theta0),
                        cell(r.theta_threshold), cell(r.equivariance_error), r.error});
        if (!r.censored && r.error.empty())
            scatter_pts.emplace_back(r.lifetime_predicted, r.lifetime_measured);
    }
    rows.close();

    // random anisotropic ensemble: measured vs first-order predicted gaps
    struct AnisRow {
        std::uint64_t seed;
        double gap_pred, gap_meas, eeq;
        std::string error;
    };
    std::vector<AnisRow> anis(cfg.anisotropic_seeds);
    parallel_for(anis.size(), cfg.jobs, [&](std::size_t i) {
        AnisRow row;
        row.seed = cfg.seed + 100 + i;
        BreakingConfig bc;
        bc.family = BreakingFamily::random_anisotropic;
        bc.epsilon = cfg.anisotropic_epsilon;
        bc.seed = row.seed;
        try {
            const SystemSpec broken = apply_breaking(base, bc);
            row.gap_pred = predict_gap_perturbative(base, bc);
            row.gap_meas = measure_pseudo_gap(broken);
            row.eeq = equivariance_error(broken, 100, row.seed);
        } catch (const Error& e) {
            row.error = e.what();
        }
        anis[i] = std::move(row);
    });
    CsvWriter anis_csv(dir / "anisotropic.csv",
                       {"seed", "epsilon", "gap_predicted", "gap_measured", "equivariance_error",
                        "error"});
    std::vector<double> ap, am, aeeq, amag;
    for (const AnisRow& r : anis) {
        anis_csv.write_row({cell(r.seed), cell(cfg.anisotropic_epsilon), cell(r.gap_pred),
                            cell(r.gap_meas), cell(r.eeq), r.error});
        if (r.error.empty()) {
            ap.push_back(r.gap_pred);
            am.push_back(r.gap_meas);
            aeeq.push_back(r.eeq);
            amag.push_back(std::abs(r.gap_meas));
        }
    }
    anis_csv.close();

    json summary;
    summary["sweep"] = {{"defined", sweep.summary.defined},
                        {"log_lifetime_correlation", sweep.summary.log_lifetime_correlation},
                        {"uncensored_fraction", sweep.summary.uncensored_fraction},
                        {"median_ratio", sweep.summary.median_ratio}};
    summary["anisotropic"] = {
        {"epsilon", cfg.anisotropic_epsilon},
        {"gap_correlation", ap.size() >= 2 ? pearson_correlation(am, ap) : 0.0},
        {"gap_vs_equivariance_correlation",
         amag.size() >= 2 ? pearson_correlation(amag, aeeq) : 0.0},
        {"rows", anis.size()}};
    write_text_file(dir / "summary.json", summary.dump(2) + "\n");

    SvgPlot lplot(520, 420, "Measured vs predicted lifetime");
    if (!scatter_pts.empty()) {
        double lo = 1e300, hi = 0.0;
        for (auto& [x, y] : scatter_pts) {
            lo = std::min({lo, x, y});
            hi = std::max({hi, x, y});
        }
        lplot.set_axes(lo * 0.8, hi * 1.2, lo * 0.8, hi * 1.2, "predicted lifetime",
                       "measured lifetime", true, true);
        lplot.polyline({{lo * 0.8, lo * 0.8}, {hi * 1.2, hi * 1.2}}, "gray");
        lplot.scatter(scatter_pts, "steelblue");
    }
    lplot.save(dir / "lifetimes.svg");

    SvgPlot gplot(520, 420, "Anisotropic ensemble: measured vs predicted gap");
    if (!ap.empty()) {
        double lo = 1e300, hi = -1e300;
        for (std::size_t i = 0; i < ap.size(); ++i) {
            lo = std::min({lo, ap[i], am[i]});
            hi = std::max({hi, ap[i], am[i]});
        }
        gplot.set_axes(lo * 1.1, hi * 0.9 + 1e-6, lo * 1.1, hi * 0.9 + 1e-6, "predicted gap",
                       "measured gap");
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < ap.size(); ++i) pts.emplace_back(ap[i], am[i]);
        gplot.polyline({{lo * 1.1, lo * 1.1}, {hi * 0.9, hi * 0.9}}, "gray");
        gplot.scatter(pts, "firebrick");
    }
    gplot.save(dir / "anisotropic.svg");

    return {{rows.path(), anis_csv.path(), dir / "summary.json", dir / "lifetimes.svg",
             dir / "anisotropic.svg"}};
}

RunArtifacts run_pathint(const ExperimentConfig& cfg) {
    const std::filesystem::path dir = cfg.out_dir / "pathint";
    std::vector<std::uint64_t> seeds(cfg.task_seeds);
    for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = cfg.seed + i + 1;

    ConsequenceSettings settings;
    settings.dt = cfg.task_dt;
    settings.broken_epsilon = cfg.broken_epsilon;
    settings.velocity = VelocityKind::correlated_walk;
    settings.in_dist_scale = cfg.speed_scales.empty() ? 1.0 : cfg.speed_scales.front();
    settings.seed = cfg.seed;
    settings.jobs = cfg.jobs;
    const ConsequenceTable table = consequence_suite(seeds, cfg.horizons, cfg.speed_scales, settings);

    CsvWriter rows(dir / "rows.csv",
                   {"model", "condition", "seed", "horizon", "speed_scale", "rmse", "error"});
    for (const ConsequenceRow& r : table.rows)
        rows.write_row({r.model, to_string(r.condition), cell(r.seed), cell(r.horizon),
                        cell(r.speed_scale), cell(r.rmse), r.error});
    rows.close();

    CsvWriter cells(dir / "cells.csv",
                    {"model", "condition", "horizon", "speed_scale", "mean_rmse", "stderr_rmse",
                     "count"});
    for (const ConsequenceCell& c : table.cells)
        cells.write_row({c.model, to_string(c.condition), cell(c.horizon), cell(c.speed_scale),
                         cell(c.mean_rmse), cell(c.stderr_rmse), cell(c.count)});
    cells.close();

    // headline comparison at the longest horizon, in-distribution
    const std::size_t horizon_max = *std::max_element(cfg.horizons.begin(), cfg.horizons.end());
    const ConsequenceCell* exact_cell = nullptr;
    const ConsequenceCell* broken_cell = nullptr;
    for (const ConsequenceCell& c : table.cells) {
        if (c.horizon != horizon_max || c.condition != TaskCondition::in_dist) continue;
        if (c.model == "exact") exact_cell = &c;
        if (c.model == "broken") broken_cell = &c;
    }
    json summary;
    if (exact_cell && broken_cell) {
        const double sep = (broken_cell->mean_rmse - exact_cell->mean_rmse) /
                           std::sqrt(broken_cell->stderr_rmse * broken_cell->stderr_rmse +
                                     exact_cell->stderr_rmse * exact_cell->stderr_rmse + 1e-300);
        summary = {{"horizon", horizon_max},
                   {"exact_mean_rmse", exact_cell->mean_rmse},
                   {"exact_stderr", exact_cell->stderr_rmse},
                   {"broken_mean_rmse", broken_cell->mean_rmse},
                   {"broken_stderr", broken_cell->stderr_rmse},
                   {"rmse_ratio", broken_cell->mean_rmse / std::max(exact_cell->mean_rmse, 1e-300)},
                   {"separation_stderr", sep}};
    }
    write_text_file(dir / "summary.json", summary.dump(2) + "\n");

    SvgPlot plot(560, 420, "Circular RMSE vs horizon (in-distribution)");
    double rmse_lo = 1e300, rmse_hi = 0.0;
    std::map<std::string, std::vector<std::pair<double, double>>> curves;
    for (const ConsequenceCell& c : table.cells) {
        if (c.condition != TaskCondition::in_dist) continue;
        curves[c.model].emplace_back(static_cast<double>(c.horizon), std::max(c.mean_rmse, 1e-12));
        rmse_lo = std::min(rmse_lo, std::max(c.mean_rmse, 1e-12));
        rmse_hi = std::max(rmse_hi, c.mean_rmse);
    }
    if (!curves.empty()) {
        plot.set_axes(static_cast<double>(*std::min_element(cfg.horizons.begin(), cfg.horizons.end())) * 0.9,
                      static_cast<double>(horizon_max) * 1.1, rmse_lo * 0.5, rmse_hi * 2.0,
                      "horizon", "circular RMSE (rad)", false, true);
        const std::map<std::string, std::string> colors = {{"exact", "steelblue"},
                                                           {"broken", "firebrick"}};
        for (auto& [model, pts] : curves) {
            std::sort(pts.begin(), pts.end());
            plot.polyline(pts, colors.at(model));
            plot.scatter(pts, colors.at(model));
        }
    }
    plot.save(dir / "rmse.svg");

    return {{rows.path(), cells.path(), dir / "summary.json", dir / "rmse.svg"}};
}

RunArtifacts run_grid_null(const ExperimentConfig& cfg) {
    const std::filesystem::path dir = cfg.out_dir / "grid_null";
    std::vector<GridNullResult> results(cfg.grid_sizes.size());
    parallel_for(cfg.grid_sizes.size(), cfg.jobs, [&](std::size_t i) {
        results[i] = grid_null(cfg.grid_sizes[i], cfg.shift_offsets, cfg.seed);
    });

    CsvWriter rows(dir / "errors.csv", {"N", "operator", "offset_bins", "error"});
    std::vector<std::pair<double, double>> curve; // error at the largest offset vs N
    for (const GridNullResult& g : results) {
        rows.write_row({cell(g.n), "integer_roll", "", cell(g.discrete_error)});
        for (const auto& [offset, err] : g.continuous_error_curve) {
            rows.write_row({cell(g.n), "fourier_shift", cell(offset), cell(err)});
            if (offset == cfg.shift_offsets.back())
                curve.emplace_back(static_cast<double>(g.n), std::max(err, 1e-18));
        }
    }
    rows.close();

    SvgPlot plot(520, 400, "Continuous-shift step-equivariance error vs N");
    if (!curve.empty()) {
        plot.set_axes(curve.front().first * 0.9, curve.back().first * 1.1, 1e-18, 1.0, "N",
                      "step equivariance error", true, true);
        plot.polyline(curve, "steelblue");
        plot.scatter(curve, "steelblue");
    }
    plot.save(dir / "errors.svg");
    return {{rows.path(), dir / "errors.svg"}};
}

} // namespace

RunArtifacts run_experiment(const std::string& name, const ExperimentConfig& cfg) {
    if (name == "all") {
        RunArtifacts all;
        for (const std::string& exp : experiment_names()) {
            RunArtifacts part = run_experiment(exp, cfg);
            all.files.insert(all.files.end(), part.files.begin(), part.files.end());
        }
        return all;
    }
    if (name == "dimension_law") return run_dimension_law(cfg);
    if (name == "geometry") return run_geometry(cfg);
    if (name == "rnn_branch") return run_rnn_branch(cfg);
    if (name == "pseudogap") return run_pseudogap(cfg);
    if (name == "pathint") return run_pathint(cfg);
    if (name == "grid_null") return run_grid_null(cfg);
    throw ConfigError("unknown experiment '" + name + "'");
}

std::filesystem::path write_manifest(const ExperimentConfig& cfg, const RunArtifacts& artifacts,
                                     double wall_seconds) {
    json manifest;
    manifest["tool"] = kToolVersion;
    manifest["config"] = cfg.to_json();
    manifest["kernel_backend"] = std::string(kernels::backend_name());
    manifest["wall_clock_seconds"] = wall_seconds;
    json files = json::array();
    for (const std::filesystem::path& p : artifacts.files) {
        const std::filesystem::path rel = std::filesystem::relative(p, cfg.out_dir);
        files.push_back({{"path", rel.generic_string()},
                         {"bytes", std::filesystem::file_size(p)},
                         {"fnv1a64", hash_file(p)}});
    }
    manifest["files"] = files;
    const std::filesystem::path path = cfg.out_dir / "manifest.json";
    write_text_file(path, manifest.dump(2) + "\n");
    return path;
}

bool verify_manifest(const std::filesystem::path& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) return false;
    json manifest;
    try {
        in >> manifest;
    } catch (const json::exception&) {
        return false;
    }
    const std::filesystem::path base = manifest_path.parent_path();
    for (const json& f : manifest.at("files")) {
        const std::filesystem::path p = base / f.at("path").get<std::string>();
        if (!std::filesystem::exists(p)) return false;
        if (std::filesystem::file_size(p) != f.at("bytes").get<std::uintmax_t>()) return false;
        if (hash_file(p) != f.at("fnv1a64").get<std::uint64_t>()) return false;
    }
    return true;
}

} // namespace sympro
