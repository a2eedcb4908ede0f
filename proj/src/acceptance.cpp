#include "sympro/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "sympro/kernels.hpp"

#include "sympro/breaking.hpp"
#include "sympro/diagnostics.hpp"
#include "sympro/experiments.hpp"
#include "sympro/linalg.hpp"
#include "sympro/pathint.hpp"
#include "sympro/report_io.hpp"
#include "sympro/rng.hpp"

namespace sympro {

std::string to_string(CriterionTier t) {
    switch (t) {
        case CriterionTier::theorem: return "theorem";
        case CriterionTier::assumption: return "assumption";
        case CriterionTier::consequence: return "consequence";
    }
    return "theorem";
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

// stable linear test system with a constructed (hence exactly known) spectrum
struct LinearInstance {
    SystemSpec system;
    std::vector<double> eigenvalues; // descending
};

LinearInstance make_linear_instance(std::uint64_t seed, std::size_t n) {
    Rng rng = Rng::stream(seed, "linear_oracle");
    std::vector<double> lambda(n);
    for (std::size_t i = 0; i < n; ++i)
        lambda[i] = -0.2 - 0.35 * static_cast<double>(i) + 0.05 * (rng.uniform() - 0.5);
    // A = P diag(lambda) P^-1 with P = I + 0.2 R, ||0.2 R|| < 1 so P is invertible
    Matrix p = Matrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) p(i, j) += 0.2 * (rng.uniform() * 2.0 - 1.0) / std::sqrt(static_cast<double>(n));
    Matrix p_inv(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        Vec e(n, 0.0);
        e[c] = 1.0;
        p_inv.set_col(c, lu_solve(p, e));
    }
    Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = lambda[i];
    auto a = std::make_shared<Matrix>(p * d * p_inv);

    LinearInstance inst;
    inst.eigenvalues = lambda;
    std::sort(inst.eigenvalues.rbegin(), inst.eigenvalues.rend());
    SystemSpec& s = inst.system;
    s.name = "linear_oracle_" + std::to_string(seed);
    s.dim = n;
    s.kind = SystemKind::fixed_point_orbit;
    s.group.dim = n;
    s.field = [a](std::span<const double> x, double, std::span<double> out) {
        std::fill(out.begin(), out.end(), 0.0);
        kernels::gemm_acc(a->data.data(), x.data(), out.data(), a->rows, a->cols, 1);
    };
    s.jacobian = [a](std::span<const double>, double, Matrix& j) { j = *a; };
    s.seed_state.assign(n, 0.1);
    return inst;
}

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

Criterion criterion_dimension_law(std::uint64_t seed, double tol) {
    Criterion c{1, CriterionTier::theorem, "dimension_law",
                "near-zero count == dim(G/H) at tol " + fmt(tol) +
                    "; nearest excluded |lambda| >= 0.1", "", false, 0};
    (void)seed;
    Check chk;
    double worst_excluded = 1e300;
    std::size_t matched = 0;
    const auto zoo = dimension_law_zoo();
    for (const SystemSpec& sys : zoo) {
        const Vec x0 = find_orbit_point(sys);
        const LyapunovReport rep = benettin_spectrum(sys, x0, sys.dim, 200.0, 1e-2, 10, tol, 50.0);
        const NearZeroCount nz = count_near_zero(rep, tol);
        const double excluded = nz.margin + tol;
        worst_excluded = std::min(worst_excluded, excluded);
        if (nz.count == sys.group.expected_orbit_dim) ++matched;
        chk.require(nz.count == sys.group.expected_orbit_dim,
                    sys.name + " count " + std::to_string(nz.count) + " != q " +
                        std::to_string(sys.group.expected_orbit_dim));
        chk.require(excluded >= 0.1, sys.name + " excluded exponent " + fmt(excluded) + " < 0.1");
    }
    c.passed = chk.ok;
    c.achieved = std::to_string(matched) + "/" + std::to_string(zoo.size()) +
                 " counts exact; min excluded |lambda| = " + fmt(worst_excluded) +
                 (chk.ok ? "" : "; " + chk.detail);
    return c;
}

Criterion criterion_equivariance(std::uint64_t seed) {
    Criterion c{2, CriterionTier::theorem, "equivariance_exactness",
                "exact zoo E_eq <= 1e-11 (200 samples); broken coupled control >= 1e-3", "", false, 0};
    Check chk;
    double worst_exact = 0.0;
    for (const SystemSpec& sys : exact_zoo()) {
        const double e = equivariance_error(sys, 200, seed);
        worst_exact = std::max(worst_exact, e);
        chk.require(e <= 1e-11, sys.name + " E_eq " + fmt(e));
    }
    BreakingConfig bc;
    bc.family = BreakingFamily::phase_pinning;
    bc.epsilon = 0.01;
    bc.seed = seed;
    const double broken = equivariance_error(apply_breaking(coupled_irrep_rnn(), bc), 200, seed);
    chk.require(broken >= 1e-3, "broken control E_eq " + fmt(broken) + " < 1e-3");
    c.passed = chk.ok;
    c.achieved = "max exact E_eq = " + fmt(worst_exact) + "; broken control E_eq = " + fmt(broken) +
                 (chk.ok ? "" : "; " + chk.detail);
    return c;
}

Criterion criterion_direct_tangent(std::uint64_t seed) {
    Criterion c{3, CriterionTier::theorem, "direct_tangent_exponents",
                "|lambda(T=100)| <= 1e-8 per generator; envelope at T=200 <= 0.6x", "", false, 0};
    (void)seed;
    Check chk;
    double env100 = 0.0, env200 = 0.0;
    std::size_t tested = 0;
    for (const SystemSpec& sys : exact_zoo()) {
        if (sys.kind == SystemKind::collapse) continue; // degenerate orbit by construction
        const Vec x0 = find_orbit_point(sys);
        for (std::size_t a = 0; a < sys.group.algebra_dim(); ++a) {
            Vec xi(sys.group.algebra_dim(), 0.0);
            xi[a] = 1.0;
            if (vec_norm(fundamental_field(sys.group, xi, x0)) <= 1e-12) continue;
            const double l100 = std::abs(direct_tangent_exponent(sys, x0, xi, 100.0, 1e-2));
            const double l200 = std::abs(direct_tangent_exponent(sys, x0, xi, 200.0, 1e-2));
            env100 = std::max(env100, l100);
            env200 = std::max(env200, l200);
            ++tested;
            chk.require(l100 <= 1e-8,
                        sys.name + " generator " + std::to_string(a) + " |lambda| " + fmt(l100));
        }
    }
    chk.require(env200 <= 0.6 * env100,
                "envelope " + fmt(env200) + " !<= 0.6 * " + fmt(env100));
    c.passed = chk.ok;
    c.achieved = std::to_string(tested) + " generators; envelope(100) = " + fmt(env100) +
                 ", envelope(200) = " + fmt(env200) + (chk.ok ? "" : "; " + chk.detail);
    return c;
}

Criterion criterion_alignment(std::uint64_t seed) {
    Criterion c{4, CriterionTier::theorem, "alignment",
                "tangent covariance angle <= 1e-3 deg; neutral alignment <= 0.5 deg at T=200", "",
                false, 0};
    (void)seed;
    Check chk;
    double worst_cov = 0.0, worst_neutral = 0.0;
    std::vector<SystemSpec> systems;
    systems.push_back(s1_radial());
    systems.push_back(torus_system(2));
    systems.push_back(torus_system(3));
    systems.push_back(sphere_system(3));
    systems.push_back(sphere_system(4));
    systems.push_back(complex_sphere_system(2));
    systems.push_back(coupled_irrep_rnn());
    systems.push_back(relative_equilibrium());
    systems.push_back(product_system(s1_radial(), sphere_system(3)));
    for (const SystemSpec& sys : systems) {
        const Vec x0 = find_orbit_point(sys);
        const double cov = tangent_covariance_angle(sys, x0, 100.0, 1e-2);
        worst_cov = std::max(worst_cov, cov);
        chk.require(cov <= 1e-3, sys.name + " covariance angle " + fmt(cov) + " deg");
        const LyapunovReport rep = benettin_spectrum(sys, x0, sys.dim, 200.0, 1e-2, 10, 1e-4, 50.0);
        const std::vector<double> angles = neutral_alignment(sys, rep, rep.final_state);
        worst_neutral = std::max(worst_neutral, angles.back());
        chk.require(angles.back() <= 0.5, sys.name + " neutral angle " + fmt(angles.back()) + " deg");
    }
    c.passed = chk.ok;
    c.achieved = "max covariance angle = " + fmt(worst_cov) + " deg; max neutral angle = " +
                 fmt(worst_neutral) + " deg" + (chk.ok ? "" : "; " + chk.detail);
    return c;
}

Criterion criterion_flow_zero(std::uint64_t seed) {
    Criterion c{5, CriterionTier::assumption, "flow_zero_table",
                "five rank/flow classifications reproduced; collapse lower bound <= 1e-6 by T=20",
                "", false, 0};
    (void)seed;
    Check chk;
    auto check_case = [&chk](const SystemSpec& sys, std::size_t rank_eg, std::size_t rank_union,
                             bool expect_fixed_point) {
        const Vec x = find_orbit_point(sys);
        const FlowZero fz = flow_zero_diagnostic(sys, x, 1e-8);
        chk.require(fz.rank_eg == rank_eg, sys.name + " rank_EG " + std::to_string(fz.rank_eg));
        chk.require(fz.rank_f_union_eg == rank_union,
                    sys.name + " rank[f|EG] " + std::to_string(fz.rank_f_union_eg));
        chk.require(fz.fixed_point == expect_fixed_point,
                    sys.name + (expect_fixed_point ? " expected f=0" : " expected f!=0"));
    };
    check_case(s1_radial(), 1, 1, true);
    check_case(torus_system(2), 2, 2, true);
    check_case(sphere_system(3), 2, 2, true);
    check_case(complex_sphere_system(2), 3, 3, true);
    check_case(coupled_irrep_rnn(), 1, 1, true);
    check_case(relative_equilibrium(), 1, 1, false); // f != 0 but f in E^G
    check_case(product_system(s1_radial(), sphere_system(3)), 3, 3, true);

    // collapse control: ranks off-origin, uniform bound decaying to zero
    const SystemSpec col = collapse_system();
    const FlowZero fz = flow_zero_diagnostic(col, col.seed_state, 1e-8);
    chk.require(fz.rank_eg == 1 && fz.rank_f_union_eg == 2,
                "collapse ranks (" + std::to_string(fz.rank_eg) + "," +
                    std::to_string(fz.rank_f_union_eg) + ") != (1,2)");
    const Trajectory traj = integrate_flow(autonomous_field(col), col.seed_state, 20.0, 1e-2);
    const OrbitDiagnostics od = orbit_diagnostics(col.group, traj, 1e-8);
    chk.require(od.uniform_lower <= 1e-6,
                "collapse uniform lower " + fmt(od.uniform_lower) + " > 1e-6");
    c.passed = chk.ok;
    c.achieved = std::string("8 cases classified; collapse uniform lower = ") +
                 fmt(od.uniform_lower) + (chk.ok ? "" : "; " + chk.detail);
    return c;
}

Criterion criterion_oracles(std::uint64_t seed) {
    Criterion c{6, CriterionTier::theorem, "oracle_equivalence",
                "Benettin vs eigen real parts <= 1e-5 (10 linear systems); Jacobians vs FD <= 1e-6",
                "", false, 0};
    Check chk;
    double worst_eig = 0.0;
    for (int inst = 0; inst < 10; ++inst) {
        const LinearInstance lin = make_linear_instance(seed + inst, 6);
        const LyapunovReport rep =
            benettin_spectrum(lin.system, lin.system.seed_state, 6, 400.0, 1e-2, 10, 1e-4, 100.0);
        for (std::size_t j = 0; j < 6; ++j) {
            const double err = std::abs(rep.exponents[j] - lin.eigenvalues[j]);
            worst_eig = std::max(worst_eig, err);
            chk.require(err <= 1e-5, lin.system.name + " exponent " + std::to_string(j) +
                                         " off by " + fmt(err));
        }
    }

    double worst_jac = 0.0;
    std::vector<SystemSpec> systems = exact_zoo();
    systems.push_back(controlled_path_integrator(true));
    systems.push_back(circulant_grid(16));
    for (const SystemSpec& sys : systems) {
        Rng rng = Rng::stream(seed, "jacobian_fd/" + sys.name);
        for (int k = 0; k < 50; ++k) {
            Vec x(sys.dim);
            for (double& v : x) v = rng.uniform(-1.2, 1.2);
            const Matrix analytic = sys.jac(x);
            const Matrix fd = jacobian_fd(autonomous_field(sys), x, 1e-5);
            const double err = max_abs(analytic - fd);
            worst_jac = std::max(worst_jac, err);
            chk.require(err <= 1e-6, sys.name + " jacobian off by " + fmt(err));
        }
    }
    c.passed = chk.ok;
    c.achieved = "max exponent error = " + fmt(worst_eig) + "; max jacobian error = " +
                 fmt(worst_jac) + (chk.ok ? "" : "; " + chk.detail);
    return c;
}

Criterion criterion_pseudogap(std::uint64_t seed) {
    Criterion c{7, CriterionTier::assumption, "pseudogap_study",
                "corr >= 0.999; uncensored = 1; median ratio in [0.8, 1.25]; lifetimes strictly "
                "decreasing; gap within 10% at eps <= 0.05",
                "", false, 0};
    Check chk;
    const SystemSpec base = s1_radial();
    const std::vector<double> eps_grid = {0.005, 0.01, 0.02, 0.05, 0.1};
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t i = 1; i <= 5; ++i) seeds.push_back(seed + i);
    SweepSettings settings;
    settings.seed = seed;
    const SweepResult sweep =
        lifetime_sweep(base, {BreakingFamily::phase_pinning}, eps_grid, seeds, settings);

    chk.require(sweep.summary.defined, "sweep summary undefined");
    chk.require(sweep.summary.log_lifetime_correlation >= 0.999,
                "correlation " + fmt(sweep.summary.log_lifetime_correlation));
    chk.require(sweep.summary.uncensored_fraction == 1.0,
                "uncensored fraction " + fmt(sweep.summary.uncensored_fraction));
    chk.require(sweep.summary.median_ratio >= 0.8 && sweep.summary.median_ratio <= 1.25,
                "median ratio " + fmt(sweep.summary.median_ratio));

    // strict lifetime decrease along the eps grid, per seed
    for (std::size_t si = 0; si < seeds.size(); ++si) {
        for (std::size_t ei = 0; ei + 1 < eps_grid.size(); ++ei) {
            const LifetimeRecord& lo = sweep.records[ei * seeds.size() + si];
            const LifetimeRecord& hi = sweep.records[(ei + 1) * seeds.size() + si];
            chk.require(lo.error.empty() && hi.error.empty(), "row error tag present");
            chk.require(hi.lifetime_measured < lo.lifetime_measured,
                        "lifetime not decreasing at eps " + fmt(eps_grid[ei + 1]));
        }
    }
    double worst_gap_rel = 0.0;
    for (const LifetimeRecord& rec : sweep.records) {
        if (rec.config.epsilon > 0.05 || !rec.error.empty()) continue;
        const double rel = std::abs(rec.gap_measured - rec.gap_predicted) /
                           std::max(std::abs(rec.gap_predicted), 1e-300);
        worst_gap_rel = std::max(worst_gap_rel, rel);
        chk.require(rel <= 0.10, "gap mismatch " + fmt(rel) + " at eps " + fmt(rec.config.epsilon));
    }
    c.passed = chk.ok;
    c.achieved = "corr = " + fmt(sweep.summary.log_lifetime_correlation) + "; uncensored = " +
                 fmt(sweep.summary.uncensored_fraction) + "; median ratio = " +
                 fmt(sweep.summary.median_ratio) + "; max gap mismatch = " + fmt(worst_gap_rel) +
                 (chk.ok ? "" : "; " + chk.detail);
    return c;
}

Criterion criterion_anisotropic(std::uint64_t seed) {
    Criterion c{8, CriterionTier::assumption, "random_anisotropic_ensemble",
                "gap Pearson r >= 0.95 over 30 seeds at eps = 0.02; |gap| vs E_eq correlation > 0",
                "", false, 0};
    Check chk;
    const SystemSpec base = s1_radial();
    std::vector<double> pred, meas, mag, eeq;
    for (int i = 0; i < 30; ++i) {
        BreakingConfig bc;
        bc.family = BreakingFamily::random_anisotropic;
        bc.epsilon = 0.02;
        bc.seed = seed + 100 + i;
        const SystemSpec broken = apply_breaking(base, bc);
        pred.push_back(predict_gap_perturbative(base, bc));
        meas.push_back(measure_pseudo_gap(broken));
        mag.push_back(std::abs(meas.back()));
        eeq.push_back(equivariance_error(broken, 100, bc.seed));
    }
    const double r_gap = pearson_correlation(meas, pred);
    const double r_eeq = pearson_correlation(mag, eeq);
    chk.require(r_gap >= 0.95, "gap correlation " + fmt(r_gap));
    chk.require(r_eeq > 0.0, "gap vs E_eq correlation " + fmt(r_eeq));
    c.passed = chk.ok;
    c.achieved = "gap correlation = " + fmt(r_gap) + "; |gap| vs E_eq correlation = " + fmt(r_eeq) +
                 (chk.ok ? "" : "; " + chk.detail);
    return c;
}

Criterion criterion_task(std::uint64_t seed) {
    Criterion c{9, CriterionTier::consequence, "task_consequence",
                "exact RMSE <= 0.01 rad at horizon 256; broken >= 10x; separation >= 5 stderr", "",
                false, 0};
    Check chk;
    ConsequenceSettings settings;
    settings.dt = 0.05;
    settings.broken_epsilon = 0.05;
    settings.velocity = VelocityKind::correlated_walk;
    settings.seed = seed;
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t i = 1; i <= 6; ++i) seeds.push_back(seed + i);
    const ConsequenceTable table = consequence_suite(seeds, {256}, {1.0}, settings);

    double mean_e = 0.0, se_e = 0.0, mean_b = 0.0, se_b = 0.0, max_exact = 0.0;
    for (const ConsequenceCell& c : table.cells) {
        if (c.condition != TaskCondition::in_dist) continue;
        if (c.model == "exact") {
            mean_e = c.mean_rmse;
            se_e = c.stderr_rmse;
        } else if (c.model == "broken") {
            mean_b = c.mean_rmse;
            se_b = c.stderr_rmse;
        }
    }
    for (const ConsequenceRow& r : table.rows) {
        chk.require(r.error.empty(), "row error: " + r.error);
        if (r.model == "exact" && r.condition == TaskCondition::in_dist)
            max_exact = std::max(max_exact, r.rmse);
    }
    const double separation = (mean_b - mean_e) / std::sqrt(se_e * se_e + se_b * se_b + 1e-300);
    chk.require(max_exact <= 0.01, "exact RMSE " + fmt(max_exact));
    chk.require(mean_b >= 10.0 * mean_e, "ratio " + fmt(mean_b / mean_e));
    chk.require(separation >= 5.0, "separation " + fmt(separation));
    c.passed = chk.ok;
    c.achieved = "exact = " + fmt(mean_e) + " rad (max " + fmt(max_exact) + "), broken = " +
                 fmt(mean_b) + " rad, ratio = " + fmt(mean_b / std::max(mean_e, 1e-300)) +
                 ", separation = " + fmt(separation) + " se" + (chk.ok ? "" : "; " + chk.detail);
    return c;
}

Criterion criterion_grid_null(std::uint64_t seed) {
    Criterion c{10, CriterionTier::consequence, "grid_null",
                "N=32: roll error <= 1e-12; half-bin Fourier shift error >= 1e-2", "", false, 0};
    Check chk;
    const GridNullResult g = grid_null(32, {0.5}, seed);
    chk.require(g.discrete_error <= 1e-12, "roll error " + fmt(g.discrete_error));
    chk.require(g.continuous_error_curve[0].second >= 1e-2,
                "fourier error " + fmt(g.continuous_error_curve[0].second));
    c.passed = chk.ok;
    c.achieved = "roll error = " + fmt(g.discrete_error) + "; fourier(0.5) error = " +
                 fmt(g.continuous_error_curve[0].second) + (chk.ok ? "" : "; " + chk.detail);
    return c;
}

Criterion criterion_determinism(std::uint64_t seed) {
    Criterion c{11, CriterionTier::consequence, "determinism",
                "re-running 'all' byte-reproduces every CSV; manifest hashes verify", "", false, 0};
    Check chk;
    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() / "sympro_determinism";
    fs::remove_all(root);

    auto run_once = [&](const fs::path& out) {
        ExperimentConfig cfg;
        cfg.experiment = "all";
        cfg.seed = seed;
        cfg.out_dir = out;
        const auto t0 = std::chrono::steady_clock::now();
        const RunArtifacts artifacts = run_experiment("all", cfg);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_manifest(cfg, artifacts, secs);
        return artifacts;
    };
    const RunArtifacts first = run_once(root / "run1");
    run_once(root / "run2");

    std::size_t compared = 0;
    for (const fs::path& p : first.files) {
        if (p.extension() != ".csv") continue;
        const fs::path rel = fs::relative(p, root / "run1");
        std::ifstream a(p, std::ios::binary), b(root / "run2" / rel, std::ios::binary);
        const std::string ca((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
        const std::string cb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
        chk.require(!ca.empty() && ca == cb, rel.string() + " differs between runs");
        ++compared;
    }
    chk.require(compared > 0, "no CSV files produced");
    chk.require(verify_manifest(root / "run1" / "manifest.json"), "manifest hashes do not verify");
    fs::remove_all(root);
    c.passed = chk.ok;
    c.achieved = std::to_string(compared) + " CSV files byte-identical; manifest verified" +
                 (chk.ok ? "" : "; " + chk.detail);
    return c;
}

} // namespace

const std::vector<int>& all_criterion_ids() {
    static const std::vector<int> ids = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
    return ids;
}

Criterion run_criterion(int id, std::uint64_t seed, double near_zero_tol) {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c;
    switch (id) {
        case 1: c = criterion_dimension_law(seed, near_zero_tol); break;
        case 2: c = criterion_equivariance(seed); break;
        case 3: c = criterion_direct_tangent(seed); break;
        case 4: c = criterion_alignment(seed); break;
        case 5: c = criterion_flow_zero(seed); break;
        case 6: c = criterion_oracles(seed); break;
        case 7: c = criterion_pseudogap(seed); break;
        case 8: c = criterion_anisotropic(seed); break;
        case 9: c = criterion_task(seed); break;
        case 10: c = criterion_grid_null(seed); break;
        case 11: c = criterion_determinism(seed); break;
        default: throw Error("unknown acceptance criterion " + std::to_string(id));
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return c;
}

std::vector<Criterion> run_all_criteria(std::uint64_t seed, std::vector<int> ids,
                                        double near_zero_tol) {
    if (ids.empty()) ids = all_criterion_ids();
    std::vector<Criterion> out;
    out.reserve(ids.size());
    for (int id : ids) out.push_back(run_criterion(id, seed, near_zero_tol));
    return out;
}

bool print_report(const std::vector<Criterion>& criteria, std::FILE* out) {
    bool all_ok = true;
    for (const Criterion& c : criteria) {
        all_ok = all_ok && c.passed;
        std::fprintf(out, "[%s] criterion %2d %-28s (%s, %.1fs)\n        required: %s\n        achieved: %s\n",
                     c.passed ? "PASS" : "FAIL", c.id, c.name.c_str(), to_string(c.tier).c_str(),
                     c.seconds, c.required.c_str(), c.achieved.c_str());
    }
    std::fprintf(out, "%s: %zu/%zu criteria passed\n", all_ok ? "OK" : "FAILURES",
                 static_cast<std::size_t>(std::count_if(criteria.begin(), criteria.end(),
                                                        [](const Criterion& c) { return c.passed; })),
                 criteria.size());
    return all_ok;
}

std::vector<int> criteria_for_experiment(const std::string& experiment) {
    if (experiment == "dimension_law") return {1};
    if (experiment == "geometry") return {2, 4, 5};
    if (experiment == "rnn_branch") return {2, 3};
    if (experiment == "pseudogap") return {7, 8};
    if (experiment == "pathint") return {9};
    if (experiment == "grid_null") return {10};
    return all_criterion_ids();
}

} // namespace sympro
