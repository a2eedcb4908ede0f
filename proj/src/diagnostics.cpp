#include "sympro/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sympro/errors.hpp"
#include "sympro/linalg.hpp"
#include "sympro/rng.hpp"

namespace sympro {

namespace {

// random direction on the unit sphere
Vec random_direction(Rng& rng, std::size_t d) {
    Vec v(d);
    double norm_sq = 0.0;
    do {
        for (double& x : v) x = rng.normal();
        norm_sq = vec_dot(v, v);
    } while (norm_sq <= 1e-12);
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (double& x : v) x *= inv;
    return v;
}

Vec sample_state(Rng& rng, std::size_t d, double scale) {
    Vec v = random_direction(rng, d);
    const double radius = scale * rng.uniform(0.5, 1.5);
    for (double& x : v) x *= radius;
    return v;
}

} // namespace

double equivariance_error(const SystemSpec& s, std::size_t n_samples, std::uint64_t seed) {
    if (n_samples < 1) throw Error("equivariance_error: n_samples >= 1 required");
    if (s.group.algebra_dim() == 0) return 0.0; // identity-only action

    Rng rng = Rng::stream(seed, "equivariance/" + s.name);
    const std::size_t d = s.dim;
    Vec fx(d), fgx(d);
    double worst = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const Vec x = sample_state(rng, d, s.attractor_scale);
        Vec xi(s.group.algebra_dim());
        for (double& c : xi) c = rng.uniform(-std::numbers::pi, std::numbers::pi);
        const Matrix g = group_element(s.group, xi);

        s.field(x, 0.0, fx);
        const Vec gx = g * x;
        s.field(gx, 0.0, fgx);
        const Vec gfx = g * fx;
        const double err = vec_dist(fgx, gfx) / (1.0 + vec_norm(fx));
        worst = std::max(worst, err);
    }
    return worst;
}

double step_equivariance_error(const StepMap& step, const std::vector<StateOp>& ops,
                               const std::vector<Vec>& samples) {
    if (ops.empty()) throw Error("step_equivariance_error: empty operator family");
    double worst = 0.0;
    for (const Vec& x : samples) {
        const Vec step_x = step(x);
        const double denom = 1.0 + vec_norm(step_x);
        for (const StateOp& op : ops) {
            const Vec lhs = step(op(x));
            const Vec rhs = op(step_x);
            worst = std::max(worst, vec_dist(lhs, rhs) / denom);
        }
    }
    return worst;
}

double step_equivariance_error(const StepMap& step, const std::vector<StateOp>& ops,
                               const std::function<Vec(Rng&)>& draw_state,
                               std::size_t n_samples, std::uint64_t seed) {
    Rng rng = Rng::stream(seed, "step_equivariance");
    std::vector<Vec> samples;
    samples.reserve(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) samples.push_back(draw_state(rng));
    return step_equivariance_error(step, ops, samples);
}

double tangent_covariance_angle(const SystemSpec& s, const Vec& x0, double T, double dt) {
    const Matrix v0 = action_matrix(s.group, x0);
    // absolute scale check: a decayed orbit (collapse near the origin) is
    // degenerate even though its normalized basis still has full rank
    if (v0.cols == 0 || frobenius_norm(v0) <= 1e-12)
        throw DegenerateTangent("tangent_covariance_angle: degenerate orbit at x0 on '" + s.name + "'");

    auto [x_end, v_end] = propagate_tangent(s, x0, v0, T, dt);
    const Matrix propagated = orthonormal_basis(v_end, 1e-10);
    const Matrix analytic = orthonormal_basis(action_matrix(s.group, x_end), 1e-10);
    if (propagated.cols == 0 || analytic.cols == 0)
        throw DegenerateTangent("tangent_covariance_angle: orbit degenerated along the trajectory");
    const std::vector<double> angles = principal_angles_deg(propagated, analytic);
    return angles.back();
}

std::vector<double> neutral_alignment(const SystemSpec& s, const LyapunovReport& report,
                                      const Vec& x_final) {
    std::vector<std::size_t> near_zero_cols;
    for (std::size_t j = 0; j < report.exponents.size(); ++j)
        if (std::abs(report.exponents[j]) < report.tolerance) near_zero_cols.push_back(j);
    if (near_zero_cols.empty())
        throw EmptyNeutralSubspace("neutral_alignment: no exponent within the tolerance band on '" +
                                   s.name + "'");

    const Matrix neutral = select_cols(report.frame, near_zero_cols);
    const Matrix raw = action_matrix(s.group, x_final);
    if (raw.cols == 0 || frobenius_norm(raw) <= 1e-12)
        throw DegenerateTangent("neutral_alignment: degenerate orbit at the final state");
    return principal_angles_deg(neutral, orthonormal_basis(raw, 1e-10));
}

FlowZero flow_zero_diagnostic(const SystemSpec& s, const Vec& x, double rank_tol) {
    constexpr double flow_threshold = 1e-8;
    FlowZero out;
    const Matrix a = action_matrix(s.group, x);
    out.rank_eg = (a.cols == 0 || max_abs(a) == 0.0) ? 0 : numerical_rank(a, rank_tol);

    Vec fx(s.dim);
    s.field(x, 0.0, fx);
    out.flow_norm = vec_norm(fx);
    out.fixed_point = out.flow_norm <= flow_threshold;

    Matrix f_col(s.dim, 1);
    f_col.set_col(0, fx);
    const Matrix joined = hcat(f_col, a);
    out.rank_f_union_eg = max_abs(joined) == 0.0 ? 0 : numerical_rank(joined, rank_tol);
    return out;
}

DiagnosticsReport full_report(const SystemSpec& s, const DiagSettings& cfg) {
    DiagnosticsReport report;
    report.system = s.name;
    report.settings = cfg;

    report.equivariance_error = equivariance_error(s, cfg.equivariance_samples, cfg.seed);

    // The collapse control is diagnosed on the collapsing trajectory itself:
    // flow-zero ranks off-origin, orbit bounds decaying toward zero.
    const bool collapsing = s.kind == SystemKind::collapse;
    Vec x_ref = collapsing ? s.seed_state : find_orbit_point(s);

    report.flow_zero = flow_zero_diagnostic(s, x_ref, cfg.rank_tol);

    const Trajectory traj =
        integrate_flow(autonomous_field(s), x_ref, collapsing ? 20.0 : cfg.orbit_diag_T, cfg.dt);
    if (s.group.algebra_dim() > 0) report.orbit = orbit_diagnostics(s.group, traj, cfg.rank_tol);

    report.spectrum = benettin_spectrum(s, x_ref, s.dim, cfg.spectrum_T, cfg.dt, cfg.renorm_every,
                                        cfg.near_zero_tol);

    if (collapsing) {
        report.note = "orbit degenerates; protection diagnostics withheld (nondegeneracy fails)";
        return report;
    }

    try {
        report.tangent_covariance_angle_deg =
            tangent_covariance_angle(s, x_ref, cfg.covariance_T, cfg.dt);
    } catch (const DegenerateTangent&) {
        report.note += "tangent covariance skipped (degenerate orbit); ";
    }
    try {
        report.neutral_principal_angles_deg =
            neutral_alignment(s, report.spectrum, report.spectrum.final_state);
    } catch (const Error& e) {
        report.note += std::string("neutral alignment skipped: ") + e.what();
    }
    return report;
}

} // namespace sympro
