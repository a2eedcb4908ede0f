#include "sympro/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "sympro/errors.hpp"
#include "sympro/integrate.hpp"
#include "sympro/kernels.hpp"
#include "sympro/linalg.hpp"

namespace sympro {

namespace {

// Combined state [x; vec(V)] with V row-major d x k. The V block obeys the
// variational equation with the Jacobian evaluated at the stage states, so
// the discrete tangent map is the exact derivative of the discrete flow map.
class JointSystem {
  public:
    JointSystem(const SystemSpec& s, std::size_t k) : sys_(s), d_(s.dim), k_(k), jac_(s.dim, s.dim) {}

    std::size_t joint_dim() const { return d_ + d_ * k_; }

    FlowField field(double u) {
        return [this, u](std::span<const double> y, std::span<double> out) {
            const auto x = y.subspan(0, d_);
            sys_.field(x, u, out.subspan(0, d_));
            sys_.jacobian(x, u, jac_);
            auto dv = out.subspan(d_);
            std::fill(dv.begin(), dv.end(), 0.0);
            kernels::gemm_acc(jac_.data.data(), y.data() + d_, dv.data(), d_, d_, k_);
        };
    }

    static Vec pack(const Vec& x, const Matrix& v) {
        Vec y = x;
        y.insert(y.end(), v.data.begin(), v.data.end());
        return y;
    }

    void unpack(const Vec& y, Vec& x, Matrix& v) const {
        x.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(d_));
        v = Matrix(d_, k_);
        std::copy(y.begin() + static_cast<std::ptrdiff_t>(d_), y.end(), v.data.begin());
    }

  private:
    const SystemSpec& sys_;
    std::size_t d_, k_;
    Matrix jac_;
};

} // namespace

std::pair<Vec, Matrix> propagate_tangent(const SystemSpec& s, const Vec& x0, const Matrix& v0,
                                         double T, double dt, const std::vector<double>* inputs) {
    if (x0.size() != s.dim || v0.rows != s.dim || v0.cols == 0)
        throw DimensionMismatch("propagate_tangent: state/frame shape mismatch");
    if (T <= 0.0 || dt <= 0.0) throw Error("propagate_tangent: T and dt must be positive");

    JointSystem joint(s, v0.cols);
    Vec y = JointSystem::pack(x0, v0);
    const auto full_steps = static_cast<std::size_t>(std::floor(T / dt + 1e-9));
    double remainder = T - static_cast<double>(full_steps) * dt;
    if (remainder <= 1e-12 * T) remainder = 0.0;
    const std::size_t steps = full_steps + (remainder > 0.0 ? 1 : 0);
    if (inputs && inputs->size() < steps)
        throw DimensionMismatch("propagate_tangent: input sequence shorter than step count");
    Rk4 ws(joint.joint_dim());
    for (std::size_t i = 0; i < steps; ++i) {
        const double u = inputs ? (*inputs)[i] : 0.0;
        const double step_dt = (i < full_steps) ? dt : remainder;
        const FlowField f = joint.field(u);
        ws.step(f, y, step_dt, static_cast<double>(i) * dt);
    }
    Vec xT;
    Matrix vT;
    joint.unpack(y, xT, vT);
    return {std::move(xT), std::move(vT)};
}

std::vector<double> LyapunovReport::estimates_at(double t) const {
    if (history.empty()) return {};
    std::size_t best = 0;
    double best_err = std::abs(history_times[0] - t);
    for (std::size_t i = 1; i < history_times.size(); ++i) {
        const double err = std::abs(history_times[i] - t);
        if (err < best_err) {
            best = i;
            best_err = err;
        }
    }
    return history[best];
}

LyapunovReport benettin_spectrum(const SystemSpec& s, const Vec& x0, std::size_t k,
                                 double T, double dt, std::size_t renorm_every, double tolerance,
                                 double tangent_warmup) {
    if (k == 0 || k > s.dim) throw DimensionMismatch("benettin_spectrum: need 1 <= k <= d");
    if (renorm_every == 0) throw Error("benettin_spectrum: renorm_every must be positive");

    // initial frame: first k identity columns
    Matrix v(s.dim, k);
    for (std::size_t j = 0; j < k; ++j) v(j, j) = 1.0;

    JointSystem joint(s, k);
    Vec y = JointSystem::pack(x0, v);
    const FlowField f = joint.field(0.0);
    Rk4 ws(joint.joint_dim());

    auto warm_steps =
        tangent_warmup > 0.0 ? static_cast<std::size_t>(std::ceil(tangent_warmup / dt - 1e-9)) : 0;
    if (warm_steps % renorm_every != 0) // keep renormalizations aligned with the boundary
        warm_steps += renorm_every - warm_steps % renorm_every;
    const auto measure_steps = static_cast<std::size_t>(std::ceil(T / dt - 1e-9));
    const auto total_steps = measure_steps + warm_steps;
    std::vector<double> log_sums(k, 0.0);
    LyapunovReport report;
    report.tolerance = tolerance;
    report.dt = dt;
    report.renorm_interval = renorm_every;

    Vec x;
    std::size_t step = 0;
    while (step < total_steps) {
        const std::size_t chunk = std::min(renorm_every, total_steps - step);
        for (std::size_t i = 0; i < chunk; ++i, ++step) ws.step(f, y, dt, static_cast<double>(step) * dt);

        joint.unpack(y, x, v);
        QrResult qr = qr_decompose(v);
        const bool measuring = step > warm_steps;
        for (std::size_t j = 0; j < k; ++j) {
            const double rjj = qr.r(j, j);
            if (!(rjj > 0.0))
                throw RankDeficient("benettin_spectrum: collapsed tangent frame at t = " +
                                    std::to_string(static_cast<double>(step) * dt));
            if (measuring) log_sums[j] += std::log(rjj);
        }
        y = JointSystem::pack(x, qr.q);
        v = std::move(qr.q);

        if (measuring) {
            const double t_now = static_cast<double>(step - warm_steps) * dt;
            std::vector<double> running(k);
            for (std::size_t j = 0; j < k; ++j) running[j] = log_sums[j] / t_now;
            report.history_times.push_back(t_now);
            report.history.push_back(std::move(running));
        }
    }

    const double t_total = static_cast<double>(measure_steps) * dt;
    report.total_time = t_total;
    report.final_state = x;
    std::vector<double> exps(k);
    for (std::size_t j = 0; j < k; ++j) exps[j] = log_sums[j] / t_total;

    // sort descending, permuting frame columns alongside
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&exps](std::size_t a, std::size_t b) {
        return exps[a] > exps[b];
    });
    report.exponents.resize(k);
    report.frame = Matrix(s.dim, k);
    for (std::size_t j = 0; j < k; ++j) {
        report.exponents[j] = exps[order[j]];
        for (std::size_t i = 0; i < s.dim; ++i) report.frame(i, j) = v(i, order[j]);
    }

    // convergence: the drift of each running estimate over the last quarter
    if (!report.history.empty()) {
        const std::vector<double> at_three_quarters = report.estimates_at(0.75 * t_total);
        const std::vector<double>& final_est = report.history.back();
        for (std::size_t j = 0; j < k; ++j) {
            if (std::abs(final_est[j] - at_three_quarters[j]) > 10.0 * tolerance)
                report.non_converged = true;
        }
    }

    report.near_zero_count = count_near_zero(report, tolerance).count;
    return report;
}

double direct_tangent_exponent(const SystemSpec& s, const Vec& x0, std::span<const double> xi,
                               double T, double dt) {
    const Vec v0 = fundamental_field(s.group, xi, x0);
    const double norm0 = vec_norm(v0);
    if (norm0 <= 1e-12)
        throw DegenerateTangent("direct_tangent_exponent: |xi_M(x0)| = " + std::to_string(norm0) +
                                " on '" + s.name + "'");
    Matrix v(s.dim, 1);
    v.set_col(0, v0);
    auto [x_end, v_end] = propagate_tangent(s, x0, v, T, dt);
    const double norm_t = vec_norm(v_end.col(0));
    if (!(norm_t > 0.0) || !std::isfinite(norm_t))
        throw NumericalBlowup("direct_tangent_exponent: propagated tangent is degenerate");
    return std::log(norm_t / norm0) / T;
}

NearZeroCount count_near_zero(const LyapunovReport& report, double tol) {
    if (tol <= 0.0) throw Error("count_near_zero: tol must be positive");
    NearZeroCount out;
    double nearest_excluded = std::numeric_limits<double>::infinity();
    for (double lambda : report.exponents) {
        if (std::abs(lambda) < tol)
            ++out.count;
        else
            nearest_excluded = std::min(nearest_excluded, std::abs(lambda));
    }
    out.all_within_band = out.count == report.exponents.size();
    out.margin = std::isfinite(nearest_excluded) ? nearest_excluded - tol
                                                 : std::numeric_limits<double>::infinity();
    return out;
}

} // namespace sympro
