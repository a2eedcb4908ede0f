#include "sympro/integrate.hpp"

#include <cmath>
#include <string>

#include "sympro/errors.hpp"
#include "sympro/kernels.hpp"

namespace sympro {

void Rk4::step(const FlowField& field, Vec& x, double dt, double t_for_error) {
    const std::size_t n = x.size();
    field(x, k1_);
    kernels::add_scaled(x.data(), 0.5 * dt, k1_.data(), stage_.data(), n);
    field(stage_, k2_);
    kernels::add_scaled(x.data(), 0.5 * dt, k2_.data(), stage_.data(), n);
    field(stage_, k3_);
    kernels::add_scaled(x.data(), dt, k3_.data(), stage_.data(), n);
    field(stage_, k4_);

    const double w = dt / 6.0;
    kernels::axpy(w, k1_.data(), x.data(), n);
    kernels::axpy(2.0 * w, k2_.data(), x.data(), n);
    kernels::axpy(2.0 * w, k3_.data(), x.data(), n);
    kernels::axpy(w, k4_.data(), x.data(), n);

    if (!vec_finite(x))
        throw NumericalBlowup("rk4 step produced a non-finite state at t = " +
                              std::to_string(t_for_error) + " (dt = " + std::to_string(dt) + ")");
}

Vec rk4_step(const FlowField& field, std::span<const double> x, double dt) {
    if (dt <= 0.0) throw Error("rk4_step: dt must be positive");
    Vec out(x.begin(), x.end());
    Rk4 ws(x.size());
    ws.step(field, out, dt, 0.0);
    return out;
}

// Fixed-step march with the last step trimmed so the endpoint lands exactly
// on T when T is not an integer multiple of dt.
struct StepPlan {
    std::size_t full_steps;
    double remainder;
};

static StepPlan plan_steps(double T, double dt, std::size_t max_steps, const char* who) {
    if (T <= 0.0 || dt <= 0.0) throw Error(std::string(who) + ": T and dt must be positive");
    auto full = static_cast<std::size_t>(std::floor(T / dt + 1e-9));
    double remainder = T - static_cast<double>(full) * dt;
    if (remainder <= 1e-12 * T) remainder = 0.0;
    if (full + (remainder > 0.0 ? 1 : 0) > max_steps)
        throw StepBudgetExceeded(std::string(who) + ": " + std::to_string(full + 1) +
                                 " steps exceed budget " + std::to_string(max_steps));
    return {full, remainder};
}

Trajectory integrate_flow(const FlowField& field, const Vec& x0, double T, double dt,
                          std::size_t max_steps) {
    const StepPlan plan = plan_steps(T, dt, max_steps, "integrate_flow");
    Trajectory traj;
    traj.dt = dt;
    traj.times.reserve(plan.full_steps + 2);
    traj.states.reserve(plan.full_steps + 2);
    Vec x = x0;
    traj.times.push_back(0.0);
    traj.states.push_back(x);
    Rk4 ws(x.size());
    for (std::size_t i = 0; i < plan.full_steps; ++i) {
        const double t = static_cast<double>(i) * dt;
        ws.step(field, x, dt, t);
        traj.times.push_back(static_cast<double>(i + 1) * dt);
        traj.states.push_back(x);
    }
    if (plan.remainder > 0.0) {
        ws.step(field, x, plan.remainder, static_cast<double>(plan.full_steps) * dt);
        traj.times.push_back(T);
        traj.states.push_back(x);
    }
    return traj;
}

Vec integrate_to(const FlowField& field, const Vec& x0, double T, double dt,
                 std::size_t max_steps) {
    const StepPlan plan = plan_steps(T, dt, max_steps, "integrate_to");
    Vec x = x0;
    Rk4 ws(x.size());
    for (std::size_t i = 0; i < plan.full_steps; ++i)
        ws.step(field, x, dt, static_cast<double>(i) * dt);
    if (plan.remainder > 0.0)
        ws.step(field, x, plan.remainder, static_cast<double>(plan.full_steps) * dt);
    return x;
}

Matrix jacobian_fd(const FlowField& field, const Vec& x, double h) {
    if (h <= 0.0) throw Error("jacobian_fd: h must be positive");
    const std::size_t n = x.size();
    Matrix j(n, n);
    Vec xp = x, xm = x, fp(n), fm(n);
    for (std::size_t c = 0; c < n; ++c) {
        xp[c] = x[c] + h;
        xm[c] = x[c] - h;
        field(xp, fp);
        field(xm, fm);
        for (std::size_t r = 0; r < n; ++r) j(r, c) = (fp[r] - fm[r]) / (2.0 * h);
        xp[c] = x[c];
        xm[c] = x[c];
    }
    return j;
}

} // namespace sympro
