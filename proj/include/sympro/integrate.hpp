#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "sympro/matrix.hpp"

namespace sympro {

// Right-hand side of an autonomous ODE: writes dx/dt into `out`.
using FlowField = std::function<void(std::span<const double> x, std::span<double> out)>;

struct Trajectory {
    double dt = 0.0;
    std::vector<double> times;
    std::vector<Vec> states;

    std::size_t size() const { return times.size(); }
    const Vec& back() const { return states.back(); }
};

// Classical fixed-step RK4. Reusable workspace so the integration loops do
// not allocate per step.
class Rk4 {
  public:
    explicit Rk4(std::size_t dim)
        : k1_(dim), k2_(dim), k3_(dim), k4_(dim), stage_(dim) {}

    // x <- x + dt * rk4_increment(field, x); throws NumericalBlowup with the
    // current time in the message when the update goes non-finite.
    void step(const FlowField& field, Vec& x, double dt, double t_for_error);

  private:
    Vec k1_, k2_, k3_, k4_, stage_;
};

Vec rk4_step(const FlowField& field, std::span<const double> x, double dt);

inline constexpr std::size_t kDefaultMaxSteps = 50'000'000;

Trajectory integrate_flow(const FlowField& field, const Vec& x0, double T, double dt,
                          std::size_t max_steps = kDefaultMaxSteps);

// Endpoint only (no stored trajectory).
Vec integrate_to(const FlowField& field, const Vec& x0, double T, double dt,
                 std::size_t max_steps = kDefaultMaxSteps);

// Central-difference Jacobian, entry (i,j) = (f_i(x+h e_j) - f_i(x-h e_j)) / (2h).
Matrix jacobian_fd(const FlowField& field, const Vec& x, double h);

} // namespace sympro
