#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "sympro/groups.hpp"
#include "sympro/matrix.hpp"

namespace sympro {

enum class SystemKind { fixed_point_orbit, relative_equilibrium, collapse, input_driven, discrete_map };

enum class BreakingFamily { weak_axis, unit_axis, rotated_strong, random_anisotropic, phase_pinning };

std::string to_string(BreakingFamily f);
BreakingFamily breaking_family_from_string(const std::string& s);

struct BreakingConfig {
    BreakingFamily family = BreakingFamily::phase_pinning;
    double epsilon = 0.0;
    int pin_order = 1;         // resonance order k of the pinning term
    double rotation_deg = 0.0; // pinned-axis rotation
    std::uint64_t seed = 0;    // anisotropic ensemble draw
};

// A vector field with analytic Jacobian, its group action, and optional
// breaking. Autonomous systems ignore the scalar input u.
struct SystemSpec {
    std::string name;
    std::size_t dim = 0;
    SystemKind kind = SystemKind::fixed_point_orbit;
    GroupSpec group;
    std::function<void(std::span<const double> x, double u, std::span<double> out)> field;
    std::function<void(std::span<const double> x, double u, Matrix& jac)> jacobian;
    std::optional<BreakingConfig> breaking;
    Vec seed_state;              // documented burn-in start
    double attractor_scale = 1.0; // radius scale of the sampling box

    void eval(std::span<const double> x, double u, std::span<double> out) const { field(x, u, out); }
    Matrix jac(std::span<const double> x, double u = 0.0) const {
        Matrix j(dim, dim);
        jacobian(x, u, j);
        return j;
    }
};

// Autonomous restriction (u = 0) as a FlowField.
FlowField autonomous_field(const SystemSpec& s);
// Same with the scalar input held fixed.
FlowField field_with_input(const SystemSpec& s, double u);

// --- model zoo -------------------------------------------------------------

// Realified z' = z(1 - |z|^2): attracting unit circle of fixed points.
SystemSpec s1_radial();
// q independent radial factors; attracting torus at unit radii.
SystemSpec torus_system(std::size_t q);
// x' = x(1 - |x|^2) on R^n under SO(n); attracting sphere S^{n-1}.
SystemSpec sphere_system(std::size_t n);
// Realified z' = z(1 - |z|^2) on C^m under U(m).
SystemSpec complex_sphere_system(std::size_t m);
// Direct sum of two autonomous systems with the product group action.
SystemSpec product_system(const SystemSpec& a, const SystemSpec& b);
// z' = (i w + 1 - |z|^2) z: attracting circle traversed at angular speed w = 1.
SystemSpec relative_equilibrium();
// z' = -z, y' = -y + |z|^2: trajectories collapse to the origin where the
// circle orbit degenerates.
SystemSpec collapse_system();

struct CoupledIrrepParams {
    // z' = (a0 + a1 I1 + a2 I2 + a3 h) z + a4 conj(z) w
    // w' = (b0 + b1 I1 + b2 I2 + b3 h) w + b4 z^2
    // h' = c0 + c1 I1 + c2 I2 + c3 h - c4 h^3,  I1 = |z|^2, I2 = |w|^2
    double a0, a1, a2, a3, a4;
    double b0, b1, b2, b3, b4;
    double c0, c1, c2, c3, c4;
};
CoupledIrrepParams coupled_irrep_default_params();

// Weighted-S^1 equivariant branch on (z, w, h) in R^5 with charges (1, 2, 0).
// Default parameters pass the orbit-existence check (attracting circle of
// fixed points with z, w, h all nonzero); others throw ParameterRejected.
SystemSpec coupled_irrep_rnn(const CoupledIrrepParams& params = coupled_irrep_default_params());

// Input-driven z' = (1 - |z|^2) z + u J z; exact = false adds cfg breaking.
SystemSpec controlled_path_integrator(bool exact, std::optional<BreakingConfig> cfg = std::nullopt);

// Ring network x' = -x + W tanh(x) with circulant W (local excitation, broad
// inhibition at fixed angular widths). Exact integer-roll symmetry only.
SystemSpec circulant_grid(std::size_t n);

// Fourier-interpolation shift by a fractional number of bins.
Vec fourier_shift(std::span<const double> x, double offset_bins);
// Integer roll, x[i] -> x[(i + shift) mod n].
Vec roll(std::span<const double> x, long shift);

// Adds the configured perturbation to the z-block of an autonomous system
// with a circle factor on coordinates (0, 1). epsilon = 0 returns the field
// unchanged. Throws NoCircleFactor when no generator rotates that pair.
SystemSpec apply_breaking(const SystemSpec& s, const BreakingConfig& cfg);

// The breaking term alone (unit epsilon) on the z-block of a d-dimensional
// state; used by the perturbative gap prediction.
struct BreakingTerm {
    std::function<void(std::span<const double> x, std::span<double> out)> field;
    std::function<void(std::span<const double> x, Matrix& jac)> jacobian;
};
BreakingTerm breaking_term(const BreakingConfig& cfg, std::size_t dim);
// Family presets: effective epsilon scale and axis rotation offset.
double breaking_epsilon_scale(BreakingFamily f);
double breaking_rotation_offset_deg(BreakingFamily f);

// Integrates from the documented seed until the settling residual is below
// 1e-10 (||f|| for fixed-point kinds, radial speed for relative equilibria).
// The budget covers weakly pinned broken fields, which settle at rate ~eps.
Vec find_orbit_point(const SystemSpec& s, double budget_time = 5000.0, double dt = 1e-2);

} // namespace sympro
