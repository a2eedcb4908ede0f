#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sympro/integrate.hpp"
#include "sympro/matrix.hpp"

namespace sympro {

// A Lie group acting linearly on the realified state space, given by a basis
// of algebra generator matrices. The stabilizer type enters only through the
// expected orbit dimension q = dim(G/H).
struct GroupSpec {
    std::string name;
    std::size_t dim = 0;               // state dimension d
    std::vector<Matrix> generators;    // each d x d
    std::size_t expected_orbit_dim = 0; // q

    std::size_t algebra_dim() const { return generators.size(); }
};

// Weighted S^1: one generator with blocks w_k * J on each realified complex
// coordinate and zeros on trailing invariant real coordinates.
GroupSpec circle_rep(const std::vector<int>& weights, std::size_t invariant_dims);
// T^q: q commuting J-blocks, one per coordinate pair.
GroupSpec torus_rep(std::size_t q);
// SO(n): the n(n-1)/2 elementary skew-symmetric generators E_ij - E_ji.
GroupSpec so_n_rep(std::size_t n);
// U(m) realified: the m^2 skew-Hermitian basis i*E_kk, E_jk - E_kj, i(E_jk + E_kj).
GroupSpec u_m_rep(std::size_t m);
// Block-diagonal direct sum.
GroupSpec product_rep(const GroupSpec& a, const GroupSpec& b);

// (sum_a xi_a G_a) x — the infinitesimal motion of x along algebra element xi.
Vec fundamental_field(const GroupSpec& g, std::span<const double> xi, std::span<const double> x);

// d x algebra_dim matrix whose a-th column is G_a x; its column space is the
// group-tangent space at x.
Matrix action_matrix(const GroupSpec& g, std::span<const double> x);

// exp(sum_a xi_a G_a)
Matrix group_element(const GroupSpec& g, std::span<const double> xi);

struct OrbitDiagnostics {
    std::size_t orbit_rank = 0;      // modal per-point rank along the trajectory
    double sigma_min_nonzero = 0.0;  // smallest above-threshold singular value at the final point
    double sigma_max = 0.0;          // largest singular value at the final point
    double uniform_lower = 0.0;      // min over the trajectory of the q-th singular value
    double uniform_upper = 0.0;      // max over the trajectory of the largest singular value
    bool constant_rank_violation = false;
};

// Per-point rank and uniform nondegeneracy bounds of the action map along a
// trajectory. The violation flag (not an exception) is the expected signal on
// orbit-degenerating systems.
OrbitDiagnostics orbit_diagnostics(const GroupSpec& g, const Trajectory& traj, double rank_tol);

} // namespace sympro
