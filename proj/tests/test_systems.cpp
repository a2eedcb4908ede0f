#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "sympro/diagnostics.hpp"
#include "sympro/integrate.hpp"
#include "sympro/linalg.hpp"
#include "sympro/rng.hpp"
#include "sympro/systems.hpp"

using namespace sympro;

namespace {

Vec eval(const SystemSpec& s, const Vec& x, double u = 0.0) {
    Vec out(s.dim);
    s.field(x, u, out);
    return out;
}

std::vector<SystemSpec> autonomous_zoo() {
    std::vector<SystemSpec> zoo;
    zoo.push_back(s1_radial());
    zoo.push_back(torus_system(2));
    zoo.push_back(torus_system(4));
    zoo.push_back(sphere_system(3));
    zoo.push_back(sphere_system(5));
    zoo.push_back(complex_sphere_system(2));
    zoo.push_back(product_system(s1_radial(), sphere_system(3)));
    zoo.push_back(coupled_irrep_rnn());
    zoo.push_back(relative_equilibrium());
    zoo.push_back(collapse_system());
    return zoo;
}

} // namespace

TEST_CASE("s1_radial: fixed point on the circle, interior drift, symmetry") {
    const SystemSpec s = s1_radial();
    CHECK(vec_norm(eval(s, Vec{1.0, 0.0})) == 0.0);
    const Vec f = eval(s, Vec{0.5, 0.0});
    CHECK(f[0] == doctest::Approx(0.375));
    CHECK(f[1] == 0.0);
    CHECK(equivariance_error(s, 64, 2024) <= 1e-13);
}

TEST_CASE("every system Jacobian matches central differences") {
    Rng rng(61);
    auto zoo = autonomous_zoo();
    zoo.push_back(controlled_path_integrator(true));
    zoo.push_back(circulant_grid(16));
    for (const SystemSpec& s : zoo) {
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            Vec x(s.dim);
            for (double& v : x) v = rng.uniform(-1.2, 1.2);
            worst = std::max(worst, max_abs(s.jac(x) - jacobian_fd(autonomous_field(s), x, 1e-5)));
        }
        INFO(s.name);
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("exact zoo satisfies the equivariance identity") {
    Rng rng(67);
    for (const SystemSpec& s : autonomous_zoo()) {
        if (s.group.algebra_dim() == 0) continue;
        double worst = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            Vec x(s.dim), xi(s.group.algebra_dim());
            for (double& v : x) v = rng.uniform(-1.2, 1.2);
            for (double& v : xi) v = rng.uniform(-std::numbers::pi, std::numbers::pi);
            const Matrix g = group_element(s.group, xi);
            const Vec fx = eval(s, x);
            const Vec err = vec_sub(eval(s, g * x), g * fx);
            worst = std::max(worst, vec_norm(err) / (1.0 + vec_norm(fx)));
        }
        INFO(s.name);
        CHECK(worst <= 1e-11);
    }
}

TEST_CASE("torus_system: q = 1 reduces to the circle system") {
    const SystemSpec t1 = torus_system(1);
    const SystemSpec s1 = s1_radial();
    Rng rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        const Vec x = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
        CHECK(vec_dist(eval(t1, x), eval(s1, x)) == 0.0);
    }
}

TEST_CASE("sphere and complex-sphere low-dimensional cases reduce to the circle") {
    const SystemSpec s2 = sphere_system(2);
    const SystemSpec cm1 = complex_sphere_system(1);
    const SystemSpec s1 = s1_radial();
    const Vec x = {0.4, -0.3};
    CHECK(vec_dist(eval(s2, x), eval(s1, x)) == 0.0);
    CHECK(vec_dist(eval(cm1, x), eval(s1, x)) == 0.0);
    CHECK(cm1.group.expected_orbit_dim == 1);
    CHECK(sphere_system(5).group.expected_orbit_dim == 4);
    CHECK(complex_sphere_system(3).group.expected_orbit_dim == 5);
}

TEST_CASE("relative equilibrium: flow is nonzero and tangent to the orbit") {
    const SystemSpec s = relative_equilibrium();
    const Vec x = find_orbit_point(s);
    CHECK(std::abs(vec_norm(x) - 1.0) <= 1e-9);
    const Vec f = eval(s, x);
    CHECK(vec_norm(f) > 0.5); // angular speed 1 at radius 1
    const FlowZero fz = flow_zero_diagnostic(s, x, 1e-8);
    CHECK(fz.rank_eg == 1);
    CHECK(fz.rank_f_union_eg == 1);
    CHECK(!fz.fixed_point);
    CHECK(equivariance_error(s, 100, 3) <= 1e-13);
}

TEST_CASE("collapse system: orbit degenerates at the origin") {
    const SystemSpec s = collapse_system();
    const Vec settled = find_orbit_point(s);
    CHECK(vec_norm(settled) <= 1e-8);
    const FlowZero off_origin = flow_zero_diagnostic(s, s.seed_state, 1e-8);
    CHECK(off_origin.rank_eg == 1);
    CHECK(off_origin.rank_f_union_eg == 2);
    // the z-subaction is equivariant; failure is nondegeneracy, not symmetry
    CHECK(equivariance_error(s, 100, 5) <= 1e-11);
}

TEST_CASE("coupled irrep branch: documented defaults give a nondegenerate orbit") {
    const SystemSpec s = coupled_irrep_rnn();
    const Vec orbit = find_orbit_point(s);
    CHECK(vec_norm(eval(s, orbit)) <= 1e-10);
    CHECK(std::hypot(orbit[0], orbit[1]) > 0.05);
    CHECK(std::hypot(orbit[2], orbit[3]) > 0.05);
    CHECK(std::abs(orbit[4]) > 0.05);
    CHECK(numerical_rank(action_matrix(s.group, orbit), 1e-8) == 1);
    CHECK(equivariance_error(s, 128, 11) <= 1e-13);
}

TEST_CASE("coupled irrep branch: unstable parameters are rejected") {
    CoupledIrrepParams bad = coupled_irrep_default_params();
    bad.a0 = -1.0; // z decays to zero, no nonzero orbit
    bad.a4 = 0.0;
    CHECK_THROWS_AS((void)coupled_irrep_rnn(bad), ParameterRejected);
}

TEST_CASE("apply_breaking: epsilon = 0 reproduces the field bit-for-bit") {
    const SystemSpec base = s1_radial();
    BreakingConfig cfg;
    cfg.family = BreakingFamily::phase_pinning;
    cfg.epsilon = 0.0;
    const SystemSpec same = apply_breaking(base, cfg);
    CHECK(same.breaking.has_value());
    Rng rng(83);
    for (int trial = 0; trial < 100; ++trial) {
        const Vec x = {rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const Vec a = eval(base, x);
        const Vec b = eval(same, x);
        CHECK(a[0] == b[0]);
        CHECK(a[1] == b[1]);
    }
}

TEST_CASE("apply_breaking: pinning breaks equivariance at the epsilon scale") {
    const SystemSpec base = s1_radial();
    BreakingConfig cfg;
    cfg.family = BreakingFamily::phase_pinning;
    cfg.epsilon = 0.01;
    const SystemSpec broken = apply_breaking(base, cfg);
    const double err = equivariance_error(broken, 200, 7);
    CHECK(err >= 1e-3);
    CHECK(err <= 5e-2);

    BreakingConfig strong = cfg;
    strong.epsilon = 0.1;
    CHECK(equivariance_error(apply_breaking(base, strong), 200, 7) >= 0.1 / 10.0);
}

TEST_CASE("apply_breaking: coupled-irrep control lands at the documented error scale") {
    BreakingConfig cfg;
    cfg.family = BreakingFamily::phase_pinning;
    cfg.epsilon = 0.01;
    const double err = equivariance_error(apply_breaking(coupled_irrep_rnn(), cfg), 200, 7);
    CHECK(err >= 5e-3);
    CHECK(err <= 5e-2);
}

TEST_CASE("apply_breaking: requires a circle factor on the pinned pair") {
    SystemSpec contraction;
    contraction.name = "contraction";
    contraction.dim = 2;
    contraction.kind = SystemKind::fixed_point_orbit;
    contraction.group = circle_rep({0}, 0); // trivial action
    contraction.field = [](std::span<const double> x, double, std::span<double> out) {
        out[0] = -x[0];
        out[1] = -x[1];
    };
    contraction.jacobian = [](std::span<const double>, double, Matrix& j) {
        j = Matrix::identity(2);
        j(0, 0) = j(1, 1) = -1.0;
    };
    contraction.seed_state = {0.1, 0.1};
    BreakingConfig cfg;
    cfg.epsilon = 0.05;
    CHECK_THROWS_AS((void)apply_breaking(contraction, cfg), NoCircleFactor);
}

TEST_CASE("controlled path integrator: constant input advances the phase linearly") {
    const SystemSpec model = controlled_path_integrator(true);
    const double omega = 0.7, T = 10.0, dt = 0.01;
    Vec x = {1.0, 0.0};
    Rk4 ws(2);
    for (double t = 0.0; t < T - 1e-12; t += dt) ws.step(field_with_input(model, omega), x, dt, t);
    const double phase = std::atan2(x[1], x[0]);
    const double expected = std::remainder(omega * T, 2.0 * std::numbers::pi);
    CHECK(std::abs(std::remainder(phase - expected, 2.0 * std::numbers::pi)) <= 1e-6);
    CHECK(std::abs(vec_norm(x) - 1.0) <= 1e-9);
}

TEST_CASE("controlled path integrator: step equivariance per input") {
    const SystemSpec model = controlled_path_integrator(true);
    Rng rng(89);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const double u = rng.uniform(-2.0, 2.0);
        const double angle = rng.uniform(-std::numbers::pi, std::numbers::pi);
        const Matrix g = group_element(model.group, Vec{angle});
        Vec x = {rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2)};
        const Vec lhs = rk4_step(field_with_input(model, u), g * x, 0.05);
        const Vec rhs_inner = rk4_step(field_with_input(model, u), x, 0.05);
        worst = std::max(worst, vec_dist(lhs, g * rhs_inner));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("circulant grid: rolls commute exactly, Fourier shifts do not") {
    const SystemSpec grid = circulant_grid(32);
    const Vec settled = integrate_to(autonomous_field(grid), grid.seed_state, 30.0, 1e-2);
    const Vec stepped = rk4_step(autonomous_field(grid), settled, 0.5);

    const Vec rolled_then_stepped = rk4_step(autonomous_field(grid), roll(settled, 5), 0.5);
    CHECK(vec_dist(rolled_then_stepped, roll(stepped, 5)) / (1.0 + vec_norm(stepped)) <= 1e-12);

    const Vec shifted_then_stepped = rk4_step(autonomous_field(grid), fourier_shift(settled, 0.5), 0.5);
    const double err = vec_dist(shifted_then_stepped, fourier_shift(stepped, 0.5)) /
                       (1.0 + vec_norm(stepped));
    CHECK(err >= 1e-2);
}

TEST_CASE("fourier_shift: integer offsets reduce to rolls") {
    Rng rng(97);
    Vec x(24);
    for (double& v : x) v = rng.uniform(-1.0, 1.0);
    CHECK(vec_dist(fourier_shift(x, 3.0), roll(x, 3)) <= 1e-10);
    CHECK(vec_dist(fourier_shift(x, 0.0), x) <= 1e-10);
}

TEST_CASE("find_orbit_point: circle, coupled branch, collapse, budget error") {
    const Vec on_circle = find_orbit_point(s1_radial());
    CHECK(std::abs(vec_norm(on_circle) - 1.0) <= 1e-10);

    const SystemSpec coupled = coupled_irrep_rnn();
    Vec f(coupled.dim);
    coupled.field(find_orbit_point(coupled, 500.0), 0.0, f);
    CHECK(vec_norm(f) <= 1e-10);

    CHECK(vec_norm(find_orbit_point(collapse_system())) <= 1e-8);

    SystemSpec drifting = relative_equilibrium();
    drifting.kind = SystemKind::fixed_point_orbit; // ||f|| never reaches 1e-10 on this orbit
    CHECK_THROWS_AS((void)find_orbit_point(drifting, 30.0), NoConvergence);
}
