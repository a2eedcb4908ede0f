#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sympro/breaking.hpp"
#include "sympro/diagnostics.hpp"
#include "sympro/integrate.hpp"
#include "sympro/linalg.hpp"
#include "sympro/pathint.hpp"
#include "sympro/systems.hpp"

using namespace sympro;

TEST_CASE("equivariance_error: exact circle, trivial group, broken control") {
    CHECK(equivariance_error(s1_radial(), 200, 1) <= 1e-13);

    SystemSpec trivial = s1_radial();
    trivial.group.generators.clear(); // identity-only action
    CHECK(equivariance_error(trivial, 50, 1) == 0.0);

    BreakingConfig cfg;
    cfg.family = BreakingFamily::phase_pinning;
    cfg.epsilon = 0.01;
    const double broken = equivariance_error(apply_breaking(coupled_irrep_rnn(), cfg), 200, 1);
    CHECK(broken >= 1e-3);
    CHECK(broken <= 1e-1);
}

TEST_CASE("equivariance error tracks the breaking scale from above") {
    const SystemSpec base = s1_radial();
    for (double eps : {2e-3, 1e-2, 1e-1}) {
        BreakingConfig cfg;
        cfg.family = BreakingFamily::phase_pinning;
        cfg.epsilon = eps;
        const double err = equivariance_error(apply_breaking(base, cfg), 200, 9);
        CHECK(err >= eps / 10.0);
    }
}

TEST_CASE("tangent_covariance_angle: tiny on exact families, degenerate without orbit") {
    const SystemSpec s1 = s1_radial();
    CHECK(tangent_covariance_angle(s1, find_orbit_point(s1), 100.0, 1e-2) <= 1e-4);

    const SystemSpec t2 = torus_system(2);
    CHECK(tangent_covariance_angle(t2, find_orbit_point(t2), 100.0, 1e-2) <= 1e-4);

    // deep in the collapse the orbit scale has decayed past the tangent floor
    const SystemSpec col = collapse_system();
    const Vec near_origin = integrate_to(autonomous_field(col), col.seed_state, 40.0, 1e-2);
    CHECK_THROWS_AS((void)tangent_covariance_angle(col, near_origin, 10.0, 1e-2),
                    DegenerateTangent);
}

TEST_CASE("tangent_covariance_angle on a broken system is reported, not protected") {
    BreakingConfig cfg;
    cfg.family = BreakingFamily::phase_pinning;
    cfg.epsilon = 0.1;
    const SystemSpec broken = apply_breaking(s1_radial(), cfg);
    const double angle = tangent_covariance_angle(broken, Vec{0.0, 1.0}, 100.0, 1e-2);
    CHECK(angle >= 0.0);
    CHECK(angle <= 90.0);
}

TEST_CASE("neutral_alignment: protected blocks align with the analytic tangents") {
    const SystemSpec s1 = s1_radial();
    const Vec x1 = find_orbit_point(s1);
    const LyapunovReport rep1 = benettin_spectrum(s1, x1, 2, 200.0, 1e-2, 10, 1e-4, 50.0);
    const auto angles1 = neutral_alignment(s1, rep1, rep1.final_state);
    REQUIRE(angles1.size() == 1);
    CHECK(angles1[0] <= 0.1);

    const SystemSpec s3 = sphere_system(3);
    const Vec x3 = find_orbit_point(s3);
    const LyapunovReport rep3 = benettin_spectrum(s3, x3, 3, 200.0, 1e-2, 10, 1e-4, 50.0);
    const auto angles3 = neutral_alignment(s3, rep3, rep3.final_state);
    REQUIRE(angles3.size() == 2);
    CHECK(angles3.back() <= 0.5);
}

TEST_CASE("neutral_alignment: deliberately mismatched subspaces sit near 90 degrees") {
    // group tangent at (1, 0) is e2; the transverse (radial) direction is e1
    Matrix radial(2, 1);
    radial(0, 0) = 1.0;
    const Matrix tangent = orthonormal_basis(action_matrix(s1_radial().group, Vec{1.0, 0.0}));
    CHECK(principal_angles_deg(radial, tangent)[0] == doctest::Approx(90.0).epsilon(1e-9));
}

TEST_CASE("neutral_alignment: empty band raises") {
    const SystemSpec col = collapse_system();
    const LyapunovReport rep = benettin_spectrum(col, col.seed_state, 3, 100.0, 1e-2, 10, 1e-4, 20.0);
    CHECK(rep.near_zero_count == 0);
    CHECK_THROWS_AS((void)neutral_alignment(col, rep, rep.final_state), EmptyNeutralSubspace);
}

TEST_CASE("alignment improves (or holds) as the averaging horizon grows") {
    const SystemSpec s = s1_radial();
    const Vec x0 = find_orbit_point(s);
    auto angle_at = [&](double T) {
        const LyapunovReport rep = benettin_spectrum(s, x0, 2, T, 1e-2, 10, 1e-4, 50.0);
        return neutral_alignment(s, rep, rep.final_state).back();
    };
    const double short_T = angle_at(50.0);
    const double long_T = angle_at(400.0);
    CHECK(long_T <= 1.2 * short_T + 1e-12); // non-strict within 20% noise
}

TEST_CASE("flow_zero_diagnostic: the five tabulated classifications") {
    auto status = [](const SystemSpec& s, const Vec& x) {
        return flow_zero_diagnostic(s, x, 1e-8);
    };
    {
        const SystemSpec s = s1_radial();
        const FlowZero fz = status(s, find_orbit_point(s));
        CHECK(fz.fixed_point);
        CHECK(fz.rank_eg == 1);
        CHECK(fz.rank_f_union_eg == 1);
    }
    {
        const SystemSpec s = torus_system(2);
        const FlowZero fz = status(s, find_orbit_point(s));
        CHECK(fz.fixed_point);
        CHECK(fz.rank_eg == 2);
        CHECK(fz.rank_f_union_eg == 2);
    }
    {
        const SystemSpec s = coupled_irrep_rnn();
        const FlowZero fz = status(s, find_orbit_point(s));
        CHECK(fz.fixed_point);
        CHECK(fz.rank_eg == 1);
        CHECK(fz.rank_f_union_eg == 1);
    }
    {
        const SystemSpec s = relative_equilibrium();
        const FlowZero fz = status(s, find_orbit_point(s));
        CHECK(!fz.fixed_point);
        CHECK(fz.rank_eg == 1);
        CHECK(fz.rank_f_union_eg == 1); // f lies inside the group tangent
    }
    {
        const SystemSpec s = product_system(s1_radial(), sphere_system(3));
        const FlowZero fz = status(s, find_orbit_point(s));
        CHECK(fz.fixed_point);
        CHECK(fz.rank_eg == 3);
        CHECK(fz.rank_f_union_eg == 3);
    }
    {
        const SystemSpec s = collapse_system();
        const FlowZero fz = status(s, s.seed_state); // off-origin
        CHECK(!fz.fixed_point);
        CHECK(fz.rank_eg == 1);
        CHECK(fz.rank_f_union_eg == 2);
    }
}

TEST_CASE("full_report: torus composite pattern") {
    DiagSettings cfg;
    cfg.seed = 13;
    const DiagnosticsReport rep = full_report(torus_system(2), cfg);
    CHECK(rep.equivariance_error <= 1e-11);
    CHECK(rep.spectrum.near_zero_count == 2);
    REQUIRE(rep.tangent_covariance_angle_deg.has_value());
    CHECK(*rep.tangent_covariance_angle_deg <= 1e-3);
    REQUIRE(!rep.neutral_principal_angles_deg.empty());
    CHECK(rep.neutral_principal_angles_deg.back() <= 0.5);
    CHECK(rep.flow_zero.fixed_point);
    CHECK(rep.orbit.orbit_rank == 2);
    CHECK(!rep.orbit.constant_rank_violation);
}

TEST_CASE("full_report: the collapse control is flagged, not asserted") {
    DiagSettings cfg;
    cfg.seed = 13;
    const DiagnosticsReport rep = full_report(collapse_system(), cfg);
    CHECK(rep.flow_zero.rank_eg == 1);
    CHECK(rep.flow_zero.rank_f_union_eg == 2);
    CHECK(rep.orbit.uniform_lower <= 1e-6);
    CHECK(!rep.note.empty());
    CHECK(rep.spectrum.near_zero_count == 0);
}

TEST_CASE("full_report: broken coupled branch reports the violation scale") {
    BreakingConfig bc;
    bc.family = BreakingFamily::phase_pinning;
    bc.epsilon = 0.01;
    DiagSettings cfg;
    cfg.seed = 13;
    const DiagnosticsReport rep = full_report(apply_breaking(coupled_irrep_rnn(), bc), cfg);
    CHECK(rep.equivariance_error >= 1e-3);
}
