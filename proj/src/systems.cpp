#include "sympro/systems.hpp"

#include <cmath>
#include <complex>
#include <memory>
#include <numbers>

#include "sympro/errors.hpp"
#include "sympro/rng.hpp"

namespace sympro {

namespace {

void ensure_shape(Matrix& m, std::size_t r, std::size_t c) {
    if (m.rows != r || m.cols != c)
        m = Matrix(r, c);
    else
        std::fill(m.data.begin(), m.data.end(), 0.0);
}

} // namespace

std::string to_string(BreakingFamily f) {
    switch (f) {
        case BreakingFamily::weak_axis: return "weak_axis";
        case BreakingFamily::unit_axis: return "unit_axis";
        case BreakingFamily::rotated_strong: return "rotated_strong";
        case BreakingFamily::random_anisotropic: return "random_anisotropic";
        case BreakingFamily::phase_pinning: return "phase_pinning";
    }
    return "phase_pinning";
}

BreakingFamily breaking_family_from_string(const std::string& s) {
    if (s == "weak_axis") return BreakingFamily::weak_axis;
    if (s == "unit_axis") return BreakingFamily::unit_axis;
    if (s == "rotated_strong") return BreakingFamily::rotated_strong;
    if (s == "random_anisotropic") return BreakingFamily::random_anisotropic;
    if (s == "phase_pinning") return BreakingFamily::phase_pinning;
    throw ConfigError("unknown breaking family '" + s + "'");
}

FlowField autonomous_field(const SystemSpec& s) {
    return [&s](std::span<const double> x, std::span<double> out) { s.field(x, 0.0, out); };
}

FlowField field_with_input(const SystemSpec& s, double u) {
    return [&s, u](std::span<const double> x, std::span<double> out) { s.field(x, u, out); };
}

// --- radial normal forms -----------------------------------------------------

namespace {

// x' = (1 - |x|^2) x on R^d; Jacobian (1 - |x|^2) I - 2 x x^T.
void radial_field(std::span<const double> x, std::span<double> out) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    const double mu = 1.0 - r2;
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = mu * x[i];
}

void radial_jacobian(std::span<const double> x, Matrix& j) {
    const std::size_t d = x.size();
    ensure_shape(j, d, d);
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    const double mu = 1.0 - r2;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < d; ++k) j(i, k) = -2.0 * x[i] * x[k];
        j(i, i) += mu;
    }
}

Vec generic_sphere_seed(std::size_t d) {
    Vec x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = 0.3 + 0.17 * static_cast<double>(i + 1);
    const double norm = vec_norm(x);
    for (double& v : x) v *= 0.6 / norm;
    return x;
}

} // namespace

SystemSpec s1_radial() {
    SystemSpec s;
    s.name = "s1_radial";
    s.dim = 2;
    s.kind = SystemKind::fixed_point_orbit;
    s.group = circle_rep({1}, 0);
    s.field = [](std::span<const double> x, double, std::span<double> out) { radial_field(x, out); };
    s.jacobian = [](std::span<const double> x, double, Matrix& j) { radial_jacobian(x, j); };
    s.seed_state = {0.3, 0.1};
    return s;
}

SystemSpec torus_system(std::size_t q) {
    if (q < 1) throw Error("torus_system: q >= 1 required");
    SystemSpec s;
    s.name = "torus_q" + std::to_string(q);
    s.dim = 2 * q;
    s.kind = SystemKind::fixed_point_orbit;
    s.group = torus_rep(q);
    s.field = [q](std::span<const double> x, double, std::span<double> out) {
        for (std::size_t k = 0; k < q; ++k) {
            const double a = x[2 * k], b = x[2 * k + 1];
            const double mu = 1.0 - (a * a + b * b);
            out[2 * k] = mu * a;
            out[2 * k + 1] = mu * b;
        }
    };
    s.jacobian = [q](std::span<const double> x, double, Matrix& j) {
        ensure_shape(j, 2 * q, 2 * q);
        for (std::size_t k = 0; k < q; ++k) {
            const double a = x[2 * k], b = x[2 * k + 1];
            const double mu = 1.0 - (a * a + b * b);
            j(2 * k, 2 * k) = mu - 2.0 * a * a;
            j(2 * k, 2 * k + 1) = -2.0 * a * b;
            j(2 * k + 1, 2 * k) = -2.0 * a * b;
            j(2 * k + 1, 2 * k + 1) = mu - 2.0 * b * b;
        }
    };
    s.seed_state.resize(2 * q);
    for (std::size_t k = 0; k < q; ++k) {
        s.seed_state[2 * k] = 0.4 + 0.05 * static_cast<double>(k);
        s.seed_state[2 * k + 1] = 0.15;
    }
    return s;
}

SystemSpec sphere_system(std::size_t n) {
    if (n < 2) throw Error("sphere_system: n >= 2 required");
    SystemSpec s;
    s.name = "sphere_n" + std::to_string(n);
    s.dim = n;
    s.kind = SystemKind::fixed_point_orbit;
    s.group = so_n_rep(n);
    s.field = [](std::span<const double> x, double, std::span<double> out) { radial_field(x, out); };
    s.jacobian = [](std::span<const double> x, double, Matrix& j) { radial_jacobian(x, j); };
    s.seed_state = generic_sphere_seed(n);
    return s;
}

SystemSpec complex_sphere_system(std::size_t m) {
    if (m < 1) throw Error("complex_sphere_system: m >= 1 required");
    SystemSpec s;
    s.name = "complex_sphere_m" + std::to_string(m);
    s.dim = 2 * m;
    s.kind = SystemKind::fixed_point_orbit;
    s.group = u_m_rep(m);
    s.field = [](std::span<const double> x, double, std::span<double> out) { radial_field(x, out); };
    s.jacobian = [](std::span<const double> x, double, Matrix& j) { radial_jacobian(x, j); };
    s.seed_state = generic_sphere_seed(2 * m);
    return s;
}

SystemSpec product_system(const SystemSpec& a, const SystemSpec& b) {
    if (a.kind == SystemKind::input_driven || b.kind == SystemKind::input_driven)
        throw Error("product_system: both factors must be autonomous");
    SystemSpec s;
    s.name = a.name + "_x_" + b.name;
    s.dim = a.dim + b.dim;
    if (a.kind == SystemKind::collapse || b.kind == SystemKind::collapse)
        s.kind = SystemKind::collapse;
    else if (a.kind == SystemKind::relative_equilibrium || b.kind == SystemKind::relative_equilibrium)
        s.kind = SystemKind::relative_equilibrium;
    else
        s.kind = SystemKind::fixed_point_orbit;
    s.group = product_rep(a.group, b.group);
    const std::size_t da = a.dim;
    auto fa = a.field, fb = b.field;
    s.field = [fa, fb, da](std::span<const double> x, double u, std::span<double> out) {
        fa(x.subspan(0, da), u, out.subspan(0, da));
        fb(x.subspan(da), u, out.subspan(da));
    };
    auto ja = a.jacobian, jb = b.jacobian;
    const std::size_t db = b.dim;
    s.jacobian = [ja, jb, da, db](std::span<const double> x, double u, Matrix& j) {
        ensure_shape(j, da + db, da + db);
        Matrix block_a(da, da), block_b(db, db);
        ja(x.subspan(0, da), u, block_a);
        jb(x.subspan(da), u, block_b);
        for (std::size_t i = 0; i < da; ++i)
            for (std::size_t k = 0; k < da; ++k) j(i, k) = block_a(i, k);
        for (std::size_t i = 0; i < db; ++i)
            for (std::size_t k = 0; k < db; ++k) j(da + i, da + k) = block_b(i, k);
    };
    s.seed_state = a.seed_state;
    s.seed_state.insert(s.seed_state.end(), b.seed_state.begin(), b.seed_state.end());
    return s;
}

SystemSpec relative_equilibrium() {
    constexpr double omega = 1.0;
    SystemSpec s;
    s.name = "relative_equilibrium";
    s.dim = 2;
    s.kind = SystemKind::relative_equilibrium;
    s.group = circle_rep({1}, 0);
    s.field = [](std::span<const double> x, double, std::span<double> out) {
        const double mu = 1.0 - (x[0] * x[0] + x[1] * x[1]);
        out[0] = mu * x[0] - omega * x[1];
        out[1] = mu * x[1] + omega * x[0];
    };
    s.jacobian = [](std::span<const double> x, double, Matrix& j) {
        ensure_shape(j, 2, 2);
        const double a = x[0], b = x[1];
        j(0, 0) = 1.0 - 3.0 * a * a - b * b;
        j(0, 1) = -2.0 * a * b - omega;
        j(1, 0) = -2.0 * a * b + omega;
        j(1, 1) = 1.0 - a * a - 3.0 * b * b;
    };
    s.seed_state = {0.3, 0.1};
    return s;
}

SystemSpec collapse_system() {
    SystemSpec s;
    s.name = "collapse";
    s.dim = 3;
    s.kind = SystemKind::collapse;
    s.group = circle_rep({1}, 1);
    s.field = [](std::span<const double> x, double, std::span<double> out) {
        out[0] = -x[0];
        out[1] = -x[1];
        out[2] = -x[2] + x[0] * x[0] + x[1] * x[1];
    };
    s.jacobian = [](std::span<const double> x, double, Matrix& j) {
        ensure_shape(j, 3, 3);
        j(0, 0) = -1.0;
        j(1, 1) = -1.0;
        j(2, 0) = 2.0 * x[0];
        j(2, 1) = 2.0 * x[1];
        j(2, 2) = -1.0;
    };
    s.seed_state = {1.0, 0.0, 0.3};
    return s;
}

// --- coupled irreducible-representation branch -------------------------------

CoupledIrrepParams coupled_irrep_default_params() {
    // Selected by the documented orbit search: attracting circle of fixed
    // points with |z|, |w|, |h| all nonzero and transverse rates <= -0.05.
    CoupledIrrepParams p{};
    p.a0 = 0.8;  p.a1 = -1.0; p.a2 = -0.5; p.a3 = 0.3;  p.a4 = 0.25;
    p.b0 = 0.5;  p.b1 = -0.4; p.b2 = -1.0; p.b3 = 0.2;  p.b4 = 0.3;
    p.c0 = 0.3;  p.c1 = 0.2;  p.c2 = 0.1;  p.c3 = -1.0; p.c4 = 0.5;
    return p;
}

SystemSpec coupled_irrep_rnn(const CoupledIrrepParams& p) {
    SystemSpec s;
    s.name = "coupled_irrep";
    s.dim = 5;
    s.kind = SystemKind::fixed_point_orbit;
    s.group = circle_rep({1, 2}, 1);
    s.field = [p](std::span<const double> x, double, std::span<double> out) {
        const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3], h = x[4];
        const double i1 = x1 * x1 + x2 * x2;
        const double i2 = x3 * x3 + x4 * x4;
        const double mz = p.a0 + p.a1 * i1 + p.a2 * i2 + p.a3 * h;
        const double mw = p.b0 + p.b1 * i1 + p.b2 * i2 + p.b3 * h;
        out[0] = mz * x1 + p.a4 * (x1 * x3 + x2 * x4);
        out[1] = mz * x2 + p.a4 * (x1 * x4 - x2 * x3);
        out[2] = mw * x3 + p.b4 * (x1 * x1 - x2 * x2);
        out[3] = mw * x4 + p.b4 * 2.0 * x1 * x2;
        out[4] = p.c0 + p.c1 * i1 + p.c2 * i2 + p.c3 * h - p.c4 * h * h * h;
    };
    s.jacobian = [p](std::span<const double> x, double, Matrix& j) {
        ensure_shape(j, 5, 5);
        const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3], h = x[4];
        const double i1 = x1 * x1 + x2 * x2;
        const double i2 = x3 * x3 + x4 * x4;
        const double mz = p.a0 + p.a1 * i1 + p.a2 * i2 + p.a3 * h;
        const double mw = p.b0 + p.b1 * i1 + p.b2 * i2 + p.b3 * h;
        j(0, 0) = mz + 2.0 * p.a1 * x1 * x1 + p.a4 * x3;
        j(0, 1) = 2.0 * p.a1 * x1 * x2 + p.a4 * x4;
        j(0, 2) = 2.0 * p.a2 * x1 * x3 + p.a4 * x1;
        j(0, 3) = 2.0 * p.a2 * x1 * x4 + p.a4 * x2;
        j(0, 4) = p.a3 * x1;
        j(1, 0) = 2.0 * p.a1 * x1 * x2 + p.a4 * x4;
        j(1, 1) = mz + 2.0 * p.a1 * x2 * x2 - p.a4 * x3;
        j(1, 2) = 2.0 * p.a2 * x2 * x3 - p.a4 * x2;
        j(1, 3) = 2.0 * p.a2 * x2 * x4 + p.a4 * x1;
        j(1, 4) = p.a3 * x2;
        j(2, 0) = 2.0 * p.b1 * x1 * x3 + 2.0 * p.b4 * x1;
        j(2, 1) = 2.0 * p.b1 * x2 * x3 - 2.0 * p.b4 * x2;
        j(2, 2) = mw + 2.0 * p.b2 * x3 * x3;
        j(2, 3) = 2.0 * p.b2 * x3 * x4;
        j(2, 4) = p.b3 * x3;
        j(3, 0) = 2.0 * p.b1 * x1 * x4 + 2.0 * p.b4 * x2;
        j(3, 1) = 2.0 * p.b1 * x2 * x4 + 2.0 * p.b4 * x1;
        j(3, 2) = 2.0 * p.b2 * x3 * x4;
        j(3, 3) = mw + 2.0 * p.b2 * x4 * x4;
        j(3, 4) = p.b3 * x4;
        j(4, 0) = 2.0 * p.c1 * x1;
        j(4, 1) = 2.0 * p.c1 * x2;
        j(4, 2) = 2.0 * p.c2 * x3;
        j(4, 3) = 2.0 * p.c2 * x4;
        j(4, 4) = p.c3 - 3.0 * p.c4 * h * h;
    };
    s.seed_state = {0.6, 0.1, 0.4, 0.05, 0.2};

    // orbit-existence check: the default branch must settle on a circle of
    // fixed points with all three components away from zero
    const Vec orbit = find_orbit_point(s, 800.0);
    const double rz = std::hypot(orbit[0], orbit[1]);
    const double rw = std::hypot(orbit[2], orbit[3]);
    const double rh = std::abs(orbit[4]);
    if (rz < 0.05 || rw < 0.05 || rh < 0.05)
        throw ParameterRejected("coupled_irrep_rnn: settled orbit has a vanishing component (|z|=" +
                                std::to_string(rz) + ", |w|=" + std::to_string(rw) + ", |h|=" +
                                std::to_string(rh) + ")");
    return s;
}

// --- controlled path integrator ----------------------------------------------

SystemSpec controlled_path_integrator(bool exact, std::optional<BreakingConfig> cfg) {
    SystemSpec s;
    s.name = exact ? "path_integrator_exact" : "path_integrator_broken";
    s.dim = 2;
    s.kind = SystemKind::input_driven;
    s.group = circle_rep({1}, 0);
    s.field = [](std::span<const double> x, double u, std::span<double> out) {
        const double mu = 1.0 - (x[0] * x[0] + x[1] * x[1]);
        out[0] = mu * x[0] - u * x[1];
        out[1] = mu * x[1] + u * x[0];
    };
    s.jacobian = [](std::span<const double> x, double u, Matrix& j) {
        ensure_shape(j, 2, 2);
        const double a = x[0], b = x[1];
        j(0, 0) = 1.0 - 3.0 * a * a - b * b;
        j(0, 1) = -2.0 * a * b - u;
        j(1, 0) = -2.0 * a * b + u;
        j(1, 1) = 1.0 - a * a - 3.0 * b * b;
    };
    s.seed_state = {1.0, 0.0};

    if (!exact) {
        if (!cfg || cfg->epsilon == 0.0)
            throw Error("controlled_path_integrator: broken construction needs a breaking config");
        const BreakingTerm term = breaking_term(*cfg, 2);
        const double eps = cfg->epsilon * breaking_epsilon_scale(cfg->family);
        auto base_field = s.field;
        s.field = [base_field, term, eps](std::span<const double> x, double u, std::span<double> out) {
            base_field(x, u, out);
            Vec extra(x.size(), 0.0);
            term.field(x, extra);
            for (std::size_t i = 0; i < x.size(); ++i) out[i] += eps * extra[i];
        };
        auto base_jac = s.jacobian;
        s.jacobian = [base_jac, term, eps](std::span<const double> x, double u, Matrix& j) {
            base_jac(x, u, j);
            Matrix extra(j.rows, j.cols);
            term.jacobian(x, extra);
            for (std::size_t i = 0; i < j.data.size(); ++i) j.data[i] += eps * extra.data[i];
        };
        s.breaking = cfg;
    }
    return s;
}

// --- circulant ring grid -----------------------------------------------------

namespace {

// Difference-of-Gaussians ring kernel at fixed angular widths; the 2*pi/N
// weight keeps the recurrent drive N-independent.
Matrix circulant_weights(std::size_t n) {
    constexpr double excite_amp = 4.0, excite_width = 0.22;
    constexpr double inhibit_amp = 2.0, inhibit_width = 0.9;
    constexpr double gain = 3.0;
    const double bin = 2.0 * std::numbers::pi / static_cast<double>(n);
    Matrix w(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const auto raw = static_cast<double>(i > j ? i - j : j - i);
            const double wrapped = std::min(raw, static_cast<double>(n) - raw);
            const double theta = wrapped * bin;
            const double k = excite_amp * std::exp(-theta * theta / (2.0 * excite_width * excite_width)) -
                             inhibit_amp * std::exp(-theta * theta / (2.0 * inhibit_width * inhibit_width));
            w(i, j) = gain * bin * k;
        }
    }
    return w;
}

} // namespace

SystemSpec circulant_grid(std::size_t n) {
    if (n < 4) throw Error("circulant_grid: N >= 4 required");
    SystemSpec s;
    s.name = "circulant_grid_n" + std::to_string(n);
    s.dim = n;
    s.kind = SystemKind::discrete_map;
    // exact symmetry is the discrete roll group C_N; no continuous generators
    s.group.name = "C" + std::to_string(n);
    s.group.dim = n;
    s.group.expected_orbit_dim = 0;
    auto weights = std::make_shared<Matrix>(circulant_weights(n));
    s.field = [weights, n](std::span<const double> x, double, std::span<double> out) {
        Vec act(n);
        for (std::size_t i = 0; i < n; ++i) act[i] = std::tanh(x[i]);
        const Vec drive = *weights * act;
        for (std::size_t i = 0; i < n; ++i) out[i] = -x[i] + drive[i];
    };
    s.jacobian = [weights, n](std::span<const double> x, double, Matrix& j) {
        ensure_shape(j, n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                const double th = std::tanh(x[k]);
                j(i, k) = (*weights)(i, k) * (1.0 - th * th);
            }
            j(i, i) -= 1.0;
        }
    };
    // documented seed: a bump one radian wide at bin N/4
    s.seed_state.resize(n);
    const double bin = 2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        double dth = (static_cast<double>(i) - static_cast<double>(n) / 4.0) * bin;
        dth = std::remainder(dth, 2.0 * std::numbers::pi);
        s.seed_state[i] = 1.5 * std::exp(-dth * dth / (2.0 * 0.5 * 0.5));
    }
    return s;
}

Vec roll(std::span<const double> x, long shift) {
    const long n = static_cast<long>(x.size());
    Vec out(x.size());
    for (long i = 0; i < n; ++i) {
        long src = (i - shift) % n;
        if (src < 0) src += n;
        out[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(src)];
    }
    return out;
}

Vec fourier_shift(std::span<const double> x, double offset_bins) {
    const std::size_t n = x.size();
    const double two_pi = 2.0 * std::numbers::pi;
    // real DFT coefficients
    const std::size_t half = n / 2;
    std::vector<double> re(half + 1, 0.0), im(half + 1, 0.0);
    for (std::size_t k = 0; k <= half; ++k) {
        for (std::size_t t = 0; t < n; ++t) {
            const double a = two_pi * static_cast<double>(k) * static_cast<double>(t) / static_cast<double>(n);
            re[k] += x[t] * std::cos(a);
            im[k] -= x[t] * std::sin(a);
        }
    }
    // trigonometric interpolant evaluated at t - offset
    Vec out(n, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        const double pos = static_cast<double>(t) - offset_bins;
        double acc = re[0];
        const std::size_t kmax = (n % 2 == 0) ? half - 1 : half;
        for (std::size_t k = 1; k <= kmax; ++k) {
            const double a = two_pi * static_cast<double>(k) * pos / static_cast<double>(n);
            acc += 2.0 * (re[k] * std::cos(a) - im[k] * std::sin(a));
        }
        if (n % 2 == 0) acc += re[half] * std::cos(std::numbers::pi * pos);
        out[t] = acc / static_cast<double>(n);
    }
    return out;
}

// --- breaking ----------------------------------------------------------------

double breaking_epsilon_scale(BreakingFamily f) {
    switch (f) {
        case BreakingFamily::weak_axis: return 0.5;
        case BreakingFamily::rotated_strong: return 2.0;
        default: return 1.0;
    }
}

double breaking_rotation_offset_deg(BreakingFamily f) {
    return f == BreakingFamily::rotated_strong ? 30.0 : 0.0;
}

BreakingTerm breaking_term(const BreakingConfig& cfg, std::size_t dim) {
    if (dim < 2) throw Error("breaking_term: state dimension must hold a realified pair");
    BreakingTerm term;
    if (cfg.family == BreakingFamily::random_anisotropic) {
        Rng rng = Rng::stream(cfg.seed, "anisotropic");
        const double s11 = rng.normal();
        const double s12 = rng.normal();
        const double s22 = rng.normal();
        term.field = [s11, s12, s22](std::span<const double> x, std::span<double> out) {
            out[0] = s11 * x[0] + s12 * x[1];
            out[1] = s12 * x[0] + s22 * x[1];
        };
        term.jacobian = [s11, s12, s22](std::span<const double>, Matrix& j) {
            j(0, 0) = s11;
            j(0, 1) = s12;
            j(1, 0) = s12;
            j(1, 1) = s22;
        };
        return term;
    }
    // resonant pinning of order k: conj(z)^(k-1) * exp(i k rho) on the z pair
    const int k = cfg.pin_order;
    if (k < 1) throw Error("breaking_term: pin_order >= 1 required");
    const double rho = (cfg.rotation_deg + breaking_rotation_offset_deg(cfg.family)) *
                       std::numbers::pi / 180.0;
    const std::complex<double> phase = std::polar(1.0, static_cast<double>(k) * rho);
    term.field = [k, phase](std::span<const double> x, std::span<double> out) {
        const std::complex<double> zbar(x[0], -x[1]);
        std::complex<double> p = phase;
        for (int i = 0; i < k - 1; ++i) p *= zbar;
        out[0] = p.real();
        out[1] = p.imag();
    };
    term.jacobian = [k, phase](std::span<const double> x, Matrix& j) {
        if (k == 1) return; // constant term
        const std::complex<double> zbar(x[0], -x[1]);
        std::complex<double> c = static_cast<double>(k - 1) * phase;
        for (int i = 0; i < k - 2; ++i) c *= zbar;
        // conjugate-linear block for d(term)/d(zbar) = c
        j(0, 0) = c.real();
        j(0, 1) = c.imag();
        j(1, 0) = c.imag();
        j(1, 1) = -c.real();
    };
    return term;
}

SystemSpec apply_breaking(const SystemSpec& s, const BreakingConfig& cfg) {
    if (s.kind == SystemKind::input_driven)
        throw Error("apply_breaking: input-driven systems configure breaking at construction");
    // the pinned pair is (0, 1); require some generator acting as a J-block there
    bool has_circle = false;
    for (const Matrix& g : s.group.generators) {
        if (g.rows >= 2 && g(1, 0) != 0.0 && std::abs(g(0, 1) + g(1, 0)) <= 1e-12 * std::abs(g(1, 0))) {
            has_circle = true;
            break;
        }
    }
    if (!has_circle)
        throw NoCircleFactor("apply_breaking: no circle factor acts on coordinates (0, 1) of '" +
                             s.name + "'");

    SystemSpec out = s;
    out.breaking = cfg;
    if (cfg.epsilon == 0.0) return out; // exact field, recorded config only

    out.name = s.name + "_broken_" + to_string(cfg.family);
    const BreakingTerm term = breaking_term(cfg, s.dim);
    const double eps = cfg.epsilon * breaking_epsilon_scale(cfg.family);
    auto base_field = s.field;
    out.field = [base_field, term, eps](std::span<const double> x, double u, std::span<double> o) {
        base_field(x, u, o);
        double extra[2] = {0.0, 0.0};
        term.field(x, extra);
        o[0] += eps * extra[0];
        o[1] += eps * extra[1];
    };
    auto base_jac = s.jacobian;
    out.jacobian = [base_jac, term, eps, d = s.dim](std::span<const double> x, double u, Matrix& j) {
        base_jac(x, u, j);
        Matrix extra(d, d);
        term.jacobian(x, extra);
        j(0, 0) += eps * extra(0, 0);
        j(0, 1) += eps * extra(0, 1);
        j(1, 0) += eps * extra(1, 0);
        j(1, 1) += eps * extra(1, 1);
    };
    return out;
}

// --- orbit location ------------------------------------------------------------

Vec find_orbit_point(const SystemSpec& s, double budget_time, double dt) {
    constexpr double settle_tol = 1e-10;
    const FlowField f = autonomous_field(s);
    Vec x = s.seed_state;
    Vec fx(s.dim);

    auto residual = [&](const Vec& state) {
        f(state, fx);
        if (s.kind == SystemKind::relative_equilibrium) {
            const double r = vec_norm(state);
            return r > 0.0 ? std::abs(vec_dot(state, fx)) / r : vec_norm(fx);
        }
        return vec_norm(fx);
    };

    // On a rotating orbit the integrator's invariant circle sits O(dt^4) off
    // the true one, so the radial residual stalls above the tolerance; a 1-d
    // Newton step along the radial direction lands on the exact orbit.
    auto radial_polish = [&](Vec state) {
        const double r = vec_norm(state);
        if (r <= 0.0) return state;
        Vec dir = state;
        for (double& v : dir) v /= r;
        double scale = r;
        Vec probe(s.dim);
        for (int it = 0; it < 30; ++it) {
            for (std::size_t i = 0; i < s.dim; ++i) probe[i] = scale * dir[i];
            f(probe, fx);
            const double g = vec_dot(dir, fx);
            const double h = 1e-6 * std::max(1.0, scale);
            Vec probe_hi(s.dim), probe_lo(s.dim);
            for (std::size_t i = 0; i < s.dim; ++i) {
                probe_hi[i] = (scale + h) * dir[i];
                probe_lo[i] = (scale - h) * dir[i];
            }
            Vec f_hi(s.dim), f_lo(s.dim);
            f(probe_hi, f_hi);
            f(probe_lo, f_lo);
            const double dg = (vec_dot(dir, f_hi) - vec_dot(dir, f_lo)) / (2.0 * h);
            if (dg == 0.0 || std::abs(g) <= 1e-14) break;
            scale -= g / dg;
        }
        for (std::size_t i = 0; i < s.dim; ++i) probe[i] = scale * dir[i];
        return probe;
    };

    if (residual(x) <= settle_tol) return x;
    constexpr double chunk = 5.0;
    double elapsed = 0.0;
    while (elapsed < budget_time) {
        x = integrate_to(f, x, chunk, dt);
        elapsed += chunk;
        if (residual(x) <= settle_tol) return x;
        if (s.kind == SystemKind::relative_equilibrium && residual(x) <= 1e-6) {
            const Vec polished = radial_polish(x);
            if (residual(polished) <= settle_tol) return polished;
        }
    }
    throw NoConvergence("find_orbit_point: residual " + std::to_string(residual(x)) +
                        " after t = " + std::to_string(elapsed) + " on '" + s.name + "'");
}

} // namespace sympro
