#include "sympro/groups.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "sympro/linalg.hpp"

namespace sympro {

GroupSpec circle_rep(const std::vector<int>& weights, std::size_t invariant_dims) {
    if (weights.empty()) throw Error("circle_rep: weights must be nonempty");
    const std::size_t d = 2 * weights.size() + invariant_dims;
    Matrix gen(d, d);
    for (std::size_t k = 0; k < weights.size(); ++k) {
        const double w = static_cast<double>(weights[k]);
        gen(2 * k, 2 * k + 1) = -w;
        gen(2 * k + 1, 2 * k) = w;
    }
    GroupSpec g;
    g.name = "S1";
    g.dim = d;
    g.generators.push_back(std::move(gen));
    const bool trivial = std::all_of(weights.begin(), weights.end(), [](int w) { return w == 0; });
    g.expected_orbit_dim = trivial ? 0 : 1;
    return g;
}

GroupSpec torus_rep(std::size_t q) {
    if (q < 1) throw Error("torus_rep: q >= 1 required");
    const std::size_t d = 2 * q;
    GroupSpec g;
    g.name = "T" + std::to_string(q);
    g.dim = d;
    for (std::size_t k = 0; k < q; ++k) {
        Matrix gen(d, d);
        gen(2 * k, 2 * k + 1) = -1.0;
        gen(2 * k + 1, 2 * k) = 1.0;
        g.generators.push_back(std::move(gen));
    }
    g.expected_orbit_dim = q;
    return g;
}

GroupSpec so_n_rep(std::size_t n) {
    if (n < 2) throw Error("so_n_rep: n >= 2 required");
    GroupSpec g;
    g.name = "SO" + std::to_string(n);
    g.dim = n;
    // sign convention: the (0,1) plane generator equals the circle block J
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            Matrix gen(n, n);
            gen(i, j) = -1.0;
            gen(j, i) = 1.0;
            g.generators.push_back(std::move(gen));
        }
    }
    g.expected_orbit_dim = n - 1;
    return g;
}

namespace {

// Realify a complex m x m matrix A + iB acting on interleaved (Re, Im) pairs.
Matrix realify(std::size_t m, const std::vector<double>& re, const std::vector<double>& im) {
    Matrix out(2 * m, 2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double a = re[i * m + j];
            const double b = im[i * m + j];
            out(2 * i, 2 * j) = a;
            out(2 * i, 2 * j + 1) = -b;
            out(2 * i + 1, 2 * j) = b;
            out(2 * i + 1, 2 * j + 1) = a;
        }
    }
    return out;
}

} // namespace

GroupSpec u_m_rep(std::size_t m) {
    if (m < 1) throw Error("u_m_rep: m >= 1 required");
    GroupSpec g;
    g.name = "U" + std::to_string(m);
    g.dim = 2 * m;
    std::vector<double> re(m * m), im(m * m);
    auto push = [&]() {
        g.generators.push_back(realify(m, re, im));
        std::fill(re.begin(), re.end(), 0.0);
        std::fill(im.begin(), im.end(), 0.0);
    };
    for (std::size_t k = 0; k < m; ++k) { // i E_kk
        im[k * m + k] = 1.0;
        push();
    }
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = j + 1; k < m; ++k) {
            re[j * m + k] = 1.0; // E_jk - E_kj
            re[k * m + j] = -1.0;
            push();
            im[j * m + k] = 1.0; // i (E_jk + E_kj)
            im[k * m + j] = 1.0;
            push();
        }
    }
    g.expected_orbit_dim = 2 * m - 1;
    return g;
}

GroupSpec product_rep(const GroupSpec& a, const GroupSpec& b) {
    GroupSpec g;
    g.name = a.name + "x" + b.name;
    g.dim = a.dim + b.dim;
    for (const Matrix& ga : a.generators) {
        Matrix gen(g.dim, g.dim);
        for (std::size_t i = 0; i < a.dim; ++i)
            for (std::size_t j = 0; j < a.dim; ++j) gen(i, j) = ga(i, j);
        g.generators.push_back(std::move(gen));
    }
    for (const Matrix& gb : b.generators) {
        Matrix gen(g.dim, g.dim);
        for (std::size_t i = 0; i < b.dim; ++i)
            for (std::size_t j = 0; j < b.dim; ++j) gen(a.dim + i, a.dim + j) = gb(i, j);
        g.generators.push_back(std::move(gen));
    }
    g.expected_orbit_dim = a.expected_orbit_dim + b.expected_orbit_dim;
    return g;
}

Vec fundamental_field(const GroupSpec& g, std::span<const double> xi, std::span<const double> x) {
    if (xi.size() != g.algebra_dim())
        throw DimensionMismatch("fundamental_field: xi length != algebra dimension");
    if (x.size() != g.dim) throw DimensionMismatch("fundamental_field: state dimension mismatch");
    Vec out(g.dim, 0.0);
    for (std::size_t a = 0; a < xi.size(); ++a) {
        if (xi[a] == 0.0) continue;
        const Vec gx = g.generators[a] * x;
        for (std::size_t i = 0; i < g.dim; ++i) out[i] += xi[a] * gx[i];
    }
    return out;
}

Matrix action_matrix(const GroupSpec& g, std::span<const double> x) {
    if (x.size() != g.dim) throw DimensionMismatch("action_matrix: state dimension mismatch");
    Matrix a(g.dim, g.algebra_dim());
    for (std::size_t c = 0; c < g.algebra_dim(); ++c) {
        const Vec gx = g.generators[c] * x;
        a.set_col(c, gx);
    }
    return a;
}

Matrix group_element(const GroupSpec& g, std::span<const double> xi) {
    if (xi.size() != g.algebra_dim())
        throw DimensionMismatch("group_element: xi length != algebra dimension");
    Matrix sum(g.dim, g.dim);
    for (std::size_t a = 0; a < xi.size(); ++a) {
        if (xi[a] == 0.0) continue;
        sum = sum + xi[a] * g.generators[a];
    }
    return matrix_exp(sum);
}

OrbitDiagnostics orbit_diagnostics(const GroupSpec& g, const Trajectory& traj, double rank_tol) {
    if (rank_tol <= 0.0) throw Error("orbit_diagnostics: rank_tol must be positive");
    if (traj.size() == 0) throw Error("orbit_diagnostics: empty trajectory");
    const std::size_t q = g.expected_orbit_dim;

    // Per-point singular values first: ranks are classified against the
    // trajectory-wide scale, so an orbit degenerating along the trajectory
    // shows up as a rank drop rather than being hidden by a per-point
    // relative threshold.
    std::vector<std::vector<double>> spectra(traj.size());
    double global_sigma_max = 0.0;
    for (std::size_t idx = 0; idx < traj.size(); ++idx) {
        const Matrix a = action_matrix(g, traj.states[idx]);
        if (max_abs(a) == 0.0)
            spectra[idx].assign(g.algebra_dim(), 0.0);
        else
            spectra[idx] = svd(a).s;
        if (!spectra[idx].empty()) global_sigma_max = std::max(global_sigma_max, spectra[idx].front());
    }

    OrbitDiagnostics out;
    std::map<std::size_t, std::size_t> rank_counts;
    double uniform_lower = std::numeric_limits<double>::infinity();
    const double threshold = rank_tol * global_sigma_max;
    for (const std::vector<double>& s : spectra) {
        std::size_t rank = 0;
        for (double x : s)
            if (global_sigma_max > 0.0 && x > threshold) ++rank;
        rank_counts[rank]++;
        if (q > 0 && q <= s.size()) uniform_lower = std::min(uniform_lower, s[q - 1]);
    }

    std::size_t modal_rank = 0, modal_count = 0;
    for (const auto& [rank, count] : rank_counts) {
        if (count > modal_count) {
            modal_rank = rank;
            modal_count = count;
        }
    }
    out.orbit_rank = modal_rank;
    out.constant_rank_violation = rank_counts.size() > 1;
    out.uniform_lower = std::isfinite(uniform_lower) ? uniform_lower : 0.0;
    out.uniform_upper = global_sigma_max;
    const std::vector<double>& final_sv = spectra.back();
    if (!final_sv.empty()) {
        out.sigma_max = final_sv.front();
        std::size_t final_rank = 0;
        for (double x : final_sv)
            if (global_sigma_max > 0.0 && x > threshold) ++final_rank;
        out.sigma_min_nonzero = final_rank > 0 ? final_sv[final_rank - 1] : 0.0;
    }
    return out;
}

} // namespace sympro
