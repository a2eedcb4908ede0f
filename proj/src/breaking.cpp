#include "sympro/breaking.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <thread>
#include <vector>

#include "sympro/diagnostics.hpp"
#include "sympro/errors.hpp"
#include "sympro/integrate.hpp"
#include "sympro/linalg.hpp"
#include "sympro/lyapunov.hpp"
#include "sympro/parallel.hpp"
#include "sympro/rng.hpp"

namespace sympro {

std::size_t effective_jobs(std::size_t jobs) {
    if (jobs != 0) return jobs;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min(effective_jobs(jobs), n == 0 ? std::size_t{1} : n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

namespace {

// index of the generator acting as a J-block on the pinned pair (0, 1)
std::size_t circle_generator_index(const GroupSpec& g) {
    for (std::size_t a = 0; a < g.algebra_dim(); ++a) {
        const Matrix& gen = g.generators[a];
        if (gen.rows >= 2 && gen(1, 0) != 0.0 &&
            std::abs(gen(0, 1) + gen(1, 0)) <= 1e-12 * std::abs(gen(1, 0)))
            return a;
    }
    throw NoCircleFactor("no circle generator acts on the pinned pair");
}

// rotate the state by angle alpha on the pinned pair via the circle generator
Vec rotate_on_orbit(const SystemSpec& s, const Vec& x, double alpha) {
    const std::size_t idx = circle_generator_index(s.group);
    const double weight = s.group.generators[idx](1, 0);
    Vec xi(s.group.algebra_dim(), 0.0);
    xi[idx] = alpha / weight;
    return group_element(s.group, xi) * x;
}

double pair_phase(const Vec& x) { return std::atan2(x[1], x[0]); }

double wrap_angle(double a) { return std::remainder(a, 2.0 * std::numbers::pi); }

// projection of a vector field onto the group-tangent direction at x,
// normalized so the value is a phase rate
double phase_rate(const GroupSpec& group, std::size_t gen, const Vec& x, const Vec& field_value) {
    Vec xi(group.algebra_dim(), 0.0);
    xi[gen] = 1.0;
    const Vec tangent = fundamental_field(group, xi, x);
    const double norm_sq = vec_dot(tangent, tangent);
    if (norm_sq <= 1e-18)
        throw DegenerateTangent("phase_rate: group tangent degenerate along the orbit");
    return vec_dot(tangent, field_value) / norm_sq;
}

// phase-drift of the breaking term around the unbroken orbit (unit epsilon)
struct ReducedDrift {
    SystemSpec base;
    BreakingTerm term;
    Vec orbit_point;
    std::size_t generator;

    double operator()(double theta) const {
        const Vec x = rotate_on_orbit(base, orbit_point, theta);
        Vec p(x.size(), 0.0);
        term.field(x, p);
        return phase_rate(base.group, generator, x, p);
    }
};

ReducedDrift make_reduced_drift(const SystemSpec& base, const BreakingConfig& cfg) {
    ReducedDrift drift{base, breaking_term(cfg, base.dim), find_orbit_point(base),
                       circle_generator_index(base.group)};
    if (std::hypot(drift.orbit_point[0], drift.orbit_point[1]) <= 1e-9)
        throw DegenerateTangent("reduced drift: unbroken orbit has vanishing pinned-pair radius");
    return drift;
}

// tangential drift of a full field around the group orbit through ref
struct OrbitDrift {
    const SystemSpec* sys;
    Vec ref;
    std::size_t generator;

    double operator()(double theta) const {
        const Vec x = rotate_on_orbit(*sys, ref, theta);
        Vec f(x.size());
        sys->field(x, 0.0, f);
        return phase_rate(sys->group, generator, x, f);
    }
};

template <class Drift>
double refine_zero(const Drift& drift, double lo, double hi) {
    double flo = drift(lo);
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = drift(mid);
        if ((flo <= 0.0) == (fmid <= 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// all zeros with negative slope, over one full turn
template <class Drift>
std::vector<double> stable_zeros(const Drift& drift) {
    constexpr int n_scan = 720;
    const double step = 2.0 * std::numbers::pi / n_scan;
    std::vector<double> zeros;
    double prev = drift(0.0);
    for (int i = 1; i <= n_scan; ++i) {
        const double cur = drift(i * step);
        if ((prev <= 0.0) != (cur <= 0.0) && prev > 0.0)
            zeros.push_back(refine_zero(drift, (i - 1) * step, i * step));
        prev = cur;
    }
    return zeros;
}

// Newton iteration to the fixed point of the autonomous field nearest x
Vec newton_fixed_point(const SystemSpec& s, Vec x) {
    Vec fx(s.dim);
    for (int it = 0; it < 60; ++it) {
        s.field(x, 0.0, fx);
        if (vec_norm(fx) <= 1e-12) return x;
        const Vec dx = lu_solve(s.jac(x), fx);
        for (std::size_t c = 0; c < x.size(); ++c) x[c] -= dx[c];
        if (!vec_finite(x)) throw NoConvergence("newton_fixed_point: diverged");
    }
    s.field(x, 0.0, fx);
    if (vec_norm(fx) <= 1e-10) return x;
    throw NoConvergence("newton_fixed_point: stalled at residual " + std::to_string(vec_norm(fx)));
}

} // namespace

PinnedPhases pinned_phases(const SystemSpec& base, const BreakingConfig& cfg) {
    const ReducedDrift drift = make_reduced_drift(base, cfg);
    constexpr int n_scan = 720;
    const double step = 2.0 * std::numbers::pi / n_scan;
    PinnedPhases out;
    bool have_stable = false, have_unstable = false;
    double prev = drift(0.0);
    for (int i = 1; i <= n_scan; ++i) {
        const double theta = i * step;
        const double cur = drift(theta);
        if ((prev <= 0.0) != (cur <= 0.0)) {
            const double zero = refine_zero(drift, theta - step, theta);
            const bool stable = prev > 0.0; // drift decreasing through the zero
            if (stable && !have_stable) {
                out.stable = zero;
                have_stable = true;
            } else if (!stable && !have_unstable) {
                out.unstable = zero;
                have_unstable = true;
            }
            if (have_stable && have_unstable) break;
        }
        prev = cur;
    }
    if (!have_stable || !have_unstable)
        throw NoPinnedPoint("pinned_phases: reduced drift has no sign change (family " +
                            to_string(cfg.family) + ")");
    return out;
}

// The pinned fixed point of the broken field. Plain integration settles at
// rate ~|gap| and is unusable for small epsilon, so the orbit radius is
// settled first, the phase is jumped to the stable zero of the tangential
// drift nearest the settled phase (documented tie-break), and Newton
// iteration polishes the fixed point to 1e-12.
static Vec pinned_fixed_point(const SystemSpec& broken) {
    const Vec x_slow = integrate_to(autonomous_field(broken), broken.seed_state, 60.0, 1e-2);
    if (std::hypot(x_slow[0], x_slow[1]) <= 1e-9)
        throw NoPinnedPoint("pinned_fixed_point: pinned-pair radius vanished while settling");
    OrbitDrift drift{&broken, x_slow, circle_generator_index(broken.group)};
    const std::vector<double> zeros = stable_zeros(drift);
    if (zeros.empty())
        throw NoPinnedPoint("pinned_fixed_point: tangential drift of '" + broken.name +
                            "' has no stable zero");
    const double ref_phase = pair_phase(x_slow);
    double best = zeros.front();
    double best_dist = std::abs(wrap_angle(best - ref_phase));
    for (double z : zeros) {
        const double dist = std::abs(wrap_angle(z - ref_phase));
        if (dist < best_dist) {
            best = z;
            best_dist = dist;
        }
    }
    const Vec start = rotate_on_orbit(broken, x_slow, best - ref_phase);
    try {
        return newton_fixed_point(broken, start);
    } catch (const NoConvergence& e) {
        throw NoPinnedPoint(std::string("pinned_fixed_point: ") + e.what());
    }
}

double predict_gap_perturbative(const SystemSpec& base, const BreakingConfig& cfg) {
    if (cfg.epsilon > 0.2)
        std::fprintf(stderr, "sympro: predict_gap_perturbative called with epsilon %.3g > 0.2; "
                             "first-order prediction may be inaccurate\n", cfg.epsilon);
    if (cfg.epsilon == 0.0) return 0.0;
    const ReducedDrift drift = make_reduced_drift(base, cfg);
    const double theta_star = pinned_phases(base, cfg).stable;
    constexpr double h = 1e-6;
    const double slope = (drift(theta_star + h) - drift(theta_star - h)) / (2.0 * h);
    return cfg.epsilon * breaking_epsilon_scale(cfg.family) * slope;
}

PseudoGapDetail measure_pseudo_gap_detail(const SystemSpec& broken) {
    if (!broken.breaking || broken.breaking->epsilon <= 0.0)
        throw Error("measure_pseudo_gap: system carries no breaking perturbation");

    PseudoGapDetail out;
    out.pinned_point = pinned_fixed_point(broken);

    const std::size_t gen = circle_generator_index(broken.group);
    Vec xi(broken.group.algebra_dim(), 0.0);
    xi[gen] = 1.0;
    Vec tangent = fundamental_field(broken.group, xi, out.pinned_point);
    const double tnorm = vec_norm(tangent);
    if (tnorm <= 1e-12)
        throw DegenerateTangent("measure_pseudo_gap: group tangent degenerate at the pinned point");
    for (double& v : tangent) v /= tnorm;

    const Matrix jac = broken.jac(out.pinned_point);
    const std::size_t d = broken.dim;

    // Rayleigh-quotient iteration seeded with the former group tangent
    Vec v = tangent;
    double mu = vec_dot(v, jac * v);
    for (int it = 0; it < 50; ++it) {
        Matrix shifted = jac;
        for (std::size_t i = 0; i < d; ++i) shifted(i, i) -= mu;
        Vec w;
        try {
            w = lu_solve(shifted, v);
        } catch (const RankDeficient&) {
            break; // shift hit the eigenvalue exactly
        }
        const double wnorm = vec_norm(w);
        if (!(wnorm > 0.0) || !std::isfinite(wnorm)) break;
        for (double& c : w) c /= wnorm;
        if (vec_dot(w, v) < 0.0)
            for (double& c : w) c = -c;
        const double mu_new = vec_dot(w, jac * w);
        v = std::move(w);
        if (std::abs(mu_new - mu) <= 1e-13 * std::max(1.0, std::abs(mu_new))) {
            mu = mu_new;
            break;
        }
        mu = mu_new;
    }
    out.eigenvalue = mu;
    out.overlap = std::abs(vec_dot(v, tangent));
    if (out.overlap < 0.9)
        throw AmbiguousMode("measure_pseudo_gap: eigenvector overlap with the group tangent is " +
                            std::to_string(out.overlap));

    // cross-check: finite-time direct tangent exponent at the pinned point
    const double horizon = std::clamp(50.0 / std::max(std::abs(mu), 1e-4), 10.0, 2e4);
    out.direct_rate = direct_tangent_exponent(broken, out.pinned_point, xi, horizon, 1e-2);
    return out;
}

double measure_pseudo_gap(const SystemSpec& broken) {
    return measure_pseudo_gap_detail(broken).eigenvalue;
}

LifetimeMeasurement measure_lifetime(const SystemSpec& broken, const SystemSpec& base,
                                     double theta0, double theta_threshold, double t_max, double dt) {
    if (!broken.breaking) throw Error("measure_lifetime: system carries no breaking config");
    const BreakingConfig& cfg = *broken.breaking;
    const int k_eff = cfg.family == BreakingFamily::random_anisotropic ? 2 : cfg.pin_order;
    const double sector = std::numbers::pi / static_cast<double>(k_eff);
    if (!(0.0 < theta0 && theta0 < theta_threshold && theta_threshold < sector))
        throw Error("measure_lifetime: need 0 < theta0 < theta_threshold < pi/pin_order");

    // start on the unbroken orbit, theta0 away from the unstable pinned phase
    // toward the stable one (the drift carries the phase through the threshold)
    // pinned phases are offsets along the orbit through the settled base point
    Vec start;
    if (cfg.epsilon > 0.0) {
        const PinnedPhases phases = pinned_phases(base, cfg);
        const ReducedDrift drift = make_reduced_drift(base, cfg);
        start = rotate_on_orbit(base, drift.orbit_point, phases.unstable + theta0);
    } else {
        start = find_orbit_point(base);
    }

    const FlowField f = autonomous_field(broken);
    Rk4 ws(broken.dim);
    Vec x = start;
    double phase_prev = pair_phase(x);
    double deviation = 0.0;
    double t = 0.0;
    while (t < t_max) {
        ws.step(f, x, dt, t);
        t += dt;
        const double phase = pair_phase(x);
        const double increment = wrap_angle(phase - phase_prev);
        const double dev_new = deviation + increment;
        if (std::abs(dev_new) >= theta_threshold) {
            // linear interpolation inside the crossing step
            const double excess = std::abs(dev_new) - theta_threshold;
            const double within = std::abs(increment) > 0.0 ? excess / std::abs(increment) : 0.0;
            return {t - dt * std::clamp(within, 0.0, 1.0), false};
        }
        deviation = dev_new;
        phase_prev = phase;
    }
    return {t_max, true};
}

double predict_lifetime(double gap, double theta0, double theta_threshold) {
    if (gap == 0.0) throw ZeroGap("predict_lifetime: gap is zero");
    if (!(0.0 < theta0 && theta0 < theta_threshold && theta_threshold < std::numbers::pi))
        throw Error("predict_lifetime: need 0 < theta0 < theta_threshold < pi");
    return (std::log(std::tan(0.5 * theta_threshold)) - std::log(std::tan(0.5 * theta0))) /
           std::abs(gap);
}

double predict_lifetime_generic(double gap, double theta0, double theta_threshold) {
    if (gap == 0.0) throw ZeroGap("predict_lifetime_generic: gap is zero");
    if (!(0.0 < theta0 && theta0 < theta_threshold))
        throw Error("predict_lifetime_generic: need 0 < theta0 < theta_threshold");
    return std::log(theta_threshold / theta0) / std::abs(gap);
}

double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw Error("pearson_correlation: need two samples of equal length >= 2");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) return sxx == syy ? 1.0 : 0.0;
    return sxy / std::sqrt(sxx * syy);
}

SweepResult lifetime_sweep(const SystemSpec& base, const std::vector<BreakingFamily>& families,
                           const std::vector<double>& eps_grid,
                           const std::vector<std::uint64_t>& seeds, const SweepSettings& settings) {
    SweepResult result;
    const std::size_t n_rows = families.size() * eps_grid.size() * seeds.size();
    result.records.resize(n_rows);
    if (n_rows == 0) return result; // summary stays undefined

    struct RowSpec {
        BreakingFamily family;
        double eps;
        std::uint64_t seed;
    };
    std::vector<RowSpec> rows;
    rows.reserve(n_rows);
    for (BreakingFamily family : families)
        for (double eps : eps_grid)
            for (std::uint64_t seed : seeds) rows.push_back({family, eps, seed});

    parallel_for(n_rows, settings.jobs, [&](std::size_t i) {
        const RowSpec& row = rows[i];
        LifetimeRecord rec;
        rec.theta0 = settings.theta0;
        rec.theta_threshold = settings.theta_threshold;
        BreakingConfig cfg;
        cfg.family = row.family;
        cfg.epsilon = row.eps;
        cfg.pin_order = settings.pin_order;
        cfg.seed = row.seed;
        Rng row_rng = Rng::stream(settings.seed, "sweep_row", i);
        if (row.family == BreakingFamily::phase_pinning) cfg.rotation_deg = row_rng.uniform(0.0, 360.0);
        rec.config = cfg;
        try {
            const SystemSpec broken = apply_breaking(base, cfg);
            rec.gap_predicted = predict_gap_perturbative(base, cfg);
            rec.gap_measured = measure_pseudo_gap(broken);
            const int k_eff = row.family == BreakingFamily::random_anisotropic ? 2 : cfg.pin_order;
            rec.lifetime_predicted = predict_lifetime(
                rec.gap_predicted, k_eff * settings.theta0, k_eff * settings.theta_threshold);
            const double t_max = std::min(50.0 / std::abs(rec.gap_predicted), settings.t_max_cap);
            const LifetimeMeasurement m =
                measure_lifetime(broken, base, settings.theta0, settings.theta_threshold, t_max,
                                 settings.dt);
            rec.lifetime_measured = m.lifetime;
            rec.censored = m.censored;
            rec.equivariance_error =
                equivariance_error(broken, settings.equivariance_samples, row.seed);
        } catch (const Error& e) {
            rec.error = e.what();
        }
        result.records[i] = std::move(rec);
    });

    // summary over clean, uncensored rows
    std::vector<double> log_meas, log_pred, ratios;
    std::size_t clean = 0, uncensored = 0;
    for (const LifetimeRecord& rec : result.records) {
        if (!rec.error.empty()) continue;
        ++clean;
        if (rec.censored) continue;
        ++uncensored;
        if (rec.lifetime_measured > 0.0 && rec.lifetime_predicted > 0.0) {
            log_meas.push_back(std::log(rec.lifetime_measured));
            log_pred.push_back(std::log(rec.lifetime_predicted));
            ratios.push_back(rec.lifetime_measured / rec.lifetime_predicted);
        }
    }
    if (clean > 0 && log_meas.size() >= 2) {
        result.summary.defined = true;
        result.summary.log_lifetime_correlation = pearson_correlation(log_meas, log_pred);
        result.summary.uncensored_fraction =
            static_cast<double>(uncensored) / static_cast<double>(clean);
        std::sort(ratios.begin(), ratios.end());
        const std::size_t mid = ratios.size() / 2;
        result.summary.median_ratio = ratios.size() % 2 == 1
                                          ? ratios[mid]
                                          : 0.5 * (ratios[mid - 1] + ratios[mid]);
    }
    return result;
}

} // namespace sympro
