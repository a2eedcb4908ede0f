#include "sympro/pathint.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <tuple>

#include "sympro/diagnostics.hpp"
#include "sympro/errors.hpp"
#include "sympro/integrate.hpp"
#include "sympro/parallel.hpp"
#include "sympro/rng.hpp"

namespace sympro {

double wrap_to_pi(double angle) {
    const double w = std::remainder(angle, 2.0 * std::numbers::pi);
    // remainder returns (-pi, pi]; map the -pi edge case consistently
    return w <= -std::numbers::pi ? w + 2.0 * std::numbers::pi : w;
}

std::string to_string(VelocityKind k) {
    switch (k) {
        case VelocityKind::gaussian: return "gaussian";
        case VelocityKind::piecewise_constant: return "piecewise_constant";
        case VelocityKind::correlated_walk: return "correlated_walk";
    }
    return "gaussian";
}

VelocityKind velocity_kind_from_string(const std::string& s) {
    if (s == "gaussian") return VelocityKind::gaussian;
    if (s == "piecewise_constant") return VelocityKind::piecewise_constant;
    if (s == "correlated_walk") return VelocityKind::correlated_walk;
    throw ConfigError("unknown velocity kind '" + s + "'");
}

std::string to_string(TaskCondition c) {
    switch (c) {
        case TaskCondition::in_dist: return "in_dist";
        case TaskCondition::speed_ood: return "speed_ood";
        case TaskCondition::restricted_phase: return "restricted_phase";
    }
    return "in_dist";
}

VelocitySequence generate_velocity(VelocityKind kind, std::size_t horizon, double dt,
                                   std::uint64_t seed, double scale) {
    if (horizon < 1) throw Error("generate_velocity: horizon >= 1 required");
    VelocitySequence seq;
    seq.kind = kind;
    seq.dt = dt;
    seq.seed = seed;
    seq.scale = scale;
    seq.values.resize(horizon, 0.0);
    if (scale == 0.0) return seq;

    Rng rng = Rng::stream(seed, "velocity/" + to_string(kind));
    switch (kind) {
        case VelocityKind::gaussian:
            for (double& v : seq.values) v = scale * rng.normal();
            break;
        case VelocityKind::piecewise_constant: {
            constexpr std::size_t hold = 16;
            double held = 0.0;
            for (std::size_t i = 0; i < horizon; ++i) {
                if (i % hold == 0) held = scale * rng.normal();
                seq.values[i] = held;
            }
            break;
        }
        case VelocityKind::correlated_walk: {
            constexpr double ar = 0.95;
            const double innovation = scale * std::sqrt(1.0 - ar * ar);
            double state = scale * rng.normal(); // start at the stationary law
            for (std::size_t i = 0; i < horizon; ++i) {
                seq.values[i] = state;
                state = ar * state + innovation * rng.normal();
            }
            break;
        }
    }
    return seq;
}

TaskResult run_task(const SystemSpec& model, double phi0, const VelocitySequence& v,
                    TaskCondition label) {
    if (model.dim < 2) throw Error("run_task: model must carry a realified z block");
    TaskResult result;
    result.horizon = v.values.size();
    result.model = model.name;
    result.condition = label;
    result.per_step_error.reserve(v.values.size());

    Vec x(model.dim, 0.0);
    x[0] = std::cos(phi0);
    x[1] = std::sin(phi0);
    Rk4 ws(model.dim);
    double truth = phi0;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < v.values.size(); ++i) {
        const double u = v.values[i];
        const FlowField f = field_with_input(model, u);
        ws.step(f, x, v.dt, static_cast<double>(i) * v.dt);
        truth = wrap_to_pi(truth + u * v.dt);
        const double read = std::atan2(x[1], x[0]);
        const double err = wrap_to_pi(read - truth);
        result.per_step_error.push_back(err);
        sum_sq += err * err;
    }
    result.circular_rmse = std::sqrt(sum_sq / static_cast<double>(v.values.size()));
    return result;
}

GridNullResult grid_null(std::size_t n, const std::vector<double>& shift_offsets,
                         std::uint64_t seed) {
    if (n < 4) throw Error("grid_null: N >= 4 required");
    const SystemSpec grid = circulant_grid(n);
    constexpr double step_dt = 0.5;
    const StepMap step = [&grid](const Vec& x) {
        return rk4_step(autonomous_field(grid), x, step_dt);
    };

    // sample settled bump states: relax seeded bumps for a fixed time
    const double bin = 2.0 * std::numbers::pi / static_cast<double>(n);
    auto draw_state = [&grid, n, bin](Rng& rng) {
        const double center = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double amp = rng.uniform(1.0, 2.0);
        Vec bump(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double dth = wrap_to_pi(static_cast<double>(i) * bin - center);
            bump[i] = amp * std::exp(-dth * dth / (2.0 * 0.5 * 0.5));
        }
        return integrate_to(autonomous_field(grid), bump, 30.0, 1e-2);
    };

    GridNullResult out;
    out.n = n;
    constexpr std::size_t n_samples = 12;
    Rng rng = Rng::stream(seed, "grid_null");
    std::vector<Vec> samples;
    samples.reserve(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) samples.push_back(draw_state(rng));

    std::vector<StateOp> rolls;
    for (long r : {1L, 3L, static_cast<long>(n / 2)})
        rolls.push_back([r](const Vec& x) { return roll(x, r); });
    out.discrete_error = step_equivariance_error(step, rolls, samples);

    for (double offset : shift_offsets) {
        std::vector<StateOp> shift{[offset](const Vec& x) { return fourier_shift(x, offset); }};
        out.continuous_error_curve.emplace_back(offset, step_equivariance_error(step, shift, samples));
    }
    return out;
}

ConsequenceTable consequence_suite(const std::vector<std::uint64_t>& seeds,
                                   const std::vector<std::size_t>& horizons,
                                   const std::vector<double>& speed_scales,
                                   const ConsequenceSettings& settings) {
    if (seeds.empty() || horizons.empty() || speed_scales.empty())
        throw Error("consequence_suite: empty grid");

    struct RowSpec {
        bool exact;
        TaskCondition condition;
        std::uint64_t seed;
        std::size_t horizon;
        double scale;
    };
    std::vector<RowSpec> specs;
    for (bool exact : {true, false}) {
        for (std::uint64_t seed : seeds) {
            for (std::size_t horizon : horizons) {
                for (double scale : speed_scales) {
                    const TaskCondition cond =
                        scale == settings.in_dist_scale ? TaskCondition::in_dist : TaskCondition::speed_ood;
                    specs.push_back({exact, cond, seed, horizon, scale});
                }
                // restricted-phase evaluation at the in-distribution scale
                specs.push_back({exact, TaskCondition::restricted_phase, seed, horizon,
                                 settings.in_dist_scale});
            }
        }
    }

    BreakingConfig broken_cfg;
    broken_cfg.family = BreakingFamily::phase_pinning;
    broken_cfg.epsilon = settings.broken_epsilon;
    const SystemSpec exact_model = controlled_path_integrator(true);
    const SystemSpec broken_model = controlled_path_integrator(false, broken_cfg);

    ConsequenceTable table;
    table.rows.resize(specs.size());
    parallel_for(specs.size(), settings.jobs, [&](std::size_t i) {
        const RowSpec& spec = specs[i];
        ConsequenceRow row;
        row.model = spec.exact ? "exact" : "broken";
        row.condition = spec.condition;
        row.seed = spec.seed;
        row.horizon = spec.horizon;
        row.speed_scale = spec.scale;
        try {
            // batch of fresh sequences and phase cues from this row's stream;
            // batching averages out the walk-realization variance so seed
            // means separate cleanly
            Rng row_rng = Rng::stream(settings.seed ^ spec.seed, "eval_row",
                                      spec.horizon * 1000 + static_cast<std::size_t>(spec.condition));
            const std::size_t batch = std::max<std::size_t>(1, settings.eval_rows_per_seed);
            double acc = 0.0;
            for (std::size_t b = 0; b < batch; ++b) {
                const std::uint64_t walk_seed = row_rng.next_u64();
                const double phi0 = spec.condition == TaskCondition::restricted_phase
                                        ? row_rng.uniform(0.0, std::numbers::pi / 4.0)
                                        : row_rng.uniform(-std::numbers::pi, std::numbers::pi);
                const VelocitySequence v = generate_velocity(settings.velocity, spec.horizon,
                                                             settings.dt, walk_seed, spec.scale);
                acc += run_task(spec.exact ? exact_model : broken_model, phi0, v, spec.condition)
                           .circular_rmse;
            }
            row.rmse = acc / static_cast<double>(batch);
        } catch (const Error& e) {
            row.error = e.what();
        }
        table.rows[i] = std::move(row);
    });

    // aggregate per (model, condition, horizon, scale)
    std::map<std::tuple<std::string, int, std::size_t, double>, std::vector<double>> cells;
    for (const ConsequenceRow& row : table.rows) {
        if (!row.error.empty()) continue;
        cells[{row.model, static_cast<int>(row.condition), row.horizon, row.speed_scale}]
            .push_back(row.rmse);
    }
    for (const auto& [key, values] : cells) {
        ConsequenceCell cell;
        cell.model = std::get<0>(key);
        cell.condition = static_cast<TaskCondition>(std::get<1>(key));
        cell.horizon = std::get<2>(key);
        cell.speed_scale = std::get<3>(key);
        cell.count = values.size();
        double mean = 0.0;
        for (double v : values) mean += v;
        mean /= static_cast<double>(values.size());
        double var = 0.0;
        for (double v : values) var += (v - mean) * (v - mean);
        cell.mean_rmse = mean;
        cell.stderr_rmse = values.size() > 1
                               ? std::sqrt(var / static_cast<double>(values.size() - 1)) /
                                     std::sqrt(static_cast<double>(values.size()))
                               : 0.0;
        table.cells.push_back(cell);
    }
    return table;
}

} // namespace sympro
