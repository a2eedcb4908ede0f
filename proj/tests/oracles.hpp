#pragma once

// Test-only oracles, deliberately slow and simple, independent of the
// library's integration and linear-algebra paths.

#include <cmath>
#include <functional>
#include <vector>

namespace oracles {

// scalar RK4 at a fine step, for 1-d reductions (radial and phase equations)
inline double scalar_ode(const std::function<double(double)>& f, double x0, double T, double dt) {
    double x = x0;
    const auto steps = static_cast<std::size_t>(std::ceil(T / dt));
    const double h = T / static_cast<double>(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        const double k1 = f(x);
        const double k2 = f(x + 0.5 * h * k1);
        const double k3 = f(x + 0.5 * h * k2);
        const double k4 = f(x + h * k3);
        x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return x;
}

// first time the scalar ODE solution crosses the threshold (from below),
// linearly interpolated; returns t_max when it never does
inline double scalar_first_crossing(const std::function<double(double)>& f, double x0,
                                    double threshold, double t_max, double dt) {
    double x = x0;
    double t = 0.0;
    while (t < t_max) {
        const double k1 = f(x);
        const double k2 = f(x + 0.5 * dt * k1);
        const double k3 = f(x + 0.5 * dt * k2);
        const double k4 = f(x + dt * k3);
        const double x_next = x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (x_next >= threshold) {
            const double frac = (threshold - x) / (x_next - x);
            return t + frac * dt;
        }
        x = x_next;
        t += dt;
    }
    return t_max;
}

// composite Simpson quadrature
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2 == 1) ++n;
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

// sample lag-1 autocorrelation
inline double lag1_autocorrelation(const std::vector<double>& x) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - mean;
        den += d * d;
        if (i + 1 < x.size()) num += d * (x[i + 1] - mean);
    }
    return num / den;
}

} // namespace oracles
