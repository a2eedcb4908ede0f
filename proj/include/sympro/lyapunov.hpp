#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "sympro/matrix.hpp"
#include "sympro/systems.hpp"

namespace sympro {

struct LyapunovReport {
    std::vector<double> exponents; // descending; column i of frame matches exponent i
    Matrix frame;                  // final orthonormal tangent frame, d x k
    Vec final_state;               // trajectory endpoint the frame belongs to
    std::vector<double> history_times;
    std::vector<std::vector<double>> history; // running estimates at each renormalization
    std::size_t near_zero_count = 0;
    double tolerance = 0.0;
    double total_time = 0.0;
    double dt = 0.0;
    std::size_t renorm_interval = 0;
    bool non_converged = false; // last-quarter drift above 10x tolerance

    // running estimates at the renormalization closest to time t
    std::vector<double> estimates_at(double t) const;
};

// Jointly integrates x' = f(x), V' = Df(x) V with RK4 on the combined system.
// For input-driven systems an input sequence may be supplied (one value per
// step, held constant within the step); otherwise u = 0.
std::pair<Vec, Matrix> propagate_tangent(const SystemSpec& s, const Vec& x0, const Matrix& v0,
                                         double T, double dt,
                                         const std::vector<double>* inputs = nullptr);

// Benettin QR spectrum: propagate a d x k frame, re-orthonormalize every
// renorm_every steps, accumulate log of the R diagonal over the measurement
// window of length T. The frame is first propagated for tangent_warmup time
// units without accumulation so the identity start does not leave an O(1/T)
// alignment defect in the averages. Callers wanting on-orbit spectra burn in
// the state first (find_orbit_point).
LyapunovReport benettin_spectrum(const SystemSpec& s, const Vec& x0, std::size_t k,
                                 double T, double dt, std::size_t renorm_every,
                                 double tolerance = 1e-4, double tangent_warmup = 50.0);

// Finite-time growth rate of one propagated fundamental field:
// log(|D phi_T xi_M(x0)| / |xi_M(x0)|) / T. Throws DegenerateTangent when the
// orbit is degenerate at x0.
double direct_tangent_exponent(const SystemSpec& s, const Vec& x0, std::span<const double> xi,
                               double T, double dt);

struct NearZeroCount {
    std::size_t count = 0;
    double margin = 0.0;          // distance from the tol band to the nearest excluded exponent
    bool all_within_band = false; // degenerate tolerance: every exponent counted
};

NearZeroCount count_near_zero(const LyapunovReport& report, double tol);

} // namespace sympro
