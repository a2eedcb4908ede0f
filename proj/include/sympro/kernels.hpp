#pragma once

#include <cstddef>
#include <string_view>

// Data-parallel inner loops used by the integrators and the dense linear
// algebra: dot products, scaled vector updates, and small row-major GEMM.
// A scalar reference implementation always exists; an AVX2+FMA variant is
// selected at runtime when the CPU supports it. The two are equivalence-
// tested in tests/test_kernels.cpp. SYMPRO_KERNELS=scalar|avx2 overrides
// the selection (unknown or unsupported values fall back to scalar).

namespace sympro::kernels {

enum class Backend { scalar, avx2 };

Backend active_backend();
std::string_view backend_name();
bool avx2_available();
// Force a backend (used by the equivalence tests). Returns false if the
// requested backend is unavailable on this machine.
bool set_backend(Backend b);

double dot(const double* x, const double* y, std::size_t n);
// y += a*x
void axpy(double a, const double* x, double* y, std::size_t n);
// x *= a
void scal(double a, double* x, std::size_t n);
// out = x + a*y
void add_scaled(const double* x, double a, const double* y, double* out, std::size_t n);
// C += A*B, row-major, C is m x n, A is m x k, B is k x n
void gemm_acc(const double* a, const double* b, double* c,
              std::size_t m, std::size_t k, std::size_t n);

namespace detail {

double dot_scalar(const double* x, const double* y, std::size_t n);
void axpy_scalar(double a, const double* x, double* y, std::size_t n);
void scal_scalar(double a, double* x, std::size_t n);
void add_scaled_scalar(const double* x, double a, const double* y, double* out, std::size_t n);
void gemm_acc_scalar(const double* a, const double* b, double* c,
                     std::size_t m, std::size_t k, std::size_t n);

#if defined(SYMPRO_HAVE_AVX2)
double dot_avx2(const double* x, const double* y, std::size_t n);
void axpy_avx2(double a, const double* x, double* y, std::size_t n);
void scal_avx2(double a, double* x, std::size_t n);
void add_scaled_avx2(const double* x, double a, const double* y, double* out, std::size_t n);
void gemm_acc_avx2(const double* a, const double* b, double* c,
                   std::size_t m, std::size_t k, std::size_t n);
#endif

} // namespace detail

} // namespace sympro::kernels
