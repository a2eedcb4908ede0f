#include "sympro/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace sympro::kernels {

namespace {

struct Vtable {
    double (*dot)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    void (*scal)(double, double*, std::size_t);
    void (*add_scaled)(const double*, double, const double*, double*, std::size_t);
    void (*gemm_acc)(const double*, const double*, double*, std::size_t, std::size_t, std::size_t);
};

constexpr Vtable kScalar{detail::dot_scalar, detail::axpy_scalar, detail::scal_scalar,
                         detail::add_scaled_scalar, detail::gemm_acc_scalar};

#if defined(SYMPRO_HAVE_AVX2)
constexpr Vtable kAvx2{detail::dot_avx2, detail::axpy_avx2, detail::scal_avx2,
                       detail::add_scaled_avx2, detail::gemm_acc_avx2};
#endif

bool cpu_has_avx2() {
#if defined(SYMPRO_HAVE_AVX2) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend pick_initial() {
    Backend b = cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
    if (const char* env = std::getenv("SYMPRO_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) b = Backend::scalar;
        else if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) b = Backend::avx2;
    }
    return b;
}

Backend g_backend = pick_initial();

const Vtable& table() {
#if defined(SYMPRO_HAVE_AVX2)
    if (g_backend == Backend::avx2) return kAvx2;
#endif
    return kScalar;
}

} // namespace

bool avx2_available() { return cpu_has_avx2(); }

Backend active_backend() { return g_backend; }

std::string_view backend_name() {
    return g_backend == Backend::avx2 ? "avx2" : "scalar";
}

bool set_backend(Backend b) {
    if (b == Backend::avx2 && !cpu_has_avx2()) return false;
    g_backend = b;
    return true;
}

double dot(const double* x, const double* y, std::size_t n) { return table().dot(x, y, n); }
void axpy(double a, const double* x, double* y, std::size_t n) { table().axpy(a, x, y, n); }
void scal(double a, double* x, std::size_t n) { table().scal(a, x, n); }
void add_scaled(const double* x, double a, const double* y, double* out, std::size_t n) {
    table().add_scaled(x, a, y, out, n);
}
void gemm_acc(const double* a, const double* b, double* c,
              std::size_t m, std::size_t k, std::size_t n) {
    table().gemm_acc(a, b, c, m, k, n);
}

} // namespace sympro::kernels
