#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "sympro/kernels.hpp"
#include "sympro/rng.hpp"

using namespace sympro;
namespace k = sympro::kernels;

namespace {

std::vector<double> random_vec(Rng& rng, std::size_t n) {
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform(-2.0, 2.0);
    return v;
}

} // namespace

TEST_CASE("scalar kernels: basic values") {
    const double x[4] = {1, 2, 3, 4};
    const double y[4] = {4, 3, 2, 1};
    CHECK(k::detail::dot_scalar(x, y, 4) == doctest::Approx(20.0));
    double acc[4] = {1, 1, 1, 1};
    k::detail::axpy_scalar(2.0, x, acc, 4);
    CHECK(acc[0] == doctest::Approx(3.0));
    CHECK(acc[3] == doctest::Approx(9.0));
    double out[4];
    k::detail::add_scaled_scalar(x, -1.0, y, out, 4);
    CHECK(out[0] == doctest::Approx(-3.0));
    CHECK(out[3] == doctest::Approx(3.0));
}

TEST_CASE("gemm_acc accumulates into preloaded C") {
    // C = I (2x2), A = [[1,2],[3,4]], B = [[5,6],[7,8]]
    const double a[4] = {1, 2, 3, 4};
    const double b[4] = {5, 6, 7, 8};
    double c[4] = {1, 0, 0, 1};
    k::gemm_acc(a, b, c, 2, 2, 2);
    CHECK(c[0] == doctest::Approx(20.0)); // 1 + 19
    CHECK(c[1] == doctest::Approx(22.0));
    CHECK(c[2] == doctest::Approx(43.0));
    CHECK(c[3] == doctest::Approx(51.0)); // 1 + 50
}

TEST_CASE("simd and scalar backends agree on every kernel") {
    if (!k::avx2_available()) {
        MESSAGE("avx2 unavailable; scalar-only host");
        return;
    }
    Rng rng(123);
    for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 33u, 64u, 70u}) {
        const auto x = random_vec(rng, n);
        const auto y = random_vec(rng, n);
        const double a = rng.uniform(-1.5, 1.5);

        REQUIRE(k::set_backend(k::Backend::avx2));
        const double dot_simd = k::dot(x.data(), y.data(), n);
        auto axpy_simd = y;
        k::axpy(a, x.data(), axpy_simd.data(), n);
        auto scal_simd = x;
        k::scal(a, scal_simd.data(), n);
        std::vector<double> add_simd(n);
        k::add_scaled(x.data(), a, y.data(), add_simd.data(), n);

        REQUIRE(k::set_backend(k::Backend::scalar));
        const double dot_ref = k::dot(x.data(), y.data(), n);
        auto axpy_ref = y;
        k::axpy(a, x.data(), axpy_ref.data(), n);
        auto scal_ref = x;
        k::scal(a, scal_ref.data(), n);
        std::vector<double> add_ref(n);
        k::add_scaled(x.data(), a, y.data(), add_ref.data(), n);

        CHECK(std::abs(dot_simd - dot_ref) <= 1e-13 * (1.0 + std::abs(dot_ref)));
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(axpy_simd[i] - axpy_ref[i]) <= 1e-13 * (1.0 + std::abs(axpy_ref[i])));
            CHECK(scal_simd[i] == scal_ref[i]); // pure elementwise multiply is exact
            CHECK(std::abs(add_simd[i] - add_ref[i]) <= 1e-13 * (1.0 + std::abs(add_ref[i])));
        }
    }
    REQUIRE(k::set_backend(k::Backend::avx2));
}

TEST_CASE("simd and scalar gemm agree across shapes") {
    if (!k::avx2_available()) return;
    Rng rng(321);
    for (auto [m, kk, n] : std::vector<std::array<std::size_t, 3>>{
             {1, 1, 1}, {2, 3, 4}, {5, 5, 5}, {7, 3, 9}, {8, 8, 8}, {13, 17, 11}, {32, 32, 32}}) {
        const auto a = random_vec(rng, m * kk);
        const auto b = random_vec(rng, kk * n);
        std::vector<double> c_simd(m * n, 0.5), c_ref(m * n, 0.5);
        REQUIRE(k::set_backend(k::Backend::avx2));
        k::gemm_acc(a.data(), b.data(), c_simd.data(), m, kk, n);
        REQUIRE(k::set_backend(k::Backend::scalar));
        k::gemm_acc(a.data(), b.data(), c_ref.data(), m, kk, n);
        for (std::size_t i = 0; i < m * n; ++i)
            CHECK(std::abs(c_simd[i] - c_ref[i]) <= 1e-13 * (1.0 + std::abs(c_ref[i])));
    }
    REQUIRE(k::set_backend(k::Backend::avx2));
}
