#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <random>
#include <vector>

#include "levylp/kernels.hpp"
#include "levylp/kernels_detail.hpp"

using namespace levylp;
namespace kd = kernels::detail;

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t seed, double scale = 2.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, scale);
    std::vector<double> v(n);
    for (auto& x : v) x = nd(rng);
    return v;
}

std::vector<kernels::cplx> random_cvec(std::size_t n, std::uint64_t seed) {
    auto re = random_vec(n, seed), im = random_vec(n, seed + 1);
    std::vector<kernels::cplx> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = {re[i], im[i]};
    return v;
}

bool bits_equal(double a, double b) {
    return std::memcmp(&a, &b, sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("remainder pointwise values") {
    CHECK(kd::remainder(1.0, 2.0, 3.0) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(kd::remainder(0.0, -1.7, 1.5) == doctest::Approx(std::pow(1.7, 1.5)).epsilon(1e-15));
    CHECK(kd::remainder(0.37, 0.37, 2.5) == 0.0);
    // p = 2 is the plain square.
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 100; ++i) {
        double a = u(rng), b = u(rng);
        CHECK(kd::remainder(a, b, 2.0) == doctest::Approx((b - a) * (b - a)).epsilon(1e-14));
    }
    // Fast paths agree with the generic formula.
    for (int i = 0; i < 200; ++i) {
        double a = u(rng), b = u(rng);
        CHECK(kd::remainder_p3(a, b) ==
              doctest::Approx(kd::remainder_generic(a, b, 3.0)).epsilon(1e-12));
        CHECK(kd::remainder_p15(a, b) ==
              doctest::Approx(kd::remainder_generic(a, b, 1.5)).epsilon(1e-12));
    }
}

TEST_CASE("striped reduction semantics") {
    // The documented stripe order, checked against a hand-rolled evaluation.
    std::vector<double> v = {1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0};
    double acc[4] = {0, 0, 0, 0};
    for (std::size_t i = 0; i < v.size(); ++i) acc[i % 4] += v[i] * v[i];
    double want = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    double zeros[7] = {0, 0, 0, 0, 0, 0, 0};
    CHECK(bits_equal(kernels::scalar_ops().sum_sq_diff(zeros, v.data(), v.size()), want));
}

TEST_CASE("scalar and AVX2 kernels agree bit for bit") {
    const auto* avx = kernels::avx2_ops();
    if (!avx) {
        MESSAGE("AVX2 not available; skipping equivalence checks");
        return;
    }
    const auto& sc = kernels::scalar_ops();
    for (std::size_t n : {std::size_t(0), std::size_t(1), std::size_t(3), std::size_t(4),
                          std::size_t(7), std::size_t(64), std::size_t(1000), std::size_t(4097)}) {
        auto a = random_vec(n, 11 * n + 1);
        auto b = random_vec(n, 11 * n + 2);
        auto c = random_vec(n, 11 * n + 3);
        auto d = random_vec(n, 11 * n + 4);
        // Mix in exact zeros to hit the a == 0 guard.
        for (std::size_t i = 0; i + 8 < n; i += 9) a[i] = 0.0;

        for (double p : {1.5, 2.0, 3.0, 2.7}) {
            CAPTURE(n);
            CAPTURE(p);
            CHECK(bits_equal(sc.sum_power_remainder(a.data(), b.data(), n, p),
                             avx->sum_power_remainder(a.data(), b.data(), n, p)));
            CHECK(bits_equal(sc.sum_abs_pow(a.data(), n, p), avx->sum_abs_pow(a.data(), n, p)));
        }
        CHECK(bits_equal(sc.sum_sq_diff(a.data(), b.data(), n),
                         avx->sum_sq_diff(a.data(), b.data(), n)));
        CHECK(bits_equal(sc.sum_prod_diff(a.data(), b.data(), c.data(), d.data(), n),
                         avx->sum_prod_diff(a.data(), b.data(), c.data(), d.data(), n)));

        auto z = random_cvec(n, 31 * n + 5);
        CHECK(bits_equal(sc.sum_abs2(z.data(), n), avx->sum_abs2(z.data(), n)));

        auto g1 = random_vec(n, 41 * n + 6), g2 = g1;
        sc.accumulate_sq_diff(g1.data(), a.data(), b.data(), 0.37, n);
        avx->accumulate_sq_diff(g2.data(), a.data(), b.data(), 0.37, n);
        for (std::size_t i = 0; i < n; ++i) CHECK(bits_equal(g1[i], g2[i]));

        g1 = random_vec(n, 41 * n + 7);
        g2 = g1;
        sc.accumulate_sq_diff_decreasing(g1.data(), a.data(), b.data(), 0.59, n);
        avx->accumulate_sq_diff_decreasing(g2.data(), a.data(), b.data(), 0.59, n);
        for (std::size_t i = 0; i < n; ++i) CHECK(bits_equal(g1[i], g2[i]));

        auto z1 = random_cvec(n, 51 * n + 8), z2 = z1;
        auto m = random_cvec(n, 51 * n + 9);
        sc.cmul(z1.data(), m.data(), n);
        avx->cmul(z2.data(), m.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(bits_equal(z1[i].real(), z2[i].real()));
            CHECK(bits_equal(z1[i].imag(), z2[i].imag()));
        }

        z1 = random_cvec(n, 61 * n + 10);
        z2 = z1;
        sc.cscale(z1.data(), 1.0 / 3.0, n);
        avx->cscale(z2.data(), 1.0 / 3.0, n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(bits_equal(z1[i].real(), z2[i].real()));
            CHECK(bits_equal(z1[i].imag(), z2[i].imag()));
        }
    }
}

TEST_CASE("fft passes agree bit for bit across kernels") {
    const auto* avx = kernels::avx2_ops();
    if (!avx) return;
    const auto& sc = kernels::scalar_ops();
    for (std::size_t n : {std::size_t(2), std::size_t(8), std::size_t(64), std::size_t(1024)}) {
        std::vector<kernels::cplx> tw(n / 2);
        for (std::size_t j = 0; j < n / 2; ++j) {
            double ang = -2.0 * 3.141592653589793238462643 * double(j) / double(n);
            tw[j] = {std::cos(ang), std::sin(ang)};
        }
        for (int dir : {+1, -1}) {
            auto z1 = random_cvec(n, 100 + n), z2 = z1;
            for (std::size_t len = 2; len <= n; len <<= 1) {
                sc.fft_pass(z1.data(), tw.data(), n, len, dir);
                avx->fft_pass(z2.data(), tw.data(), n, len, dir);
            }
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(bits_equal(z1[i].real(), z2[i].real()));
                CHECK(bits_equal(z1[i].imag(), z2[i].imag()));
            }
        }
    }
}
