#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "levylp/fft.hpp"
#include "levylp/grid.hpp"

using namespace levylp;

namespace {

GridFunction random_real(const GridSpec& spec, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    GridFunction f(spec);
    for (auto& z : f.values()) z = cplx(nd(rng), 0.0);
    return f;
}

GridFunction gaussian(const GridSpec& spec, double sigma) {
    GridFunction f(spec);
    for (std::size_t i = 0; i < spec.n; ++i) {
        double x = spec.coord(i);
        f.values()[i] = std::exp(-x * x / (2.0 * sigma * sigma));
    }
    return f;
}

}  // namespace

TEST_CASE("fft roundtrip is the identity") {
    GridSpec spec{1, 1024, 10.0};
    auto f = random_real(spec, 3);
    for (auto& z : f.values()) z += cplx(0.0, 0.3);  // complex data too
    auto back = fourier_inverse(fourier_forward(f));
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        m = std::max(m, std::abs(back.values()[i] - f.values()[i]));
    CHECK(m <= 1e-12 * f.max_abs());
}

TEST_CASE("zero transforms to zero") {
    GridSpec spec{1, 256, 5.0};
    GridFunction f(spec);
    auto fh = fourier_forward(f);
    CHECK(fh.max_abs() == 0.0);
}

TEST_CASE("gaussian transform matches the closed form") {
    GridSpec spec{1, 4096, 20.0};
    auto f = gaussian(spec, 1.0);
    auto fh = fourier_forward(f);
    const double s2pi = std::sqrt(2.0 * kPi);
    double worst = 0.0;
    for (std::size_t k = 0; k < spec.n; ++k) {
        double xi = spec.freq(k);
        if (std::fabs(xi) > 5.0) continue;
        double want = s2pi * std::exp(-xi * xi / 2.0);
        worst = std::max(worst, std::abs(fh.values()[k] - cplx(want, 0.0)));
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("parseval and plancherel hold on the grid") {
    GridSpec spec{1, 2048, 15.0};
    auto f = random_real(spec, 5);
    auto g = random_real(spec, 6);
    auto fh = fourier_forward(f);
    auto gh = fourier_forward(g);

    double lhs = f.inner(g);
    cplx rhs(0.0, 0.0);
    for (std::size_t k = 0; k < spec.n; ++k) rhs += fh.values()[k] * std::conj(gh.values()[k]);
    rhs *= spec.dxi() / (2.0 * kPi);
    CHECK(std::abs(lhs - rhs.real()) <= 1e-10 * std::fabs(lhs));

    double l2 = f.norm(2.0);
    double sp = 0.0;
    for (const auto& z : fh.values()) sp += std::norm(z);
    sp *= spec.dxi() / (2.0 * kPi);
    CHECK(std::fabs(l2 * l2 - sp) <= 1e-10 * l2 * l2);
}

TEST_CASE("spectral shift: commensurate shifts are circular, off-grid match analytics") {
    GridSpec spec{1, 1024, 20.0};
    auto f = gaussian(spec, 1.3);
    auto s = to_spectrum(f);

    double y = 7.0 * spec.h();
    auto shifted = shift_from_spectrum(s, &y);
    for (std::size_t i = 0; i < spec.n; ++i) {
        std::size_t j = (i + 7) % spec.n;
        CHECK(std::abs(shifted.values()[i] - f.values()[j]) <= 1e-12);
    }

    double yo = 0.3123456;
    auto off = shift_from_spectrum(s, &yo);
    double worst = 0.0;
    for (std::size_t i = 0; i < spec.n; ++i) {
        double x = spec.coord(i) + yo;
        if (std::fabs(x) > spec.half_width - 1.0) continue;
        double want = std::exp(-x * x / (2.0 * 1.3 * 1.3));
        worst = std::max(worst, std::abs(off.values()[i] - cplx(want, 0.0)));
    }
    CHECK(worst <= 1e-9);

    // ShiftEngine path computes the same values.
    ShiftEngine eng(spec);
    ShiftTable table(spec, &yo);
    std::vector<double> out;
    eng.shifted_real(s, table, out);
    for (std::size_t i = 0; i < spec.n; ++i)
        CHECK(std::fabs(out[i] - off.values()[i].real()) <= 1e-13);
}

TEST_CASE("spectral gradient matches the analytic derivative") {
    GridSpec spec{1, 2048, 20.0};
    auto f = gaussian(spec, 1.0);
    auto g = gradient_axis_from_spectrum(to_spectrum(f), 0);
    double worst = 0.0;
    for (std::size_t i = 0; i < spec.n; ++i) {
        double x = spec.coord(i);
        double want = -x * std::exp(-x * x / 2.0);
        worst = std::max(worst, std::abs(g.values()[i] - cplx(want, 0.0)));
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("2d roundtrip, parseval, shift") {
    GridSpec spec{2, 64, 8.0};
    std::mt19937_64 rng(9);
    std::normal_distribution<double> nd;
    GridFunction f(spec);
    for (std::size_t i = 0; i < spec.n; ++i)
        for (std::size_t j = 0; j < spec.n; ++j) {
            double x = spec.coord(i), y = spec.coord(j);
            f.values()[i * spec.n + j] = std::exp(-(x * x + y * y) / 2.0) * (1.0 + 0.1 * nd(rng));
        }
    auto back = fourier_inverse(fourier_forward(f));
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        m = std::max(m, std::abs(back.values()[i] - f.values()[i]));
    CHECK(m <= 1e-12 * f.max_abs());

    auto fh = fourier_forward(f);
    double l2 = f.norm(2.0);
    double sp = 0.0;
    for (const auto& z : fh.values()) sp += std::norm(z);
    sp *= spec.dxi() * spec.dxi() / (4.0 * kPi * kPi);
    CHECK(std::fabs(l2 * l2 - sp) <= 1e-10 * l2 * l2);

    GridFunction smooth(spec);
    for (std::size_t i = 0; i < spec.n; ++i)
        for (std::size_t j = 0; j < spec.n; ++j) {
            double x = spec.coord(i), y = spec.coord(j);
            smooth.values()[i * spec.n + j] = std::exp(-(x * x + y * y) / 2.0);
        }
    double yv[2] = {0.4321, -0.177};
    auto sh = shift_from_spectrum(to_spectrum(smooth), yv);
    double worst = 0.0;
    for (std::size_t i = 0; i < spec.n; ++i)
        for (std::size_t j = 0; j < spec.n; ++j) {
            double x1 = spec.coord(i) + yv[0], x2 = spec.coord(j) + yv[1];
            if (std::fabs(x1) > 5.0 || std::fabs(x2) > 5.0) continue;
            double want = std::exp(-(x1 * x1 + x2 * x2) / 2.0);
            worst = std::max(worst, std::abs(sh.values()[i * spec.n + j] - cplx(want, 0.0)));
        }
    CHECK(worst <= 1e-8);
}

TEST_CASE("binary serialization roundtrip is exact") {
    GridSpec spec{1, 128, 12.5};
    auto f = random_real(spec, 17);
    auto path = std::filesystem::temp_directory_path() / "levylp_grid_test.bin";
    f.write_binary(path.string());
    auto g = GridFunction::read_binary(path.string());
    REQUIRE(g.spec() == spec);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(f.values()[i] == g.values()[i]);
    std::filesystem::remove(path);
}
