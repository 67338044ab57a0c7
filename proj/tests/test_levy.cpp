#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "levylp/levy.hpp"

using namespace levylp;

namespace {
// One-sided stable integrals, frozen from the closed forms
//   C(a) = Gamma(2-a) cos(pi a/2) / (a (1-a)),  C(1) = pi/2
//   D(a) = Gamma(2-a) sin(pi a/2) / (a (a-1))   (1 < a < 2)
//   S(a) = Gamma(1-a) sin(pi a/2) / a           (0 < a < 1)
double coefC(double a) {
    if (a == 1.0) return kPi / 2.0;
    return std::tgamma(2.0 - a) * std::cos(kPi * a / 2.0) / (a * (1.0 - a));
}
}  // namespace

TEST_CASE("make_measure validates parameters") {
    CHECK_THROWS_AS(LevyMeasure::stable(2.0, 1.0, 1.0), config_error);
    CHECK_THROWS_AS(LevyMeasure::stable(0.0, 1.0, 1.0), config_error);
    CHECK_THROWS_AS(LevyMeasure::stable(1.0, 0.0, 0.0), config_error);
    CHECK_THROWS_AS(LevyMeasure::compound_poisson(-1.0, {}), config_error);
    LevyMeasure::JumpDistribution bad;
    bad.a = -1.0;
    bad.b = 2.0;  // interval through 0
    CHECK_THROWS_AS(LevyMeasure::compound_poisson(1.0, bad), config_error);
}

TEST_CASE("stable densities and support") {
    auto sym = LevyMeasure::stable(1.0, 1.0, 1.0);
    CHECK(sym.density1(0.5) == doctest::Approx(4.0));         // |y|^{-2}
    CHECK(sym.density1(-0.5) == doctest::Approx(4.0));        // even
    CHECK(sym.symmetric());

    auto onesided = LevyMeasure::stable(0.5, 2.0, 0.0);
    CHECK(onesided.density1(0.7) > 0.0);
    CHECK(onesided.density1(-0.7) == 0.0);

    // nonnegative on random sample points
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    auto asym = LevyMeasure::stable(1.2, 2.0, 1.0);
    for (int i = 0; i < 10000; ++i) CHECK(asym.density1(u(rng)) >= 0.0);
}

TEST_CASE("compound poisson total mass equals the rate") {
    LevyMeasure::JumpDistribution jd;
    jd.kind = LevyMeasure::JumpDistribution::Kind::uniform;
    jd.a = 1.0;
    jd.b = 2.0;
    auto cp = LevyMeasure::compound_poisson(3.0, jd);
    CHECK(cp.total_mass() == doctest::Approx(3.0));
    CHECK(cp.side_band_moment(+1, 0.0, 10.0, 0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(integrability_value(cp).value == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("integrability value: symmetric 1-stable equals 4") {
    auto nu = LevyMeasure::stable(1.0, 1.0, 1.0);
    auto r = integrability_value(nu);
    CHECK(std::fabs(r.value - 4.0) <= 1e-6);
    CHECK(r.value == r.value);  // finite
}

TEST_CASE("integrability convergence order tracks 2 - alpha") {
    for (double a : {1.5, 1.8}) {
        auto nu = LevyMeasure::stable(a, 1.0, 1.0);
        auto r = integrability_value(nu);
        CHECK(std::fabs(r.convergence_order - (2.0 - a)) <= 0.1);
    }
}

TEST_CASE("characteristic exponent closed forms vs quadrature") {
    // symmetric 1-stable: Re psi = pi * c * |xi|
    auto cauchy = LevyMeasure::stable(1.0, 1.0, 1.0);
    auto psi = char_exponent(cauchy);
    CHECK(psi.source() == CharacteristicExponent::Source::closed_form);
    for (double xi : {0.5, 1.0, 3.7, 20.0, 111.0}) {
        CHECK(psi.real_part1(xi) == doctest::Approx(kPi * xi).epsilon(1e-12));
        double err = 0.0;
        cplx q = char_exponent_quadrature(cauchy, &xi, &err);
        CHECK(std::fabs(q.real() - kPi * xi) <= 1e-6 * kPi * xi);
        CHECK(std::fabs(q.imag()) <= 1e-8 * kPi * xi);
    }

    // psi(0) = 0 for every family
    double zero = 0.0;
    CHECK(std::abs(psi.eval1(0.0)) == 0.0);
    CHECK(std::abs(char_exponent_quadrature(cauchy, &zero)) == 0.0);

    // asymmetric stable: conjugation symmetry and nonzero imaginary part
    auto asym = LevyMeasure::stable(1.2, 2.0, 1.0);
    auto apsi = char_exponent(asym);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-80.0, 80.0);
    for (int i = 0; i < 200; ++i) {
        double xi = u(rng);
        cplx z = apsi.eval1(xi), zc = apsi.eval1(-xi);
        CHECK(std::abs(zc - std::conj(z)) <= 1e-12 * (1.0 + std::abs(z)));
        CHECK(z.real() >= -1e-12);
    }
    CHECK(std::fabs(apsi.eval1(1.0).imag()) > 1e-3);

    // closed form against the graded quadrature for asymmetric exponents
    for (double xi : {0.7, 2.0, 9.0, 60.0}) {
        double err = 0.0;
        cplx q = char_exponent_quadrature(asym, &xi, &err);
        cplx c = apsi.eval1(xi);
        CHECK(std::abs(q - c) <= 1e-6 * std::abs(c));
    }

    // alpha in (0,1) branch of the imaginary part
    auto lowa = LevyMeasure::stable(0.7, 3.0, 0.5);
    auto lpsi = char_exponent(lowa);
    for (double xi : {0.9, 4.0, 33.0}) {
        cplx q = char_exponent_quadrature(lowa, &xi);
        cplx c = lpsi.eval1(xi);
        CHECK(std::abs(q - c) <= 2e-6 * std::abs(c));
    }

    // tempered stable is quadrature-backed and approaches the stable value
    // as the tempering vanishes
    auto ts = LevyMeasure::tempered(0.8, 1.0, 1.0, 1e-4, 1e-4);
    auto tpsi = char_exponent(ts);
    CHECK(tpsi.source() == CharacteristicExponent::Source::quadrature);
    double xi0 = 5.0;
    double stable_re = 2.0 * coefC(0.8) * std::pow(xi0, 0.8);
    CHECK(tpsi.real_part1(xi0) == doctest::Approx(stable_re).epsilon(2e-2));
    CHECK(tpsi.real_part1(xi0) < stable_re);  // tempering only removes mass
}

TEST_CASE("compound poisson exponent: closed form, bounded real part") {
    LevyMeasure::JumpDistribution jd;
    jd.a = 1.0;
    jd.b = 2.0;
    auto cp = LevyMeasure::compound_poisson(3.0, jd);
    auto psi = char_exponent(cp);
    for (double xi : {0.3, 1.0, 10.0, 100.0}) {
        double err = 0.0;
        cplx q = char_exponent_quadrature(cp, &xi, &err);
        cplx c = psi.eval1(xi);
        CHECK(std::abs(q - c) <= 1e-9 * (1.0 + std::abs(c)));
        CHECK(c.real() <= 2.0 * 3.0 + 1e-12);
        CHECK(c.real() >= 0.0);
    }
}

TEST_CASE("symmetrize: ratio, reconstruction, evenness") {
    auto asym = LevyMeasure::stable(1.2, 2.0, 1.0);
    auto s = symmetrize(asym);
    CHECK(s.nu_sym.symmetric());
    CHECK(s.ratio(0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(s.ratio(-0.5) == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));

    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    for (int i = 0; i < 10000; ++i) {
        double y = u(rng);
        if (y == 0.0) continue;
        double sym = s.nu_sym.density1(y);
        CHECK(std::fabs(sym - s.nu_sym.density1(-y)) <= 1e-12 * sym);
        CHECK(std::fabs(s.ratio(y)) <= 1.0 + 1e-12);
        double recon = (1.0 + s.ratio(y)) * sym;
        CHECK(std::fabs(recon - asym.density1(y)) <= 1e-12 * std::max(1e-300, asym.density1(y)));
    }

    // symmetric measure: r == 0, nu~ = nu
    auto symm = LevyMeasure::stable(1.0, 1.0, 1.0);
    auto ss = symmetrize(symm);
    CHECK(ss.ratio(0.7) == 0.0);
    CHECK(ss.nu_sym.density1(0.7) == doctest::Approx(symm.density1(0.7)));

    // one-sided: |r| = 1 attained
    auto onesided = LevyMeasure::stable(0.5, 2.0, 0.0);
    auto os = symmetrize(onesided);
    CHECK(os.ratio(0.3) == doctest::Approx(1.0));
    CHECK(os.ratio(-0.3) == doctest::Approx(-1.0));
    CHECK(os.nu_sym.density1(-0.3) == doctest::Approx(onesided.density1(0.3) / 2.0));
}

TEST_CASE("hartman-wintner profile") {
    std::vector<double> radii = {10.0, 100.0, 1000.0};

    auto cauchy = LevyMeasure::stable(1.0, 1.0, 1.0);
    auto prof = hartman_wintner_profile(char_exponent(cauchy), radii);
    CHECK(prof.values[0] < prof.values[1]);
    CHECK(prof.values[1] < prof.values[2]);
    CHECK(prof.verdict == "HW holds (empirical)");
    // closed form K |xi| / log(1+|xi|)
    CHECK(prof.values[2] == doctest::Approx(kPi * 1000.0 / std::log1p(1000.0)).epsilon(1e-10));

    LevyMeasure::JumpDistribution jd;
    jd.a = 1.0;
    jd.b = 2.0;
    auto cp = LevyMeasure::compound_poisson(3.0, jd);
    auto cprof = hartman_wintner_profile(char_exponent(cp), radii);
    CHECK(cprof.verdict == "HW fails (bounded)");

    auto ts = LevyMeasure::tempered(1.2, 1.0, 1.0, 0.5, 0.5);
    auto tprof = hartman_wintner_profile(char_exponent(ts), radii);
    CHECK(tprof.verdict == "HW holds (empirical)");

    CHECK_THROWS_AS(hartman_wintner_profile(char_exponent(cauchy), {5.0, 2.0}), config_error);
}

TEST_CASE("measure JSON round trip") {
    auto m = LevyMeasure::from_json_text(
        R"({"family":"stable_asymmetric","alpha":1.0,"c_plus":2.0,"c_minus":1.0,"d":1})");
    CHECK(m.alpha() == 1.0);
    CHECK(m.c_plus() == 2.0);
    auto again = LevyMeasure::from_json_text(m.to_json_text());
    CHECK(again.c_minus() == 1.0);

    CHECK_THROWS_AS(LevyMeasure::from_json_text("{not json"), config_error);
    CHECK_THROWS_AS(LevyMeasure::from_json_text(R"({"family":"nope"})"), config_error);
    CHECK_THROWS_AS(
        LevyMeasure::from_json_text(R"({"family":"stable","alpha":2.5,"c_plus":1,"c_minus":1})"),
        config_error);

    auto cp = LevyMeasure::from_json_text(
        R"({"family":"compound_poisson","rate":3.0,"jump_density":{"kind":"uniform","a":1.0,"b":2.0}})");
    CHECK(cp.total_mass() == 3.0);
}

TEST_CASE("2d isotropic stable exponent") {
    auto nu = LevyMeasure::stable(1.0, 0.5, 0.5, 2);
    auto psi = char_exponent(nu);
    double xi[2] = {3.0, 4.0};  // |xi| = 5
    double err = 0.0;
    cplx q = char_exponent_quadrature(nu, xi, &err);
    cplx c = psi.eval(xi);
    CHECK(std::abs(c.imag()) == 0.0);
    CHECK(std::abs(q - c) <= 5e-4 * std::abs(c));
    // isotropy
    double xi2[2] = {5.0, 0.0};
    CHECK(std::abs(psi.eval(xi2) - c) <= 1e-12 * std::abs(c));
}
