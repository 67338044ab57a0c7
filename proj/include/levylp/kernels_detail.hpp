#pragma once

#include <cmath>

// Per-element definitions shared by the scalar kernels, the SIMD variants
// (which must mirror the exact operation order) and the pointwise API.
//
// F(a,b;p) = |b|^p - |a|^p - p*a*|a|^{p-2}*(b-a) is the second-order Taylor
// remainder of x -> |x|^p; it is nonnegative for p > 1 by convexity.  The
// p = 2, 3, 1.5 fast paths are decomposed into IEEE-exact primitives
// (mul/sub/sqrt/div) so the AVX2 lanes reproduce the scalar bits.

namespace levylp::kernels::detail {

inline double remainder_p2(double a, double b) {
    double d = b - a;
    return d * d;
}

inline double remainder_p3(double a, double b) {
    double fa = std::fabs(a), fb = std::fabs(b);
    double vb = fb * b * b;  // |b|^3
    double va = fa * a * a;  // |a|^3
    double slope = 3.0 * (a * fa);
    return (vb - va) - slope * (b - a);
}

inline double remainder_p15(double a, double b) {
    double fa = std::fabs(a), fb = std::fabs(b);
    double sa = std::sqrt(fa), sb = std::sqrt(fb);
    double vb = fb * sb;  // |b|^{3/2}
    double va = fa * sa;
    double slope = (a == 0.0) ? 0.0 : 1.5 * (a / sa);  // 1.5*sign(a)*|a|^{1/2}
    return (vb - va) - slope * (b - a);
}

inline double remainder_generic(double a, double b, double p) {
    double fa = std::fabs(a), fb = std::fabs(b);
    double vb = std::pow(fb, p);
    double va = std::pow(fa, p);
    // a*|a|^{p-2} = sign(a)*|a|^{p-1} -> 0 as a -> 0 for p > 1.
    double slope = (a == 0.0) ? 0.0 : p * a * std::pow(fa, p - 2.0);
    return (vb - va) - slope * (b - a);
}

inline double remainder(double a, double b, double p) {
    if (p == 2.0) return remainder_p2(a, b);
    if (p == 3.0) return remainder_p3(a, b);
    if (p == 1.5) return remainder_p15(a, b);
    return remainder_generic(a, b, p);
}

// Smoothed remainder of x -> (x^2 + eps^2)^{p/2}.
inline double remainder_smoothed(double a, double b, double p, double eps) {
    double qa = a * a + eps * eps;
    double qb = b * b + eps * eps;
    double vb = std::pow(qb, 0.5 * p);
    double va = std::pow(qa, 0.5 * p);
    double slope = p * a * std::pow(qa, 0.5 * p - 1.0);
    return (vb - va) - slope * (b - a);
}

// K(a,b;p) = (b-a)^2 (|a| v |b|)^{p-2}, the quadratic gauge comparable to F.
inline double quadratic_gauge(double a, double b, double p) {
    double m = std::fmax(std::fabs(a), std::fabs(b));
    double d = b - a;
    if (m == 0.0) return 0.0;
    return d * d * std::pow(m, p - 2.0);
}

inline double abs_pow(double v, double p) {
    double f = std::fabs(v);
    if (p == 2.0) return v * v;
    if (p == 3.0) return f * v * v;
    if (p == 1.5) return f * std::sqrt(f);
    if (p == 1.0) return f;
    return std::pow(f, p);
}

}  // namespace levylp::kernels::detail
