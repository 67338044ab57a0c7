#include "levylp/kernels.hpp"
#include "levylp/kernels_detail.hpp"

#include <cmath>

// Scalar reference kernels.  These define the semantics: every reduction
// keeps four stripe accumulators and combines them as (0+1)+(2+3).

namespace levylp::kernels {
namespace {

namespace kd = detail;

template <class ElemFn>
double striped_sum(std::size_t n, ElemFn elem) {
    double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 += elem(i);
        acc1 += elem(i + 1);
        acc2 += elem(i + 2);
        acc3 += elem(i + 3);
    }
    double acc[4] = {acc0, acc1, acc2, acc3};
    for (; i < n; ++i) acc[i % 4] += elem(i);
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double s_sum_power_remainder(const double* a, const double* b, std::size_t n, double p) {
    if (p == 2.0) return striped_sum(n, [&](std::size_t i) { return kd::remainder_p2(a[i], b[i]); });
    if (p == 3.0) return striped_sum(n, [&](std::size_t i) { return kd::remainder_p3(a[i], b[i]); });
    if (p == 1.5) return striped_sum(n, [&](std::size_t i) { return kd::remainder_p15(a[i], b[i]); });
    return striped_sum(n, [&](std::size_t i) { return kd::remainder_generic(a[i], b[i], p); });
}

double s_sum_sq_diff(const double* a, const double* b, std::size_t n) {
    return striped_sum(n, [&](std::size_t i) {
        double d = b[i] - a[i];
        return d * d;
    });
}

double s_sum_prod_diff(const double* a, const double* b, const double* c, const double* d,
                       std::size_t n) {
    return striped_sum(n, [&](std::size_t i) { return (b[i] - a[i]) * (d[i] - c[i]); });
}

double s_sum_abs_pow(const double* v, std::size_t n, double p) {
    if (p == 2.0) return striped_sum(n, [&](std::size_t i) { return v[i] * v[i]; });
    if (p == 3.0)
        return striped_sum(n, [&](std::size_t i) { return std::fabs(v[i]) * v[i] * v[i]; });
    if (p == 1.5)
        return striped_sum(n, [&](std::size_t i) {
            double f = std::fabs(v[i]);
            return f * std::sqrt(f);
        });
    if (p == 1.0) return striped_sum(n, [&](std::size_t i) { return std::fabs(v[i]); });
    return striped_sum(n, [&](std::size_t i) { return std::pow(std::fabs(v[i]), p); });
}

double s_sum_abs2(const cplx* z, std::size_t n) {
    const double* d = reinterpret_cast<const double*>(z);
    // Stripe over complex elements, not raw doubles, so AVX2 can mirror it.
    return striped_sum(n, [&](std::size_t i) {
        double re = d[2 * i], im = d[2 * i + 1];
        return re * re + im * im;
    });
}

void s_accumulate_sq_diff(double* g, const double* a, const double* b, double w, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double d = b[i] - a[i];
        g[i] += w * (d * d);
    }
}

void s_accumulate_sq_diff_decreasing(double* g, const double* a, const double* b, double w,
                                     std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        if (std::fabs(a[i]) > std::fabs(b[i])) {
            double d = b[i] - a[i];
            g[i] += w * (d * d);
        }
    }
}

void s_cmul(cplx* a, const cplx* m, std::size_t n) {
    double* pa = reinterpret_cast<double*>(a);
    const double* pm = reinterpret_cast<const double*>(m);
    for (std::size_t i = 0; i < n; ++i) {
        double ar = pa[2 * i], ai = pa[2 * i + 1];
        double mr = pm[2 * i], mi = pm[2 * i + 1];
        pa[2 * i] = ar * mr - ai * mi;
        pa[2 * i + 1] = ar * mi + ai * mr;
    }
}

void s_cscale(cplx* a, double s, std::size_t n) {
    double* pa = reinterpret_cast<double*>(a);
    for (std::size_t i = 0; i < 2 * n; ++i) pa[i] *= s;
}

void s_fft_pass(cplx* a, const cplx* tw, std::size_t n, std::size_t len, int dir) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    double* pd = reinterpret_cast<double*>(a);
    const double* pt = reinterpret_cast<const double*>(tw);
    for (std::size_t s = 0; s < n; s += len) {
        for (std::size_t j = 0; j < half; ++j) {
            const std::size_t iu = s + j, iv = s + j + half;
            double wr = pt[2 * j * stride];
            double wi = pt[2 * j * stride + 1];
            if (dir < 0) wi = -wi;
            double vr = pd[2 * iv], vi = pd[2 * iv + 1];
            double tr = vr * wr - vi * wi;
            double ti = vr * wi + vi * wr;
            double ur = pd[2 * iu], ui = pd[2 * iu + 1];
            pd[2 * iu] = ur + tr;
            pd[2 * iu + 1] = ui + ti;
            pd[2 * iv] = ur - tr;
            pd[2 * iv + 1] = ui - ti;
        }
    }
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops = {
        "scalar",
        s_sum_power_remainder,
        s_sum_sq_diff,
        s_sum_prod_diff,
        s_sum_abs_pow,
        s_sum_abs2,
        s_accumulate_sq_diff,
        s_accumulate_sq_diff_decreasing,
        s_cmul,
        s_cscale,
        s_fft_pass,
    };
    return ops;
}

}  // namespace levylp::kernels
