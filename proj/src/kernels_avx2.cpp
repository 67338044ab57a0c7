// AVX2 kernel variants.  Compiled with -mavx2 (no FMA) and -ffp-contract=off;
// each lane performs the same IEEE operations in the same order as the scalar
// reference, so outputs are bit-identical.  Reductions keep the 4-lane stripe
// layout in a single __m256d accumulator (lane l == index mod 4).

#include "levylp/kernels.hpp"
#include "levylp/kernels_detail.hpp"

#if defined(__x86_64__) || defined(__i386__)
#define LEVYLP_HAVE_AVX2_TU 1
#include <immintrin.h>
#else
#define LEVYLP_HAVE_AVX2_TU 0
#endif

#include <cmath>

namespace levylp::kernels {

#if LEVYLP_HAVE_AVX2_TU

namespace {

namespace kd = detail;

inline __m256d abs_pd(__m256d x) {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    return _mm256_and_pd(x, mask);
}

// Finish a striped reduction: fold the tail into the stripe accumulators,
// then combine exactly like the scalar kernel.
template <class TailFn>
double finish(__m256d acc, std::size_t i, std::size_t n, TailFn tail) {
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    for (; i < n; ++i) lane[i % 4] += tail(i);
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double a_sum_sq_diff(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(b + i), _mm256_loadu_pd(a + i));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    return finish(acc, i, n, [&](std::size_t k) {
        double d = b[k] - a[k];
        return d * d;
    });
}

double a_sum_prod_diff(const double* a, const double* b, const double* c, const double* d,
                       std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d df = _mm256_sub_pd(_mm256_loadu_pd(b + i), _mm256_loadu_pd(a + i));
        __m256d dg = _mm256_sub_pd(_mm256_loadu_pd(d + i), _mm256_loadu_pd(c + i));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(df, dg));
    }
    return finish(acc, i, n, [&](std::size_t k) { return (b[k] - a[k]) * (d[k] - c[k]); });
}

double a_sum_power_remainder(const double* a, const double* b, std::size_t n, double p) {
    if (p == 2.0) return a_sum_sq_diff(a, b, n);
    if (p == 3.0) {
        __m256d acc = _mm256_setzero_pd();
        const __m256d three = _mm256_set1_pd(3.0);
        std::size_t i = 0;
        for (; i + 4 <= n; i += 4) {
            __m256d va = _mm256_loadu_pd(a + i);
            __m256d vb = _mm256_loadu_pd(b + i);
            __m256d fa = abs_pd(va), fb = abs_pd(vb);
            __m256d cubb = _mm256_mul_pd(_mm256_mul_pd(fb, vb), vb);
            __m256d cuba = _mm256_mul_pd(_mm256_mul_pd(fa, va), va);
            __m256d slope = _mm256_mul_pd(three, _mm256_mul_pd(va, fa));
            __m256d r = _mm256_sub_pd(_mm256_sub_pd(cubb, cuba),
                                      _mm256_mul_pd(slope, _mm256_sub_pd(vb, va)));
            acc = _mm256_add_pd(acc, r);
        }
        return finish(acc, i, n, [&](std::size_t k) { return kd::remainder_p3(a[k], b[k]); });
    }
    if (p == 1.5) {
        __m256d acc = _mm256_setzero_pd();
        const __m256d c15 = _mm256_set1_pd(1.5);
        const __m256d zero = _mm256_setzero_pd();
        std::size_t i = 0;
        for (; i + 4 <= n; i += 4) {
            __m256d va = _mm256_loadu_pd(a + i);
            __m256d vb = _mm256_loadu_pd(b + i);
            __m256d fa = abs_pd(va), fb = abs_pd(vb);
            __m256d sa = _mm256_sqrt_pd(fa), sb = _mm256_sqrt_pd(fb);
            __m256d pb = _mm256_mul_pd(fb, sb);
            __m256d pa = _mm256_mul_pd(fa, sa);
            __m256d slope = _mm256_mul_pd(c15, _mm256_div_pd(va, sa));
            // a == 0 lanes: 0/0 = NaN, masked to the scalar kernel's 0.
            __m256d iszero = _mm256_cmp_pd(va, zero, _CMP_EQ_OQ);
            slope = _mm256_andnot_pd(iszero, slope);
            __m256d r = _mm256_sub_pd(_mm256_sub_pd(pb, pa),
                                      _mm256_mul_pd(slope, _mm256_sub_pd(vb, va)));
            acc = _mm256_add_pd(acc, r);
        }
        return finish(acc, i, n, [&](std::size_t k) { return kd::remainder_p15(a[k], b[k]); });
    }
    // Generic exponent: same striped scalar loop as the reference kernel.
    return scalar_ops().sum_power_remainder(a, b, n, p);
}

double a_sum_abs_pow(const double* v, std::size_t n, double p) {
    if (p == 2.0) {
        __m256d acc = _mm256_setzero_pd();
        std::size_t i = 0;
        for (; i + 4 <= n; i += 4) {
            __m256d x = _mm256_loadu_pd(v + i);
            acc = _mm256_add_pd(acc, _mm256_mul_pd(x, x));
        }
        return finish(acc, i, n, [&](std::size_t k) { return v[k] * v[k]; });
    }
    if (p == 3.0) {
        __m256d acc = _mm256_setzero_pd();
        std::size_t i = 0;
        for (; i + 4 <= n; i += 4) {
            __m256d x = _mm256_loadu_pd(v + i);
            __m256d f = abs_pd(x);
            acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_mul_pd(f, x), x));
        }
        return finish(acc, i, n, [&](std::size_t k) { return std::fabs(v[k]) * v[k] * v[k]; });
    }
    if (p == 1.5) {
        __m256d acc = _mm256_setzero_pd();
        std::size_t i = 0;
        for (; i + 4 <= n; i += 4) {
            __m256d f = abs_pd(_mm256_loadu_pd(v + i));
            acc = _mm256_add_pd(acc, _mm256_mul_pd(f, _mm256_sqrt_pd(f)));
        }
        return finish(acc, i, n, [&](std::size_t k) {
            double f = std::fabs(v[k]);
            return f * std::sqrt(f);
        });
    }
    if (p == 1.0) {
        __m256d acc = _mm256_setzero_pd();
        std::size_t i = 0;
        for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, abs_pd(_mm256_loadu_pd(v + i)));
        return finish(acc, i, n, [&](std::size_t k) { return std::fabs(v[k]); });
    }
    return scalar_ops().sum_abs_pow(v, n, p);
}

double a_sum_abs2(const cplx* z, std::size_t n) {
    const double* d = reinterpret_cast<const double*>(z);
    __m256d acc = _mm256_setzero_pd();  // lanes: stripes (0,2,1,3) after hadd
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d z01 = _mm256_loadu_pd(d + 2 * i);
        __m256d z23 = _mm256_loadu_pd(d + 2 * i + 4);
        __m256d s01 = _mm256_mul_pd(z01, z01);
        __m256d s23 = _mm256_mul_pd(z23, z23);
        acc = _mm256_add_pd(acc, _mm256_hadd_pd(s01, s23));
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    // hadd lane order is (stripe0, stripe2, stripe1, stripe3).
    double stripes[4] = {lane[0], lane[2], lane[1], lane[3]};
    for (; i < n; ++i) {
        double re = d[2 * i], im = d[2 * i + 1];
        stripes[i % 4] += re * re + im * im;
    }
    return (stripes[0] + stripes[1]) + (stripes[2] + stripes[3]);
}

void a_accumulate_sq_diff(double* g, const double* a, const double* b, double w, std::size_t n) {
    const __m256d vw = _mm256_set1_pd(w);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d dd = _mm256_sub_pd(_mm256_loadu_pd(b + i), _mm256_loadu_pd(a + i));
        __m256d add = _mm256_mul_pd(vw, _mm256_mul_pd(dd, dd));
        _mm256_storeu_pd(g + i, _mm256_add_pd(_mm256_loadu_pd(g + i), add));
    }
    for (; i < n; ++i) {
        double dd = b[i] - a[i];
        g[i] += w * (dd * dd);
    }
}

void a_accumulate_sq_diff_decreasing(double* g, const double* a, const double* b, double w,
                                     std::size_t n) {
    const __m256d vw = _mm256_set1_pd(w);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d va = _mm256_loadu_pd(a + i);
        __m256d vb = _mm256_loadu_pd(b + i);
        __m256d dd = _mm256_sub_pd(vb, va);
        __m256d gv = _mm256_loadu_pd(g + i);
        __m256d upd = _mm256_add_pd(gv, _mm256_mul_pd(vw, _mm256_mul_pd(dd, dd)));
        __m256d mask = _mm256_cmp_pd(abs_pd(va), abs_pd(vb), _CMP_GT_OQ);
        _mm256_storeu_pd(g + i, _mm256_blendv_pd(gv, upd, mask));
    }
    for (; i < n; ++i) {
        if (std::fabs(a[i]) > std::fabs(b[i])) {
            double dd = b[i] - a[i];
            g[i] += w * (dd * dd);
        }
    }
}

// (ar+i*ai)*(mr+i*mi) for two packed complex values.
inline __m256d cmul2(__m256d a, __m256d m) {
    __m256d mr = _mm256_movedup_pd(m);
    __m256d mi = _mm256_permute_pd(m, 0xF);
    __m256d aswap = _mm256_permute_pd(a, 0x5);
    return _mm256_addsub_pd(_mm256_mul_pd(a, mr), _mm256_mul_pd(aswap, mi));
}

void a_cmul(cplx* a, const cplx* m, std::size_t n) {
    double* pa = reinterpret_cast<double*>(a);
    const double* pm = reinterpret_cast<const double*>(m);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vm = _mm256_loadu_pd(pm + 2 * i);
        _mm256_storeu_pd(pa + 2 * i, cmul2(va, vm));
    }
    for (; i < n; ++i) {
        double ar = pa[2 * i], ai = pa[2 * i + 1];
        double mr = pm[2 * i], mi = pm[2 * i + 1];
        pa[2 * i] = ar * mr - ai * mi;
        pa[2 * i + 1] = ar * mi + ai * mr;
    }
}

void a_cscale(cplx* a, double s, std::size_t n) {
    double* pa = reinterpret_cast<double*>(a);
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        _mm256_storeu_pd(pa + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(pa + 2 * i), vs));
    for (; i < n; ++i) {
        pa[2 * i] *= s;
        pa[2 * i + 1] *= s;
    }
}

void a_fft_pass(cplx* a, const cplx* tw, std::size_t n, std::size_t len, int dir) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    double* pd = reinterpret_cast<double*>(a);
    const double* pt = reinterpret_cast<const double*>(tw);
    if (half < 2) {
        scalar_ops().fft_pass(a, tw, n, len, dir);
        return;
    }
    const __m256d conj_mask =
        _mm256_castsi256_pd(_mm256_set_epi64x(0x8000000000000000LL, 0, 0x8000000000000000LL, 0));
    for (std::size_t s = 0; s < n; s += len) {
        for (std::size_t j = 0; j + 2 <= half; j += 2) {
            const std::size_t iu = s + j, iv = s + j + half;
            __m256d w;
            if (stride == 1) {
                w = _mm256_loadu_pd(pt + 2 * j);
            } else {
                __m128d w0 = _mm_loadu_pd(pt + 2 * j * stride);
                __m128d w1 = _mm_loadu_pd(pt + 2 * (j + 1) * stride);
                w = _mm256_insertf128_pd(_mm256_castpd128_pd256(w0), w1, 1);
            }
            if (dir < 0) w = _mm256_xor_pd(w, conj_mask);
            __m256d v = _mm256_loadu_pd(pd + 2 * iv);
            __m256d t = cmul2(v, w);
            __m256d u = _mm256_loadu_pd(pd + 2 * iu);
            _mm256_storeu_pd(pd + 2 * iu, _mm256_add_pd(u, t));
            _mm256_storeu_pd(pd + 2 * iv, _mm256_sub_pd(u, t));
        }
    }
}

}  // namespace

const Ops* avx2_ops() {
    if (!__builtin_cpu_supports("avx2")) return nullptr;
    static const Ops ops = {
        "avx2",
        a_sum_power_remainder,
        a_sum_sq_diff,
        a_sum_prod_diff,
        a_sum_abs_pow,
        a_sum_abs2,
        a_accumulate_sq_diff,
        a_accumulate_sq_diff_decreasing,
        a_cmul,
        a_cscale,
        a_fft_pass,
    };
    return &ops;
}

#else

const Ops* avx2_ops() { return nullptr; }

#endif  // LEVYLP_HAVE_AVX2_TU

}  // namespace levylp::kernels
