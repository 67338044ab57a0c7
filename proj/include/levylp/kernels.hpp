#pragma once

#include <complex>
#include <cstddef>

// Runtime-dispatched arithmetic kernels for the data-parallel inner loops
// (FFT butterfly passes, spectral multiplier application, Taylor-remainder
// and norm reductions over grid arrays).
//
// Every reduction kernel uses the same fixed 4-lane striped accumulation
// order: acc[l] sums elements with index == l (mod 4), the tail is folded
// into its stripe, and the final combine is (acc0+acc1) + (acc2+acc3).
// The scalar and AVX2 variants therefore produce bit-identical results on
// the same input; the equivalence tests assert exact equality, and report
// determinism does not depend on which variant the dispatcher picks at
// runtime on a given machine.

namespace levylp::kernels {

using cplx = std::complex<double>;

struct Ops {
    const char* name;

    // sum_i F(a_i, b_i; p), F the second-order Taylor remainder of |x|^p.
    double (*sum_power_remainder)(const double* a, const double* b, std::size_t n, double p);
    // sum_i (b_i - a_i)^2
    double (*sum_sq_diff)(const double* a, const double* b, std::size_t n);
    // sum_i (b_i - a_i) * (d_i - c_i)
    double (*sum_prod_diff)(const double* a, const double* b, const double* c, const double* d,
                            std::size_t n);
    // sum_i |v_i|^p  (fast paths for p in {1, 1.5, 2, 3})
    double (*sum_abs_pow)(const double* v, std::size_t n, double p);
    // sum_i |z_i|^2 over complex data
    double (*sum_abs2)(const cplx* z, std::size_t n);
    // g_i += w * (b_i - a_i)^2
    void (*accumulate_sq_diff)(double* g, const double* a, const double* b, double w,
                               std::size_t n);
    // g_i += w * (b_i - a_i)^2 where |a_i| > |b_i| (strict), else unchanged
    void (*accumulate_sq_diff_decreasing)(double* g, const double* a, const double* b, double w,
                                          std::size_t n);
    // a_i *= m_i (complex)
    void (*cmul)(cplx* a, const cplx* m, std::size_t n);
    // a_i *= s (complex by real scalar)
    void (*cscale)(cplx* a, double s, std::size_t n);
    // One radix-2 FFT pass over all blocks of length `len`.
    // tw[j * (n/len)] = exp(-2*pi*i*j/len); dir=+1 forward, dir=-1 conjugated.
    void (*fft_pass)(cplx* a, const cplx* tw, std::size_t n, std::size_t len, int dir);
};

// Kernel set selected at startup: AVX2 when the CPU supports it, else scalar.
// The LEVYLP_KERNELS environment variable ("scalar" / "avx2") overrides.
const Ops& active();

const Ops& scalar_ops();
// nullptr when AVX2 is not available on this CPU or not compiled in.
const Ops* avx2_ops();

}  // namespace levylp::kernels
