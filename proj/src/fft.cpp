#include "levylp/fft.hpp"

#include <cmath>

#include "levylp/kernels.hpp"

namespace levylp {

FftPlan::FftPlan(std::size_t n) : n_(n) {
    if (!is_pow2(n)) throw config_error("FFT size must be a power of two");
    bitrev_.resize(n);
    std::size_t log2n = 0;
    while ((std::size_t(1) << log2n) < n) ++log2n;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (std::size_t bit = 0; bit < log2n; ++bit)
            if (i & (std::size_t(1) << bit)) r |= std::size_t(1) << (log2n - 1 - bit);
        bitrev_[i] = r;
    }
    twiddle_.resize(n / 2);
    for (std::size_t j = 0; j < n / 2; ++j) {
        double ang = -kTwoPi * double(j) / double(n);
        twiddle_[j] = cplx(std::cos(ang), std::sin(ang));
    }
}

void FftPlan::run(cplx* data, int dir) const {
    for (std::size_t i = 0; i < n_; ++i) {
        std::size_t j = bitrev_[i];
        if (j > i) std::swap(data[i], data[j]);
    }
    const auto& ops = kernels::active();
    for (std::size_t len = 2; len <= n_; len <<= 1)
        ops.fft_pass(data, twiddle_.data(), n_, len, dir);
}

void FftPlan::inverse(cplx* data) const {
    run(data, -1);
    kernels::active().cscale(data, 1.0 / double(n_), n_);
}

void fft2_forward(const FftPlan& plan, cplx* data) {
    const std::size_t n = plan.size();
    for (std::size_t r = 0; r < n; ++r) plan.forward(data + r * n);
    std::vector<cplx> col(n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) col[r] = data[r * n + c];
        plan.forward(col.data());
        for (std::size_t r = 0; r < n; ++r) data[r * n + c] = col[r];
    }
}

void fft2_inverse(const FftPlan& plan, cplx* data) {
    const std::size_t n = plan.size();
    for (std::size_t r = 0; r < n; ++r) plan.inverse(data + r * n);
    std::vector<cplx> col(n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) col[r] = data[r * n + c];
        plan.inverse(col.data());
        for (std::size_t r = 0; r < n; ++r) data[r * n + c] = col[r];
    }
}

}  // namespace levylp
