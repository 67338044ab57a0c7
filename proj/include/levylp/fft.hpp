#pragma once

#include <cstddef>
#include <vector>

#include "levylp/common.hpp"

namespace levylp {

// In-place iterative radix-2 complex FFT for power-of-two sizes.
// forward() computes X_k = sum_j x_j exp(-2*pi*i*j*k/n) (no scaling);
// inverse() is the exact inverse including the 1/n factor (n is a power of
// two, so the scaling is exact in binary floating point).
class FftPlan {
  public:
    explicit FftPlan(std::size_t n);

    std::size_t size() const { return n_; }
    void forward(cplx* data) const { run(data, +1); }
    void inverse(cplx* data) const;

  private:
    void run(cplx* data, int dir) const;

    std::size_t n_;
    std::vector<std::size_t> bitrev_;
    std::vector<cplx> twiddle_;  // exp(-2*pi*i*j/n), j < n/2
};

// Row-column transform of a row-major n x n complex array.
void fft2_forward(const FftPlan& plan, cplx* data);
void fft2_inverse(const FftPlan& plan, cplx* data);

}  // namespace levylp
