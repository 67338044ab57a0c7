#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "levylp/common.hpp"

namespace levylp {

// Uniform periodic grid on [-L, L)^d, d in {1, 2}, N points per axis
// (power of two).  Spacing h = 2L/N, frequency spacing pi/L, signed mode
// index k~ in [-N/2, N/2).
struct GridSpec {
    int dim = 1;
    std::size_t n = 4096;
    double half_width = 40.0;

    double h() const { return 2.0 * half_width / double(n); }
    double dxi() const { return kPi / half_width; }
    std::size_t size() const { return dim == 1 ? n : n * n; }
    double coord(std::size_t i) const { return -half_width + double(i) * h(); }
    // Signed mode index for array index k.
    long signed_index(std::size_t k) const {
        return k < n / 2 ? long(k) : long(k) - long(n);
    }
    double freq(std::size_t k) const { return dxi() * double(signed_index(k)); }
    bool operator==(const GridSpec&) const = default;
};

// Complex-valued function sampled on the grid; real-valued data is stored
// with (near-)zero imaginary part.  Values are row-major for d = 2.
class GridFunction {
  public:
    GridFunction() = default;
    explicit GridFunction(GridSpec spec) : spec_(spec), values_(spec.size(), cplx(0.0, 0.0)) {}
    GridFunction(GridSpec spec, std::vector<cplx> values);

    const GridSpec& spec() const { return spec_; }
    std::vector<cplx>& values() { return values_; }
    const std::vector<cplx>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }

    // Rectangle-rule L^p norm over the box (p >= 1).
    double norm(double p) const;
    double max_abs() const;
    double max_abs_imag() const;
    // h^d * sum f_j  (box integral, rectangle rule).
    cplx integral() const;
    // h^d * sum f_j * g_j  (real inner product <f,g>).
    double inner(const GridFunction& g) const;

    // Copies the real parts into out (resized).
    void real_part(std::vector<double>& out) const;
    // Subtracts the grid mean so the DC mode vanishes exactly.
    void remove_mean();

    void write_binary(const std::string& path) const;
    static GridFunction read_binary(const std::string& path);
    void write_csv(const std::string& path) const;

  private:
    GridSpec spec_;
    std::vector<cplx> values_;
};

// Forward transform with the convention fhat(xi) = int f(x) e^{-i x.xi} dx,
// approximated by the h^d-weighted DFT on the box; result is indexed by the
// grid's frequency set.  fourier_inverse is its exact inverse.
GridFunction fourier_forward(const GridFunction& f);
GridFunction fourier_inverse(const GridFunction& fhat);

// Spectrum-level helpers used by the semigroup/quadrature engines.  The
// spectrum vector has the same layout as fourier_forward's output values.
struct Spectrum {
    GridSpec spec;
    std::vector<cplx> coeff;
};
Spectrum to_spectrum(const GridFunction& f);
GridFunction from_spectrum(const Spectrum& s);

// f(x + y) via the exact periodic phase shift e^{i xi.y} on the spectrum
// (trigonometric interpolation for off-grid y).  y has spec.dim entries.
GridFunction shift_from_spectrum(const Spectrum& s, const double* y);

// Per-axis spectral derivative d/dx_axis (Nyquist mode zeroed).
GridFunction gradient_axis_from_spectrum(const Spectrum& s, int axis);

// Precomputed shift multiplier for one displacement y: the phase e^{i xi.y}
// with the inverse-transform bookkeeping folded in, so a shifted field is a
// single pointwise multiply plus one inverse FFT.  Tables are built once per
// quadrature node and reused across the whole t-ladder.
class ShiftTable {
  public:
    ShiftTable(const GridSpec& spec, const double* y);
    const std::vector<cplx>& factors() const { return factors_; }

  private:
    std::vector<cplx> factors_;
};

class ShiftEngine {
  public:
    explicit ShiftEngine(GridSpec spec);
    // out_i = Re f(x_i + y), f given by its spectrum.
    void shifted_real(const Spectrum& s, const ShiftTable& table, std::vector<double>& out);

  private:
    GridSpec spec_;
    std::vector<cplx> work_;
};

}  // namespace levylp
