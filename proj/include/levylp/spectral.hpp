#pragma once

#include <vector>

#include "levylp/grid.hpp"
#include "levylp/levy.hpp"

namespace levylp {

enum class SemigroupVariant { forward, dual, symmetrized };

// P_t acting spectrally: multiplication of fhat by e^{-t psi_v(xi)} with
// psi_v the forward exponent, its conjugate (dual process), or its real
// part (symmetrized process).  The exponent is evaluated once per grid and
// cached; the dual symbol is the exact conjugate of the forward one, and
// unpaired Nyquist modes keep only Re psi so real data stays real.
class SemigroupOperator {
  public:
    SemigroupOperator(const CharacteristicExponent& psi, SemigroupVariant variant, GridSpec grid);

    const GridSpec& grid() const { return grid_; }
    SemigroupVariant variant() const { return variant_; }
    const std::vector<cplx>& symbol() const { return psi_grid_; }
    const CharacteristicExponent& exponent() const { return psi_; }

    GridFunction apply(double t, const GridFunction& f) const;
    // In-place on a spectrum (same layout as fourier_forward output).
    void apply_spectrum(double t, cplx* coeff) const;
    // Largest Re psi over the grid's frequency set (aliasing guard input).
    double min_edge_decay(double t) const;

  private:
    CharacteristicExponent psi_;
    SemigroupVariant variant_;
    GridSpec grid_;
    std::vector<cplx> psi_grid_;
};

// p_t(x) = (2 pi)^{-d} int e^{-t psi(xi)} e^{-i x.xi} d xi on the grid.
// Pre: e^{-t Re psi} decays below the aliasing guard at the grid edge.
GridFunction transition_density(const CharacteristicExponent& psi, double t, GridSpec grid,
                                double guard = 1e-14);

enum class UltraMethod { adaptive, lattice };

struct UltraResult {
    double value;
    double error;
};

// C_t = (2 pi)^{-d} int e^{-t Re psi(xi)} d xi.
//  - adaptive: refining panel quadrature on the continuum integral (d=1)
//    or a refined lattice sum (d=2)
//  - lattice: the grid's own spectral rectangle rule; this is exactly
//    sup_x of the grid transition density for symmetric exponents, so the
//    density bound |p_t| <= C_t holds with the lattice value by construction
UltraResult ultra_constant(const CharacteristicExponent& psi, double t, GridSpec grid,
                           UltraMethod method = UltraMethod::adaptive);

}  // namespace levylp
