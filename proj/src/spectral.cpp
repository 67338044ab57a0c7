#include "levylp/spectral.hpp"

#include <cmath>

#include "gauss.hpp"
#include "levylp/kernels.hpp"

namespace levylp {

SemigroupOperator::SemigroupOperator(const CharacteristicExponent& psi, SemigroupVariant variant,
                                     GridSpec grid)
    : psi_(psi), variant_(variant), grid_(grid) {
    if (psi.dim() != grid.dim) throw config_error("exponent/grid dimension mismatch");
    psi_grid_.resize(grid.size());
    auto value_at = [&](const double* xi, bool nyquist) -> cplx {
        cplx z = psi_.eval(xi);
        if (nyquist) return {std::max(0.0, z.real()), 0.0};
        switch (variant_) {
            case SemigroupVariant::forward:
                return z;
            case SemigroupVariant::dual:
                return std::conj(z);
            case SemigroupVariant::symmetrized:
                return {std::max(0.0, z.real()), 0.0};
        }
        return z;
    };
    if (grid.dim == 1) {
        for (std::size_t k = 0; k < grid.n; ++k) {
            double xi = grid.freq(k);
            psi_grid_[k] = value_at(&xi, k == grid.n / 2);
        }
        psi_grid_[0] = 0.0;  // psi(0) = 0 exactly
    } else {
        for (std::size_t k1 = 0; k1 < grid.n; ++k1)
            for (std::size_t k2 = 0; k2 < grid.n; ++k2) {
                double xi[2] = {grid.freq(k1), grid.freq(k2)};
                psi_grid_[k1 * grid.n + k2] =
                    value_at(xi, k1 == grid.n / 2 || k2 == grid.n / 2);
            }
        psi_grid_[0] = 0.0;
    }
}

void SemigroupOperator::apply_spectrum(double t, cplx* coeff) const {
    if (t < 0.0) throw config_error("semigroup time must be nonnegative");
    if (t == 0.0) return;
    for (std::size_t i = 0; i < psi_grid_.size(); ++i) coeff[i] *= std::exp(-t * psi_grid_[i]);
}

GridFunction SemigroupOperator::apply(double t, const GridFunction& f) const {
    if (!(f.spec() == grid_)) throw config_error("semigroup grid mismatch");
    if (t < 0.0) throw config_error("semigroup time must be nonnegative");
    if (t == 0.0) return f;
    GridFunction fh = fourier_forward(f);
    apply_spectrum(t, fh.values().data());
    return fourier_inverse(fh);
}

double SemigroupOperator::min_edge_decay(double t) const {
    // Smallest Re psi among the edge (Nyquist-adjacent) modes.
    double mn = std::numeric_limits<double>::infinity();
    if (grid_.dim == 1) {
        mn = std::min(psi_grid_[grid_.n / 2].real(), psi_grid_[grid_.n / 2 + 1].real());
    } else {
        for (std::size_t k = 0; k < grid_.n; ++k) {
            mn = std::min(mn, psi_grid_[(grid_.n / 2) * grid_.n + k].real());
            mn = std::min(mn, psi_grid_[k * grid_.n + grid_.n / 2].real());
        }
    }
    return std::exp(-t * mn);
}

GridFunction transition_density(const CharacteristicExponent& psi, double t, GridSpec grid,
                                double guard) {
    if (!(t > 0.0)) throw config_error("transition density needs t > 0");
    SemigroupOperator op(psi, SemigroupVariant::forward, grid);
    if (op.min_edge_decay(t) > guard)
        throw divergence_error(
            "aliasing guard: e^{-t Re psi} has not decayed at the grid edge; "
            "enlarge N or t");
    // fourier_inverse(S)_j = (2 pi)^{-d} dxi^d sum_k S_k e^{+i x_j.xi_k}, so
    // the e^{-i x.xi} inversion is that value reflected through the origin.
    GridFunction spec(grid);
    const auto& sym = op.symbol();
    for (std::size_t i = 0; i < spec.size(); ++i) spec.values()[i] = std::exp(-t * sym[i]);
    GridFunction tmp = fourier_inverse(spec);
    GridFunction out(grid);
    const std::size_t n = grid.n;
    if (grid.dim == 1) {
        for (std::size_t j = 0; j < n; ++j) out.values()[j] = tmp.values()[(n - j) % n];
    } else {
        for (std::size_t j1 = 0; j1 < n; ++j1)
            for (std::size_t j2 = 0; j2 < n; ++j2)
                out.values()[j1 * n + j2] = tmp.values()[((n - j1) % n) * n + (n - j2) % n];
    }
    return out;
}

namespace {

double halfline_decaying_integral(const std::function<double(double)>& g, double tol) {
    // integral over [0, inf) of a smooth decaying g: panel doubling until the
    // integrand is negligible, then panel refinement until stable.
    double hi = 1.0;
    for (int i = 0; i < 200 && std::fabs(g(hi)) > 1e-18; ++i) hi *= 2.0;
    auto eval = [&](int panels_per_octave) {
        double s = 0.0;
        double a = 0.0, b = std::min(1.0, hi);
        while (a < hi) {
            double w = (b - a) / double(panels_per_octave);
            for (int k = 0; k < panels_per_octave; ++k)
                s += detail::gauss_integrate(a + k * w, a + (k + 1) * w, 16, g);
            a = b;
            b = std::min(hi, b * 2.0);
        }
        return s;
    };
    double v1 = eval(1), v2 = eval(2);
    int p = 2;
    while (std::fabs(v2 - v1) > tol * std::max(1.0, std::fabs(v2)) && p < 64) {
        p *= 2;
        v1 = v2;
        v2 = eval(p);
    }
    return v2;
}

}  // namespace

UltraResult ultra_constant(const CharacteristicExponent& psi, double t, GridSpec grid,
                           UltraMethod method) {
    if (!(t > 0.0)) throw config_error("ultracontractivity constant needs t > 0");
    if (method == UltraMethod::lattice) {
        SemigroupOperator op(psi, SemigroupVariant::symmetrized, grid);
        if (op.min_edge_decay(t) > 1e-12)
            throw divergence_error("e^{-t Re psi} has not decayed at the grid edge");
        double s = 0.0;
        for (const auto& z : op.symbol()) s += std::exp(-t * z.real());
        double val = s * std::pow(grid.dxi() / (2.0 * kPi), grid.dim);
        return {val, val * 1e-12};
    }
    if (grid.dim == 1) {
        auto g = [&](double xi) { return std::exp(-t * psi.real_part(&xi)); };
        double v = halfline_decaying_integral(g, 1e-12) / kPi;  // even integrand
        return {v, std::fabs(v) * 1e-10};
    }
    // d = 2: refined lattice sums, Richardson-style error from the last halving
    auto lattice_sum = [&](std::size_t n, double L) {
        GridSpec gs{2, n, L};
        double s = 0.0;
        for (std::size_t k1 = 0; k1 < n; ++k1)
            for (std::size_t k2 = 0; k2 < n; ++k2) {
                double xi[2] = {gs.freq(k1), gs.freq(k2)};
                s += std::exp(-t * psi.real_part(xi));
            }
        return s * std::pow(gs.dxi() / (2.0 * kPi), 2);
    };
    double c1 = lattice_sum(grid.n, grid.half_width);
    double c2 = lattice_sum(2 * grid.n, 2.0 * grid.half_width);
    return {c2, std::fabs(c2 - c1)};
}

}  // namespace levylp
