#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "levylp/common.hpp"

namespace levylp {

// A pure-jump Levy measure on R^d \ {0}, d in {1, 2}, with the singularity
// metadata the quadrature engine needs.  In d = 2 the power-law families are
// isotropic (c_plus must equal c_minus).
//
// Quadrature-relevant structure is exposed side-by-side: "side" +1 is the
// restriction to y > 0 (d = 1) or the full radial profile (d = 2, times the
// circumference factor), side -1 is y < 0 reflected to r = |y| > 0.
class LevyMeasure {
  public:
    enum class Family { stable, tempered_stable, compound_poisson, custom };

    struct JumpDistribution {
        enum class Kind { uniform, two_point, uniform_annulus };
        Kind kind = Kind::uniform;
        double a = 1.0, b = 2.0;  // uniform [a,b] (d=1) / annulus radii (d=2)
        double value = 1.0;       // two_point: jumps at +-value
        double p_up = 0.5;        // two_point: P(jump = +value)
    };

    struct Atom {
        double y;
        double mass;
    };

    static LevyMeasure stable(double alpha, double c_plus, double c_minus, int dim = 1);
    static LevyMeasure tempered(double alpha, double c_plus, double c_minus, double theta_plus,
                                double theta_minus, int dim = 1);
    static LevyMeasure compound_poisson(double rate, JumpDistribution jd, int dim = 1);
    static LevyMeasure custom(int dim, double alpha_hint,
                              std::function<double(const double*)> density, bool symmetric);

    // JSON family declaration, e.g.
    // {"family":"stable_asymmetric","alpha":1.0,"c_plus":2.0,"c_minus":1.0,"d":1}
    static LevyMeasure from_json_text(const std::string& text);
    static LevyMeasure from_json_file(const std::string& path);
    std::string to_json_text() const;

    Family family() const { return family_; }
    int dim() const { return dim_; }
    double alpha() const { return alpha_; }  // singularity order (0 for CP)
    double c_plus() const { return c_plus_; }
    double c_minus() const { return c_minus_; }
    double theta_plus() const { return theta_plus_; }
    double theta_minus() const { return theta_minus_; }
    double rate() const { return rate_; }
    const JumpDistribution& jump_distribution() const { return jump_; }

    double delta_min() const { return delta_min_; }
    double r_max() const { return r_max_; }
    void set_cutoffs(double delta_min, double r_max);

    bool symmetric() const;
    bool has_atoms() const { return !atoms_.empty(); }
    const std::vector<Atom>& atoms() const { return atoms_; }  // d = 1 only
    bool finite_activity() const { return family_ == Family::compound_poisson; }
    double total_mass() const;  // finite-activity families only

    // Pointwise density (continuous part); y has dim() entries.
    double density(const double* y) const;
    double density1(double y) const;  // d = 1 convenience

    // One-sided radial profile rho_side(r), r > 0: for d = 1 the density at
    // +-r; for d = 2 the angular-integrated line density (2*pi*r*density).
    double side_density(int side, double r) const;
    // int_lo^hi r^k rho_side(r) dr  (k = 0 mass, 1 mean, 2/3 small moments)
    double side_band_moment(int side, double lo, double hi, int k) const;
    // int_0^delta r^k rho_side(r) dr with the leading |y|^{-1-alpha}
    // singularity handled analytically (k > alpha required)
    double side_small_moment(int side, double delta, int k) const;
    // int_R^inf rho_side(r) dr, exact for power laws, upper bound otherwise
    double side_tail_mass(int side, double R) const;

    std::string describe() const;

  private:
    LevyMeasure() = default;
    void validate() const;

    Family family_ = Family::stable;
    int dim_ = 1;
    double alpha_ = 1.0;
    double c_plus_ = 1.0, c_minus_ = 1.0;
    double theta_plus_ = 0.0, theta_minus_ = 0.0;
    double rate_ = 0.0;
    JumpDistribution jump_;
    std::function<double(const double*)> custom_density_;
    bool custom_symmetric_ = false;
    std::vector<Atom> atoms_;
    double delta_min_ = 1e-6;
    double r_max_ = 1e3;
};

// psi(xi) = int (1 - e^{i xi.y} + i xi.y 1_{|y|<=1}) nu(dy); psi(0) = 0,
// Re psi >= 0, psi(-xi) = conj psi(xi).
class CharacteristicExponent {
  public:
    enum class Source { closed_form, quadrature };

    Source source() const { return source_; }
    int dim() const { return dim_; }
    cplx eval(const double* xi) const { return eval_(xi); }
    double real_part(const double* xi) const { return std::max(0.0, eval_(xi).real()); }
    cplx eval1(double xi) const { return eval_(&xi); }
    double real_part1(double xi) const { return real_part(&xi); }

    static CharacteristicExponent closed_form(int dim, std::function<cplx(const double*)> fn);
    static CharacteristicExponent quadrature_backed(int dim,
                                                    std::function<cplx(const double*)> fn);

  private:
    int dim_ = 1;
    Source source_ = Source::closed_form;
    std::function<cplx(const double*)> eval_;
};

// Closed forms where known (stable with alpha != 1 or symmetric; compound
// Poisson); graded quadrature otherwise.
CharacteristicExponent char_exponent(const LevyMeasure& nu);
// Always evaluate by quadrature (cross-check path for tests).
cplx char_exponent_quadrature(const LevyMeasure& nu, const double* xi, double* error_out = nullptr);

struct IntegrabilityResult {
    double value;          // int (1 ^ |y|^2) nu(dy), tail appended
    double error;          // mesh-halving + tail estimate
    double convergence_order;  // observed under refinement of the singular part
};
IntegrabilityResult integrability_value(const LevyMeasure& nu);

// nu~ = (nu(B) + nu(-B))/2, nubar = (nu(B) - nu(-B))/2 = r * nu~.
struct SymmetrizationResult {
    LevyMeasure nu_sym;
    std::function<double(double)> nu_anti_density;  // d = 1 signed density
    std::function<double(double)> ratio;            // r(y), 0 off supp(nu~)
};
SymmetrizationResult symmetrize(const LevyMeasure& nu);

// min over |xi| = R of Re psi / log(1 + R), for each radius; plus an
// advisory verdict string ("HW holds (empirical)" / "HW fails (bounded)").
struct HartmanWintnerProfile {
    std::vector<double> radii;
    std::vector<double> values;
    std::string verdict;
};
HartmanWintnerProfile hartman_wintner_profile(const CharacteristicExponent& psi,
                                              const std::vector<double>& radii);

namespace detail {
// Generic graded integrator used by the measure engine and tests:
// int_lo^hi fn(r) dr with geometric panels (ratio 2, anchored at 1) and
// oscillation-aware Gauss node counts; error from node-count halving.
struct GradedResult {
    double value;
    double error;
};
GradedResult integrate_graded(double lo, double hi, double osc_freq,
                              const std::function<double(double)>& fn, int base_nodes = 8);
}  // namespace detail

}  // namespace levylp
