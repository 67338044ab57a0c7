#include "levylp/grid.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>

#include "levylp/fft.hpp"
#include "levylp/kernels.hpp"

namespace levylp {

namespace {

const FftPlan& plan_for(const GridSpec& spec) {
    // Grids come in a handful of sizes per process; cache the plans.
    static std::vector<std::unique_ptr<FftPlan>> plans;
    for (auto& p : plans)
        if (p->size() == spec.n) return *p;
    plans.push_back(std::make_unique<FftPlan>(spec.n));
    return *plans.back();
}

// Sign flips (-1)^{k1+...+kd} translating between the DFT (origin at index
// 0) and the box transform (origin at the center, x_0 = -L).
void apply_center_phase(const GridSpec& spec, cplx* v) {
    if (spec.dim == 1) {
        for (std::size_t k = 1; k < spec.n; k += 2) v[k] = -v[k];
    } else {
        for (std::size_t k1 = 0; k1 < spec.n; ++k1)
            for (std::size_t k2 = (k1 % 2 == 0) ? 1 : 0; k2 < spec.n; k2 += 2)
                v[k1 * spec.n + k2] = -v[k1 * spec.n + k2];
    }
}

}  // namespace

GridFunction::GridFunction(GridSpec spec, std::vector<cplx> values)
    : spec_(spec), values_(std::move(values)) {
    if (values_.size() != spec_.size()) throw config_error("grid value count mismatch");
}

double GridFunction::norm(double p) const {
    if (p < 1.0) throw config_error("norm exponent must be >= 1");
    const double hd = std::pow(spec_.h(), spec_.dim);
    // |z| for complex data; real-tagged functions carry ~0 imaginary part.
    std::vector<double> mod(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) mod[i] = std::abs(values_[i]);
    double s = kernels::active().sum_abs_pow(mod.data(), mod.size(), p);
    return std::pow(hd * s, 1.0 / p);
}

double GridFunction::max_abs() const {
    double m = 0.0;
    for (const auto& z : values_) m = std::fmax(m, std::abs(z));
    return m;
}

double GridFunction::max_abs_imag() const {
    double m = 0.0;
    for (const auto& z : values_) m = std::fmax(m, std::fabs(z.imag()));
    return m;
}

cplx GridFunction::integral() const {
    const double hd = std::pow(spec_.h(), spec_.dim);
    cplx s(0.0, 0.0);
    for (const auto& z : values_) s += z;
    return hd * s;
}

double GridFunction::inner(const GridFunction& g) const {
    if (!(g.spec() == spec_)) throw config_error("grid mismatch in inner product");
    const double hd = std::pow(spec_.h(), spec_.dim);
    double s = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i)
        s += values_[i].real() * g.values_[i].real();
    return hd * s;
}

void GridFunction::real_part(std::vector<double>& out) const {
    out.resize(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) out[i] = values_[i].real();
}

void GridFunction::remove_mean() {
    cplx s(0.0, 0.0);
    for (const auto& z : values_) s += z;
    s /= double(values_.size());
    for (auto& z : values_) z -= s;
}

void GridFunction::write_binary(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw config_error("cannot open for writing: " + path);
    const std::uint64_t d = std::uint64_t(spec_.dim);
    const std::uint64_t n = std::uint64_t(spec_.n);
    const double l = spec_.half_width;
    os.write(reinterpret_cast<const char*>(&d), 8);
    os.write(reinterpret_cast<const char*>(&n), 8);
    os.write(reinterpret_cast<const char*>(&l), 8);
    os.write(reinterpret_cast<const char*>(values_.data()),
             std::streamsize(values_.size() * sizeof(cplx)));
    if (!os) throw config_error("write failed: " + path);
}

GridFunction GridFunction::read_binary(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw config_error("cannot open: " + path);
    std::uint64_t d = 0, n = 0;
    double l = 0.0;
    is.read(reinterpret_cast<char*>(&d), 8);
    is.read(reinterpret_cast<char*>(&n), 8);
    is.read(reinterpret_cast<char*>(&l), 8);
    if (!is || (d != 1 && d != 2) || !is_pow2(n) || !(l > 0.0))
        throw config_error("bad grid header in " + path);
    GridSpec spec{int(d), std::size_t(n), l};
    std::vector<cplx> vals(spec.size());
    is.read(reinterpret_cast<char*>(vals.data()), std::streamsize(vals.size() * sizeof(cplx)));
    if (!is) throw config_error("truncated grid file: " + path);
    return GridFunction(spec, std::move(vals));
}

void GridFunction::write_csv(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw config_error("cannot open for writing: " + path);
    os << "# columns: " << (spec_.dim == 1 ? "x" : "x1,x2") << ",re,im\n";
    os << (spec_.dim == 1 ? "x" : "x1,x2") << ",re,im\n";
    char buf[128];
    if (spec_.dim == 1) {
        for (std::size_t i = 0; i < spec_.n; ++i) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", spec_.coord(i),
                          values_[i].real(), values_[i].imag());
            os << buf;
        }
    } else {
        for (std::size_t i = 0; i < spec_.n; ++i)
            for (std::size_t j = 0; j < spec_.n; ++j) {
                std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", spec_.coord(i),
                              spec_.coord(j), values_[i * spec_.n + j].real(),
                              values_[i * spec_.n + j].imag());
                os << buf;
            }
    }
}

GridFunction fourier_forward(const GridFunction& f) {
    const GridSpec& spec = f.spec();
    GridFunction out(spec, f.values());
    cplx* v = out.values().data();
    const FftPlan& plan = plan_for(spec);
    if (spec.dim == 1)
        plan.forward(v);
    else
        fft2_forward(plan, v);
    apply_center_phase(spec, v);
    const double hd = std::pow(spec.h(), spec.dim);
    kernels::active().cscale(v, hd, out.size());
    return out;
}

GridFunction fourier_inverse(const GridFunction& fhat) {
    const GridSpec& spec = fhat.spec();
    GridFunction out(spec, fhat.values());
    cplx* v = out.values().data();
    apply_center_phase(spec, v);
    const double hd = std::pow(spec.h(), spec.dim);
    kernels::active().cscale(v, 1.0 / hd, out.size());
    const FftPlan& plan = plan_for(spec);
    if (spec.dim == 1)
        plan.inverse(v);
    else
        fft2_inverse(plan, v);
    return out;
}

Spectrum to_spectrum(const GridFunction& f) {
    GridFunction fh = fourier_forward(f);
    return Spectrum{f.spec(), std::move(fh.values())};
}

GridFunction from_spectrum(const Spectrum& s) {
    return fourier_inverse(GridFunction(s.spec, s.coeff));
}

GridFunction shift_from_spectrum(const Spectrum& s, const double* y) {
    GridFunction fh(s.spec, s.coeff);
    cplx* v = fh.values().data();
    const GridSpec& spec = s.spec;
    if (spec.dim == 1) {
        for (std::size_t k = 0; k < spec.n; ++k) {
            double ph = spec.freq(k) * y[0];
            // Real part only at the unpaired Nyquist mode keeps real data real.
            if (k == spec.n / 2)
                v[k] *= std::cos(ph);
            else
                v[k] *= cplx(std::cos(ph), std::sin(ph));
        }
    } else {
        for (std::size_t k1 = 0; k1 < spec.n; ++k1)
            for (std::size_t k2 = 0; k2 < spec.n; ++k2) {
                double ph = spec.freq(k1) * y[0] + spec.freq(k2) * y[1];
                cplx& z = v[k1 * spec.n + k2];
                if (k1 == spec.n / 2 || k2 == spec.n / 2)
                    z *= std::cos(ph);
                else
                    z *= cplx(std::cos(ph), std::sin(ph));
            }
    }
    return fourier_inverse(fh);
}

ShiftTable::ShiftTable(const GridSpec& spec, const double* y) {
    factors_.resize(spec.size());
    const double inv_hd = 1.0 / std::pow(spec.h(), spec.dim);
    if (spec.dim == 1) {
        for (std::size_t k = 0; k < spec.n; ++k) {
            double ph = spec.freq(k) * y[0];
            double sign = (k % 2 == 0) ? 1.0 : -1.0;  // center phase
            cplx e = (k == spec.n / 2) ? cplx(std::cos(ph), 0.0)
                                       : cplx(std::cos(ph), std::sin(ph));
            factors_[k] = e * (sign * inv_hd);
        }
    } else {
        for (std::size_t k1 = 0; k1 < spec.n; ++k1)
            for (std::size_t k2 = 0; k2 < spec.n; ++k2) {
                double ph = spec.freq(k1) * y[0] + spec.freq(k2) * y[1];
                double sign = ((k1 + k2) % 2 == 0) ? 1.0 : -1.0;
                cplx e = (k1 == spec.n / 2 || k2 == spec.n / 2)
                             ? cplx(std::cos(ph), 0.0)
                             : cplx(std::cos(ph), std::sin(ph));
                factors_[k1 * spec.n + k2] = e * (sign * inv_hd);
            }
    }
}

ShiftEngine::ShiftEngine(GridSpec spec) : spec_(spec), work_(spec.size()) {}

void ShiftEngine::shifted_real(const Spectrum& s, const ShiftTable& table,
                               std::vector<double>& out) {
    work_ = s.coeff;
    kernels::active().cmul(work_.data(), table.factors().data(), work_.size());
    const FftPlan& plan = plan_for(spec_);
    if (spec_.dim == 1)
        plan.inverse(work_.data());
    else
        fft2_inverse(plan, work_.data());
    out.resize(work_.size());
    for (std::size_t i = 0; i < work_.size(); ++i) out[i] = work_[i].real();
}

GridFunction gradient_axis_from_spectrum(const Spectrum& s, int axis) {
    GridFunction fh(s.spec, s.coeff);
    cplx* v = fh.values().data();
    const GridSpec& spec = s.spec;
    if (spec.dim == 1) {
        for (std::size_t k = 0; k < spec.n; ++k) {
            if (k == spec.n / 2) {
                v[k] = 0.0;
                continue;
            }
            v[k] *= cplx(0.0, spec.freq(k));
        }
    } else {
        for (std::size_t k1 = 0; k1 < spec.n; ++k1)
            for (std::size_t k2 = 0; k2 < spec.n; ++k2) {
                std::size_t ka = axis == 0 ? k1 : k2;
                cplx& z = v[k1 * spec.n + k2];
                if (ka == spec.n / 2) {
                    z = 0.0;
                    continue;
                }
                z *= cplx(0.0, spec.freq(ka));
            }
    }
    return fourier_inverse(fh);
}

}  // namespace levylp
