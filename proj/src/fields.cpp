#include "levylp/fields.hpp"

#include <cmath>

#include <json.hpp>

namespace levylp {

using nlohmann::json;

FieldSpec FieldSpec::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw config_error(std::string("field JSON parse error: ") + e.what());
    }
    FieldSpec s;
    s.kind = j.value("kind", s.kind);
    s.sigma = j.value("sigma", s.sigma);
    s.sigma2 = j.value("sigma2", s.sigma2);
    s.center = j.value("center", s.center);
    s.amplitude = j.value("amplitude", s.amplitude);
    s.freq = j.value("freq", s.freq);
    s.zero_mean = j.value("zero_mean", s.zero_mean);
    if (s.kind != "gaussian" && s.kind != "gaussian_dx" && s.kind != "dog" &&
        s.kind != "cos_gaussian")
        throw config_error("unknown field kind: " + s.kind);
    if (!(s.sigma > 0.0) || !(s.sigma2 > 0.0)) throw config_error("field widths must be positive");
    return s;
}

std::string FieldSpec::to_json_text() const {
    json j = {{"kind", kind},           {"sigma", sigma},   {"sigma2", sigma2},
              {"center", center},       {"amplitude", amplitude}, {"freq", freq},
              {"zero_mean", zero_mean}};
    return j.dump();
}

double eval_field(const FieldSpec& s, double x) {
    const double u = x - s.center;
    const double g = std::exp(-u * u / (2.0 * s.sigma * s.sigma));
    if (s.kind == "gaussian") return s.amplitude * g;
    if (s.kind == "gaussian_dx") return -s.amplitude * u / (s.sigma * s.sigma) * g;
    if (s.kind == "dog")
        return s.amplitude *
               (g - (s.sigma / s.sigma2) * std::exp(-u * u / (2.0 * s.sigma2 * s.sigma2)));
    if (s.kind == "cos_gaussian") return s.amplitude * std::cos(s.freq * u) * g;
    throw config_error("unknown field kind: " + s.kind);
}

GridFunction make_field(const FieldSpec& s, GridSpec grid) {
    GridFunction f(grid);
    if (grid.dim == 1) {
        for (std::size_t i = 0; i < grid.n; ++i) f.values()[i] = eval_field(s, grid.coord(i));
    } else {
        for (std::size_t i = 0; i < grid.n; ++i)
            for (std::size_t j = 0; j < grid.n; ++j) {
                double x = grid.coord(i) - s.center, y = grid.coord(j) - s.center;
                double r2 = x * x + y * y;
                double g = std::exp(-r2 / (2.0 * s.sigma * s.sigma));
                double v;
                if (s.kind == "gaussian")
                    v = s.amplitude * g;
                else if (s.kind == "gaussian_dx")
                    v = -s.amplitude * x / (s.sigma * s.sigma) * g;
                else if (s.kind == "dog")
                    v = s.amplitude * (g - (s.sigma * s.sigma) / (s.sigma2 * s.sigma2) *
                                               std::exp(-r2 / (2.0 * s.sigma2 * s.sigma2)));
                else
                    v = s.amplitude * std::cos(s.freq * x) * g;
                f.values()[i * grid.n + j] = v;
            }
    }
    if (s.zero_mean) f.remove_mean();
    return f;
}

}  // namespace levylp
