#pragma once

#include <string>

#include "levylp/grid.hpp"

namespace levylp {

// Closed set of test-function templates, JSON-declared:
//   {"kind":"gaussian","sigma":1.0,"center":0.0,"amplitude":1.0}
//   {"kind":"gaussian_dx", ...}   derivative of a gaussian (zero mean)
//   {"kind":"dog","sigma":1.0,"sigma2":2.0, ...}  mass-balanced difference
//   {"kind":"cos_gaussian","freq":2.0, ...}       modulated bump
// "zero_mean": true subtracts the grid mean exactly.
struct FieldSpec {
    std::string kind = "gaussian";
    double sigma = 1.0;
    double sigma2 = 2.0;
    double center = 0.0;
    double amplitude = 1.0;
    double freq = 2.0;
    bool zero_mean = false;

    static FieldSpec from_json_text(const std::string& text);
    std::string to_json_text() const;
};

GridFunction make_field(const FieldSpec& spec, GridSpec grid);

// Pointwise evaluation of the same template off the grid (d = 1 only);
// used by the Monte Carlo cross-checks.
double eval_field(const FieldSpec& spec, double x);

}  // namespace levylp
