#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <vector>

namespace levylp::detail {

struct GaussRule {
    std::vector<double> node;    // on (-1, 1)
    std::vector<double> weight;
};

// Gauss-Legendre nodes/weights by Newton iteration on P_n; cached per order.
inline const GaussRule& gauss_rule(int n) {
    static std::map<int, GaussRule> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    GaussRule r;
    r.node.resize(std::size_t(n));
    r.weight.resize(std::size_t(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(3.141592653589793238462643 * (double(i) + 0.75) / (double(n) + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / double(k);
                p0 = p1;
                p1 = p2;
            }
            double dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / double(k);
            p0 = p1;
            p1 = p2;
        }
        double dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
        r.node[std::size_t(n - 1 - i)] = x;
        r.weight[std::size_t(n - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return cache.emplace(n, std::move(r)).first->second;
}

// sum_i w_i fn(x_i) over [a, b].
template <class Fn>
double gauss_integrate(double a, double b, int n, Fn&& fn) {
    const GaussRule& r = gauss_rule(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < r.node.size(); ++i)
        s += r.weight[i] * fn(mid + half * r.node[i]);
    return half * s;
}

}  // namespace levylp::detail
