#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <vector>

namespace wavecauchy {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int size() const { return static_cast<int>(nodes.size()); }
};

namespace detail {

/// Newton iteration on P_n with the Chebyshev initial guess. Accurate to
/// ~1e-15 for the node counts used here.
inline GaussLegendreRule compute_gauss_legendre(int n) {
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double eps = 1e-15;
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(3.141592653589793238 * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // evaluate P_n(x) and P_n'(x) by the three-term recurrence
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < eps) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

}  // namespace detail

/// Shared rule cache. Requested sizes are rounded up to a geometric bucket
/// sequence so the cache stays small while node counts scale with the
/// integrand frequency. A thread-local pointer map keeps the hot path
/// lock-free.
inline const GaussLegendreRule& gl_rule(int n_min) {
    if (n_min < 2) n_min = 2;
    int n = 8;
    while (n < n_min) n = (n * 3) / 2;
    thread_local std::map<int, const GaussLegendreRule*> local;
    if (auto it = local.find(n); it != local.end()) return *it->second;
    static std::mutex mtx;
    static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
    const GaussLegendreRule* ptr;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto& slot = cache[n];
        if (!slot)
            slot = std::make_unique<GaussLegendreRule>(detail::compute_gauss_legendre(n));
        ptr = slot.get();
    }
    local[n] = ptr;
    return *ptr;
}

/// Integrate f over [a, b] with at least n_min Gauss-Legendre nodes.
template <typename F>
double gl_integrate(F&& f, double a, double b, int n_min) {
    const GaussLegendreRule& rule = gl_rule(n_min);
    const double mid = 0.5 * (a + b), rad = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < rule.size(); ++i)
        sum += rule.weights[i] * f(mid + rad * rule.nodes[i]);
    return rad * sum;
}

/// Trapezoid rule over uniformly spaced samples.
inline double trapezoid_uniform(std::span<const double> f, double dx) {
    if (f.size() < 2) return 0.0;
    double sum = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) sum += f[i];
    return sum * dx;
}

}  // namespace wavecauchy
