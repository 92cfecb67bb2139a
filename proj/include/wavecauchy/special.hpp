#pragma once

#include <cmath>
#include <stdexcept>

namespace wavecauchy {

/// Exponentially scaled modified Bessel function e^{-x} I_0(x), x >= 0.
///
/// Power series below the crossover, asymptotic expansion above; both
/// converge to ~1e-15 relative at the crossover point.
inline double scaled_bessel_i0(double x) {
    if (x < 0.0) throw std::domain_error("scaled_bessel_i0: x must be >= 0");
    if (x < 30.0) {
        double term = 1.0, sum = 1.0;
        const double q = 0.25 * x * x;
        for (int k = 1; k < 200; ++k) {
            term *= q / (static_cast<double>(k) * k);
            sum += term;
            if (term < 1e-18 * sum) break;
        }
        return std::exp(-x) * sum;
    }
    // I_0(x) ~ e^x / sqrt(2 pi x) * sum mu_k, mu_k = mu_{k-1} (2k-1)^2 / (8 x k)
    double mu = 1.0, sum = 1.0;
    for (int k = 1; k < 40; ++k) {
        double next = mu * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * x * k);
        if (next >= mu) break;  // past the optimal truncation point
        mu = next;
        sum += mu;
        if (mu < 1e-17 * sum) break;
    }
    return sum / std::sqrt(2.0 * 3.141592653589793238 * x);
}

}  // namespace wavecauchy
