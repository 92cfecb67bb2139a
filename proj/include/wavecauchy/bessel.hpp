#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace wavecauchy {

namespace detail {

/// Ascending series, reliable for x <= 9 (term cancellation stays ~1e3,
/// keeping the absolute error near 1e-13).
inline double bessel_j_series(int m, double x) {
    double term = 1.0;
    for (int k = 1; k <= m; ++k) term *= 0.5 * x / k;  // (x/2)^m / m!
    const double q = -0.25 * x * x;
    double sum = term;
    for (int j = 1; j < 80; ++j) {
        term *= q / (static_cast<double>(j) * (m + j));
        sum += term;
        if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
    return sum;
}

/// Miller backward recurrence normalized by the Neumann sum
/// J_0 + 2 sum_k J_{2k} = 1.
inline double bessel_j_miller(int m, double x) {
    const int start = std::max(m + 10, static_cast<int>(std::ceil(x)) + 12 +
                                           static_cast<int>(8.0 * std::cbrt(x)));
    double jp1 = 0.0, j = 1e-30, target = 0.0, norm = 0.0;
    for (int k = start; k >= 0; --k) {
        double jm1 = (2.0 * (k + 1) / x) * j - jp1;
        jp1 = j;
        j = jm1;
        if (k == m) target = j;
        if (k % 2 == 0) norm += (k == 0 ? 1.0 : 2.0) * j;
        if (std::abs(j) > 1e280) {  // rescale to dodge overflow
            j *= 1e-280;
            jp1 *= 1e-280;
            target *= 1e-280;
            norm *= 1e-280;
        }
    }
    return target / norm;
}

}  // namespace detail

/// Bessel function of the first kind J_m(x) for m in [0, 20], x >= 0.
inline double bessel_j(int m, double x) {
    if (m < 0 || m > 20) throw std::domain_error("bessel_j: order must be in [0, 20]");
    if (x < 0.0) throw std::domain_error("bessel_j: x must be >= 0");
    if (x == 0.0) return m == 0 ? 1.0 : 0.0;
    if (x <= 9.0) return detail::bessel_j_series(m, x);
    return detail::bessel_j_miller(m, x);
}

/// J_m'(x) from the standard recurrence.
inline double bessel_j_deriv(int m, double x) {
    if (m == 0) return -bessel_j(1, x);
    return bessel_j(m - 1, x) - (m / x) * bessel_j(m, x);
}

/// k-th positive zero of J_m, located by a sign-change scan followed by
/// bisection. Accurate to ~1e-14 relative.
inline double bessel_zero(int m, int k) {
    if (m < 0 || m > 20) throw std::domain_error("bessel_zero: order must be in [0, 20]");
    if (k < 1 || k > 20) throw std::domain_error("bessel_zero: index must be in [1, 20]");
    const double step = 0.25;
    double x = m > 0 ? static_cast<double>(m) : 0.5;
    double fx = bessel_j(m, x);
    int found = 0;
    for (int guard = 0; guard < 4000; ++guard) {
        double x2 = x + step;
        double f2 = bessel_j(m, x2);
        if ((fx > 0.0) != (f2 > 0.0) || f2 == 0.0) {
            ++found;
            if (found == k) {
                double a = x, b = x2, fa = fx;
                for (int it = 0; it < 200; ++it) {
                    double mid = 0.5 * (a + b);
                    if (mid == a || mid == b) break;
                    double fm = bessel_j(m, mid);
                    if ((fa > 0.0) != (fm > 0.0)) {
                        b = mid;
                    } else {
                        a = mid;
                        fa = fm;
                    }
                }
                return 0.5 * (a + b);
            }
        }
        x = x2;
        fx = f2;
    }
    throw std::runtime_error("bessel_zero: zero not found in scan range");
}

}  // namespace wavecauchy
