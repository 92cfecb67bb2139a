// Test-only oracles: independent quadratures of the kernel representations
// (straight complex arithmetic, no symmetry tricks), the interior density
// convolution, and reference constants. These paths share no code with the
// implementation they check beyond the Gauss-Legendre node generator.
#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include "wavecauchy/domain.hpp"
#include "wavecauchy/quadrature.hpp"
#include "wavecauchy/synthdata.hpp"

namespace oracles {

inline constexpr double pi = 3.141592653589793238462643383279502884;

/// Gauss-Legendre with one extra refinement as a sanity floor; n is chosen by
/// the caller to be generous.
template <typename F>
double integrate(F&& f, double a, double b, int n) {
    return wavecauchy::gl_integrate(f, a, b, n);
}

/// Literal complex quadrature of the unified representation.
inline double w_unified_complex(double x, double y, double t, double h, int n) {
    std::complex<double> acc = 0.0;
    const auto& rule = wavecauchy::gl_rule(n);
    for (int i = 0; i < rule.size(); ++i) {
        double s = pi * rule.nodes[i];
        std::complex<double> z(x + t * std::cos(s), -y * std::sin(s));
        acc += rule.weights[i] * std::exp(-(z * z) / h);
    }
    acc *= pi;
    return acc.real() / (4.0 * std::pow(pi, 1.5) * std::sqrt(h));
}

/// Literal complex quadrature of the interior-cone representation.
inline double w_inside_complex(double x, double y, double t, double h, int n) {
    const double g = std::sqrt(y * y - t * t);
    std::complex<double> acc = 0.0;
    const auto& rule = wavecauchy::gl_rule(n);
    for (int i = 0; i < rule.size(); ++i) {
        double s = pi * rule.nodes[i];
        std::complex<double> z(x, -g * std::sin(s));
        acc += rule.weights[i] * std::exp(-(z * z) / h);
    }
    acc *= pi;
    return acc.real() / (4.0 * std::pow(pi, 1.5) * std::sqrt(h));
}

/// Bessel J_m by its integral representation (independent of the series /
/// backward-recurrence implementation).
inline double bessel_j_integral(int m, double x) {
    int n = 64 + static_cast<int>(8.0 * (std::abs(x) + m));
    return integrate(
               [&](double th) { return std::cos(m * th - x * std::sin(th)); },
               0.0, pi, n) /
           pi;
}

/// int_Omega u(., ., t_star) rho_h(. - target) dx dy over a disk, in polar
/// coordinates centered at the target so the 1/r singularity cancels.
inline double interior_convolution_disk(const wavecauchy::GroundTruth& gt,
                                        double R, double xs, double ys,
                                        double t_star, double h, int n_theta,
                                        int n_r) {
    double total = 0.0;
    for (int k = 0; k < n_theta; ++k) {
        double th = 2.0 * pi * k / n_theta;
        double ex = std::cos(th), ey = std::sin(th);
        double bdot = xs * ex + ys * ey;
        double rmax = -bdot + std::sqrt(R * R - (xs * xs + ys * ys) + bdot * bdot);
        total += integrate(
            [&](double rr) {
                return std::exp(-rr * rr / h) * gt.u(xs + rr * ex, ys + rr * ey, t_star);
            },
            0.0, rmax, n_r);
    }
    return total * (2.0 * pi / n_theta) / (pi * std::sqrt(pi * h));
}

// Frozen references (independently computed; see the values' own tests).
inline constexpr double lambda_01 = 2.404825557695773;   // first zero of J_0
inline constexpr double lambda_02 = 5.520078110286311;
inline constexpr double lambda_03 = 8.653727912911013;
inline constexpr double lambda_11 = 3.831705970207512;
inline constexpr double lambda_21 = 5.135622301840683;
inline constexpr double lambda_20_1 = 25.417140814072333; // first zero of J_20
inline constexpr double j1_at_lambda_01 = 0.5191474972894669;

inline constexpr double ref_j0_1 = 0.7651976865579666;    // J_0(1)
inline constexpr double ref_j1_1 = 0.44005058574493355;   // J_1(1)
inline constexpr double ref_j2_5 = 0.04656511627775222;   // J_2(5)
inline constexpr double ref_j5_10 = -0.23406152818679364; // J_5(10)
inline constexpr double ref_j0_30 = -0.08636798358104021; // J_0(30)

// e^{-x} I_0(x)
inline constexpr double ref_i0e_05 = 0.64503527044915;
inline constexpr double ref_i0e_2 = 0.308508322553671;
inline constexpr double ref_i0e_81 = 0.14251180948829525;
inline constexpr double ref_i0e_25 = 0.08019677354743669;
inline constexpr double ref_i0e_100 = 0.03994437929909668;
inline constexpr double ref_i0e_1e4 = 0.0039894726746047314;

// w_inside(0, 1, 0) at h = 1: equals sqrt(pi) e^{1/2} I_0(1/2) / (2 pi),
// cross-checked against the runtime quadrature oracle in the tests.
inline constexpr double ref_w_inside_010_h1 = 0.4946215252603939;

// V_stable frozen spot values (agree with the direct rotation average).
inline constexpr double ref_V_1_03_h05 = -0.12948136633192786;
inline constexpr double ref_V_05_0_h005 = -0.32459824705909546;

}  // namespace oracles
