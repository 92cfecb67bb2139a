#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "wavecauchy/common.hpp"
#include "wavecauchy/quadrature.hpp"
#include "wavecauchy/special.hpp"

namespace wavecauchy {

namespace detail {

inline double w_prefactor(double h) {
    return 1.0 / (4.0 * std::pow(pi, 1.5) * std::sqrt(h));
}

/// Node count for the oscillatory representations: the cosine factor has
/// frequency ~ |y| (|x| + |t|) / h, so nodes scale with coordinate size / h.
inline int osc_nodes(double x, double y, double t, double h, int base) {
    double ax = std::abs(x), ay = std::abs(y), at = std::abs(t);
    double scale = 8.0 * (ax + ay + at) * std::max({ax, ay, at}) / h;
    return std::max(base, static_cast<int>(std::ceil(scale)));
}

/// Node count for non-oscillatory Gaussian integrands whose features have
/// width ~ sqrt(h) across a range of size `span`.
inline int smooth_nodes(double span, double h, int base) {
    return std::max(base, static_cast<int>(std::ceil(7.0 * span / std::sqrt(h))));
}

/// Symmetrized real form of the unified representation:
///   2 int_0^pi exp((B^2 - A^2)/h) cos(2 A B / h) ds,
/// A = x + t cos s, B = y sin s. Throws when any nodal exponent passes the cap.
inline double w_unified_n(double x, double y, double t, double h,
                          double exp_cap, int n) {
    const GaussLegendreRule& rule = gl_rule(n);
    const double mid = 0.5 * pi, rad = 0.5 * pi;
    double sum = 0.0;
    for (int i = 0; i < rule.size(); ++i) {
        double s = mid + rad * rule.nodes[i];
        double a = x + t * std::cos(s);
        double b = y * std::sin(s);
        double re = (b * b - a * a) / h;
        if (re > exp_cap)
            throw UnstableRegimeError("w_h: unstable regime; use stable V_h path");
        sum += rule.weights[i] * std::exp(re) * std::cos(2.0 * a * b / h);
    }
    return w_prefactor(h) * 2.0 * rad * sum;
}

inline double w_inside_n(double x, double y, double t, double h,
                         double exp_cap, int n) {
    const double g2 = y * y - t * t;
    if ((g2 - x * x) / h > exp_cap)
        throw UnstableRegimeError("w_h: unstable regime; use stable V_h path");
    const double g = std::sqrt(std::max(g2, 0.0));
    const GaussLegendreRule& rule = gl_rule(n);
    const double mid = 0.5 * pi, rad = 0.5 * pi;
    double sum = 0.0;
    for (int i = 0; i < rule.size(); ++i) {
        double s = mid + rad * rule.nodes[i];
        double gs = g * std::sin(s);
        sum += rule.weights[i] * std::exp((gs * gs - x * x) / h) *
               std::cos(2.0 * x * gs / h);
    }
    return w_prefactor(h) * 2.0 * rad * sum;
}

inline double w_outside_n(double x, double y, double t, double h, int n) {
    const double q = std::sqrt(std::max(t * t - y * y, 0.0));
    const GaussLegendreRule& rule = gl_rule(n);
    double sum = 0.0;
    for (int i = 0; i < rule.size(); ++i) {
        double s = pi * rule.nodes[i];
        double e = x + q * std::sin(s);
        sum += rule.weights[i] * std::exp(-(e * e) / h);
    }
    return w_prefactor(h) * pi * sum;
}

}  // namespace detail

/// w_h by the representation valid for all (x, y, t).
/// Even in each of x, y, t separately.
inline double w_unified(const SpaceTimePoint& p, const KernelParams& kp) {
    kp.validate();
    int n = detail::osc_nodes(p.x, p.y, p.t, kp.h, kp.n_s);
    return detail::w_unified_n(p.x, p.y, p.t, kp.h, kp.exp_cap, n);
}

/// w_h by the interior-cone representation; requires |y| >= |t|.
/// Grows like exp((y^2 - t^2)/h) as h -> 0.
inline double w_inside(const SpaceTimePoint& p, const KernelParams& kp) {
    kp.validate();
    if (std::abs(p.y) < std::abs(p.t))
        throw std::domain_error("w_inside: requires |y| >= |t|");
    int n = detail::osc_nodes(p.x, p.y, p.t, kp.h, kp.n_s);
    return detail::w_inside_n(p.x, p.y, p.t, kp.h, kp.exp_cap, n);
}

/// w_h by the exterior representation; requires |y| < |t|. The exponent is
/// nonpositive, so the value is positive and bounded by 1/(2 sqrt(pi h)).
inline double w_outside(const SpaceTimePoint& p, const KernelParams& kp) {
    kp.validate();
    if (std::abs(p.y) >= std::abs(p.t))
        throw std::domain_error("w_outside: requires |y| < |t|");
    int n = detail::smooth_nodes(std::abs(p.x) + std::abs(p.t), kp.h, kp.n_s);
    return detail::w_outside_n(p.x, p.y, p.t, kp.h, n);
}

/// v_h = -theta(y - |t|) w_h with the closed-cone convention theta(0) = 1.
inline double v(const SpaceTimePoint& p, const KernelParams& kp) {
    kp.validate();
    if (p.y < std::abs(p.t)) return 0.0;
    int n = detail::osc_nodes(p.x, p.y, p.t, kp.h, kp.n_s);
    return -detail::w_inside_n(p.x, p.y, p.t, kp.h, kp.exp_cap, n);
}

/// v_h^alpha: v_h at the point rotated by alpha about the origin.
inline double v_alpha(const SpaceTimePoint& p, double alpha,
                      const KernelParams& kp) {
    const double c = std::cos(alpha), s = std::sin(alpha);
    return v({p.x * c + p.y * s, -p.x * s + p.y * c, p.t}, kp);
}

/// Rotation average of v_h^alpha, integrated over the exact support interval
/// of alpha (outside it the Heaviside factor kills the integrand, and the
/// jump at the interval ends would stall a naive full-circle quadrature).
/// Intended for moderate h as the oracle for V_stable; throws the
/// unstable-regime error when w_inside would overflow.
inline double V_direct(const SpaceTimePoint& p, const KernelParams& kp) {
    kp.validate();
    const double r = std::hypot(p.x, p.y);
    const double at = std::abs(p.t);
    if (r < at) return 0.0;
    if (r == 0.0) return p.t == 0.0 ? -1.0 / (2.0 * std::sqrt(pi * kp.h)) : 0.0;
    const double phi = std::atan2(p.y, p.x);
    const double q = std::min(at / r, 1.0);
    const double lo = phi - pi + std::asin(q);
    const double hi = phi - std::asin(q);
    int n_a = std::max(kp.n_alpha,
                       static_cast<int>(std::ceil(8.0 * r * (r + at) / kp.h)));
    int n_s = detail::osc_nodes(r, r, p.t, kp.h, kp.n_s);
    double sum = gl_integrate(
        [&](double a) {
            double c = std::cos(a), s = std::sin(a);
            double xr = p.x * c + p.y * s;
            double yr = -p.x * s + p.y * c;
            if (yr < at) return 0.0;
            return -detail::w_inside_n(xr, yr, p.t, kp.h, kp.exp_cap, n_s);
        },
        lo, hi, n_a);
    return sum / (2.0 * pi);
}

namespace detail {

/// De-singularized double integral for V~_h: with z = cos(s) sin(phi) the
/// inner weight becomes d(phi) and the integrand
///   exp(-(cos s (r sin phi + t))^2 / h)
/// over s in [0, pi/2], phi in [-pi/2, pi/2]. All exponents nonpositive.
inline double v_tilde_n(double r, double t, double h, int n) {
    const GaussLegendreRule& rule = gl_rule(n);
    const int m = rule.size();
    std::vector<double> cs2(m), a(m);
    for (int i = 0; i < m; ++i) {
        double s = 0.25 * pi * (rule.nodes[i] + 1.0);
        double c = std::cos(s);
        cs2[i] = c * c;
        a[i] = r * std::sin(0.5 * pi * rule.nodes[i]) + t;  // r sin(phi) + t
    }
    double sum = 0.0;
    for (int j = 0; j < m; ++j) {
        double aj2 = a[j] * a[j];
        double inner = 0.0;
        for (int i = 0; i < m; ++i)
            inner += rule.weights[i] * std::exp(-cs2[i] * aj2 / h);
        sum += rule.weights[j] * inner;
    }
    sum *= (0.25 * pi) * (0.5 * pi);
    const double c4 = 4.0 / (8.0 * std::pow(pi, 2.5));  // 4c, c = 1/(8 pi^{5/2})
    return -(c4 / std::sqrt(h)) * sum;
}

/// Correction restoring V_h from V~_h:
///   + (1/pi) int_{alpha_0}^{pi/2} w_h(r sin a, r cos a, t) da,
/// where r cos a <= |t| on the interval, so the exterior representation
/// applies and every exponent is nonpositive.
inline double v_corr_n(double r, double t, double h, int n) {
    const double at = std::abs(t);
    const double a0 = std::acos(std::min(at / r, 1.0));
    if (a0 >= 0.5 * pi) return 0.0;
    return gl_integrate(
               [&](double a) {
                   return w_outside_n(r * std::sin(a), r * std::cos(a), t, h, n);
               },
               a0, 0.5 * pi, n) /
           pi;
}

inline double V_stable_n(double r, double t, double h, int n) {
    return v_tilde_n(r, t, h, n) + v_corr_n(r, t, h, n);
}

}  // namespace detail

/// Stable evaluation of V_h: zero inside the complement of the light cone,
/// otherwise the de-singularized double integral plus the exterior-kernel
/// correction. Bounded by O(h^{-1/2}) for every h > 0; no overflow regime.
/// est_quad_error comes from one node-doubling pass.
inline KernelValue V_stable(const RadialPoint& q, const KernelParams& kp) {
    kp.validate();
    if (q.r < 0.0) throw std::domain_error("V_stable: r must be >= 0");
    const double at = std::abs(q.t);
    if (q.r < at) return {0.0, 0.0};
    if (q.r == 0.0)
        return {q.t == 0.0 ? -1.0 / (2.0 * std::sqrt(pi * kp.h)) : 0.0, 0.0};
    int n = detail::smooth_nodes(q.r + at, kp.h, std::max(kp.n_s, kp.n_alpha));
    double v1 = detail::V_stable_n(q.r, q.t, kp.h, n);
    double v2 = detail::V_stable_n(q.r, q.t, kp.h, 2 * n);
    return {v2, std::abs(v2 - v1)};
}

/// Production path: V_h at a space-time point via its radial reduction.
inline KernelValue V(const SpaceTimePoint& p, const KernelParams& kp) {
    return V_stable({std::hypot(p.x, p.y), p.t}, kp);
}

/// Density rho_h appearing on the right side of the averaged wave identity.
inline double rho(double x, double y, const KernelParams& kp) {
    kp.validate();
    const double r2 = x * x + y * y;
    if (r2 == 0.0)
        throw std::domain_error("rho: singular at the origin");
    return std::exp(-r2 / kp.h) / (pi * std::sqrt(pi * kp.h) * std::sqrt(r2));
}

/// Gaussian time mollifier psi^eps.
inline double psi_mollifier(double t, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("psi_mollifier: eps must be > 0");
    return std::exp(-t * t / eps) / std::sqrt(pi * eps);
}

/// Time convolution V_h^eps = psi^eps * V_h. The substitution t1 = r sin(theta)
/// absorbs the square-root edge behavior of V_h at |t1| = r, so plain
/// Gauss-Legendre converges fast. eps = 0 passes V through unmollified.
inline double mollify_V(const SpaceTimePoint& p, const KernelParams& kp) {
    kp.validate();
    if (kp.eps == 0.0) return V(p, kp).value;
    const double r = std::hypot(p.x, p.y);
    if (r == 0.0) return 0.0;
    int n = std::max(kp.n_alpha,
                     static_cast<int>(std::ceil(10.0 * r *
                                                (1.0 / std::sqrt(kp.eps) +
                                                 1.0 / std::sqrt(kp.h)))));
    int n_v = detail::smooth_nodes(2.0 * r, kp.h, std::max(kp.n_s, kp.n_alpha));
    return gl_integrate(
        [&](double theta) {
            double t1 = r * std::sin(theta);
            return psi_mollifier(p.t - t1, kp.eps) *
                   detail::V_stable_n(r, t1, kp.h, n_v) * r * std::cos(theta);
        },
        -0.5 * pi, 0.5 * pi, n);
}

/// Batched V_h evaluations at fixed radius r for many time offsets, as needed
/// by the boundary-trace quadrature. The inner s-integral of the
/// de-singularized form reduces to the scaled Bessel function I_0 e^{-.},
/// leaving a single phi quadrature per offset; the correction term keeps its
/// double quadrature. Matches V_stable to quadrature accuracy (see tests).
class KernelTimeProfile {
public:
    KernelTimeProfile(double r, const KernelParams& kp) : r_(r), kp_(kp) {
        kp_.validate();
        n_ = detail::smooth_nodes(2.0 * r, kp.h, std::max(kp.n_s, kp.n_alpha));
        const GaussLegendreRule& rule = gl_rule(n_);
        phi_term_.resize(rule.size());
        phi_weight_.resize(rule.size());
        for (int i = 0; i < rule.size(); ++i) {
            phi_term_[i] = r_ * std::sin(0.5 * pi * rule.nodes[i]);
            phi_weight_[i] = rule.weights[i];
        }
    }

    double radius() const { return r_; }

    /// V_h(r, dt); zero for |dt| > r.
    double value(double dt) const {
        const double at = std::abs(dt);
        if (at > r_) return 0.0;
        const double h = kp_.h;
        double sum = 0.0;
        for (std::size_t i = 0; i < phi_term_.size(); ++i) {
            double a = phi_term_[i] + dt;
            sum += phi_weight_[i] * scaled_bessel_i0(a * a / (2.0 * h));
        }
        double vt = -(c4_over_sqrt_h() * 0.25 * pi * pi) * sum;
        return vt + detail::v_corr_n(r_, dt, h, n_);
    }

    /// |value at n - value at n/2| probe, for diagnostics.
    double doubling_error(double dt) const {
        return std::abs(value_n(dt, n_) - value_n(dt, std::max(8, n_ / 2)));
    }

private:
    double c4_over_sqrt_h() const {
        return 4.0 / (8.0 * std::pow(pi, 2.5)) / std::sqrt(kp_.h);
    }

    double value_n(double dt, int n) const {
        const double at = std::abs(dt);
        if (at > r_) return 0.0;
        const double h = kp_.h;
        const GaussLegendreRule& rule = gl_rule(n);
        double sum = 0.0;
        for (int i = 0; i < rule.size(); ++i) {
            double a = r_ * std::sin(0.5 * pi * rule.nodes[i]) + dt;
            sum += rule.weights[i] * scaled_bessel_i0(a * a / (2.0 * h));
        }
        double vt = -(c4_over_sqrt_h() * 0.25 * pi * pi) * sum;
        return vt + detail::v_corr_n(r_, dt, h, n);
    }

    double r_;
    KernelParams kp_;
    int n_;
    std::vector<double> phi_term_;
    std::vector<double> phi_weight_;
};

}  // namespace wavecauchy
