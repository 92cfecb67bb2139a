#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "wavecauchy/kernel.hpp"
#include "wavecauchy/rng.hpp"
#include "wavecauchy/threading.hpp"

namespace wavecauchy {

/// One registered kernel check: pass iff observed <= threshold.
struct CheckResult {
    std::string name;
    double observed = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct ValidateConfig {
    int lattice_n = 20;              // points per axis on [-1.5, 1.5]^3
    std::vector<double> h_rep{0.5, 0.1, 0.05};
    std::vector<double> h_growth{0.1, 0.01, 1e-3, 1e-4};
    std::vector<double> h_mass{1.0, 0.1, 0.01};
    int n_support = 1000;
    int n_rotations = 200;
    int n_stable_direct = 50;
    std::uint64_t seed = 2024;
    KernelParams kp{};
    double tol_rep = 1e-8;
    double tol_stable_direct = 1e-6;
    double growth_const = 0.30;  // analytic bound is 2/(4 sqrt(pi)) ~ 0.282
    double tol_mass = 1e-8;
    double tol_moment = 1e-6;
    double tol_semigroup = 1e-10;
};

namespace detail {

inline double uniform01(std::uint64_t seed, std::uint64_t idx) {
    return (static_cast<double>(splitmix64(splitmix64(idx) ^ seed) >> 11) + 0.5) *
           0x1p-53;
}

/// rho_h mass by polar quadrature (the 1/r singularity cancels against the
/// Jacobian); integrates to erf-accuracy over [0, 8 sqrt(h)].
inline double rho_mass_quadrature(double h, const KernelParams& kp) {
    KernelParams kph = kp.with_h(h);
    double cut = 8.0 * std::sqrt(h);
    return gl_integrate(
        [&](double r) { return 2.0 * pi * r * rho(r, 0.0, kph); }, 1e-300, cut,
        200);
}

inline double rho_second_moment_quadrature(double h, const KernelParams& kp) {
    KernelParams kph = kp.with_h(h);
    double cut = 10.0 * std::sqrt(h);
    return gl_integrate(
        [&](double r) { return 2.0 * pi * r * r * r * rho(r, 0.0, kph); }, 1e-300,
        cut, 240);
}

}  // namespace detail

/// Cross-representation agreement of w on a lattice_n^3 lattice over
/// [-1.5, 1.5]^3: w_unified vs w_inside / w_outside on their own domains.
/// Returns the worst relative deviation.
inline CheckResult check_representation_agreement(const ValidateConfig& cfg) {
    double worst = 0.0;
    const int n = cfg.lattice_n;
    for (double h : cfg.h_rep) {
        KernelParams kp = cfg.kp.with_h(h);
        std::vector<double> local(n, 0.0);
        parallel_for(static_cast<std::size_t>(n), [&](std::size_t ix) {
            double w_max = 0.0;
            double x = -1.5 + 3.0 * static_cast<double>(ix) / (n - 1);
            for (int iy = 0; iy < n; ++iy) {
                double y = -1.5 + 3.0 * iy / (n - 1.0);
                for (int it = 0; it < n; ++it) {
                    double t = -1.5 + 3.0 * it / (n - 1.0);
                    SpaceTimePoint p{x, y, t};
                    double wu = w_unified(p, kp);
                    double wr = std::abs(y) >= std::abs(t) ? w_inside(p, kp)
                                                           : w_outside(p, kp);
                    double rel = std::abs(wu - wr) / std::max(std::abs(wr), 1e-300);
                    w_max = std::max(w_max, rel);
                }
            }
            local[ix] = w_max;
        });
        for (double v : local) worst = std::max(worst, v);
    }
    return {"w_representation_agreement", worst, cfg.tol_rep, worst <= cfg.tol_rep};
}

/// All eight sign flips of (x, y, t) give the same w_unified value.
inline CheckResult check_parity(const ValidateConfig& cfg) {
    KernelParams kp = cfg.kp.with_h(0.3);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        double x = 1.4 * (2.0 * detail::uniform01(cfg.seed, 3 * k) - 1.0);
        double y = 1.4 * (2.0 * detail::uniform01(cfg.seed, 3 * k + 1) - 1.0);
        double t = 1.4 * (2.0 * detail::uniform01(cfg.seed, 3 * k + 2) - 1.0);
        double ref = w_unified({x, y, t}, kp);
        for (int sx : {-1, 1})
            for (int sy : {-1, 1})
                for (int st : {-1, 1}) {
                    double w = w_unified({sx * x, sy * y, st * t}, kp);
                    worst = std::max(worst, std::abs(w - ref) /
                                                std::max(std::abs(ref), 1e-300));
                }
    }
    return {"w_parity_8_signs", worst, 1e-12, worst <= 1e-12};
}

/// V vanishes identically inside the complement of the light cone.
inline CheckResult check_support(const ValidateConfig& cfg) {
    KernelParams kp = cfg.kp.with_h(0.2);
    double worst = 0.0;
    for (int k = 0; k < cfg.n_support; ++k) {
        double t = 0.1 + 1.9 * detail::uniform01(cfg.seed + 1, 2 * k);
        double r = t * detail::uniform01(cfg.seed + 1, 2 * k + 1) * 0.999;
        double phi = 2.0 * pi * detail::uniform01(cfg.seed + 1, 400000 + k);
        if (detail::uniform01(cfg.seed + 1, 500000 + k) < 0.5) t = -t;
        KernelValue kv = V({r * std::cos(phi), r * std::sin(phi), t}, kp);
        worst = std::max(worst, std::abs(kv.value));
    }
    return {"V_support_light_cone", worst, 0.0, worst == 0.0};
}

/// Rotation/reflection invariance and t-evenness of V.
inline CheckResult check_radial_symmetry(const ValidateConfig& cfg) {
    KernelParams kp = cfg.kp.with_h(0.3);
    double worst = 0.0;
    for (int k = 0; k < cfg.n_rotations; ++k) {
        double r = 0.05 + 1.8 * detail::uniform01(cfg.seed + 2, 4 * k);
        double t = r * (2.0 * detail::uniform01(cfg.seed + 2, 4 * k + 1) - 1.0);
        double phi0 = 2.0 * pi * detail::uniform01(cfg.seed + 2, 4 * k + 2);
        double beta = 2.0 * pi * detail::uniform01(cfg.seed + 2, 4 * k + 3);
        double a = V({r * std::cos(phi0), r * std::sin(phi0), t}, kp).value;
        double b = V({r * std::cos(phi0 + beta), r * std::sin(phi0 + beta), -t}, kp).value;
        worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), 1e-300));
    }
    return {"V_radial_symmetry_t_even", worst, 1e-8, worst <= 1e-8};
}

/// Stable representation against the direct rotation average.
inline CheckResult check_stable_vs_direct(const ValidateConfig& cfg) {
    double worst = 0.0;
    std::vector<double> hs{0.5, 0.2, 0.1, 0.05};
    std::vector<double> local(cfg.n_stable_direct, 0.0);
    parallel_for(static_cast<std::size_t>(cfg.n_stable_direct), [&](std::size_t k) {
        double h = hs[k % hs.size()];
        KernelParams kp = cfg.kp.with_h(h);
        double t = -1.2 + 2.4 * detail::uniform01(cfg.seed + 3, 3 * k);
        double r = std::abs(t) +
                   (1.8 - std::abs(t)) * detail::uniform01(cfg.seed + 3, 3 * k + 1);
        double phi = 2.0 * pi * detail::uniform01(cfg.seed + 3, 3 * k + 2);
        SpaceTimePoint p{r * std::cos(phi), r * std::sin(phi), t};
        double direct = V_direct(p, kp);
        double stable = V_stable({r, t}, kp).value;
        local[k] = std::abs(direct - stable) / std::max(std::abs(direct), 1e-300);
    });
    for (double v : local) worst = std::max(worst, v);
    return {"V_stable_vs_direct", worst, cfg.tol_stable_direct,
            worst <= cfg.tol_stable_direct};
}

/// sqrt(h) |V| stays below one constant across the h sweep (lattice over
/// r in [0, 2], t in [-1.5, 1.5]).
inline CheckResult check_growth_bound(const ValidateConfig& cfg) {
    double worst = 0.0;
    for (double h : cfg.h_growth) {
        KernelParams kp = cfg.kp.with_h(h);
        const int nr = 17, nt = 13;
        std::vector<double> local(nr, 0.0);
        parallel_for(static_cast<std::size_t>(nr), [&](std::size_t ir) {
            double m = 0.0;
            double r = 2.0 * static_cast<double>(ir) / (nr - 1);
            for (int it = 0; it < nt; ++it) {
                double t = -1.5 + 3.0 * it / (nt - 1.0);
                m = std::max(m, std::abs(V_stable({r, t}, kp).value));
            }
            local[ir] = m;
        });
        for (double v : local) worst = std::max(worst, std::sqrt(h) * v);
    }
    return {"V_growth_sqrt_h_bound", worst, cfg.growth_const,
            worst <= cfg.growth_const};
}

/// log |w_inside(0,1,0)| grows like 1/h: least-squares slope against 1/h
/// over h in {0.5, 0.25, 0.125} within 20% of 1.
inline CheckResult check_w_growth_slope(const ValidateConfig& cfg) {
    std::vector<double> hs{0.5, 0.25, 0.125};
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (double h : hs) {
        double x = 1.0 / h;
        double y = std::log(std::abs(w_inside({0.0, 1.0, 0.0}, cfg.kp.with_h(h))));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = static_cast<double>(hs.size());
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    double dev = std::abs(slope - 1.0);
    return {"w_exponential_growth_slope", dev, 0.2, dev <= 0.2};
}

inline CheckResult check_rho_mass(const ValidateConfig& cfg) {
    double worst = 0.0;
    for (double h : cfg.h_mass)
        worst = std::max(worst, std::abs(detail::rho_mass_quadrature(h, cfg.kp) - 1.0));
    return {"rho_mass_unit", worst, cfg.tol_mass, worst <= cfg.tol_mass};
}

inline CheckResult check_rho_moment(const ValidateConfig& cfg) {
    double worst = 0.0;
    for (double h : cfg.h_mass)
        worst = std::max(worst, std::abs(detail::rho_second_moment_quadrature(h, cfg.kp) -
                                         0.5 * h));
    return {"rho_second_moment_h_over_2", worst, cfg.tol_moment,
            worst <= cfg.tol_moment};
}

/// Weak-delta property: errors of int rho_h f against f(0,0) = 1 for the
/// Gaussian f = exp(-r^2) must decrease monotonically in h. Observed value is
/// the worst ratio err(h_small) / err(h_large); pass iff < 1 throughout.
inline CheckResult check_rho_weak_delta(const ValidateConfig& cfg) {
    std::vector<double> hs{0.1, 0.01, 0.001};
    std::vector<double> errs;
    for (double h : hs) {
        KernelParams kp = cfg.kp.with_h(h);
        double cut = 10.0 * std::sqrt(h);
        double val = gl_integrate(
            [&](double r) {
                return 2.0 * pi * r * rho(r, 0.0, kp) * std::exp(-r * r);
            },
            1e-300, cut, 260);
        errs.push_back(std::abs(val - 1.0));
    }
    double worst_ratio = 0.0;
    for (std::size_t i = 0; i + 1 < errs.size(); ++i)
        worst_ratio = std::max(worst_ratio, errs[i + 1] / errs[i]);
    return {"rho_weak_delta_monotone", worst_ratio, 1.0, worst_ratio < 1.0};
}

/// v <= 0 everywhere (up to kernel quadrature tolerance).
inline CheckResult check_v_sign(const ValidateConfig& cfg) {
    KernelParams kp = cfg.kp.with_h(0.25);
    double worst = 0.0;  // most positive value found
    for (int k = 0; k < 300; ++k) {
        double x = 1.4 * (2.0 * detail::uniform01(cfg.seed + 4, 3 * k) - 1.0);
        double y = 1.5 * detail::uniform01(cfg.seed + 4, 3 * k + 1);
        double t = 1.4 * (2.0 * detail::uniform01(cfg.seed + 4, 3 * k + 2) - 1.0);
        worst = std::max(worst, v({x, y, t}, kp));
    }
    return {"v_nonpositive", worst, 1e-12, worst <= 1e-12};
}

/// psi^{eps/2} * psi^{eps/2} = psi^eps at sample points.
inline CheckResult check_mollifier_semigroup(const ValidateConfig& cfg) {
    const double eps = 0.02;
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        double t = -0.45 + 0.1 * k;
        double conv = gl_integrate(
            [&](double s) {
                return psi_mollifier(t - s, 0.5 * eps) * psi_mollifier(s, 0.5 * eps);
            },
            -1.2, 1.2, 400);
        worst = std::max(worst, std::abs(conv - psi_mollifier(t, eps)));
    }
    return {"mollifier_semigroup", worst, cfg.tol_semigroup,
            worst <= cfg.tol_semigroup};
}

inline std::vector<CheckResult> run_kernel_checks(const ValidateConfig& cfg) {
    cfg.kp.validate();
    return {
        check_representation_agreement(cfg),
        check_parity(cfg),
        check_support(cfg),
        check_radial_symmetry(cfg),
        check_stable_vs_direct(cfg),
        check_growth_bound(cfg),
        check_w_growth_slope(cfg),
        check_rho_mass(cfg),
        check_rho_moment(cfg),
        check_rho_weak_delta(cfg),
        check_v_sign(cfg),
        check_mollifier_semigroup(cfg),
    };
}

inline void write_check_report(const std::vector<CheckResult>& checks,
                               const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("write_check_report: cannot open " + path);
    os << "check,observed,threshold,pass\n";
    for (const CheckResult& c : checks) {
        char buf[80];
        std::snprintf(buf, sizeof(buf), "%.6e,%.6e", c.observed, c.threshold);
        os << c.name << ',' << buf << ',' << (c.pass ? 1 : 0) << "\n";
    }
}

}  // namespace wavecauchy
