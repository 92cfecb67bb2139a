#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "wavecauchy/kernel.hpp"
#include "wavecauchy/synthdata.hpp"
#include "wavecauchy/threading.hpp"

namespace wavecauchy {

struct TargetPoint {
    double x = 0.0, y = 0.0, t = 0.0;
};

struct QuadDiagnostics {
    int boundary_nodes = 0;
    int time_nodes = 0;  // largest per-boundary-point time window, in samples
    double est_quad_error = 0.0;
};

struct ReconstructionResult {
    double value = 0.0;
    double h = 0.0;
    TargetPoint target;
    QuadDiagnostics diag;
    std::optional<double> truth;
    std::optional<double> abs_error;
    std::string error;  // set instead of throwing in batched runs
};

/// Data window for the partial-boundary formula: boundary arc [s0, s1] (arc
/// length, wrapping past the perimeter when s1 < s0), time interval
/// [t0, t1], and the rotation angle orienting the cone.
struct PartialBoundaryConfig {
    double s0 = 0.0, s1 = 0.0;
    double t0 = 0.0, t1 = 0.0;
    double alpha = 0.0;
};

/// Euclidean distance between a boundary point and the target.
inline double tau(const BoundaryPoint& p, const TargetPoint& tp) {
    return std::hypot(p.x - tp.x, p.y - tp.y);
}

namespace detail {

/// Number of trapezoid cells adjacent to each cone edge that are re-integrated
/// with exact kernel values against linearly interpolated data. The kernel
/// has a square-root profile at the window ends, which plain trapezoid
/// resolves only to O(dt^1.5); the data stays piecewise linear either way.
inline constexpr int edge_refine_cells = 4;

/// Integrate profile(t - t_center) * data_interp(t) over [a, b] by
/// Gauss-Legendre with the trace interpolated linearly in time.
template <typename Profile>
double gl_segment(const Profile& value_at, const BoundaryTrace& tr, int row,
                  double a, double b, double t_center, int n) {
    if (!(b > a)) return 0.0;
    return gl_integrate(
        [&](double t) { return value_at(t - t_center) * tr.interp(row, t); }, a,
        b, n);
}

}  // namespace detail

/// Theorem-style reconstruction from a full-boundary trace: trapezoid in arc
/// length over all boundary samples and in time over the per-point window
/// [t* - tau, t* + tau], where the kernel support ends. Cells touching the
/// window ends use exact kernel evaluations against linearly interpolated
/// data. Supplying ground truth fills the error fields.
inline ReconstructionResult reconstruct_point(const BoundaryTrace& tr,
                                              const TargetPoint& tp, double h,
                                              const KernelParams& kp,
                                              const GroundTruth* gt = nullptr) {
    const KernelParams kph = kp.with_h(h);
    kph.validate();
    const double ds = tr.arc_step();
    if (!tr.domain.contains(tp.x, tp.y, ds))
        throw std::invalid_argument(
            "reconstruct_point: target outside the domain or closer to the "
            "boundary than one sample spacing");
    double tau_max = 0.0;
    for (const BoundaryPoint& p : tr.points) tau_max = std::max(tau_max, tau(p, tp));
    if (tp.t - tau_max < tr.t_min - 1e-12 || tp.t + tau_max > tr.t_max + 1e-12)
        throw std::invalid_argument(
            "reconstruct_point: trace window does not cover [t* - tau, t* + tau]");

    const int nb = tr.n_boundary;
    const double dt = tr.dt();
    std::vector<double> inner(nb, 0.0), est(nb, 0.0);
    std::vector<int> used(nb, 0);

    parallel_for(static_cast<std::size_t>(nb), [&](std::size_t iz) {
        const int i = static_cast<int>(iz);
        const double r = tau(tr.points[i], tp);
        if (r <= 0.0) return;
        const KernelTimeProfile profile(r, kph);
        auto value_at = [&](double off) { return profile.value(off); };
        const double lo = tp.t - r, hi = tp.t + r;
        int jA = static_cast<int>(std::ceil((lo - tr.t_min) / dt));
        int jB = static_cast<int>(std::floor((hi - tr.t_min) / dt));
        jA = std::max(jA, 0);
        jB = std::min(jB, tr.n_time - 1);
        const int jL = jA + detail::edge_refine_cells;
        const int jR = jB - detail::edge_refine_cells;

        double acc = 0.0, data_mass = 0.0;
        if (jL < jR) {
            double tL = tr.time(jL), tR = tr.time(jR);
            double prev = profile.value(tL - tp.t) * tr.value(i, jL);
            for (int j = jL + 1; j <= jR; ++j) {
                double cur = profile.value(tr.time(j) - tp.t) * tr.value(i, j);
                acc += 0.5 * dt * (prev + cur);
                prev = cur;
            }
            acc += detail::gl_segment(value_at, tr, i, lo, tL, tp.t, 16);
            acc += detail::gl_segment(value_at, tr, i, tR, hi, tp.t, 16);
        } else {
            acc = detail::gl_segment(value_at, tr, i, lo, hi, tp.t, 32);
        }
        for (int j = std::max(jA, 0); j <= jB; ++j) data_mass += dt * std::abs(tr.value(i, j));
        used[i] = std::max(0, jB - jA + 1);

        double kernel_err = 0.0;
        for (double frac : {0.0, 0.55, -0.55})
            kernel_err = std::max(kernel_err, profile.doubling_error(frac * r));
        inner[i] = acc;
        est[i] = kernel_err * data_mass;
    });

    ReconstructionResult res;
    res.h = h;
    res.target = tp;
    res.diag.boundary_nodes = nb;
    for (int i = 0; i < nb; ++i) {
        res.value += ds * inner[i];
        res.diag.est_quad_error += ds * est[i];
        res.diag.time_nodes = std::max(res.diag.time_nodes, used[i]);
    }
    if (gt) {
        res.truth = gt->u(tp.x, tp.y, tp.t);
        res.abs_error = std::abs(res.value - *res.truth);
    }
    return res;
}

/// Batched reconstruction; per-target failures land in the result's error
/// field instead of aborting the batch. Output order matches the input.
inline std::vector<ReconstructionResult> reconstruct_grid(
    const BoundaryTrace& tr, const std::vector<TargetPoint>& targets, double h,
    const KernelParams& kp, const GroundTruth* gt = nullptr) {
    std::vector<ReconstructionResult> out(targets.size());
    for (std::size_t k = 0; k < targets.size(); ++k) {
        try {
            out[k] = reconstruct_point(tr, targets[k], h, kp, gt);
        } catch (const std::exception& e) {
            out[k].value = std::numeric_limits<double>::quiet_NaN();
            out[k].h = h;
            out[k].target = targets[k];
            out[k].error = e.what();
        }
    }
    return out;
}

/// Partial-boundary reconstruction with the unaveraged kernel v_h^alpha over
/// an arc and finite time window. Exponentially unstable as h decreases; the
/// kernel evaluation throws the unstable-regime error past the exponent cap.
inline ReconstructionResult reconstruct_partial(const BoundaryTrace& tr,
                                                const TargetPoint& tp, double h,
                                                const PartialBoundaryConfig& cfg,
                                                const KernelParams& kp,
                                                const GroundTruth* gt = nullptr) {
    const KernelParams kph = kp.with_h(h);
    kph.validate();
    const double P = tr.domain.perimeter();
    const double ds = tr.arc_step();
    if (!tr.domain.contains(tp.x, tp.y, ds))
        throw std::invalid_argument("reconstruct_partial: target outside the domain");

    auto wrap = [&](double s) { return s - P * std::floor(s / P); };
    const double s0 = wrap(cfg.s0), s1 = wrap(cfg.s1);
    auto in_arc = [&](double s) {
        s = wrap(s);
        return s0 <= s1 ? (s >= s0 && s <= s1) : (s >= s0 || s <= s1);
    };

    const int nb = tr.n_boundary;
    const double ca = std::cos(cfg.alpha), sa = std::sin(cfg.alpha);
    std::vector<double> xr(nb), yr(nb);
    double y_max = 0.0;
    for (int i = 0; i < nb; ++i) {
        double dx = tr.points[i].x - tp.x, dy = tr.points[i].y - tp.y;
        xr[i] = dx * ca + dy * sa;
        yr[i] = -dx * sa + dy * ca;
        bool inside_cone = yr[i] >= std::abs(xr[i]);
        if (inside_cone && !in_arc(i * ds))
            throw std::invalid_argument(
                "reconstruct_partial: arc does not cover the cone intersection "
                "with the boundary");
        if (inside_cone) y_max = std::max(y_max, yr[i]);
    }
    if (cfg.t0 < tr.t_min - 1e-12 || cfg.t1 > tr.t_max + 1e-12)
        throw std::invalid_argument(
            "reconstruct_partial: time window exceeds the trace grid");
    if (tp.t - y_max < cfg.t0 - 1e-12 || tp.t + y_max > cfg.t1 + 1e-12)
        throw std::invalid_argument(
            "reconstruct_partial: time window too short for the kernel support");

    const double dt = tr.dt();
    std::vector<double> inner(nb, 0.0), est(nb, 0.0);
    std::vector<int> used(nb, 0);
    std::vector<std::size_t> rows;
    for (int i = 0; i < nb; ++i)
        if (in_arc(i * ds) && yr[i] > 0.0) rows.push_back(i);

    parallel_for(rows.size(), [&](std::size_t kz) {
        const int i = static_cast<int>(rows[kz]);
        const double x = xr[i], y = yr[i];
        const int n = detail::osc_nodes(x, y, y, h, kph.n_s);
        auto v_at = [&](double off) {
            if (std::abs(off) > y) return 0.0;
            return -detail::w_inside_n(x, y, off, h, kph.exp_cap, n);
        };
        const double lo = tp.t - y, hi = tp.t + y;
        int jA = static_cast<int>(std::ceil((lo - tr.t_min) / dt));
        int jB = static_cast<int>(std::floor((hi - tr.t_min) / dt));
        jA = std::max(jA, 0);
        jB = std::min(jB, tr.n_time - 1);
        double acc = 0.0;
        if (jA <= jB) {
            double prev = v_at(tr.time(jA) - tp.t) * tr.value(i, jA);
            for (int j = jA + 1; j <= jB; ++j) {
                double cur = v_at(tr.time(j) - tp.t) * tr.value(i, j);
                acc += 0.5 * dt * (prev + cur);
                prev = cur;
            }
            // partial cells at the support ends; v is nonzero there, so the
            // interpolated data contributes
            double fl = v_at(lo - tp.t) * tr.interp(i, lo);
            double fr = v_at(hi - tp.t) * tr.interp(i, hi);
            acc += 0.5 * (tr.time(jA) - lo) *
                   (fl + v_at(tr.time(jA) - tp.t) * tr.value(i, jA));
            acc += 0.5 * (hi - tr.time(jB)) *
                   (v_at(tr.time(jB) - tp.t) * tr.value(i, jB) + fr);
        }
        inner[i] = acc;
        used[i] = std::max(0, jB - jA + 1);
        double mass = 0.0;
        for (int j = jA; j <= jB; ++j) mass += dt * std::abs(tr.value(i, j));
        est[i] = std::abs(detail::w_inside_n(x, y, 0.0, h, kph.exp_cap, n) -
                          detail::w_inside_n(x, y, 0.0, h, kph.exp_cap, 2 * n)) *
                 mass;
    });

    ReconstructionResult res;
    res.h = h;
    res.target = tp;
    res.diag.boundary_nodes = static_cast<int>(rows.size());
    for (int i = 0; i < nb; ++i) {
        res.value += ds * inner[i];
        res.diag.est_quad_error += ds * est[i];
        res.diag.time_nodes = std::max(res.diag.time_nodes, used[i]);
    }
    if (gt) {
        res.truth = gt->u(tp.x, tp.y, tp.t);
        res.abs_error = std::abs(res.value - *res.truth);
    }
    return res;
}

/// Reconstruction at each h in the list; per-h failures are recorded in the
/// row's error field.
inline std::vector<ReconstructionResult> h_sweep(const BoundaryTrace& tr,
                                                 const TargetPoint& tp,
                                                 const std::vector<double>& h_list,
                                                 const KernelParams& kp,
                                                 const GroundTruth* gt = nullptr) {
    std::vector<ReconstructionResult> out;
    out.reserve(h_list.size());
    for (double h : h_list) {
        try {
            out.push_back(reconstruct_point(tr, tp, h, kp, gt));
        } catch (const std::exception& e) {
            ReconstructionResult r;
            r.value = std::numeric_limits<double>::quiet_NaN();
            r.h = h;
            r.target = tp;
            r.error = e.what();
            out.push_back(std::move(r));
        }
    }
    return out;
}

inline constexpr const char* results_csv_header =
    "h,x_star,y_star,t_star,value,truth,abs_error,est_quad_error";

inline void write_results_csv(const std::vector<ReconstructionResult>& rows,
                              const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("write_results_csv: cannot open " + path);
    os << results_csv_header << "\n";
    char buf[40];
    auto fmt = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    for (const ReconstructionResult& r : rows) {
        os << fmt(r.h) << ',' << fmt(r.target.x) << ',' << fmt(r.target.y) << ','
           << fmt(r.target.t) << ',' << fmt(r.value) << ','
           << (r.truth ? fmt(*r.truth) : "") << ','
           << (r.abs_error ? fmt(*r.abs_error) : "") << ','
           << fmt(r.diag.est_quad_error) << "\n";
    }
    if (!os) throw IoError("write_results_csv: write failed " + path);
}

}  // namespace wavecauchy
