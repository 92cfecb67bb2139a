#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavecauchy/bessel.hpp"
#include "wavecauchy/domain.hpp"
#include "wavecauchy/rng.hpp"
#include "wavecauchy/threading.hpp"

namespace wavecauchy {

/// One Dirichlet eigenmode.
///   disk:      u = A J_m(lambda_{m,k} r / R) {cos|sin}(m phi) cos(lambda t / R + phase)
///   rectangle: u = A sin(n1 pi x / a) sin(n2 pi y / b) cos(omega t + phase)
struct ModeSpec {
    int n1 = 0;  // disk: angular index m >= 0; rectangle: x index n >= 1
    int n2 = 1;  // disk: radial index k >= 1;  rectangle: y index m >= 1
    bool sin_azimuthal = false;  // disk only
    double amplitude = 1.0;
    double temporal_phase = 0.0;
};

/// Closed-form solution of the wave equation with the homogeneous Dirichlet
/// condition: a finite superposition of eigenmodes.
class GroundTruth {
public:
    GroundTruth(const Domain& domain, const std::vector<ModeSpec>& modes)
        : domain_(domain) {
        if (modes.empty())
            throw std::invalid_argument("GroundTruth: at least one mode required");
        for (const ModeSpec& m : modes) {
            Prepared p;
            p.spec = m;
            if (domain.kind() == Domain::Kind::disk) {
                if (m.n1 < 0 || m.n2 < 1)
                    throw std::invalid_argument("GroundTruth: disk mode needs m >= 0, k >= 1");
                p.lambda = bessel_zero(m.n1, m.n2);
                p.omega = p.lambda / domain.radius();
            } else {
                if (m.n1 < 1 || m.n2 < 1)
                    throw std::invalid_argument("GroundTruth: rectangle indices must be >= 1");
                p.kx = m.n1 * pi_ / domain.side_a();
                p.ky = m.n2 * pi_ / domain.side_b();
                p.omega = std::sqrt(p.kx * p.kx + p.ky * p.ky);
            }
            modes_.push_back(p);
        }
    }

    const Domain& domain() const { return domain_; }

    double u(double x, double y, double t) const {
        double sum = 0.0;
        for (const Prepared& p : modes_) sum += mode_u(p, x, y, t);
        return sum;
    }

    /// Laplacian; equals -omega^2 u per mode since u solves the wave equation.
    double laplacian(double x, double y, double t) const {
        double sum = 0.0;
        for (const Prepared& p : modes_) sum -= p.omega * p.omega * mode_u(p, x, y, t);
        return sum;
    }

    double du_dt(double x, double y, double t) const {
        double sum = 0.0;
        for (const Prepared& p : modes_) {
            double sp = spatial(p, x, y);
            sum += -p.spec.amplitude * p.omega * sp *
                   std::sin(p.omega * t + p.spec.temporal_phase);
        }
        return sum;
    }

    /// Outward normal derivative at a boundary sample.
    double normal_derivative(const BoundaryPoint& bp, double t) const {
        double gx = 0.0, gy = 0.0;
        gradient(bp.x, bp.y, t, gx, gy);
        return gx * bp.nx + gy * bp.ny;
    }

    void gradient(double x, double y, double t, double& gx, double& gy) const {
        gx = gy = 0.0;
        for (const Prepared& p : modes_) {
            double T = std::cos(p.omega * t + p.spec.temporal_phase);
            if (domain_.kind() == Domain::Kind::disk) {
                double r = std::hypot(x, y);
                if (r < 1e-14)
                    throw std::domain_error("GroundTruth::gradient: disk gradient at r = 0");
                double phi = std::atan2(y, x);
                int m = p.spec.n1;
                double kr = p.omega;  // lambda / R
                double ang, dang;
                angular(p, m * phi, ang, dang);
                double du_dr = p.spec.amplitude * kr * bessel_j_deriv(m, kr * r) * ang * T;
                double du_dphi_over_r =
                    p.spec.amplitude * bessel_j(m, kr * r) * dang * T / r;
                double c = x / r, s = y / r;
                gx += du_dr * c - du_dphi_over_r * s;
                gy += du_dr * s + du_dphi_over_r * c;
            } else {
                double A = p.spec.amplitude;
                gx += A * p.kx * std::cos(p.kx * x) * std::sin(p.ky * y) * T;
                gy += A * std::sin(p.kx * x) * p.ky * std::cos(p.ky * y) * T;
            }
        }
    }

private:
    static constexpr double pi_ = 3.141592653589793238462643383279502884;

    struct Prepared {
        ModeSpec spec;
        double lambda = 0.0;  // disk: Bessel zero
        double omega = 0.0;
        double kx = 0.0, ky = 0.0;  // rectangle wave numbers
    };

    void angular(const Prepared& p, double mphi, double& ang, double& dang) const {
        int m = p.spec.n1;
        if (p.spec.sin_azimuthal) {
            ang = std::sin(mphi);
            dang = m * std::cos(mphi);
        } else {
            ang = std::cos(mphi);
            dang = -m * std::sin(mphi);
        }
    }

    double spatial(const Prepared& p, double x, double y) const {
        if (domain_.kind() == Domain::Kind::disk) {
            double r = std::hypot(x, y);
            double phi = std::atan2(y, x);
            double ang, dang;
            angular(p, p.spec.n1 * phi, ang, dang);
            return p.spec.amplitude * bessel_j(p.spec.n1, p.omega * r) * ang;
        }
        return p.spec.amplitude * std::sin(p.kx * x) * std::sin(p.ky * y);
    }

    double mode_u(const Prepared& p, double x, double y, double t) const {
        return spatial(p, x, y) * std::cos(p.omega * t + p.spec.temporal_phase);
    }

    Domain domain_;
    std::vector<Prepared> modes_;
};

struct Provenance {
    enum class Kind { exact, fd, noisy };
    Kind kind = Kind::exact;
    double noise_rel = 0.0;
    std::uint64_t seed = 0;

    std::string to_string() const {
        switch (kind) {
            case Kind::exact: return "exact";
            case Kind::fd: return "fd";
            case Kind::noisy:
                return "noisy(" + format_double(noise_rel) + "," +
                       std::to_string(seed) + "," + noise_rng_name + ")";
        }
        return "exact";
    }

    static std::string format_double(double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return buf;
    }
};

/// Sampled normal derivative on boundary x time grid. Boundary samples are
/// uniform in arc length (s_i = i P / N_b); times are uniform on
/// [t_min, t_max]. Values are stored row-major: values[i * n_time + j].
struct BoundaryTrace {
    Domain domain = Domain::disk(1.0);
    int n_boundary = 0;
    int n_time = 0;
    double t_min = 0.0;
    double t_max = 0.0;
    std::vector<BoundaryPoint> points;
    std::vector<double> values;
    Provenance provenance;

    double dt() const { return (t_max - t_min) / (n_time - 1); }
    double time(int j) const { return t_min + j * dt(); }
    double arc_step() const { return domain.perimeter() / n_boundary; }
    double value(int i, int j) const { return values[static_cast<std::size_t>(i) * n_time + j]; }
    double& value(int i, int j) { return values[static_cast<std::size_t>(i) * n_time + j]; }

    /// Trace linearly interpolated in time along boundary row i.
    double interp(int i, double t) const {
        double u = (t - t_min) / dt();
        int j = static_cast<int>(std::floor(u));
        j = std::max(0, std::min(j, n_time - 2));
        double lam = u - j;
        return (1.0 - lam) * value(i, j) + lam * value(i, j + 1);
    }
};

/// Fill a trace with closed-form normal derivatives.
inline BoundaryTrace exact_trace(const GroundTruth& gt, const Domain& domain,
                                 int n_boundary, double t_min, double t_max,
                                 int n_time) {
    if (n_boundary < 3 || n_time < 2)
        throw std::invalid_argument("exact_trace: grid too small");
    if (!(t_max > t_min))
        throw std::invalid_argument("exact_trace: need t_max > t_min");
    BoundaryTrace tr;
    tr.domain = domain;
    tr.n_boundary = n_boundary;
    tr.n_time = n_time;
    tr.t_min = t_min;
    tr.t_max = t_max;
    tr.points.resize(n_boundary);
    tr.values.resize(static_cast<std::size_t>(n_boundary) * n_time);
    const double ds = domain.perimeter() / n_boundary;
    for (int i = 0; i < n_boundary; ++i) tr.points[i] = domain.at_arclength(i * ds);
    parallel_for(static_cast<std::size_t>(n_boundary), [&](std::size_t i) {
        for (int j = 0; j < n_time; ++j)
            tr.value(static_cast<int>(i), j) =
                gt.normal_derivative(tr.points[i], tr.time(j));
    });
    tr.provenance.kind = Provenance::Kind::exact;
    return tr;
}

/// Additive Gaussian noise with sigma = rel_level * max |values|,
/// deterministic in (seed, sample index).
inline BoundaryTrace add_noise(const BoundaryTrace& trace, double rel_level,
                               std::uint64_t seed) {
    if (rel_level < 0.0)
        throw std::invalid_argument("add_noise: rel_level must be >= 0");
    BoundaryTrace out = trace;
    if (rel_level == 0.0) return out;
    double peak = 0.0;
    for (double v : trace.values) peak = std::max(peak, std::abs(v));
    const double sigma = rel_level * peak;
    for (std::size_t idx = 0; idx < out.values.size(); ++idx)
        out.values[idx] += sigma * gaussian_noise(seed, idx);
    out.provenance.kind = Provenance::Kind::noisy;
    out.provenance.noise_rel = rel_level;
    out.provenance.seed = seed;
    return out;
}

}  // namespace wavecauchy
