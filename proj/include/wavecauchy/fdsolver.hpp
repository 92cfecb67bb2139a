#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavecauchy/domain.hpp"
#include "wavecauchy/synthdata.hpp"
#include "wavecauchy/threading.hpp"

namespace wavecauchy {

/// Uniform grid for the rectangle solver. nx, ny count cells; nodes are
/// (nx+1) x (ny+1) with the boundary rows/columns pinned to zero.
struct FDGrid {
    int nx = 64, ny = 64;
    double dx = 0.0, dy = 0.0, dt = 0.0;
    int t_steps = 0;  // steps in each time direction from t = 0

    void validate() const {
        if (nx < 4 || ny < 4) throw std::invalid_argument("FDGrid: nx, ny must be >= 4");
        if (!(dx > 0.0) || !(dy > 0.0) || !(dt > 0.0))
            throw std::invalid_argument("FDGrid: dx, dy, dt must be positive");
        if (t_steps < 1) throw std::invalid_argument("FDGrid: t_steps must be >= 1");
        const double cfl_limit = 0.9 * std::min(dx, dy) / std::sqrt(2.0);
        if (dt > cfl_limit * (1.0 + 1e-12))
            throw std::invalid_argument("FDGrid: CFL violated, need dt <= 0.9 min(dx,dy)/sqrt(2)");
    }
};

/// Build a grid with square cells (required for the uniform arc-length trace)
/// covering [0, t_half] in each time direction.
inline FDGrid make_fd_grid(const Domain& rect, int nx, double cfl_fraction,
                           double t_half) {
    if (rect.kind() != Domain::Kind::rectangle)
        throw std::invalid_argument("make_fd_grid: rectangle domain required");
    if (!(cfl_fraction > 0.0) || cfl_fraction > 0.9)
        throw std::invalid_argument("make_fd_grid: cfl_fraction must be in (0, 0.9]");
    FDGrid g;
    g.nx = nx;
    g.dx = rect.side_a() / nx;
    g.ny = static_cast<int>(std::lround(rect.side_b() / g.dx));
    g.dy = g.dx;
    if (std::abs(g.ny * g.dx - rect.side_b()) > 1e-9 * rect.side_b())
        throw std::invalid_argument(
            "make_fd_grid: sides not commensurate with square cells");
    g.dt = cfl_fraction * g.dx / std::sqrt(2.0);
    g.t_steps = static_cast<int>(std::ceil(t_half / g.dt));
    return g;
}

/// Plain leapfrog on the pinned-boundary rectangle grid. Holds the (prev,
/// cur) field pair; step() advances one dt. Time-reversible: reseeding with
/// the pair swapped walks the trajectory back.
class WaveStepper {
public:
    WaveStepper(const FDGrid& grid) : g_(grid) {
        g_.validate();
        const std::size_t n = nodes();
        prev_.assign(n, 0.0);
        cur_.assign(n, 0.0);
        next_.assign(n, 0.0);
    }

    std::size_t nodes() const {
        return static_cast<std::size_t>(g_.nx + 1) * (g_.ny + 1);
    }
    std::size_t at(int i, int j) const {
        return static_cast<std::size_t>(j) * (g_.nx + 1) + i;
    }

    /// Second-order start from u(x, y, 0) and du/dt(x, y, 0); direction = +-1
    /// selects which way time runs.
    void seed(const std::function<double(double, double)>& u0,
              const std::function<double(double, double)>& v0, int direction) {
        std::vector<double> a(nodes(), 0.0);
        for (int j = 1; j < g_.ny; ++j)
            for (int i = 1; i < g_.nx; ++i)
                a[at(i, j)] = u0(i * g_.dx, j * g_.dy);
        prev_ = a;
        // cur = u0 + dt v0 + dt^2/2 lap(u0)
        cur_.assign(nodes(), 0.0);
        const double s = direction >= 0 ? 1.0 : -1.0;
        for (int j = 1; j < g_.ny; ++j)
            for (int i = 1; i < g_.nx; ++i) {
                double lap = laplacian(a, i, j);
                cur_[at(i, j)] = a[at(i, j)] + s * g_.dt * v0(i * g_.dx, j * g_.dy) +
                                 0.5 * g_.dt * g_.dt * lap;
            }
        steps_done_ = 0;
    }

    void seed_pair(std::vector<double> prev, std::vector<double> cur) {
        if (prev.size() != nodes() || cur.size() != nodes())
            throw std::invalid_argument("WaveStepper::seed_pair: size mismatch");
        prev_ = std::move(prev);
        cur_ = std::move(cur);
        steps_done_ = 0;
    }

    void step() {
        const double cx = g_.dt * g_.dt / (g_.dx * g_.dx);
        const double cy = g_.dt * g_.dt / (g_.dy * g_.dy);
        parallel_for(static_cast<std::size_t>(g_.ny - 1), [&](std::size_t row) {
            const int j = static_cast<int>(row) + 1;
            for (int i = 1; i < g_.nx; ++i) {
                const std::size_t c = at(i, j);
                next_[c] = 2.0 * cur_[c] - prev_[c] +
                           cx * (cur_[c + 1] - 2.0 * cur_[c] + cur_[c - 1]) +
                           cy * (cur_[c + g_.nx + 1] - 2.0 * cur_[c] +
                                 cur_[c - g_.nx - 1]);
            }
        });
        std::swap(prev_, cur_);
        std::swap(cur_, next_);
        ++steps_done_;
        if (!std::isfinite(cur_[at(g_.nx / 2, g_.ny / 2)]))
            throw std::runtime_error("WaveStepper: NaN detected at step " +
                                     std::to_string(steps_done_));
    }

    const std::vector<double>& current() const { return cur_; }
    const std::vector<double>& previous() const { return prev_; }
    const FDGrid& grid() const { return g_; }

    /// Energy sum((du/dt)^2 + |grad u|^2) dx dy with centered differences,
    /// evaluated at the "previous" time level using the (prev, cur) pair and
    /// the level before prev (caller supplies it).
    double energy(const std::vector<double>& before_prev) const {
        double e = 0.0;
        const double i2dt = 1.0 / (2.0 * g_.dt);
        for (int j = 1; j < g_.ny; ++j)
            for (int i = 1; i < g_.nx; ++i) {
                const std::size_t c = at(i, j);
                double ut = (cur_[c] - before_prev[c]) * i2dt;
                double ux = (prev_[c + 1] - prev_[c - 1]) / (2.0 * g_.dx);
                double uy = (prev_[c + g_.nx + 1] - prev_[c - g_.nx - 1]) / (2.0 * g_.dy);
                e += ut * ut + ux * ux + uy * uy;
            }
        return e * g_.dx * g_.dy;
    }

private:
    double laplacian(const std::vector<double>& f, int i, int j) const {
        return (f[at(i + 1, j)] - 2.0 * f[at(i, j)] + f[at(i - 1, j)]) /
                   (g_.dx * g_.dx) +
               (f[at(i, j + 1)] - 2.0 * f[at(i, j)] + f[at(i, j - 1)]) /
                   (g_.dy * g_.dy);
    }

    FDGrid g_;
    std::vector<double> prev_, cur_, next_;
    int steps_done_ = 0;
};

struct FDSolution {
    BoundaryTrace trace;
    double energy_drift_rel = 0.0;
    std::vector<std::vector<double>> snapshots;
    std::vector<double> snapshot_times;
};

namespace detail {

/// One-sided second-order normal derivative at the 2(nx+ny) boundary nodes,
/// ordered counterclockwise from (0, 0) to match Domain::at_arclength.
inline void extract_boundary_row(const FDGrid& g, const std::vector<double>& u,
                                 std::vector<double>& out) {
    const int nx = g.nx, ny = g.ny;
    auto at = [&](int i, int j) {
        return static_cast<std::size_t>(j) * (nx + 1) + i;
    };
    out.clear();
    out.reserve(2 * (nx + ny));
    for (int i = 0; i < nx; ++i)  // bottom, nu = (0,-1)
        out.push_back(-(4.0 * u[at(i, 1)] - u[at(i, 2)]) / (2.0 * g.dy));
    for (int j = 0; j < ny; ++j)  // right, nu = (1,0)
        out.push_back((-4.0 * u[at(nx - 1, j)] + u[at(nx - 2, j)]) / (2.0 * g.dx));
    for (int i = 0; i < nx; ++i)  // top, nu = (0,1)
        out.push_back((-4.0 * u[at(nx - i, ny - 1)] + u[at(nx - i, ny - 2)]) /
                      (2.0 * g.dy));
    for (int j = 0; j < ny; ++j)  // left, nu = (-1,0)
        out.push_back(-(4.0 * u[at(1, ny - j)] - u[at(2, ny - j)]) / (2.0 * g.dx));
}

}  // namespace detail

/// Leapfrog solve with homogeneous Dirichlet walls. The trace covers the
/// symmetric window [-t_steps dt, t_steps dt], produced by a forward and a
/// backward run from the initial slice. snapshot_stride > 0 stores the field
/// every that many forward steps.
inline FDSolution solve_rectangle(const Domain& rect,
                                  const std::function<double(double, double)>& u0,
                                  const std::function<double(double, double)>& v0,
                                  const FDGrid& grid, int snapshot_stride = 0) {
    if (rect.kind() != Domain::Kind::rectangle)
        throw std::invalid_argument("solve_rectangle: rectangle domain required");
    grid.validate();
    if (std::abs(grid.nx * grid.dx - rect.side_a()) > 1e-9 ||
        std::abs(grid.ny * grid.dy - rect.side_b()) > 1e-9)
        throw std::invalid_argument("solve_rectangle: grid does not match domain");
    if (std::abs(grid.dx - grid.dy) > 1e-12)
        throw std::invalid_argument("solve_rectangle: square cells required for the trace");

    FDSolution sol;
    const int nb = 2 * (grid.nx + grid.ny);
    const int nt = 2 * grid.t_steps + 1;
    BoundaryTrace& tr = sol.trace;
    tr.domain = rect;
    tr.n_boundary = nb;
    tr.n_time = nt;
    tr.t_min = -grid.t_steps * grid.dt;
    tr.t_max = grid.t_steps * grid.dt;
    tr.provenance.kind = Provenance::Kind::fd;
    tr.points.resize(nb);
    for (int i = 0; i < nb; ++i) tr.points[i] = rect.at_arclength(i * grid.dx);
    tr.values.assign(static_cast<std::size_t>(nb) * nt, 0.0);

    std::vector<double> row;
    auto store = [&](int j_time, const std::vector<double>& field) {
        detail::extract_boundary_row(grid, field, row);
        for (int i = 0; i < nb; ++i) tr.value(i, grid.t_steps + j_time) = row[i];
    };

    double e_min = 0.0, e_max = 0.0;
    bool have_energy = false;

    for (int direction : {+1, -1}) {
        WaveStepper stepper(grid);
        stepper.seed(u0, v0, direction);
        // prev_ holds t = 0, cur_ holds t = direction * dt
        if (direction > 0) store(0, stepper.previous());
        store(direction, stepper.current());
        for (int n = 2; n <= grid.t_steps; ++n) {
            // entering with (u_{n-2}, u_{n-1}); energy at level n-1 needs u_{n-2}
            std::vector<double> before = stepper.previous();
            stepper.step();
            store(direction * n, stepper.current());
            double e = stepper.energy(before);
            if (!have_energy) {
                e_min = e_max = e;
                have_energy = true;
            } else {
                e_min = std::min(e_min, e);
                e_max = std::max(e_max, e);
            }
            if (direction > 0 && snapshot_stride > 0 && n % snapshot_stride == 0) {
                sol.snapshots.push_back(stepper.current());
                sol.snapshot_times.push_back(n * grid.dt);
            }
        }
    }
    sol.energy_drift_rel = e_max > 0.0 ? (e_max - e_min) / e_max : 0.0;
    return sol;
}

}  // namespace wavecauchy
