// Command-line front end: data generation, reconstruction runs, kernel
// validation, and the full/partial stability benchmark. All outputs are CSV;
// every command is deterministic given its config file.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wavecauchy/wavecauchy.hpp"

namespace wc = wavecauchy;
namespace fs = std::filesystem;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_numerical = 1;
constexpr int exit_config = 2;
constexpr int exit_io = 3;

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    unsigned threads = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required) {
    auto* copt = cmd->add_option("--config", args.config_path, "run configuration file");
    if (config_required) copt->required();
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--threads", args.threads, "worker thread cap")
        ->envname("WAVECAUCHY_THREADS");
}

wc::RunConfig load_config(const CommonArgs& args) {
    if (args.config_path.empty()) return wc::RunConfig{};
    return wc::RunConfig::parse_file(args.config_path);
}

std::string out_path(const CommonArgs& args, const std::string& name) {
    fs::create_directories(args.out_dir);
    return (fs::path(args.out_dir) / name).string();
}

wc::Domain domain_from(const wc::RunConfig& cfg) {
    std::string kind = cfg.get_string("domain.kind");
    if (kind == "disk") return wc::Domain::disk(cfg.get_double("domain.R"));
    if (kind == "rect" || kind == "rectangle")
        return wc::Domain::rectangle(cfg.get_double("domain.a"),
                                     cfg.get_double("domain.b"));
    throw wc::ConfigError("domain.kind", "expected disk or rect, got '" + kind + "'");
}

std::vector<wc::ModeSpec> modes_from(const wc::RunConfig& cfg, const wc::Domain& dom) {
    std::vector<wc::ModeSpec> modes;
    for (const std::string& line : cfg.get_all("modes.mode")) {
        std::istringstream is(line);
        wc::ModeSpec m;
        if (dom.kind() == wc::Domain::Kind::disk) {
            std::string az;
            if (!(is >> m.n1 >> m.n2 >> az))
                throw wc::ConfigError("modes.mode",
                                      "disk mode needs: m k cos|sin [amplitude phase]");
            if (az != "cos" && az != "sin")
                throw wc::ConfigError("modes.mode", "azimuthal must be cos or sin");
            m.sin_azimuthal = az == "sin";
        } else {
            if (!(is >> m.n1 >> m.n2))
                throw wc::ConfigError("modes.mode",
                                      "rectangle mode needs: n m [amplitude phase]");
        }
        if (!(is >> m.amplitude)) m.amplitude = 1.0;
        if (!(is >> m.temporal_phase)) m.temporal_phase = 0.0;
        modes.push_back(m);
    }
    if (modes.empty())
        throw wc::ConfigError("modes.mode", "at least one mode is required");
    return modes;
}

wc::KernelParams kernel_from(const wc::RunConfig& cfg) {
    wc::KernelParams kp;
    kp.h = cfg.get_double("kernel.h", kp.h);
    kp.n_s = static_cast<int>(cfg.get_int("kernel.n_s", kp.n_s));
    kp.n_alpha = static_cast<int>(cfg.get_int("kernel.n_alpha", kp.n_alpha));
    kp.eps = cfg.get_double("kernel.eps", kp.eps);
    kp.exp_cap = cfg.get_double("kernel.exp_cap", kp.exp_cap);
    kp.validate();
    return kp;
}

std::vector<wc::TargetPoint> targets_from(const wc::RunConfig& cfg,
                                          const std::string& key) {
    std::vector<wc::TargetPoint> out;
    for (const std::string& line : cfg.get_all(key)) {
        std::istringstream is(line);
        wc::TargetPoint tp;
        if (!(is >> tp.x >> tp.y >> tp.t))
            throw wc::ConfigError(key, "target needs: x y t");
        out.push_back(tp);
    }
    return out;
}

wc::BoundaryTrace build_exact_trace(const wc::RunConfig& cfg, const wc::Domain& dom,
                                    const wc::GroundTruth& gt) {
    int nb = static_cast<int>(cfg.get_int("trace.n_boundary", 256));
    int nt = static_cast<int>(cfg.get_int("trace.n_time", 512));
    double t_min = cfg.get_double("trace.t_min", -2.0);
    double t_max = cfg.get_double("trace.t_max", 2.0);
    return wc::exact_trace(gt, dom, nb, t_min, t_max, nt);
}

int cmd_validate_kernel(const CommonArgs& args) {
    wc::RunConfig cfg = load_config(args);
    wc::ValidateConfig vc;
    vc.lattice_n = static_cast<int>(cfg.get_int("validate.lattice_n", vc.lattice_n));
    vc.n_support = static_cast<int>(cfg.get_int("validate.n_support", vc.n_support));
    vc.n_rotations =
        static_cast<int>(cfg.get_int("validate.n_rotations", vc.n_rotations));
    vc.n_stable_direct = static_cast<int>(
        cfg.get_int("validate.n_stable_direct", vc.n_stable_direct));
    vc.seed = static_cast<std::uint64_t>(cfg.get_int("validate.seed", 2024));
    if (cfg.has("validate.h_growth")) vc.h_growth = cfg.get_double_list("validate.h_growth");
    if (cfg.has("kernel.h") || cfg.has("kernel.n_s") || cfg.has("kernel.n_alpha"))
        vc.kp = kernel_from(cfg);

    std::vector<wc::CheckResult> checks = wc::run_kernel_checks(vc);
    bool all_pass = true;
    for (const wc::CheckResult& c : checks) {
        std::printf("[%s] %-32s observed=%.3e threshold=%.3e\n",
                    c.pass ? "PASS" : "FAIL", c.name.c_str(), c.observed,
                    c.threshold);
        all_pass = all_pass && c.pass;
    }
    wc::write_check_report(checks,
                           out_path(args, cfg.get_string("output.report",
                                                         "kernel_checks.csv")));
    std::printf("%zu checks, %s\n", checks.size(), all_pass ? "all passed" : "FAILURES");
    return all_pass ? exit_ok : exit_numerical;
}

int cmd_gen_data(const CommonArgs& args) {
    wc::RunConfig cfg = load_config(args);
    wc::Domain dom = domain_from(cfg);
    wc::GroundTruth gt(dom, modes_from(cfg, dom));
    wc::BoundaryTrace tr = build_exact_trace(cfg, dom, gt);
    double noise = cfg.get_double("trace.noise", 0.0);
    if (noise > 0.0)
        tr = wc::add_noise(tr, noise,
                           static_cast<std::uint64_t>(cfg.get_int("trace.seed", 0)));
    std::string path = out_path(args, cfg.get_string("output.trace", "trace.csv"));
    wc::write_trace(tr, path);
    std::printf("wrote %s: N_b=%d N_t=%d window=[%g, %g] provenance=%s\n",
                path.c_str(), tr.n_boundary, tr.n_time, tr.t_min, tr.t_max,
                tr.provenance.to_string().c_str());
    return exit_ok;
}

int cmd_solve_fd(const CommonArgs& args) {
    wc::RunConfig cfg = load_config(args);
    wc::Domain dom = domain_from(cfg);
    if (dom.kind() != wc::Domain::Kind::rectangle)
        throw wc::ConfigError("domain.kind", "solve-fd requires a rectangle");
    wc::GroundTruth gt(dom, modes_from(cfg, dom));
    int nx = static_cast<int>(cfg.get_int("fd.nx", 96));
    double cfl = cfg.get_double("fd.cfl", 0.85);
    double t_half = cfg.get_double("fd.t_half", 1.5);
    wc::FDGrid grid = wc::make_fd_grid(dom, nx, cfl, t_half);
    wc::FDSolution sol = wc::solve_rectangle(
        dom, [&](double x, double y) { return gt.u(x, y, 0.0); },
        [&](double x, double y) { return gt.du_dt(x, y, 0.0); }, grid);
    std::string path = out_path(args, cfg.get_string("output.trace", "trace_fd.csv"));
    wc::write_trace(sol.trace, path);
    std::printf("wrote %s: N_b=%d N_t=%d dt=%.3e energy_drift=%.3e\n", path.c_str(),
                sol.trace.n_boundary, sol.trace.n_time, grid.dt,
                sol.energy_drift_rel);
    return exit_ok;
}

int cmd_reconstruct(const CommonArgs& args) {
    wc::RunConfig cfg = load_config(args);
    wc::BoundaryTrace tr = wc::read_trace(cfg.get_string("input.trace"));
    wc::KernelParams kp = kernel_from(cfg);
    double h = cfg.get_double("reconstruct.h", kp.h);
    std::vector<wc::TargetPoint> targets = targets_from(cfg, "reconstruct.target");
    if (targets.empty())
        throw wc::ConfigError("reconstruct.target", "at least one target required");

    std::unique_ptr<wc::GroundTruth> gt;
    if (cfg.has("modes.mode"))
        gt = std::make_unique<wc::GroundTruth>(tr.domain, modes_from(cfg, tr.domain));

    std::vector<wc::ReconstructionResult> results =
        wc::reconstruct_grid(tr, targets, h, kp, gt.get());
    std::string path = out_path(args, cfg.get_string("output.results", "results.csv"));
    wc::write_results_csv(results, path);

    double max_err = 0.0;
    bool have_truth = false;
    int failures = 0;
    for (const auto& r : results) {
        if (!r.error.empty()) ++failures;
        if (r.abs_error) {
            have_truth = true;
            max_err = std::max(max_err, *r.abs_error);
        }
    }
    if (have_truth)
        std::printf("%zu targets -> %s; max abs_error=%.6e\n", results.size(),
                    path.c_str(), max_err);
    else
        std::printf("%zu targets -> %s\n", results.size(), path.c_str());
    if (failures) {
        std::fprintf(stderr, "%d target(s) failed\n", failures);
        return exit_numerical;
    }
    return exit_ok;
}

int cmd_sweep(const CommonArgs& args) {
    wc::RunConfig cfg = load_config(args);
    wc::BoundaryTrace tr = wc::read_trace(cfg.get_string("input.trace"));
    wc::KernelParams kp = kernel_from(cfg);
    std::vector<wc::TargetPoint> targets = targets_from(cfg, "reconstruct.target");
    if (targets.size() != 1)
        throw wc::ConfigError("reconstruct.target", "sweep expects exactly one target");
    std::vector<double> h_list = cfg.get_double_list("reconstruct.h_list");

    std::unique_ptr<wc::GroundTruth> gt;
    if (cfg.has("modes.mode"))
        gt = std::make_unique<wc::GroundTruth>(tr.domain, modes_from(cfg, tr.domain));

    std::vector<wc::ReconstructionResult> rows =
        wc::h_sweep(tr, targets[0], h_list, kp, gt.get());
    std::string path = out_path(args, cfg.get_string("output.results", "sweep.csv"));
    wc::write_results_csv(rows, path);
    for (const auto& r : rows) {
        if (!r.error.empty())
            std::printf("h=%.4g FAILED: %s\n", r.h, r.error.c_str());
        else if (r.abs_error)
            std::printf("h=%.4g value=%.8f abs_error=%.6e\n", r.h, r.value,
                        *r.abs_error);
        else
            std::printf("h=%.4g value=%.8f\n", r.h, r.value);
    }
    return exit_ok;
}

/// Cone-covering arc for the partial formula: the span of boundary samples
/// whose rotated coordinates satisfy y' >= |x'|, widened by margin_frac of
/// the perimeter on each side.
wc::PartialBoundaryConfig auto_partial_config(const wc::BoundaryTrace& tr,
                                              const wc::TargetPoint& tp,
                                              double alpha, double margin_frac) {
    const double P = tr.domain.perimeter();
    const double ds = tr.arc_step();
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    double y_max = 0.0;
    std::vector<int> in_cone;
    for (int i = 0; i < tr.n_boundary; ++i) {
        double dx = tr.points[i].x - tp.x, dy = tr.points[i].y - tp.y;
        double xr = dx * ca + dy * sa;
        double yr = -dx * sa + dy * ca;
        if (yr >= std::abs(xr)) {
            in_cone.push_back(i);
            y_max = std::max(y_max, yr);
        }
    }
    if (in_cone.empty())
        throw std::invalid_argument("stability-bench: cone misses the boundary");
    // contiguous span on the circle; allow wraparound through index 0
    int lo = in_cone.front(), hi = in_cone.back();
    if (lo == 0 && hi == tr.n_boundary - 1 &&
        in_cone.size() < static_cast<std::size_t>(tr.n_boundary)) {
        std::size_t g = 0;
        while (g + 1 < in_cone.size() && in_cone[g + 1] == in_cone[g] + 1) ++g;
        hi = in_cone[g];
        lo = in_cone[g + 1];
    }
    wc::PartialBoundaryConfig cfg;
    cfg.alpha = alpha;
    cfg.s0 = lo * ds - margin_frac * P;
    cfg.s1 = hi * ds + margin_frac * P;
    cfg.t0 = std::max(tr.t_min, tp.t - y_max - 2.0 * tr.dt());
    cfg.t1 = std::min(tr.t_max, tp.t + y_max + 2.0 * tr.dt());
    return cfg;
}

int cmd_stability_bench(const CommonArgs& args) {
    wc::RunConfig cfg = load_config(args);
    wc::Domain dom = domain_from(cfg);
    wc::GroundTruth gt(dom, modes_from(cfg, dom));
    wc::BoundaryTrace clean = build_exact_trace(cfg, dom, gt);
    wc::KernelParams kp = kernel_from(cfg);

    double h = cfg.get_double("stability.h", 0.1);
    std::vector<double> levels = cfg.has("stability.noise_levels")
                                     ? cfg.get_double_list("stability.noise_levels")
                                     : std::vector<double>{0.0, 1e-4, 1e-3, 1e-2};
    std::uint64_t seed = static_cast<std::uint64_t>(cfg.get_int("stability.seed", 7));
    double alpha = cfg.get_double("stability.alpha", 0.0);
    double margin = cfg.get_double("stability.arc_margin", 0.03);

    wc::TargetPoint tp{0.0, -0.5, 0.0};
    std::vector<wc::TargetPoint> tps = targets_from(cfg, "stability.target");
    if (!tps.empty()) tp = tps[0];

    wc::PartialBoundaryConfig pcfg = auto_partial_config(clean, tp, alpha, margin);
    const double truth = gt.u(tp.x, tp.y, tp.t);

    std::string path = out_path(args, cfg.get_string("output.results", "stability.csv"));
    std::ofstream os(path);
    if (!os) throw wc::IoError("stability-bench: cannot open " + path);
    os << "noise,value_full,err_full,value_partial,err_partial,ratio\n";
    char buf[200];
    for (std::size_t k = 0; k < levels.size(); ++k) {
        wc::BoundaryTrace tr =
            levels[k] > 0.0 ? wc::add_noise(clean, levels[k], seed + k) : clean;
        wc::ReconstructionResult full = wc::reconstruct_point(tr, tp, h, kp, &gt);
        wc::ReconstructionResult part =
            wc::reconstruct_partial(tr, tp, h, pcfg, kp, &gt);
        double ratio = *part.abs_error / std::max(*full.abs_error, 1e-300);
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g",
                      levels[k], full.value, *full.abs_error, part.value,
                      *part.abs_error, ratio);
        os << buf << "\n";
        std::printf("noise=%-8g err_full=%.6e err_partial=%.6e ratio=%.3g\n",
                    levels[k], *full.abs_error, *part.abs_error, ratio);
    }
    std::printf("truth u(%.3g,%.3g,%.3g)=%.8f -> %s\n", tp.x, tp.y, tp.t, truth,
                path.c_str());
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2D wave-equation boundary-data reconstruction toolkit"};
    app.require_subcommand(1);

    CommonArgs args;
    int (*handler)(const CommonArgs&) = nullptr;

    auto hook = [&](CLI::App* cmd, int (*fn)(const CommonArgs&), bool need_cfg) {
        add_common(cmd, args, need_cfg);
        cmd->callback([&handler, fn]() { handler = fn; });
    };
    hook(app.add_subcommand("validate-kernel", "run the kernel invariant suite"),
         &cmd_validate_kernel, false);
    hook(app.add_subcommand("gen-data", "generate an exact or noisy boundary trace"),
         &cmd_gen_data, true);
    hook(app.add_subcommand("solve-fd", "finite-difference forward solve (rectangle)"),
         &cmd_solve_fd, true);
    hook(app.add_subcommand("reconstruct", "reconstruct targets from a trace file"),
         &cmd_reconstruct, true);
    hook(app.add_subcommand("sweep", "h-sweep at one target"), &cmd_sweep, true);
    hook(app.add_subcommand("stability-bench",
                            "full- vs partial-boundary error across noise levels"),
         &cmd_stability_bench, true);

    CLI11_PARSE(app, argc, argv);
    if (args.threads > 0) wc::set_thread_count(args.threads);

    try {
        return handler(args);
    } catch (const wc::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return exit_config;
    } catch (const wc::TraceParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return exit_io;
    } catch (const wc::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return exit_io;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return exit_config;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return exit_config;
    } catch (const wc::UnstableRegimeError& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return exit_numerical;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_numerical;
    }
}
