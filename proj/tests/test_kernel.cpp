#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "support/oracles.hpp"
#include "wavecauchy/kernel.hpp"
#include "wavecauchy/rng.hpp"
#include "wavecauchy/special.hpp"
#include "wavecauchy/validate.hpp"

using namespace wavecauchy;
using Catch::Approx;

namespace {
KernelParams params(double h) {
    KernelParams kp;
    kp.h = h;
    return kp;
}
double rnd(std::uint64_t seed, std::uint64_t idx) {
    return (static_cast<double>(splitmix64(splitmix64(idx) ^ seed) >> 11) + 0.5) *
           0x1p-53;
}
}  // namespace

TEST_CASE("gauss-legendre rule integrates polynomials exactly") {
    const auto& rule = gl_rule(8);
    for (int deg : {0, 3, 7, 15}) {
        double sum = 0.0;
        for (int i = 0; i < rule.size(); ++i)
            sum += rule.weights[i] * std::pow(rule.nodes[i], deg);
        double exact = deg % 2 == 1 ? 0.0 : 2.0 / (deg + 1);
        REQUIRE(sum == Approx(exact).margin(1e-14));
    }
    double e = gl_integrate([](double x) { return std::exp(x); }, 0.0, 1.0, 16);
    REQUIRE(e == Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("scaled bessel i0 matches references across regimes") {
    REQUIRE(scaled_bessel_i0(0.5) == Approx(oracles::ref_i0e_05).epsilon(1e-13));
    REQUIRE(scaled_bessel_i0(2.0) == Approx(oracles::ref_i0e_2).epsilon(1e-13));
    REQUIRE(scaled_bessel_i0(8.1) == Approx(oracles::ref_i0e_81).epsilon(1e-13));
    REQUIRE(scaled_bessel_i0(25.0) == Approx(oracles::ref_i0e_25).epsilon(1e-13));
    REQUIRE(scaled_bessel_i0(100.0) == Approx(oracles::ref_i0e_100).epsilon(1e-13));
    REQUIRE(scaled_bessel_i0(1e4) == Approx(oracles::ref_i0e_1e4).epsilon(1e-13));
    // continuity at the series/asymptotic crossover
    REQUIRE(scaled_bessel_i0(29.9999999) ==
            Approx(scaled_bessel_i0(30.0000001)).epsilon(1e-12));
}

TEST_CASE("w at the origin and on the x axis") {
    for (double h : {1.0, 0.5, 0.1}) {
        KernelParams kp = params(h);
        REQUIRE(w_unified({0, 0, 0}, kp) ==
                Approx(1.0 / (2.0 * std::sqrt(pi * h))).epsilon(1e-12));
        double x = 0.7;
        REQUIRE(w_unified({x, 0, 0}, kp) ==
                Approx(std::exp(-x * x / h) / (2.0 * std::sqrt(pi * h)))
                    .epsilon(1e-12));
    }
}

TEST_CASE("w_unified agrees with the cone representations") {
    KernelParams kp = params(0.5);
    SECTION("inside point vs independent complex quadrature") {
        double wu = w_unified({0.3, 0.8, 0.5}, kp);
        double wi = w_inside({0.3, 0.8, 0.5}, kp);
        double ref = oracles::w_inside_complex(0.3, 0.8, 0.5, 0.5, 4000);
        REQUIRE(wu == Approx(wi).epsilon(1e-10));
        REQUIRE(wu == Approx(ref).epsilon(1e-10));
        REQUIRE(wu ==
                Approx(oracles::w_unified_complex(0.3, 0.8, 0.5, 0.5, 4000))
                    .epsilon(1e-10));
    }
    SECTION("outside point") {
        KernelParams kph = params(0.05);
        double wu = w_unified({0.2, 0.1, 0.9}, kph);
        double wo = w_outside({0.2, 0.1, 0.9}, kph);
        REQUIRE(wu == Approx(wo).epsilon(1e-10));
    }
    SECTION("on the cone y = |t|") {
        for (double y : {0.4, 1.0}) {
            double wu = w_unified({0.0, y, y}, kp);
            double wi = w_inside({0.0, y, y}, kp);
            REQUIRE(wu == Approx(wi).epsilon(1e-8));
        }
    }
}

TEST_CASE("w_inside frozen value at (0,1,0), h=1") {
    double w = w_inside({0, 1, 0}, params(1.0));
    REQUIRE(w == Approx(oracles::ref_w_inside_010_h1).epsilon(1e-12));
    // runtime oracle: high-order independent quadrature of the same integral
    REQUIRE(w == Approx(oracles::w_inside_complex(0, 1, 0, 1.0, 2000)).epsilon(1e-12));
}

TEST_CASE("w parity") {
    KernelParams kp = params(0.3);
    double ref = w_unified({0.45, 0.8, 0.6}, kp);
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int st : {-1, 1})
                REQUIRE(w_unified({sx * 0.45, sy * 0.8, st * 0.6}, kp) ==
                        Approx(ref).epsilon(1e-12));
    REQUIRE(w_inside({0.45, 0.9, 0.6}, kp) ==
            Approx(w_inside({-0.45, 0.9, -0.6}, kp)).epsilon(1e-12));
    REQUIRE(w_outside({0.45, 0.2, 0.9}, kp) ==
            Approx(w_outside({0.45, -0.2, 0.9}, kp)).epsilon(1e-12));
}

TEST_CASE("w_outside positivity and bound") {
    for (double h : {0.5, 0.1}) {
        KernelParams kp = params(h);
        for (double t : {0.3, 0.9, 1.4}) {
            double w = w_outside({0, 0, t}, kp);
            REQUIRE(w > 0.0);
            REQUIRE(w <= 1.0 / (2.0 * std::sqrt(pi * h)) * (1 + 1e-12));
        }
        for (int k = 0; k < 20; ++k) {
            double t = 0.2 + 1.3 * rnd(5, 2 * k);
            double y = t * 0.95 * rnd(5, 2 * k + 1);
            REQUIRE(w_outside({0.3, y, t}, kp) > 0.0);
        }
    }
}

TEST_CASE("w domain preconditions") {
    KernelParams kp = params(0.2);
    REQUIRE_THROWS_AS(w_inside({0, 0.2, 0.9}, kp), std::domain_error);
    REQUIRE_THROWS_AS(w_outside({0, 0.9, 0.2}, kp), std::domain_error);
    REQUIRE_THROWS_AS(w_unified({0, 0, 0}, params(-1.0)), std::invalid_argument);
    KernelParams bad = params(0.1);
    bad.n_s = 4;
    REQUIRE_THROWS_AS(w_unified({0, 0, 0}, bad), std::invalid_argument);
}

TEST_CASE("overflow guard raises the unstable-regime error") {
    KernelParams kp = params(0.005);  // y^2/h = 800 > 700
    REQUIRE_THROWS_AS(w_unified({0, 2.0, 0}, kp), UnstableRegimeError);
    REQUIRE_THROWS_AS(w_inside({0, 2.0, 0}, kp), UnstableRegimeError);
    kp.exp_cap = 1000.0;  // configurable cap admits the same point
    REQUIRE_NOTHROW(w_inside({0, 2.0, 0}, kp));
}

TEST_CASE("v vanishes outside the cone and equals -w inside") {
    KernelParams kp = params(0.5);
    REQUIRE(v({0.5, -0.1, 0.3}, kp) == 0.0);
    REQUIRE(v({0.2, 0.4, -0.6}, kp) == 0.0);
    REQUIRE(v({0, 1, 0.5}, kp) == Approx(-w_inside({0, 1, 0.5}, kp)).epsilon(1e-14));
    // theta(0) = 1 on the cone edge
    REQUIRE(v({0.2, 0.7, 0.7}, kp) ==
            Approx(-w_inside({0.2, 0.7, 0.7}, kp)).epsilon(1e-14));
    // nonpositive on random cone points
    for (int k = 0; k < 40; ++k) {
        double y = 1.5 * rnd(9, 3 * k);
        double t = y * (2.0 * rnd(9, 3 * k + 1) - 1.0);
        double x = 1.4 * (2.0 * rnd(9, 3 * k + 2) - 1.0);
        REQUIRE(v({x, y, t}, kp) <= 1e-12);
    }
}

TEST_CASE("v_alpha rotations") {
    KernelParams kp = params(0.5);
    SpaceTimePoint p{0.3, 0.9, 0.4};
    REQUIRE(v_alpha(p, 0.0, kp) == Approx(v(p, kp)).margin(1e-15));
    REQUIRE(v_alpha(p, 0.5 * pi, kp) ==
            Approx(v({p.y, -p.x, p.t}, kp)).margin(1e-15));

    // uniform-average consistency with the clipped V_direct; the integrand
    // jumps at the cone-crossing angles, so a 64-point Riemann average only
    // gets within O(1/64) of the exact average
    SpaceTimePoint q{0.0, 0.8, 0.2};
    double avg = 0.0;
    for (int k = 0; k < 64; ++k) avg += v_alpha(q, -pi + 2.0 * pi * k / 64.0, kp);
    avg /= 64.0;
    REQUIRE(avg == Approx(V_direct(q, kp)).margin(0.012));
}

TEST_CASE("V_direct support, radial symmetry, and frozen value") {
    KernelParams kp = params(0.5);
    REQUIRE(V_direct({0.2, 0.3, 0.7}, kp) == 0.0);  // r < |t|
    REQUIRE(V_direct({0.6, 0.8, 0.3}, kp) ==
            Approx(V_direct({1.0, 0.0, 0.3}, kp)).epsilon(1e-9));
    REQUIRE(V_direct({0.0, 1.0, 0.3}, kp) ==
            Approx(oracles::ref_V_1_03_h05).epsilon(1e-8));
}

TEST_CASE("V_stable matches V_direct across h") {
    for (double h : {0.5, 0.2, 0.1, 0.05}) {
        KernelParams kp = params(h);
        for (int k = 0; k < 8; ++k) {
            double t = -1.0 + 2.0 * rnd(21 + static_cast<int>(1e3 * h), 2 * k);
            double r = std::abs(t) +
                       (1.6 - std::abs(t)) * rnd(21 + static_cast<int>(1e3 * h), 2 * k + 1);
            double direct = V_direct({r, 0.0, t}, kp);
            KernelValue stable = V_stable({r, t}, kp);
            REQUIRE(stable.value ==
                    Approx(direct).epsilon(1e-6).margin(1e-12));
            REQUIRE(stable.est_quad_error >= 0.0);
        }
    }
}

TEST_CASE("V_stable support, cone edge, and frozen values") {
    KernelParams kp = params(0.5);
    REQUIRE(V_stable({0.5, 0.7}, kp).value == 0.0);
    REQUIRE(V_stable({0.5, -0.7}, kp).value == 0.0);
    // exact zero at the cone edge up to quadrature residue
    REQUIRE(std::abs(V_stable({1.0, 1.0}, kp).value) < 1e-10);
    REQUIRE(V_stable({1.0, 0.3}, kp).value ==
            Approx(oracles::ref_V_1_03_h05).epsilon(1e-9));
    REQUIRE(V_stable({0.5, 0.0}, params(0.05)).value ==
            Approx(oracles::ref_V_05_0_h005).epsilon(1e-9));
}

TEST_CASE("V production path: support, symmetry, direct agreement") {
    KernelParams kp = params(0.5);
    REQUIRE(V({0.3, 0.4, 0.8}, kp).value == 0.0);  // r = 0.5 < |t|
    REQUIRE(V({0.6, 0.8, 0.3}, kp).value ==
            Approx(V({-0.8, 0.6, -0.3}, kp).value).epsilon(1e-12));
    REQUIRE(V({0, 1, 0.3}, kp).value ==
            Approx(V_direct({0, 1, 0.3}, kp)).epsilon(1e-6));
}

TEST_CASE("sqrt(h) V stays bounded while w_inside blows up") {
    double worst = 0.0;
    for (double h : {0.1, 0.01, 0.001}) {
        KernelParams kp = params(h);
        for (double r : {0.3, 0.9, 1.7}) {
            for (double t : {0.0, 0.5 * r, 0.95 * r}) {
                worst = std::max(worst,
                                 std::sqrt(h) * std::abs(V_stable({r, t}, kp).value));
            }
        }
    }
    REQUIRE(worst < 0.3);
    // by contrast log w_inside(0,1,0) ~ 1/h
    double w1 = std::log(w_inside({0, 1, 0}, params(0.5)));
    double w2 = std::log(w_inside({0, 1, 0}, params(0.25)));
    double w3 = std::log(w_inside({0, 1, 0}, params(0.125)));
    REQUIRE(w3 - w2 > 1.5 * (w2 - w1));  // superlinear growth in 1/h
}

TEST_CASE("KernelTimeProfile reproduces V_stable") {
    for (double h : {0.5, 0.05, 0.01}) {
        KernelParams kp = params(h);
        for (int k = 0; k < 6; ++k) {
            double r = 0.15 + 1.6 * rnd(31, 2 * k);
            double dt = r * (2.0 * rnd(31, 2 * k + 1) - 1.0);
            KernelTimeProfile prof(r, kp);
            double a = prof.value(dt);
            double b = V_stable({r, dt}, kp).value;
            REQUIRE(a == Approx(b).epsilon(2e-7).margin(1e-10));
            REQUIRE(prof.value(r * 1.01) == 0.0);
        }
    }
}

TEST_CASE("rho: formula, mass, moment, weak delta, singularity") {
    KernelParams kp = params(0.1);
    double r2 = 0.3 * 0.3 + 0.4 * 0.4;
    REQUIRE(rho(0.3, 0.4, kp) ==
            Approx(std::exp(-r2 / kp.h) /
                   (pi * std::sqrt(pi * kp.h) * std::sqrt(r2)))
                .epsilon(1e-14));
    REQUIRE(rho(0.3, 0.4, kp) > 0.0);
    REQUIRE_THROWS_AS(rho(0.0, 0.0, kp), std::domain_error);

    for (double h : {1.0, 0.1, 0.01}) {
        double mass = gl_integrate(
            [&](double r) { return 2.0 * pi * r * rho(r, 0.0, params(h)); }, 1e-300,
            8.0 * std::sqrt(h), 200);
        REQUIRE(mass == Approx(1.0).margin(1e-8));
        double mom = gl_integrate(
            [&](double r) { return 2.0 * pi * r * r * r * rho(r, 0.0, params(h)); },
            1e-300, 10.0 * std::sqrt(h), 240);
        REQUIRE(mom == Approx(0.5 * h).margin(1e-6));
    }

    // weak-delta against f = exp(-r^2): exact value is 1/sqrt(1+h)
    double prev = 1.0;
    for (double h : {0.1, 0.01, 0.001}) {
        double val = gl_integrate(
            [&](double r) {
                return 2.0 * pi * r * rho(r, 0.0, params(h)) * std::exp(-r * r);
            },
            1e-300, 10.0 * std::sqrt(h), 260);
        REQUIRE(val == Approx(1.0 / std::sqrt(1.0 + h)).margin(1e-9));
        double err = std::abs(val - 1.0);
        REQUIRE(err < prev);
        prev = err;
    }
}

TEST_CASE("mollifier semigroup and mollify_V limits") {
    const double eps = 0.02;
    for (int k = 0; k < 10; ++k) {
        double t = -0.45 + 0.1 * k;
        double conv = gl_integrate(
            [&](double s) {
                return psi_mollifier(t - s, 0.5 * eps) * psi_mollifier(s, 0.5 * eps);
            },
            -1.2, 1.2, 400);
        REQUIRE(conv == Approx(psi_mollifier(t, eps)).margin(1e-10));
    }

    SECTION("eps = 0 passes V through") {
        KernelParams kp = params(0.2);
        SpaceTimePoint p{0.4, 0.5, 0.2};
        REQUIRE(mollify_V(p, kp) == Approx(V(p, kp).value));
    }

    SECTION("eps -> 0 converges to V at a continuity point") {
        SpaceTimePoint p{0.3, 0.6, 0.25};  // r != |t|, off the cone
        KernelParams kp = params(0.2);
        double target = V(p, kp).value;
        double prev_err = 1e9;
        for (double eps_k : {0.02, 0.005, 0.00125}) {
            KernelParams kpe = kp;
            kpe.eps = eps_k;
            double err = std::abs(mollify_V(p, kpe) - target);
            REQUIRE(err < prev_err);
            prev_err = err;
        }
        REQUIRE(prev_err < 1e-4);
    }
}

TEST_CASE("mollified kernel satisfies the averaged wave identity") {
    // Delta V^eps = d_tt V^eps - psi^eps(t) rho_h, checked by central
    // differences at points with |t| >= 3 sqrt(eps).
    KernelParams kp = params(0.1);
    kp.eps = 0.04;
    const double d = 0.02, dtq = 0.005;
    auto Veps = [&](double x, double y, double t) {
        return mollify_V({x, y, t}, kp);
    };
    int checked = 0;
    for (int k = 0; k < 4; ++k) {
        double x = 0.35 + 0.5 * rnd(77, 3 * k);
        double y = 0.35 + 0.5 * rnd(77, 3 * k + 1);
        double t0 = (rnd(77, 3 * k + 2) < 0.5 ? -1.0 : 1.0) *
                    (0.6 + 0.15 * rnd(78, k));
        double lap = (Veps(x + d, y, t0) + Veps(x - d, y, t0) + Veps(x, y + d, t0) +
                      Veps(x, y - d, t0) - 4.0 * Veps(x, y, t0)) /
                     (d * d);
        double dtt = (Veps(x, y, t0 + dtq) - 2.0 * Veps(x, y, t0) +
                      Veps(x, y, t0 - dtq)) /
                     (dtq * dtq);
        double source = psi_mollifier(t0, kp.eps) * rho(x, y, kp);
        double resid = lap - (dtt - source);
        double scale = std::max({std::abs(lap), std::abs(dtt), source, 1e-6});
        REQUIRE(std::abs(resid) / scale < 1e-3);
        ++checked;
    }
    REQUIRE(checked == 4);
}

TEST_CASE("kernel invariant suite passes at reduced size") {
    ValidateConfig vc;
    vc.lattice_n = 6;
    vc.n_support = 100;
    vc.n_rotations = 25;
    vc.n_stable_direct = 10;
    vc.h_growth = {0.1, 0.01, 1e-3};
    auto checks = run_kernel_checks(vc);
    for (const auto& c : checks) {
        INFO(c.name << " observed=" << c.observed << " threshold=" << c.threshold);
        CHECK(c.pass);
    }
}
