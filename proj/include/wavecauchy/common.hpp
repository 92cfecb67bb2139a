#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace wavecauchy {

inline constexpr double pi = 3.141592653589793238462643383279502884;

/// Raised when an exponentially growing kernel would exceed the configured
/// exponent cap. Callers should switch to the stable V_h path instead.
class UnstableRegimeError : public std::runtime_error {
public:
    explicit UnstableRegimeError(const std::string& what)
        : std::runtime_error(what) {}
};

/// File open/read/write failure.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

struct SpaceTimePoint {
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;
};

struct RadialPoint {
    double r = 0.0;  // sqrt(x^2 + y^2)
    double t = 0.0;
};

/// Kernel value plus an internal convergence estimate from node doubling.
struct KernelValue {
    double value = 0.0;
    double est_quad_error = 0.0;
};

/// Parameters shared by all kernel evaluations. h has length^2 units,
/// eps has time^2 units (0 disables mollification).
struct KernelParams {
    double h = 0.1;
    int n_s = 32;       // base quadrature nodes in the s variable
    int n_alpha = 32;   // base nodes in the alpha / phi variable
    double eps = 0.0;
    double exp_cap = 700.0;  // max admissible exponent before the unstable-regime error

    void validate() const {
        if (!(h > 0.0) || !std::isfinite(h))
            throw std::invalid_argument("KernelParams: h must be positive");
        if (n_s < 8)
            throw std::invalid_argument("KernelParams: n_s must be >= 8");
        if (n_alpha < 8)
            throw std::invalid_argument("KernelParams: n_alpha must be >= 8");
        if (eps < 0.0 || !std::isfinite(eps))
            throw std::invalid_argument("KernelParams: eps must be >= 0");
        if (!(exp_cap > 0.0))
            throw std::invalid_argument("KernelParams: exp_cap must be positive");
    }

    KernelParams with_h(double new_h) const {
        KernelParams kp = *this;
        kp.h = new_h;
        return kp;
    }
};

}  // namespace wavecauchy
