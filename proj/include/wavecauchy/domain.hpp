#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wavecauchy {

struct BoundaryPoint {
    double x = 0.0, y = 0.0;    // position on the boundary
    double nx = 0.0, ny = 0.0;  // outward unit normal
};

/// Disk of radius R centered at the origin, or axis-aligned rectangle
/// [0,a] x [0,b]. The boundary is parametrized by arc length, counter-
/// clockwise; the rectangle starts at (0,0) along the bottom side.
class Domain {
public:
    enum class Kind { disk, rectangle };

    static Domain disk(double radius) {
        if (!(radius > 0.0)) throw std::invalid_argument("Domain: radius must be > 0");
        Domain d;
        d.kind_ = Kind::disk;
        d.R_ = radius;
        return d;
    }

    static Domain rectangle(double a, double b) {
        if (!(a > 0.0) || !(b > 0.0))
            throw std::invalid_argument("Domain: rectangle sides must be > 0");
        Domain d;
        d.kind_ = Kind::rectangle;
        d.a_ = a;
        d.b_ = b;
        return d;
    }

    Kind kind() const { return kind_; }
    double radius() const { return R_; }
    double side_a() const { return a_; }
    double side_b() const { return b_; }

    double perimeter() const {
        return kind_ == Kind::disk ? 2.0 * 3.141592653589793238 * R_
                                   : 2.0 * (a_ + b_);
    }

    /// Boundary sample at arc length s (taken mod perimeter). Corners of the
    /// rectangle carry the normal of the side they begin.
    BoundaryPoint at_arclength(double s) const {
        const double P = perimeter();
        s -= P * std::floor(s / P);
        if (kind_ == Kind::disk) {
            double th = s / R_;
            double c = std::cos(th), sn = std::sin(th);
            return {R_ * c, R_ * sn, c, sn};
        }
        if (s < a_) return {s, 0.0, 0.0, -1.0};
        s -= a_;
        if (s < b_) return {a_, s, 1.0, 0.0};
        s -= b_;
        if (s < a_) return {a_ - s, b_, 0.0, 1.0};
        s -= a_;
        return {0.0, b_ - s, -1.0, 0.0};
    }

    bool contains(double x, double y, double margin = 0.0) const {
        if (kind_ == Kind::disk) return std::hypot(x, y) < R_ - margin;
        return x > margin && x < a_ - margin && y > margin && y < b_ - margin;
    }

    /// Distance from an interior point to the boundary.
    double boundary_distance(double x, double y) const {
        if (kind_ == Kind::disk) return R_ - std::hypot(x, y);
        return std::min({x, a_ - x, y, b_ - y});
    }

    /// Largest distance from (x, y) to any boundary point; bounds the time
    /// window a reconstruction needs.
    double max_boundary_distance(double x, double y) const {
        if (kind_ == Kind::disk) return std::hypot(x, y) + R_;
        double best = 0.0;
        for (double cx : {0.0, a_})
            for (double cy : {0.0, b_})
                best = std::max(best, std::hypot(x - cx, y - cy));
        return best;
    }

private:
    Kind kind_ = Kind::disk;
    double R_ = 1.0;
    double a_ = 1.0, b_ = 1.0;
};

}  // namespace wavecauchy
