#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <vector>

#include "error.hpp"

namespace bpscal {

/// A finite point of R^n. Construction rejects NaN and infinities.
class Point {
public:
    Point() = default;
    explicit Point(std::size_t n, double fill = 0.0) : v_(n, fill) { check(); }
    Point(std::initializer_list<double> xs) : v_(xs) { check(); }
    explicit Point(std::vector<double> xs) : v_(std::move(xs)) { check(); }

    static Point unit(std::size_t n, std::size_t i, double scale = 1.0) {
        Point p(n);
        p.v_[i] = scale;
        return p;
    }

    std::size_t size() const noexcept { return v_.size(); }
    double operator[](std::size_t i) const { return v_[i]; }
    double& operator[](std::size_t i) { return v_[i]; }
    const std::vector<double>& values() const noexcept { return v_; }
    auto begin() const noexcept { return v_.begin(); }
    auto end() const noexcept { return v_.end(); }

    Point& operator+=(const Point& o) {
        same_dim(o);
        for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
        return *this;
    }
    Point& operator-=(const Point& o) {
        same_dim(o);
        for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
        return *this;
    }
    Point& operator*=(double s) {
        for (double& x : v_) x *= s;
        return *this;
    }

    friend Point operator+(Point a, const Point& b) { return a += b; }
    friend Point operator-(Point a, const Point& b) { return a -= b; }
    friend Point operator-(Point a) { return a *= -1.0; }
    friend Point operator*(Point a, double s) { return a *= s; }
    friend Point operator*(double s, Point a) { return a *= s; }
    friend Point operator/(Point a, double s) { return a *= (1.0 / s); }
    friend bool operator==(const Point& a, const Point& b) { return a.v_ == b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Point& p) {
        os << '(';
        for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
        return os << ')';
    }

private:
    void check() const {
        for (double x : v_)
            if (!std::isfinite(x)) throw Error(ErrorKind::NonFinite, "point has a non-finite coordinate");
    }
    void same_dim(const Point& o) const {
        if (o.size() != size()) throw Error(ErrorKind::DimensionMismatch, "point dimensions differ");
    }

    std::vector<double> v_;
};

inline void require_dim(const Point& p, std::size_t n, const char* what) {
    if (p.size() != n)
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(what) + ": expected dimension " + std::to_string(n) + ", got " +
                        std::to_string(p.size()));
}

inline double dot(const Point& a, const Point& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "dot: dimensions differ");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm_inf(const Point& a) {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
}

inline double norm1(const Point& a) {
    double s = 0.0;
    for (double x : a) s += std::abs(x);
    return s;
}

inline double norm2(const Point& a) { return std::sqrt(dot(a, a)); }

inline bool approx_equal(const Point& a, const Point& b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > tol) return false;
    return true;
}

} // namespace bpscal
