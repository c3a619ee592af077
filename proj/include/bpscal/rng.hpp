#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "point.hpp"

namespace bpscal {

/// Seeded generator used by every sampling routine; identical seeds give identical streams.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }
    std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
    std::uint64_t next() { return eng_(); }

    /// Euclidean unit vector, uniform on the sphere.
    Point direction(std::size_t n) {
        for (;;) {
            std::vector<double> v(n);
            double s = 0.0;
            for (double& x : v) {
                x = normal();
                s += x * x;
            }
            if (s > 1e-24) {
                s = std::sqrt(s);
                for (double& x : v) x /= s;
                return Point(std::move(v));
            }
        }
    }

    Point box(std::size_t n, double lo, double hi) {
        std::vector<double> v(n);
        for (double& x : v) x = uniform(lo, hi);
        return Point(std::move(v));
    }

    /// Nonnegative weights summing to one. Sparse draws (random support) reach faces and vertices.
    std::vector<double> simplex_weights(std::size_t m, bool sparse = false) {
        std::vector<double> w(m, 0.0);
        double s = 0.0;
        std::size_t support = sparse ? 1 + index(m) : m;
        std::vector<std::size_t> idx(m);
        for (std::size_t i = 0; i < m; ++i) idx[i] = i;
        for (std::size_t i = 0; i < support; ++i) {
            std::size_t j = i + index(m - i);
            std::swap(idx[i], idx[j]);
            double e = -std::log(uniform(1e-300, 1.0));
            w[idx[i]] = e;
            s += e;
        }
        for (double& x : w) x /= s;
        return w;
    }

private:
    std::mt19937_64 eng_;
};

inline Point combine(const std::vector<Point>& pts, const std::vector<double>& w) {
    Point out(pts.front().size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (w[i] != 0.0) out += pts[i] * w[i];
    return out;
}

} // namespace bpscal
