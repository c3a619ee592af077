#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"
#include "point.hpp"
#include "rng.hpp"

namespace bpscal {

enum class SeminormKind { L1, L2, LInf, AbsFunctional, MaxAbsFunctionals, SumAbsFunctionals, PsiMaxOfSublinear };

inline const char* to_string(SeminormKind k) {
    switch (k) {
    case SeminormKind::L1: return "l1";
    case SeminormKind::L2: return "l2";
    case SeminormKind::LInf: return "linf";
    case SeminormKind::AbsFunctional: return "abs_functional";
    case SeminormKind::MaxAbsFunctionals: return "max_abs";
    case SeminormKind::SumAbsFunctionals: return "sum_abs";
    case SeminormKind::PsiMaxOfSublinear: return "psi_max";
    }
    return "?";
}

/// Seminorm from a fixed catalog.
///
/// The functional kinds carry their vectors: abs uses |<w,y>|, max/sum use max/sum of |<w_j,y>|,
/// psi_max uses max(phi(y), phi(-y)) with phi(y) = max_i <c_i,y>.
class Seminorm {
public:
    static Seminorm l1() { return Seminorm(SeminormKind::L1, {}); }
    static Seminorm l2() { return Seminorm(SeminormKind::L2, {}); }
    static Seminorm linf() { return Seminorm(SeminormKind::LInf, {}); }
    static Seminorm abs_functional(Point w) { return Seminorm(SeminormKind::AbsFunctional, {std::move(w)}); }
    static Seminorm max_abs(std::vector<Point> ws) { return Seminorm(SeminormKind::MaxAbsFunctionals, std::move(ws)); }
    static Seminorm sum_abs(std::vector<Point> ws) { return Seminorm(SeminormKind::SumAbsFunctionals, std::move(ws)); }
    static Seminorm psi_max(std::vector<Point> cs) { return Seminorm(SeminormKind::PsiMaxOfSublinear, std::move(cs)); }

    SeminormKind kind() const noexcept { return kind_; }
    const std::vector<Point>& vectors() const noexcept { return vecs_; }

    /// Fixed dimension for the functional kinds; nullopt for the dimension-free norms.
    std::optional<std::size_t> dim() const {
        if (vecs_.empty()) return std::nullopt;
        return vecs_.front().size();
    }

    void check_dim(std::size_t n) const {
        if (auto d = dim(); d && *d != n)
            throw Error(ErrorKind::DimensionMismatch, "seminorm dimension " + std::to_string(*d) +
                                                          " does not match " + std::to_string(n));
    }

    double operator()(const Point& y) const {
        check_dim(y.size());
        switch (kind_) {
        case SeminormKind::L1: return norm1(y);
        case SeminormKind::L2: return norm2(y);
        case SeminormKind::LInf: return norm_inf(y);
        case SeminormKind::AbsFunctional: return std::abs(dot(vecs_[0], y));
        case SeminormKind::MaxAbsFunctionals: {
            double m = 0.0;
            for (const Point& w : vecs_) m = std::max(m, std::abs(dot(w, y)));
            return m;
        }
        case SeminormKind::SumAbsFunctionals: {
            double s = 0.0;
            for (const Point& w : vecs_) s += std::abs(dot(w, y));
            return s;
        }
        case SeminormKind::PsiMaxOfSublinear: {
            double hi = -INFINITY, lo = INFINITY;
            for (const Point& c : vecs_) {
                double v = dot(c, y);
                hi = std::max(hi, v);
                lo = std::min(lo, v);
            }
            return std::max(hi, -lo);
        }
        }
        return 0.0;
    }

    /// True when psi vanishes only at the origin in R^n.
    bool is_norm(std::size_t n) const;

    /// Rows whose common null space is the zero set of psi (empty for norms).
    std::vector<Point> zero_set_rows(std::size_t n) const {
        check_dim(n);
        if (kind_ == SeminormKind::L1 || kind_ == SeminormKind::L2 || kind_ == SeminormKind::LInf) {
            std::vector<Point> rows;
            for (std::size_t i = 0; i < n; ++i) rows.push_back(Point::unit(n, i));
            return rows;
        }
        return vecs_;
    }

    /// Vectors u with psi(y) = max_u <u,y>. Exact for the polyhedral kinds; for l2 a finite inner
    /// subset of the dual ball (so max_u <u,y> <= psi(y)), reported through `exact`.
    std::vector<Point> dual_vertices(std::size_t n, bool* exact = nullptr) const;

    std::string name() const { return to_string(kind_); }

private:
    Seminorm(SeminormKind k, std::vector<Point> v) : kind_(k), vecs_(std::move(v)) {
        bool functional = k == SeminormKind::AbsFunctional || k == SeminormKind::MaxAbsFunctionals ||
                          k == SeminormKind::SumAbsFunctionals || k == SeminormKind::PsiMaxOfSublinear;
        if (functional) {
            require(!vecs_.empty(), ErrorKind::InvalidArgument, "seminorm needs at least one vector");
            for (const Point& w : vecs_) {
                require(w.size() == vecs_.front().size(), ErrorKind::DimensionMismatch, "seminorm vectors differ in size");
                require(w.size() > 0, ErrorKind::InvalidArgument, "seminorm vectors must be nonempty");
            }
        }
    }

    SeminormKind kind_;
    std::vector<Point> vecs_;
};

namespace detail {

inline std::vector<Point> sign_combinations(const std::vector<Point>& vs, std::size_t n) {
    require(vs.size() <= 16, ErrorKind::UnsupportedRepresentation, "too many vectors for sign enumeration");
    std::vector<Point> out;
    const std::size_t m = vs.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        Point u(n);
        for (std::size_t j = 0; j < m; ++j) u += vs[j] * ((mask >> j) & 1 ? -1.0 : 1.0);
        out.push_back(u);
    }
    return out;
}

} // namespace detail

inline bool Seminorm::is_norm(std::size_t n) const {
    check_dim(n);
    if (vecs_.empty()) return true;
    return linalg::rank(vecs_, n) == n;
}

inline std::vector<Point> Seminorm::dual_vertices(std::size_t n, bool* exact) const {
    check_dim(n);
    if (exact) *exact = true;
    std::vector<Point> out;
    auto plus_minus = [&](const std::vector<Point>& vs) {
        for (const Point& v : vs) {
            out.push_back(v);
            out.push_back(-v);
        }
    };
    switch (kind_) {
    case SeminormKind::L1: {
        std::vector<Point> units;
        for (std::size_t i = 0; i < n; ++i) units.push_back(Point::unit(n, i));
        return detail::sign_combinations(units, n);
    }
    case SeminormKind::LInf:
        for (std::size_t i = 0; i < n; ++i) {
            out.push_back(Point::unit(n, i));
            out.push_back(Point::unit(n, i, -1.0));
        }
        return out;
    case SeminormKind::AbsFunctional:
    case SeminormKind::MaxAbsFunctionals:
    case SeminormKind::PsiMaxOfSublinear: plus_minus(vecs_); return out;
    case SeminormKind::SumAbsFunctionals: return detail::sign_combinations(vecs_, n);
    case SeminormKind::L2: {
        if (n == 1) return {Point{1.0}, Point{-1.0}};
        if (exact) *exact = false;
        if (n == 2) {
            const std::size_t k = 256;
            for (std::size_t i = 0; i < k; ++i) {
                double t = 2.0 * std::numbers::pi * static_cast<double>(i) / k;
                out.push_back(Point{std::cos(t), std::sin(t)});
            }
            return out;
        }
        for (std::size_t i = 0; i < n; ++i) {
            out.push_back(Point::unit(n, i));
            out.push_back(Point::unit(n, i, -1.0));
        }
        Rng rng(0x5eed'd0a1ULL);
        for (std::size_t i = 0; i < 256 * n; ++i) out.push_back(rng.direction(n));
        return out;
    }
    }
    return out;
}

} // namespace bpscal
