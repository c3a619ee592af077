#pragma once

#include <optional>
#include <vector>

#include "base.hpp"
#include "simplex.hpp"

namespace bpscal {

/// Convex hull of a finite point list. `exact` records whether it equals the set it models.
struct Polytope {
    std::size_t dim = 0;
    std::vector<Point> vertices;
    bool exact = true;
};

/// conv(base) or conv({0} u base); near-duplicate points (1e-9) are merged.
inline Polytope hull_S0(const BaseSet& base, bool include_zero) {
    Polytope p;
    p.dim = base.dim;
    p.exact = base.hull_exact;
    auto add = [&](const Point& x) {
        for (const Point& v : p.vertices)
            if (approx_equal(v, x, 1e-9)) return;
        p.vertices.push_back(x);
    };
    if (include_zero) add(Point(base.dim));
    for (const Point& x : base.points) add(x);
    return p;
}

namespace detail {

/// min ||V lambda - x||_inf over the simplex; returns (residual, point V lambda).
inline std::pair<double, Point> hull_distance(const std::vector<Point>& v, const Point& x) {
    const std::size_t n = x.size(), m = v.size();
    LinearProgram lp(m + 1);
    std::vector<double> obj(m + 1, 0.0);
    obj[m] = -1.0;
    lp.set_objective(obj);
    std::vector<double> ones(m + 1, 1.0);
    ones[m] = 0.0;
    lp.add_row(ones, Sense::Equal, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row(m + 1, 0.0);
        for (std::size_t j = 0; j < m; ++j) row[j] = v[j][i];
        row[m] = -1.0;
        lp.add_row(row, Sense::LessEq, x[i]);
        row[m] = 1.0;
        lp.add_row(row, Sense::GreaterEq, x[i]);
    }
    LpResult r = lp.solve();
    if (!r.optimal()) throw Error(ErrorKind::LpFailure, "hull distance LP did not solve");
    std::vector<double> w(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(m));
    return {r.x[m], combine(v, w)};
}

} // namespace detail

inline double distance_to_hull(const Polytope& p, const Point& x) { return detail::hull_distance(p.vertices, x).first; }

inline bool polytope_contains_zero(const Polytope& p, double tol = 1e-9) {
    return distance_to_hull(p, Point(p.dim)) <= tol;
}

struct DisjointnessResult {
    bool disjoint = false;
    std::optional<Point> u; // separating functional: <u,p> >= beta1 > beta2 >= <u,q>
    double beta1 = 0.0, beta2 = 0.0;
    std::optional<Point> common; // approximate common point when not disjoint
    double gap = 0.0;
};

/// Strict separation of conv(P) and conv(Q) by an LP with |u_i| <= 1.
inline DisjointnessResult polytopes_disjoint(const Polytope& P, const Polytope& Q, double tol = 1e-9) {
    require(P.dim == Q.dim, ErrorKind::DimensionMismatch, "polytopes_disjoint");
    const std::size_t n = P.dim;
    // variables: u (n, free), beta (free), delta (free)
    LinearProgram lp(n + 2);
    for (std::size_t j = 0; j < n + 2; ++j) lp.set_free(j);
    std::vector<double> obj(n + 2, 0.0);
    obj[n + 1] = 1.0;
    lp.set_objective(obj);
    for (const Point& p : P.vertices) {
        std::vector<double> row(n + 2, 0.0);
        for (std::size_t i = 0; i < n; ++i) row[i] = p[i];
        row[n] = -1.0;
        row[n + 1] = -1.0;
        lp.add_row(row, Sense::GreaterEq, 0.0);
    }
    for (const Point& q : Q.vertices) {
        std::vector<double> row(n + 2, 0.0);
        for (std::size_t i = 0; i < n; ++i) row[i] = q[i];
        row[n] = -1.0;
        row[n + 1] = 1.0;
        lp.add_row(row, Sense::LessEq, 0.0);
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row(n + 2, 0.0);
        row[i] = 1.0;
        lp.add_row(row, Sense::LessEq, 1.0);
        lp.add_row(row, Sense::GreaterEq, -1.0);
    }
    std::vector<double> cap(n + 2, 0.0);
    cap[n + 1] = 1.0;
    lp.add_row(cap, Sense::LessEq, 1.0);
    LpResult r = lp.solve();
    if (!r.optimal()) throw Error(ErrorKind::LpFailure, "separation LP did not solve");

    DisjointnessResult out;
    out.gap = r.x[n + 1];
    if (out.gap > tol) {
        out.disjoint = true;
        out.u = Point(std::vector<double>(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(n)));
        out.beta1 = r.x[n] + r.x[n + 1];
        out.beta2 = r.x[n] - r.x[n + 1];
        return out;
    }
    // Common point: min ||P lambda - Q mu||_inf.
    const std::size_t mp = P.vertices.size(), mq = Q.vertices.size();
    LinearProgram lp2(mp + mq + 1);
    std::vector<double> obj2(mp + mq + 1, 0.0);
    obj2[mp + mq] = -1.0;
    lp2.set_objective(obj2);
    std::vector<double> sp(mp + mq + 1, 0.0), sq(mp + mq + 1, 0.0);
    for (std::size_t j = 0; j < mp; ++j) sp[j] = 1.0;
    for (std::size_t j = 0; j < mq; ++j) sq[mp + j] = 1.0;
    lp2.add_row(sp, Sense::Equal, 1.0);
    lp2.add_row(sq, Sense::Equal, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row(mp + mq + 1, 0.0);
        for (std::size_t j = 0; j < mp; ++j) row[j] = P.vertices[j][i];
        for (std::size_t j = 0; j < mq; ++j) row[mp + j] = -Q.vertices[j][i];
        row[mp + mq] = -1.0;
        lp2.add_row(row, Sense::LessEq, 0.0);
        row[mp + mq] = 1.0;
        lp2.add_row(row, Sense::GreaterEq, 0.0);
    }
    LpResult r2 = lp2.solve();
    if (!r2.optimal()) throw Error(ErrorKind::LpFailure, "common point LP did not solve");
    std::vector<double> w(r2.x.begin(), r2.x.begin() + static_cast<std::ptrdiff_t>(mp));
    out.common = combine(P.vertices, w);
    return out;
}

/// True when the vertex differences span R^n.
inline bool is_solid(const Polytope& p) {
    if (p.vertices.size() < p.dim + 1) return false;
    std::vector<Point> diffs;
    for (std::size_t i = 1; i < p.vertices.size(); ++i) diffs.push_back(p.vertices[i] - p.vertices[0]);
    return linalg::rank(diffs, p.dim) == p.dim;
}

/// For solid Q: a point of conv(P) in int conv(Q), found by maximizing the smallest barycentric
/// weight on Q; nullopt when that weight is not positive.
inline std::optional<Point> meets_interior(const Polytope& P, const Polytope& Q, double tol = 1e-9) {
    require(P.dim == Q.dim, ErrorKind::DimensionMismatch, "meets_interior");
    const std::size_t n = P.dim, mp = P.vertices.size(), mq = Q.vertices.size();
    LinearProgram lp(mp + mq + 1);
    lp.set_free(mp + mq);
    std::vector<double> obj(mp + mq + 1, 0.0);
    obj[mp + mq] = 1.0;
    lp.set_objective(obj);
    std::vector<double> sp(mp + mq + 1, 0.0), sq(mp + mq + 1, 0.0);
    for (std::size_t j = 0; j < mp; ++j) sp[j] = 1.0;
    for (std::size_t j = 0; j < mq; ++j) sq[mp + j] = 1.0;
    lp.add_row(sp, Sense::Equal, 1.0);
    lp.add_row(sq, Sense::Equal, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row(mp + mq + 1, 0.0);
        for (std::size_t j = 0; j < mp; ++j) row[j] = P.vertices[j][i];
        for (std::size_t j = 0; j < mq; ++j) row[mp + j] = -Q.vertices[j][i];
        lp.add_row(row, Sense::Equal, 0.0);
    }
    for (std::size_t j = 0; j < mq; ++j) {
        std::vector<double> row(mp + mq + 1, 0.0);
        row[mp + j] = 1.0;
        row[mp + mq] = -1.0;
        lp.add_row(row, Sense::GreaterEq, 0.0);
    }
    std::vector<double> cap(mp + mq + 1, 0.0);
    cap[mp + mq] = 1.0;
    lp.add_row(cap, Sense::LessEq, 1.0);
    LpResult r = lp.solve();
    if (!r.optimal() || r.x[mp + mq] <= tol) return std::nullopt;
    std::vector<double> w(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(mp));
    return combine(P.vertices, w);
}

} // namespace bpscal
