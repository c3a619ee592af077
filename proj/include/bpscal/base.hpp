#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "cone.hpp"
#include "rng.hpp"
#include "seminorm.hpp"
#include "verdict.hpp"

namespace bpscal {

enum class Exactness { ExactVertices, Sampled };

inline const char* to_string(Exactness e) { return e == Exactness::ExactVertices ? "exact" : "sampled"; }

/// Points of K on the psi-unit sphere.
///
/// ExactVertices: the points are the normalized generators, so tests of concave positively
/// homogeneous functions on them are exact for the whole cone. `hull_exact` additionally says
/// conv(points) equals conv(B_K); that needs a ray union or psi linear on the cone.
struct BaseSet {
    std::size_t dim = 0;
    std::vector<Point> points;
    Exactness exactness = Exactness::Sampled;
    bool hull_exact = false;
    bool convex_cone = true;
};

namespace detail {

inline bool same_sign(const std::vector<double>& v) {
    bool pos = false, neg = false;
    for (double x : v) {
        if (x > 0.0) pos = true;
        if (x < 0.0) neg = true;
    }
    return !(pos && neg);
}

/// Sufficient test for psi being linear on cone(gens).
inline bool psi_linear_on(const Seminorm& psi, const std::vector<Point>& gens) {
    if (gens.size() <= 1) return true;
    const std::size_t n = gens.front().size();
    switch (psi.kind()) {
    case SeminormKind::L1:
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> v;
            for (const Point& g : gens) v.push_back(g[i]);
            if (!same_sign(v)) return false;
        }
        return true;
    case SeminormKind::AbsFunctional:
    case SeminormKind::SumAbsFunctionals:
        for (const Point& w : psi.vectors()) {
            std::vector<double> v;
            for (const Point& g : gens) v.push_back(dot(w, g));
            if (!same_sign(v)) return false;
        }
        return true;
    default: {
        for (const Point& g : gens)
            if (!approx_equal(g / norm2(g), gens.front() / norm2(gens.front()), 1e-12)) return false;
        return true;
    }
    }
}

inline Point normalize_or_throw(const Seminorm& psi, const Point& g, double eps) {
    double p = psi(g);
    if (!(p > eps * std::max(1.0, norm_inf(g))))
        throw Error(ErrorKind::DegenerateSeminorm, "psi vanishes on a cone direction");
    return g / p;
}

} // namespace detail

/// Normalized base B_K = {y in K : psi(y) = 1}.
///
/// Orthant, Generated and RayUnion cones give their normalized generators. Halfspace and
/// BishopPhelps cones give enumerated rays (when available) plus sampled directions.
inline BaseSet normlike_base(const ConeRep& c, const Seminorm& psi, const SamplingOptions& opt = {},
                             double eps = 1e-9) {
    const std::size_t n = c.dim();
    psi.check_dim(n);
    BaseSet b;
    b.dim = n;
    b.convex_cone = c.kind() != ConeKind::RayUnion;
    if (c.kind() == ConeKind::Orthant || c.kind() == ConeKind::Generated || c.kind() == ConeKind::RayUnion) {
        for (const Point& g : c.vectors()) b.points.push_back(detail::normalize_or_throw(psi, g, eps));
        b.exactness = Exactness::ExactVertices;
        b.hull_exact = c.kind() == ConeKind::RayUnion || detail::psi_linear_on(psi, c.vectors());
        return b;
    }

    b.exactness = Exactness::Sampled;
    bool gens_exact = false;
    for (const Point& g : cone_generators(c, &gens_exact)) b.points.push_back(detail::normalize_or_throw(psi, g, eps));

    Rng rng(opt.seed);
    const std::size_t want = opt.resolved(n);
    std::size_t got = 0, attempts = 0;
    Point center(n);
    if (c.kind() == ConeKind::BishopPhelps && norm2(c.xstar()) > 0.0) center = c.xstar() / norm2(c.xstar());
    std::vector<Point> members, outside;
    while (got < want && attempts < 200 * want) {
        ++attempts;
        Point d = rng.direction(n);
        if (norm2(center) > 0.0 && attempts % 2 == 0) {
            Point e = center + d * rng.uniform(0.0, 1.5);
            if (norm2(e) > 1e-12) d = e / norm2(e);
        }
        if (!is_member(classify(c, d, eps))) {
            if (outside.size() < want) outside.push_back(d);
            continue;
        }
        members.push_back(d);
        b.points.push_back(detail::normalize_or_throw(psi, d, eps));
        ++got;
    }
    // Curved cones: bisect between members and non-members to put points on the boundary.
    if (!gens_exact && !members.empty() && !outside.empty()) {
        for (std::size_t i = 0; i < want; ++i) {
            Point in = members[rng.index(members.size())], out = outside[rng.index(outside.size())];
            for (int it = 0; it < 60; ++it) {
                Point mid = in + out;
                if (norm2(mid) <= 1e-12) break;
                mid = mid / norm2(mid);
                (is_member(classify(c, mid, eps)) ? in : out) = mid;
            }
            b.points.push_back(detail::normalize_or_throw(psi, in, eps));
        }
    }
    b.hull_exact = false;
    return b;
}

} // namespace bpscal
