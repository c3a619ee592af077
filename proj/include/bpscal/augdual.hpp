#pragma once

#include <optional>

#include "base.hpp"
#include "scalarizers.hpp"
#include "simplex.hpp"

namespace bpscal {

enum class AugDualClass { APlus, ACirc, ASharp };

inline const char* to_string(AugDualClass c) {
    switch (c) {
    case AugDualClass::APlus: return "a_plus";
    case AugDualClass::ACirc: return "a_circ";
    case AugDualClass::ASharp: return "a_sharp";
    }
    return "?";
}

struct AugDualReport {
    ScalarizingPair pair;
    AugDualClass cls;
    Verdict verdict = Verdict::Fails;
    double margin = 0.0; // min of <x*,b> - alpha psi(b) over the tested base
    std::optional<Point> witness;
};

namespace detail {

inline double aug_h(const ScalarizingPair& p, const Point& y) { return dot(p.xstar, y) - p.alpha * p.psi(y); }

/// A point of int K built from base points, or nullopt when none of the candidates is interior.
inline std::optional<Point> interior_point(const ConeRep& K, const BaseSet& base, double eps) {
    if (base.points.empty()) return std::nullopt;
    if (K.kind() == ConeKind::Generated && !K.full_dimensional()) return std::nullopt;
    Point sum(K.dim());
    for (const Point& b : base.points) sum += b;
    if (K.kind() == ConeKind::Generated || K.kind() == ConeKind::Orthant) return sum;
    if (!K.interior_supported()) return std::nullopt;
    if (classify(K, sum, eps) == Membership::Interior) return sum;
    for (const Point& b : base.points)
        if (classify(K, b, eps) == Membership::Interior) return b;
    return std::nullopt;
}

} // namespace detail

/// Membership of (x*, alpha) in K^{a+}, K^{a o} or K^{a#} for seminorm psi.
///
/// h(y) = <x*,y> - alpha psi(y) is concave and positively homogeneous, so its sign on a cone spanned
/// by finitely many generators is decided at the generators. Those verdicts are exact (Holds);
/// sampled bases give HoldsOnSamples. For K^{a o} the exact test is h >= 0 on the generators plus
/// h > 0 at one interior point.
inline AugDualReport aug_dual_membership(const ConeRep& K, const Seminorm& psi, const ScalarizingPair& pair,
                                         AugDualClass cls, const Tolerances& tol = {},
                                         const SamplingOptions& opt = {}) {
    require(pair.dim() == K.dim(), ErrorKind::DimensionMismatch, "pair and cone dimensions differ");
    ScalarizingPair p(pair.xstar, pair.alpha, psi);
    AugDualReport rep{p, cls, Verdict::Fails, 0.0, std::nullopt};
    const BaseSet base = normlike_base(K, psi, opt, tol.eps_mem);
    const bool exact = base.exactness == Exactness::ExactVertices;
    const Verdict good = exact ? Verdict::Holds : Verdict::HoldsOnSamples;

    double margin = INFINITY;
    for (const Point& b : base.points) {
        const double h = detail::aug_h(p, b);
        if (h < margin) {
            margin = h;
            rep.witness = b;
        }
    }
    rep.margin = margin;
    switch (cls) {
    case AugDualClass::APlus: rep.verdict = margin >= -tol.eps_mem ? good : Verdict::Fails; break;
    case AugDualClass::ASharp: rep.verdict = margin > tol.eps_strict ? good : Verdict::Fails; break;
    case AugDualClass::ACirc: {
        if (K.kind() == ConeKind::Generated && !K.full_dimensional()) {
            rep.verdict = Verdict::Holds; // int K is empty
            rep.witness.reset();
            break;
        }
        if (!K.interior_supported() && K.kind() != ConeKind::Generated)
            throw Error(ErrorKind::InteriorUnsupported,
                        std::string("interior queries are not supported for ") + to_string(K.kind()) + " cones");
        if (margin < -tol.eps_mem || norm_inf(p.xstar) <= tol.eps_mem) break;
        auto c = detail::interior_point(K, base, tol.eps_mem);
        if (!c) break;
        const double hc = detail::aug_h(p, *c) / std::max(1.0, psi(*c));
        if (hc <= tol.eps_strict) {
            rep.witness = *c;
            break;
        }
        if (exact) {
            rep.verdict = Verdict::Holds;
            rep.witness.reset();
            break;
        }
        // Curved or sampled interiors: test sampled base points that are interior.
        rep.verdict = Verdict::HoldsOnSamples;
        rep.witness.reset();
        for (const Point& b : base.points) {
            if (classify(K, b, tol.eps_mem) != Membership::Interior) continue;
            if (detail::aug_h(p, b) <= tol.eps_strict) {
                rep.verdict = Verdict::Fails;
                rep.witness = b;
                break;
            }
        }
        break;
    }
    }
    if (rep.verdict != Verdict::Fails && cls != AugDualClass::ACirc) rep.witness.reset();
    return rep;
}

struct PairSearchResult {
    ScalarizingPair pair;
    double margin = 0.0;
};

namespace detail {

/// maximize m subject to h(b) >= m on `strict_pts`, h(b) >= 0 on `plain_pts`, alpha >= alpha_min,
/// ||x*||_inf + alpha <= 1. Variables: x* (free), alpha, m (free), u.
inline std::optional<PairSearchResult> pair_lp(std::size_t n, const Seminorm& psi, const std::vector<Point>& strict_pts,
                                               const std::vector<Point>& plain_pts, double alpha_min,
                                               double min_margin) {
    const std::size_t ia = n, im = n + 1, iu = n + 2, nv = n + 3;
    LinearProgram lp(nv);
    for (std::size_t i = 0; i < n; ++i) lp.set_free(i);
    lp.set_free(im);
    std::vector<double> obj(nv, 0.0);
    obj[im] = 1.0;
    lp.set_objective(obj);
    auto add_point = [&](const Point& b, bool with_margin) {
        std::vector<double> row(nv, 0.0);
        for (std::size_t i = 0; i < n; ++i) row[i] = b[i];
        row[ia] = -psi(b);
        if (with_margin) row[im] = -1.0;
        lp.add_row(row, Sense::GreaterEq, 0.0);
    };
    for (const Point& b : strict_pts) add_point(b, true);
    for (const Point& b : plain_pts) add_point(b, false);
    std::vector<double> row(nv, 0.0);
    row[ia] = 1.0;
    lp.add_row(row, Sense::GreaterEq, alpha_min);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> r(nv, 0.0);
        r[i] = 1.0;
        r[iu] = -1.0;
        lp.add_row(r, Sense::LessEq, 0.0);
        r[i] = -1.0;
        lp.add_row(r, Sense::LessEq, 0.0);
    }
    std::vector<double> cap(nv, 0.0);
    cap[ia] = 1.0;
    cap[iu] = 1.0;
    lp.add_row(cap, Sense::LessEq, 1.0);
    LpResult r = lp.solve();
    if (!r.optimal() || r.x[im] <= min_margin) return std::nullopt;
    Point xs(std::vector<double>(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(n)));
    return PairSearchResult{ScalarizingPair(xs, r.x[ia], psi), r.x[im]};
}

} // namespace detail

/// LP search for (x*, alpha) in K^{a#} with alpha >= alpha_min, maximizing the base margin.
inline std::optional<PairSearchResult> find_sharp_pair(const ConeRep& K, const Seminorm& psi, double alpha_min = 0.05,
                                                       const Tolerances& tol = {}, const SamplingOptions& opt = {}) {
    require(alpha_min >= 0.0 && alpha_min < 1.0, ErrorKind::InvalidArgument, "alpha_min must lie in [0, 1)");
    const BaseSet base = normlike_base(K, psi, opt, tol.eps_mem);
    auto r = detail::pair_lp(K.dim(), psi, base.points, {}, alpha_min, tol.eps_strict);
    if (!r) return std::nullopt;
    auto check = aug_dual_membership(K, psi, r->pair, AugDualClass::ASharp, tol, opt);
    if (!passed(check.verdict)) return std::nullopt;
    r->margin = check.margin;
    return r;
}

/// LP search for (x*, alpha) in K^{a o}: h >= 0 on the base and h > 0 at an interior point.
inline std::optional<PairSearchResult> find_circ_pair(const ConeRep& K, const Seminorm& psi, double alpha_min = 0.05,
                                                      const Tolerances& tol = {}, const SamplingOptions& opt = {}) {
    require(alpha_min >= 0.0 && alpha_min < 1.0, ErrorKind::InvalidArgument, "alpha_min must lie in [0, 1)");
    const BaseSet base = normlike_base(K, psi, opt, tol.eps_mem);
    auto c = detail::interior_point(K, base, tol.eps_mem);
    if (!c) return std::nullopt;
    Point chat = *c / std::max(1e-300, psi(*c));
    auto r = detail::pair_lp(K.dim(), psi, {chat}, base.points, alpha_min, tol.eps_strict);
    if (!r) return std::nullopt;
    auto check = aug_dual_membership(K, psi, r->pair, AugDualClass::ACirc, tol, opt);
    if (!passed(check.verdict)) return std::nullopt;
    return r;
}

} // namespace bpscal
