#pragma once

#include <optional>
#include <string>

#include "augdual.hpp"
#include "polytope.hpp"

namespace bpscal {

enum class SeparationCondition { Cond4, Cond5, Cond6 };

inline const char* to_string(SeparationCondition c) {
    switch (c) {
    case SeparationCondition::Cond4: return "cond4";
    case SeparationCondition::Cond5: return "cond5";
    case SeparationCondition::Cond6: return "cond6";
    }
    return "?";
}

namespace detail {

/// Base points plus, for convex cones whose psi-sphere is curved between generators, normalized
/// random combinations. The extra points keep hulls closer to conv(B) but never leave it.
inline BaseSet augmented_base(const ConeRep& c, const Seminorm& psi, const SamplingOptions& opt, double eps) {
    BaseSet b = normlike_base(c, psi, opt, eps);
    if ((c.kind() != ConeKind::Generated && c.kind() != ConeKind::Orthant) || b.hull_exact) return b;
    Rng rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
    const std::size_t want = opt.resolved(c.dim());
    for (std::size_t i = 0; i < want; ++i) {
        Point y = combine(c.vectors(), rng.simplex_weights(c.vectors().size(), i % 2 == 0));
        const double p = psi(y);
        if (p > eps * std::max(1.0, norm_inf(y))) b.points.push_back(y / p);
    }
    return b;
}

/// A convex cone as y = G lambda (lambda >= 0) or {y : <v,y> >= 0}. `exact` is false when the
/// normals describe a superset.
struct LinearDescription {
    std::vector<Point> gens;
    std::vector<Point> normals;
    bool exact = true;
};

inline LinearDescription describe_convex_hull(const ConeRep& c) {
    LinearDescription d;
    switch (c.kind()) {
    case ConeKind::Orthant:
    case ConeKind::Generated:
    case ConeKind::RayUnion: d.gens = c.vectors(); break;
    case ConeKind::Halfspace: d.normals = c.vectors(); break;
    case ConeKind::BishopPhelps: d.normals = inner_normals(c, &d.exact); break;
    }
    return d;
}

inline LinearDescription negated(LinearDescription d) {
    for (Point& g : d.gens) g = -g;
    for (Point& v : d.normals) v = -v;
    return d;
}

/// A nonzero point of P cap Q inside the unit box, found by maximizing +-y_i; nullopt when the
/// intersection is {0}.
inline std::optional<Point> nonzero_intersection(const LinearDescription& P, const LinearDescription& Q, std::size_t n,
                                                 double tol) {
    const std::size_t mp = P.gens.size(), mq = Q.gens.size(), nv = n + mp + mq;
    auto build = [&](std::size_t coord, double sign) {
        LinearProgram lp(nv);
        for (std::size_t i = 0; i < n; ++i) lp.set_free(i);
        std::vector<double> obj(nv, 0.0);
        obj[coord] = sign;
        lp.set_objective(obj);
        auto add = [&](const LinearDescription& d, std::size_t offset) {
            if (!d.gens.empty()) {
                for (std::size_t i = 0; i < n; ++i) {
                    std::vector<double> row(nv, 0.0);
                    row[i] = 1.0;
                    for (std::size_t j = 0; j < d.gens.size(); ++j) row[offset + j] = -d.gens[j][i] / norm_inf(d.gens[j]);
                    lp.add_row(row, Sense::Equal, 0.0);
                }
            }
            for (const Point& v : d.normals) {
                std::vector<double> row(nv, 0.0);
                for (std::size_t i = 0; i < n; ++i) row[i] = v[i] / norm_inf(v);
                lp.add_row(row, Sense::GreaterEq, 0.0);
            }
        };
        add(P, n);
        add(Q, n + mp);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> row(nv, 0.0);
            row[i] = 1.0;
            lp.add_row(row, Sense::LessEq, 1.0);
            lp.add_row(row, Sense::GreaterEq, -1.0);
        }
        return lp.solve();
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (double sign : {1.0, -1.0}) {
            LpResult r = build(i, sign);
            if (!r.optimal()) throw Error(ErrorKind::LpFailure, "cone intersection LP did not solve");
            if (r.objective > tol) return Point(std::vector<double>(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(n)));
        }
    }
    return std::nullopt;
}

inline Polytope negated(Polytope p) {
    for (Point& v : p.vertices) v = -v;
    return p;
}

} // namespace detail

/// Conditions on cones A and K under psi:
///   Cond4: cl S_A^0 and cl S_{-K} are disjoint,
///   Cond5: A meets cl conv(-K) only at 0,
///   Cond6: 0 is not in cl S_{-K},
/// where S_C = conv(B_C) and S_C^0 = conv({0} u B_C). A Fails verdict always carries a witness that
/// lies in both sets; Holds is reported only when the hulls or descriptions are exact.
inline CheckResult check_condition(SeparationCondition cond, const ConeRep& A, const ConeRep& K, const Seminorm& psi,
                                   const Tolerances& tol = {}, const SamplingOptions& opt = {}) {
    require(A.dim() == K.dim(), ErrorKind::DimensionMismatch, "cones A and K differ in dimension");
    const std::size_t n = K.dim();
    CheckResult res;
    switch (cond) {
    case SeparationCondition::Cond4: {
        const BaseSet ba = detail::augmented_base(A, psi, opt, tol.eps_mem);
        const BaseSet bk = detail::augmented_base(K, psi, opt, tol.eps_mem);
        const Polytope pa = hull_S0(ba, true);
        const Polytope pk = detail::negated(hull_S0(bk, false));
        auto d = polytopes_disjoint(pa, pk, tol.eps_strict);
        res.samples = pa.vertices.size() + pk.vertices.size();
        if (!d.disjoint) {
            res.verdict = Verdict::Fails;
            res.witness = d.common;
            res.detail = "hulls intersect";
        } else {
            res.verdict = pa.exact && pk.exact ? Verdict::Holds : Verdict::HoldsOnSamples;
            res.detail = "separated with gap " + std::to_string(d.gap);
        }
        return res;
    }
    case SeparationCondition::Cond5: {
        const detail::LinearDescription mk = detail::negated(detail::describe_convex_hull(K));
        std::vector<detail::LinearDescription> pieces;
        if (A.kind() == ConeKind::RayUnion) {
            for (const Point& g : A.vectors()) pieces.push_back(detail::LinearDescription{{g}, {}, true});
        } else {
            pieces.push_back(detail::describe_convex_hull(A));
        }
        res.verdict = Verdict::Holds;
        for (const auto& piece : pieces) {
            auto y = detail::nonzero_intersection(piece, mk, n, 1e-7);
            ++res.samples;
            if (!y) continue;
            if (!mk.exact || !piece.exact) {
                // The description was an outer approximation: confirm against the cones themselves.
                bool in_a = A.kind() == ConeKind::RayUnion ? true : is_member(classify(A, *y, 1e-6));
                bool in_mk = is_member(classify(K, -*y, 1e-6));
                if (!(in_a && in_mk)) {
                    res.verdict = Verdict::HoldsOnSamples;
                    continue;
                }
            }
            res.verdict = Verdict::Fails;
            res.witness = *y;
            res.detail = "nonzero point of A in cl conv(-K)";
            return res;
        }
        return res;
    }
    case SeparationCondition::Cond6: {
        const BaseSet bk = detail::augmented_base(K, psi, opt, tol.eps_mem);
        const Polytope pk = detail::negated(hull_S0(bk, false));
        res.samples = pk.vertices.size();
        if (polytope_contains_zero(pk, tol.eps_mem)) {
            res.verdict = Verdict::Fails;
            res.witness = Point(n);
            res.detail = "0 is a convex combination of base points of -K";
        } else {
            res.verdict = bk.exactness == Exactness::ExactVertices ? Verdict::Holds : Verdict::HoldsOnSamples;
        }
        return res;
    }
    }
    return res;
}

/// Tests cl S_{-K} = {x : psi(x) <= 1, <x*,x> >= alpha} in both directions by sampling.
///
/// Subset: random convex combinations of base points of -K must satisfy both slice inequalities.
/// Superset: points t u of the slice (psi(u) = 1, t in [alpha/<x*,u>, 1]) must lie within 1e-3 of
/// the hull of the base points.
inline CheckResult check_condition_9(const ConeRep& K, const Seminorm& psi, const ScalarizingPair& pair,
                                     std::size_t samples, const Tolerances& tol = {}, std::uint64_t seed = 1) {
    require(pair.dim() == K.dim(), ErrorKind::DimensionMismatch, "pair and cone dimensions differ");
    const std::size_t n = K.dim();
    SamplingOptions opt{std::max<std::size_t>(64 * n, samples), seed};
    const ConeRep mk = negate(K);
    BaseSet b = detail::augmented_base(mk, psi, opt, tol.eps_mem);
    Polytope hull = hull_S0(b, false);
    Rng rng(seed);
    CheckResult res;
    res.verdict = Verdict::HoldsOnSamples;
    const double slack = 1e-7;
    for (std::size_t i = 0; i < samples; ++i) {
        Point x = combine(hull.vertices, rng.simplex_weights(hull.vertices.size(), i % 2 == 0));
        ++res.samples;
        if (psi(x) > 1.0 + slack || dot(pair.xstar, x) < pair.alpha - slack) {
            res.verdict = Verdict::Fails;
            res.witness = x;
            res.detail = "point of S_{-K} outside the ball slice";
            return res;
        }
    }
    std::size_t found = 0;
    for (std::size_t attempts = 0; found < samples && attempts < 50 * samples; ++attempts) {
        Point d = rng.direction(n);
        const double p = psi(d);
        if (p <= 1e-12) continue;
        Point u = d / p;
        const double xu = dot(pair.xstar, u);
        if (xu < pair.alpha - 1e-12 || xu <= 0.0) continue;
        const double t0 = std::min(1.0, pair.alpha / xu);
        Point x = u * rng.uniform(t0, 1.0);
        ++found;
        ++res.samples;
        if (distance_to_hull(hull, x) > 1e-3) {
            res.verdict = Verdict::Fails;
            res.witness = x;
            res.detail = "ball slice point outside S_{-K}";
            return res;
        }
    }
    return res;
}

struct CertificateChecks {
    Verdict K_in_C = Verdict::Fails;
    Verdict A_meets_minus_C_only_at_0 = Verdict::Fails;
    Verdict interior_inclusions = Verdict::Fails;
    std::optional<Point> witness;
    std::string detail;

    bool passed_all() const {
        return passed(K_in_C) && passed(A_meets_minus_C_only_at_0) && passed(interior_inclusions);
    }
};

/// A Bishop-Phelps pair separating A from -K. Strict: x*(a) + alpha psi(a) > 0 > x*(k) + alpha psi(k)
/// on A \ {0} and -K \ {0}. Weak: the A side and K side are only nonnegative, with int K mapped into
/// the open cone C^>.
struct SeparationCertificate {
    ScalarizingPair pair;
    bool strict = true;
    double margin_K = 0.0; // min over the K base of x*(b) - alpha psi(b)
    double margin_A = 0.0; // min over the A base of x*(a) + alpha psi(a)
    CertificateChecks conclusions;
    Exactness exactness = Exactness::Sampled;
};

namespace detail {

inline double minus_side(const ScalarizingPair& p, const Point& a) { return dot(p.xstar, a) + p.alpha * p.psi(a); }

} // namespace detail

/// Re-tests the conclusions of a certificate on fresh samples of A and K.
inline CertificateChecks verify_certificate(const SeparationCertificate& cert, const ConeRep& A, const ConeRep& K,
                                            std::size_t samples, const Tolerances& tol = {}, std::uint64_t seed = 7) {
    CertificateChecks out;
    const ScalarizingPair& p = cert.pair;
    const ConeRep C = p.cone();
    const Verdict good = cert.exactness == Exactness::ExactVertices ? Verdict::Holds : Verdict::HoldsOnSamples;
    out.K_in_C = out.A_meets_minus_C_only_at_0 = out.interior_inclusions = good;
    auto fail = [&](Verdict& slot, const Point& w, const char* why) {
        slot = Verdict::Fails;
        if (!out.witness) {
            out.witness = w;
            out.detail = why;
        }
    };
    if (cert.strict && (cert.margin_K <= 0.0 || cert.margin_A <= 0.0)) {
        out.K_in_C = out.A_meets_minus_C_only_at_0 = Verdict::Fails;
        out.detail = "strict certificate with a nonpositive margin";
    }
    Rng rng(seed);
    ConeSampler ks(K, rng), as(A, rng);
    const double scale_eps = tol.eps_strict;
    for (std::size_t i = 0; i < samples && !ks.empty(); ++i) {
        Point k = ks.draw(rng, i % 2 == 0);
        if (norm_inf(k) <= 1e-12) continue;
        const Membership m = classify(C, k, scale_eps);
        if (cert.strict ? m != Membership::Interior : !is_member(m)) fail(out.K_in_C, k, "K point outside C");
        if (cert.strict && m != Membership::Interior) fail(out.interior_inclusions, k, "K \\ {0} not in C^>");
        if (!cert.strict && K.kind() != ConeKind::RayUnion) {
            Point ki = ks.draw(rng, false);
            bool interior_k = K.interior_supported() ? classify(K, ki, tol.eps_mem) == Membership::Interior : true;
            if (interior_k && classify(C, ki, scale_eps) != Membership::Interior)
                fail(out.interior_inclusions, ki, "int K not in C^>");
        }
    }
    for (std::size_t i = 0; i < samples && !as.empty(); ++i) {
        Point a = as.draw(rng, i % 2 == 0);
        if (norm_inf(a) <= 1e-12) continue;
        const double v = detail::minus_side(p, a);
        const double s = tol.eps_strict * std::max({1.0, norm_inf(a), p.psi(a)});
        if (cert.strict ? v <= s : v < -s) fail(out.A_meets_minus_C_only_at_0, a, "A point in -C");
    }
    return out;
}

/// LP over (x*, alpha, m) with ||x*||_inf + alpha <= 1 and alpha >= alpha_min.
///   strict: x*(b) - alpha psi(b) >= m on the K base and x*(a) + alpha psi(a) >= m on the A base.
///   weak:   x*(b) - alpha psi(b) >= 0 on the K base, >= m at an interior point of K, and
///           x*(a) + alpha psi(a) >= 0 on the A base.
/// Returns a certificate when m > eps_strict and the re-verification passes.
inline std::optional<SeparationCertificate> find_separating_pair(const ConeRep& A, const ConeRep& K, const Seminorm& psi,
                                                                 bool strict, double alpha_min = 0.05,
                                                                 const Tolerances& tol = {},
                                                                 const SamplingOptions& opt = {}) {
    require(A.dim() == K.dim(), ErrorKind::DimensionMismatch, "cones A and K differ in dimension");
    require(alpha_min >= 0.0 && alpha_min < 1.0, ErrorKind::InvalidArgument, "alpha_min must lie in [0, 1)");
    const std::size_t n = K.dim();
    const BaseSet bk = normlike_base(K, psi, opt, tol.eps_mem);
    const BaseSet ba = detail::augmented_base(A, psi, opt, tol.eps_mem);

    std::optional<Point> chat;
    if (!strict) {
        auto c = detail::interior_point(K, bk, tol.eps_mem);
        if (!c) return std::nullopt;
        chat = *c / psi(*c);
    }

    const std::size_t ia = n, im = n + 1, iu = n + 2, nv = n + 3;
    LinearProgram lp(nv);
    for (std::size_t i = 0; i < n; ++i) lp.set_free(i);
    lp.set_free(im);
    std::vector<double> obj(nv, 0.0);
    obj[im] = 1.0;
    lp.set_objective(obj);
    auto k_row = [&](const Point& b, bool with_margin) {
        std::vector<double> row(nv, 0.0);
        for (std::size_t i = 0; i < n; ++i) row[i] = b[i];
        row[ia] = -psi(b);
        if (with_margin) row[im] = -1.0;
        lp.add_row(row, Sense::GreaterEq, 0.0);
    };
    for (const Point& b : bk.points) k_row(b, strict);
    if (chat) k_row(*chat, true);
    for (const Point& a : ba.points) {
        std::vector<double> row(nv, 0.0);
        for (std::size_t i = 0; i < n; ++i) row[i] = a[i];
        row[ia] = psi(a);
        if (strict) row[im] = -1.0;
        lp.add_row(row, Sense::GreaterEq, 0.0);
    }
    std::vector<double> arow(nv, 0.0);
    arow[ia] = 1.0;
    lp.add_row(arow, Sense::GreaterEq, alpha_min);
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
    if (!r.optimal() || r.x[im] <= tol.eps_strict) return std::nullopt;

    Point xs(std::vector<double>(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(n)));
    SeparationCertificate cert{ScalarizingPair(xs, r.x[ia], psi), strict, INFINITY, INFINITY, {}, Exactness::Sampled};
    for (const Point& b : bk.points) cert.margin_K = std::min(cert.margin_K, detail::aug_h(cert.pair, b));
    for (const Point& a : ba.points) cert.margin_A = std::min(cert.margin_A, detail::minus_side(cert.pair, a));
    const bool a_exact = A.kind() == ConeKind::RayUnion || ba.hull_exact;
    if (bk.exactness == Exactness::ExactVertices && ba.exactness == Exactness::ExactVertices && a_exact)
        cert.exactness = Exactness::ExactVertices;
    cert.conclusions = verify_certificate(cert, A, K, 64 * n, tol, opt.seed);
    if (!cert.conclusions.passed_all()) return std::nullopt;
    return cert;
}

/// Samples the open cone C^> of the pair and checks each point is interior to D.
inline CheckResult dilating_inclusion_check(const ScalarizingPair& pair, const ConeRep& D, std::size_t samples,
                                            const Tolerances& tol = {}, std::uint64_t seed = 3) {
    require(pair.dim() == D.dim(), ErrorKind::DimensionMismatch, "pair and cone dimensions differ");
    if (!D.interior_supported())
        throw Error(ErrorKind::InteriorUnsupported,
                    std::string("interior queries are not supported for ") + to_string(D.kind()) + " cones");
    const std::size_t n = D.dim();
    Rng rng(seed);
    CheckResult res;
    res.verdict = Verdict::HoldsOnSamples;
    Point center = norm2(pair.xstar) > 0.0 ? pair.xstar / norm2(pair.xstar) : Point(n);
    for (std::size_t attempts = 0; res.samples < samples && attempts < 200 * samples; ++attempts) {
        Point y = rng.direction(n);
        if (attempts % 2 == 0) y = center + y * rng.uniform(0.0, 2.0);
        const double h = detail::aug_h(pair, y);
        if (h <= 10.0 * tol.eps_strict * std::max({1.0, norm_inf(y), pair.psi(y)})) continue;
        ++res.samples;
        if (classify(D, y, tol.eps_mem) != Membership::Interior) {
            res.verdict = Verdict::Fails;
            res.witness = y;
            res.detail = "point of C^> not interior to D";
            return res;
        }
    }
    return res;
}

} // namespace bpscal
