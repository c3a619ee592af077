#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "separation.hpp"

namespace bpscal {

/// A vector optimization problem over finitely many labelled feasible points.
struct VOProblem {
    std::vector<std::string> labels;
    std::vector<Point> images;
    ConeRep K;
    Seminorm psi;
    Tolerances tol;

    VOProblem(std::vector<std::string> l, std::vector<Point> f, ConeRep k, Seminorm p, Tolerances t = {})
        : labels(std::move(l)), images(std::move(f)), K(std::move(k)), psi(std::move(p)), tol(t) {
        validate();
    }

    void validate() const {
        require(!images.empty(), ErrorKind::InvalidArgument, "problem needs at least one feasible point");
        require(labels.size() == images.size(), ErrorKind::InvalidArgument, "labels and images differ in length");
        for (const Point& y : images) require_dim(y, K.dim(), "image");
        psi.check_dim(K.dim());
        tol.validate();
    }

    std::size_t size() const noexcept { return images.size(); }
    std::size_t dim() const noexcept { return K.dim(); }

    std::size_t index_of(const std::string& label) const {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == label) return i;
        throw Error(ErrorKind::InvalidArgument, "unknown label '" + label + "'");
    }

    /// Same problem ordered by a different cone.
    VOProblem with_cone(ConeRep c) const { return VOProblem(labels, images, std::move(c), psi, tol); }
};

enum class Concept { Eff, WEff, PEffA, PEffHe };

inline const char* to_string(Concept c) {
    switch (c) {
    case Concept::Eff: return "eff";
    case Concept::WEff: return "weff";
    case Concept::PEffA: return "peff_a";
    case Concept::PEffHe: return "peff_he";
    }
    return "?";
}

enum class AMapVariant { RaysOfDifferences, RaysOfDifferencesPlusK };

inline const char* to_string(AMapVariant v) {
    return v == AMapVariant::RaysOfDifferences ? "rays" : "rays_plus_k";
}

/// Labels (as sorted indices) in a solution set, with optional per-label certificates.
struct SolutionSet {
    Concept concept_ = Concept::Eff;
    std::vector<std::size_t> members;
    std::map<std::size_t, ScalarizingPair> certificates;
    bool sampled = false;

    bool contains(std::size_t i) const { return std::binary_search(members.begin(), members.end(), i); }
};

namespace detail {

inline bool same_image(const Point& a, const Point& b, double eps) {
    return norm_inf(a - b) <= eps * std::max({1.0, norm_inf(a), norm_inf(b)});
}

/// i is dominated when some f(j) - f(i) lies in -K \ {0} (strict: in -int K).
inline bool dominated(const std::vector<Point>& f, std::size_t i, const ConeRep& K, double eps, bool strict) {
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (j == i || same_image(f[i], f[j], eps)) continue;
        const Membership m = classify(K, f[i] - f[j], eps);
        if (strict ? m == Membership::Interior : is_member(m)) return true;
    }
    return false;
}

} // namespace detail

inline SolutionSet eff_set(const VOProblem& p) {
    SolutionSet s{Concept::Eff, {}, {}, false};
    for (std::size_t i = 0; i < p.size(); ++i)
        if (!detail::dominated(p.images, i, p.K, p.tol.eps_mem, false)) s.members.push_back(i);
    return s;
}

/// Raises InteriorUnsupported when K has no interior classification.
inline SolutionSet weff_set(const VOProblem& p) {
    if (!p.K.interior_supported())
        throw Error(ErrorKind::InteriorUnsupported,
                    std::string("weak efficiency needs interior queries, unsupported for ") + to_string(p.K.kind()));
    SolutionSet s{Concept::WEff, {}, {}, false};
    for (std::size_t i = 0; i < p.size(); ++i)
        if (!detail::dominated(p.images, i, p.K, p.tol.eps_mem, true)) s.members.push_back(i);
    return s;
}

/// The cone A(xbar) as a finite union of rays. Empty generators mean the zero cone.
struct AMapCone {
    std::size_t dim = 0;
    std::vector<Point> generators;
    bool sampled = false;

    bool is_zero() const noexcept { return generators.empty(); }
    ConeRep cone() const {
        require(!is_zero(), ErrorKind::InvalidArgument, "A(xbar) is the zero cone");
        return ConeRep::ray_union(generators);
    }
};

/// R+ (f[Omega] - f(xbar)), or a sampled part of R+ (f[Omega] + K - f(xbar)) built from
/// f(x) - f(xbar) + kappa for kappa in {0} and k_samples base points of K (K itself included).
inline AMapCone amap_cone(const VOProblem& p, std::size_t xbar, AMapVariant variant, std::size_t k_samples = 8,
                          std::uint64_t seed = 1) {
    require(xbar < p.size(), ErrorKind::InvalidArgument, "xbar out of range");
    AMapCone a{p.dim(), {}, variant == AMapVariant::RaysOfDifferencesPlusK};
    const double eps = p.tol.eps_mem;
    auto add = [&](const Point& g) {
        if (norm_inf(g) <= eps * std::max(1.0, norm_inf(p.images[xbar]))) return;
        a.generators.push_back(g);
    };
    std::vector<Point> diffs;
    for (std::size_t j = 0; j < p.size(); ++j) diffs.push_back(p.images[j] - p.images[xbar]);
    if (variant == AMapVariant::RaysOfDifferences) {
        for (const Point& d : diffs) add(d);
        return a;
    }
    std::vector<Point> kappas;
    const BaseSet kb = normlike_base(p.K, p.psi, SamplingOptions{0, seed}, eps);
    for (const Point& b : kb.points) {
        if (kappas.size() >= k_samples) break;
        kappas.push_back(b);
    }
    Rng rng(seed);
    while (kappas.size() < k_samples && !kb.points.empty() && p.K.kind() != ConeKind::RayUnion) {
        Point y = combine(kb.points, rng.simplex_weights(kb.points.size(), false));
        const double s = p.psi(y);
        if (s <= eps) break;
        kappas.push_back(y / s);
    }
    for (const Point& d : diffs) {
        add(d);
        for (const Point& k : kappas) add(d + k);
    }
    return a;
}

/// Efficient points whose A-cone meets -K only at 0.
inline SolutionSet peff_A_set(const VOProblem& p, AMapVariant variant) {
    SolutionSet eff = eff_set(p);
    SolutionSet s{Concept::PEffA, {}, {}, variant == AMapVariant::RaysOfDifferencesPlusK};
    for (std::size_t i : eff.members) {
        AMapCone a = amap_cone(p, i, variant);
        bool ok = true;
        for (const Point& g : a.generators) {
            if (is_member(classify(p.K, -g, p.tol.eps_mem))) {
                ok = false;
                break;
            }
        }
        if (ok) s.members.push_back(i);
    }
    return s;
}

/// A pair (x*, alpha) in K^{a#} whose cone C has xbar efficient; none when xbar is not efficient or
/// the separation LP finds nothing. Success certifies Henig proper efficiency; failure proves nothing.
inline std::optional<ScalarizingPair> peff_henig_check(const VOProblem& p, std::size_t xbar, double alpha_min = 0.05,
                                                       const SamplingOptions& opt = {}) {
    if (detail::dominated(p.images, xbar, p.K, p.tol.eps_mem, false)) return std::nullopt;
    const AMapCone a = amap_cone(p, xbar, AMapVariant::RaysOfDifferences);
    std::optional<ScalarizingPair> pair;
    if (a.is_zero()) {
        if (auto s = find_sharp_pair(p.K, p.psi, alpha_min, p.tol, opt)) pair = s->pair;
    } else if (auto cert = find_separating_pair(a.cone(), p.K, p.psi, true, alpha_min, p.tol, opt)) {
        pair = cert->pair;
    }
    if (!pair) return std::nullopt;
    if (detail::dominated(p.images, xbar, pair->cone(), p.tol.eps_mem, false)) return std::nullopt;
    return pair;
}

/// Henig certification of every efficient point.
inline SolutionSet peff_he_set(const VOProblem& p, double alpha_min = 0.05) {
    SolutionSet s{Concept::PEffHe, {}, {}, true};
    for (std::size_t i : eff_set(p).members) {
        if (auto pair = peff_henig_check(p, i, alpha_min)) {
            s.members.push_back(i);
            s.certificates.emplace(i, *pair);
        }
    }
    return s;
}

struct ScalarSolveResult {
    std::vector<std::size_t> minimizers; // indices within eps_opt of the optimum
    ExtendedReal optimum = ExtendedReal::plus_infinity();
    std::vector<ExtendedReal> values; // per label; lambda_min(x) for (P_phi^{a,k})
};

namespace detail {

inline ScalarSolveResult argmin(std::vector<ExtendedReal> values, double eps_opt) {
    ScalarSolveResult r;
    r.values = std::move(values);
    for (const ExtendedReal& v : r.values)
        if (v < r.optimum) r.optimum = v;
    if (!r.optimum.is_finite()) return r;
    const double opt = r.optimum.value();
    const double slack = eps_opt * std::max(1.0, std::abs(opt));
    for (std::size_t i = 0; i < r.values.size(); ++i)
        if (r.values[i].is_finite() && r.values[i].value() <= opt + slack) r.minimizers.push_back(i);
    return r;
}

} // namespace detail

/// (P_phi^a): minimize phi(f(x) - a) by enumeration.
inline ScalarSolveResult solve_P_phi_a(const VOProblem& p, const ScalarizerSpec& phi, const Point& a) {
    require_dim(a, p.dim(), "a");
    std::vector<ExtendedReal> v;
    for (const Point& y : p.images) v.push_back(phi(y - a, p.tol));
    return detail::argmin(std::move(v), p.tol.eps_opt);
}

/// (P_phi^{a,k}) with phi representing -C: lambda_min(x) is the Gerstewitz value of f(x) for (C, a, k).
/// Labels with +inf are infeasible.
inline ScalarSolveResult solve_P_phi_ak(const VOProblem& p, const ConeRep& C, const Point& a, const Point& k) {
    require_dim(a, p.dim(), "a");
    require_dim(k, p.dim(), "k");
    std::vector<ExtendedReal> v;
    for (const Point& y : p.images) v.push_back(eval_gerstewitz(C, a, k, y, p.tol));
    return detail::argmin(std::move(v), p.tol.eps_opt);
}

/// (P_phi^{a,k}) for an arbitrary constraint function phi: per label, the least lambda with
/// phi(f(x) - a - lambda k) <= 0, found by bracketing and bisection. phi must be nonincreasing along k.
inline ScalarSolveResult solve_P_phi_ak_by_constraint(const VOProblem& p, const ScalarizerSpec& phi, const Point& a,
                                                      const Point& k) {
    require_dim(a, p.dim(), "a");
    require_dim(k, p.dim(), "k");
    std::vector<ExtendedReal> out;
    for (const Point& y : p.images) {
        auto g = [&](double t) { return detail::finite_or(phi(y - a - k * t, p.tol), INFINITY); };
        double lo = -1.0, hi = 1.0;
        int i = 0;
        for (; i < 60 && g(lo) <= 0.0; ++i) lo *= 2.0;
        if (i == 60) throw Error(ErrorKind::PreconditionViolated, "constraint holds for every lambda");
        for (i = 0; i < 60 && g(hi) > 0.0; ++i) hi *= 2.0;
        if (i == 60) {
            out.push_back(ExtendedReal::plus_infinity());
            continue;
        }
        while (hi - lo > p.tol.eps_root) {
            double mid = 0.5 * (lo + hi);
            (g(mid) > 0.0 ? lo : hi) = mid;
        }
        out.push_back(ExtendedReal::finite(0.5 * (lo + hi)));
    }
    return detail::argmin(std::move(out), p.tol.eps_opt);
}

/// Indices x with f(x) = f(xbar).
inline std::vector<std::size_t> same_image_set(const VOProblem& p, std::size_t xbar) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < p.size(); ++j)
        if (detail::same_image(p.images[j], p.images[xbar], p.tol.eps_mem)) out.push_back(j);
    return out;
}

struct PSCertificate {
    Point a;
    Point k;
    double s = 0.0;
};

/// Searches P x T x R for f(xbar) = a + s k such that the solution set of (P^{a,k}) over K is
/// {(x, s) : f(x) = f(xbar)}. Raises CoveringViolated when no decomposition of f(xbar) exists.
inline std::optional<PSCertificate> eff_certificate_via_PS(const VOProblem& p, std::size_t xbar,
                                                           const std::vector<Point>& P, const std::vector<Point>& T,
                                                           const std::vector<double>& R) {
    require(xbar < p.size(), ErrorKind::InvalidArgument, "xbar out of range");
    require(!detail::dominated(p.images, xbar, p.K, p.tol.eps_mem, false), ErrorKind::PreconditionViolated,
            "xbar is not efficient");
    for (const Point& k : T) {
        require_dim(k, p.dim(), "direction in T");
        require(is_member(classify(p.K, k, p.tol.eps_mem)) && !is_member(classify(p.K, -k, p.tol.eps_mem)),
                ErrorKind::PreconditionViolated, "directions in T must lie in K outside its lineality space");
    }
    const Point& fx = p.images[xbar];
    const std::vector<std::size_t> same = same_image_set(p, xbar);
    bool decomposed = false;
    for (const Point& a : P) {
        for (const Point& k : T) {
            for (double s : R) {
                if (!detail::same_image(a + k * s, fx, p.tol.eps_mem)) continue;
                decomposed = true;
                ScalarSolveResult r = solve_P_phi_ak(p, p.K, a, k);
                if (!r.optimum.is_finite()) continue;
                if (std::abs(r.optimum.value() - s) > 1e-7 * std::max(1.0, std::abs(s))) continue;
                if (r.minimizers == same) return PSCertificate{a, k, s};
            }
        }
    }
    if (!decomposed) throw Error(ErrorKind::CoveringViolated, "f(xbar) is not in P + R * T");
    return std::nullopt;
}

struct HyperplaneSplit {
    double t = 0.0;
    Point p;
};

/// y = p + t k with <y*, p> = <y*, a>.
inline HyperplaneSplit hyperplane_decompose(const Point& ystar, const Point& a, const Point& k, const Point& y) {
    require_dim(a, ystar.size(), "a");
    require_dim(k, ystar.size(), "k");
    require_dim(y, ystar.size(), "y");
    const double yk = dot(ystar, k);
    if (!(yk > 0.0)) throw Error(ErrorKind::DegenerateDirection, "<y*, k> must be positive");
    const double t = (dot(ystar, y) - dot(ystar, a)) / yk;
    return {t, y - k * t};
}

} // namespace bpscal
