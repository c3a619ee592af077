#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <utility>
#include <variant>

#include "cone.hpp"
#include "extended_real.hpp"
#include "sampling.hpp"
#include "tolerances.hpp"
#include "verdict.hpp"

namespace bpscal {

/// (x*, alpha, psi) defining phi(y) = <x*,y> + alpha psi(y).
struct ScalarizingPair {
    Point xstar;
    double alpha = 0.0;
    Seminorm psi = Seminorm::l1();

    ScalarizingPair(Point x, double a, Seminorm p) : xstar(std::move(x)), alpha(a), psi(std::move(p)) { validate(); }

    void validate() const {
        require(xstar.size() > 0, ErrorKind::InvalidArgument, "x* must be nonempty");
        require(std::isfinite(alpha) && alpha >= 0.0, ErrorKind::InvalidArgument, "alpha must be finite and >= 0");
        psi.check_dim(xstar.size());
    }

    std::size_t dim() const noexcept { return xstar.size(); }
    double operator()(const Point& y) const { return dot(xstar, y) + alpha * psi(y); }

    /// C_psi(x*, alpha) = {y : <x*,y> >= alpha psi(y)}.
    ConeRep cone() const { return ConeRep::bishop_phelps(xstar, alpha, psi); }
};

inline double eval_seminorm_linear(const ScalarizingPair& pair, const Point& y) {
    require_dim(y, pair.dim(), "eval_seminorm_linear");
    return pair(y);
}

namespace detail {

/// rho(z) <= 0 iff z in -K, with rho sublinear: max <w,z> over inner normals, or <x*,z> + alpha psi(z).
inline double representing_value(const ConeRep& c, const Point& z) {
    if (c.kind() == ConeKind::BishopPhelps) return dot(c.xstar(), z) + c.alpha() * c.psi()(z);
    require(c.has_facets(), ErrorKind::UnsupportedRepresentation,
            std::string("no representing function for ") + to_string(c.kind()) + " cones");
    double best = -INFINITY;
    for (const Point& w : c.facet_normals()) best = std::max(best, dot(w, z));
    return best;
}

inline void check_gerstewitz_args(const ConeRep& c, const Point& a, const Point& k, const Point& y) {
    require_dim(a, c.dim(), "gerstewitz a");
    require_dim(k, c.dim(), "gerstewitz k");
    require_dim(y, c.dim(), "gerstewitz y");
    require(norm_inf(k) > 0.0, ErrorKind::PreconditionViolated, "direction k must be nonzero");
}

} // namespace detail

/// inf{t : y in t k + (a - K)} by bisection on g(t) = rho(y - a - t k), which is nonincreasing for
/// k in K. Returns +inf when g stays positive over the whole expanded bracket.
inline ExtendedReal gerstewitz_bisection(const ConeRep& c, const Point& a, const Point& k, const Point& y,
                                         const Tolerances& tol = {}) {
    detail::check_gerstewitz_args(c, a, k, y);
    const Point ya = y - a;
    auto g = [&](double t) { return detail::representing_value(c, ya - k * t); };
    double s = (1.0 + norm_inf(ya)) / (1.0 + std::max(0.0, -detail::representing_value(c, -k)));
    double lo = -s, hi = s;
    bool lo_ok = g(lo) > 0.0, hi_ok = g(hi) <= 0.0;
    for (int i = 0; i < 60 && !(lo_ok && hi_ok); ++i) {
        if (!lo_ok) {
            lo *= 2.0;
            lo_ok = g(lo) > 0.0;
        }
        if (!hi_ok) {
            hi *= 2.0;
            hi_ok = g(hi) <= 0.0;
        }
    }
    if (!hi_ok) return ExtendedReal::plus_infinity();
    if (!lo_ok) throw Error(ErrorKind::PreconditionViolated, "Gerstewitz value is -infinity: k lies in the lineality of K");
    while (hi - lo > tol.eps_root) {
        double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    return ExtendedReal::finite(0.5 * (lo + hi));
}

/// Gerstewitz functional inf{t : y in t k + (a - K)}.
///
/// Polyhedral cones (Orthant, Halfspace, Generated with facets) use the closed form over unit inner
/// normals w: max <w,y-a>/<w,k> over <w,k> > 0, or +inf when some <w,k> = 0 has <w,y-a> above the
/// membership slack. BishopPhelps cones need k in the open cone and use bisection.
inline ExtendedReal eval_gerstewitz(const ConeRep& c, const Point& a, const Point& k, const Point& y,
                                    const Tolerances& tol = {}) {
    detail::check_gerstewitz_args(c, a, k, y);
    if (c.kind() == ConeKind::BishopPhelps) {
        const double margin = dot(c.xstar(), k) - c.alpha() * c.psi()(k);
        if (!(margin > tol.eps_strict * std::max({1.0, norm_inf(k), c.psi()(k)})))
            throw Error(ErrorKind::PreconditionViolated, "k must lie in the open Bishop-Phelps cone");
        return gerstewitz_bisection(c, a, k, y, tol);
    }
    if (!c.has_facets())
        throw Error(ErrorKind::UnsupportedRepresentation,
                    std::string("Gerstewitz evaluation is not available for ") + to_string(c.kind()) + " cones");
    const Point ya = y - a;
    const double kslack = tol.eps_mem * std::max(1.0, norm_inf(k));
    const double yslack = tol.eps_mem * std::max(1.0, norm_inf(ya));
    bool any_positive = false, infinite = false;
    double best = -INFINITY;
    for (const Point& w : c.facet_normals()) {
        const double wk = dot(w, k), wy = dot(w, ya);
        if (wk < -kslack) throw Error(ErrorKind::PreconditionViolated, "direction k must lie in K");
        if (wk <= kslack) {
            if (wy > yslack) infinite = true;
            continue;
        }
        any_positive = true;
        best = std::max(best, wy / wk);
    }
    if (!any_positive) throw Error(ErrorKind::PreconditionViolated, "direction k must not lie in the lineality of K");
    if (infinite) return ExtendedReal::plus_infinity();
    return ExtendedReal::finite(best);
}

struct GerstewitzSpec {
    ConeRep cone;
    Point a;
    Point k;
};

/// A scalarizing function: seminorm-linear or Gerstewitz.
class ScalarizerSpec {
public:
    static ScalarizerSpec seminorm_linear(ScalarizingPair pair) { return ScalarizerSpec(std::move(pair)); }
    static ScalarizerSpec gerstewitz(ConeRep cone, Point a, Point k) {
        require_dim(a, cone.dim(), "gerstewitz a");
        require_dim(k, cone.dim(), "gerstewitz k");
        require(norm_inf(k) > 0.0, ErrorKind::PreconditionViolated, "direction k must be nonzero");
        return ScalarizerSpec(GerstewitzSpec{std::move(cone), std::move(a), std::move(k)});
    }

    bool is_seminorm_linear() const noexcept { return std::holds_alternative<ScalarizingPair>(v_); }
    const ScalarizingPair& pair() const { return std::get<ScalarizingPair>(v_); }
    const GerstewitzSpec& gerstewitz_spec() const { return std::get<GerstewitzSpec>(v_); }
    std::size_t dim() const { return is_seminorm_linear() ? pair().dim() : gerstewitz_spec().cone.dim(); }

    ExtendedReal operator()(const Point& y, const Tolerances& tol = {}) const {
        if (is_seminorm_linear()) return ExtendedReal::finite(eval_seminorm_linear(pair(), y));
        const GerstewitzSpec& g = gerstewitz_spec();
        return eval_gerstewitz(g.cone, g.a, g.k, y, tol);
    }

private:
    explicit ScalarizerSpec(std::variant<ScalarizingPair, GerstewitzSpec> v) : v_(std::move(v)) {}
    std::variant<ScalarizingPair, GerstewitzSpec> v_;
};

namespace detail {

inline double finite_or(const ExtendedReal& x, double inf_value) { return x.is_finite() ? x.value() : inf_value; }

} // namespace detail

/// Sampled test of -K = {phi <= 0} (strict: -int K = {phi < 0}).
///
/// Points come from a centered box at several scales and from +-K. Points with |phi(y)| within
/// max(eps_strict, 1e-6) * max(1, ||y||_inf) are skipped as undecidable.
inline CheckResult check_representing(const ScalarizerSpec& phi, const ConeRep& c, bool strict, std::size_t samples,
                                      const Tolerances& tol = {}, std::uint64_t seed = 1) {
    const std::size_t n = c.dim();
    require(phi.dim() == n, ErrorKind::DimensionMismatch, "scalarizer and cone dimensions differ");
    if (strict && !c.interior_supported())
        throw Error(ErrorKind::InteriorUnsupported,
                    std::string("strict representation needs interior queries, unsupported for ") + to_string(c.kind()));
    Rng rng(seed);
    ConeSampler cone_pts(c, rng);
    CheckResult res;
    res.verdict = Verdict::HoldsOnSamples;
    for (std::size_t i = 0; i < samples; ++i) {
        Point y(n);
        const double scale = std::pow(10.0, rng.uniform(-2.0, 2.0));
        switch (i % 3) {
        case 0: y = rng.box(n, -1.0, 1.0) * scale; break;
        case 1:
            if (cone_pts.empty()) continue;
            y = cone_pts.draw(rng, rng.uniform() < 0.5) * -scale;
            break;
        default:
            if (cone_pts.empty()) continue;
            y = cone_pts.draw(rng, rng.uniform() < 0.5) * scale;
        }
        ++res.samples;
        const double margin = std::max(tol.eps_strict, 1e-6) * std::max(1.0, norm_inf(y));
        const double v = detail::finite_or(phi(y, tol), INFINITY);
        if (std::abs(v) <= margin) continue;
        const Membership m = classify(c, -y, tol.eps_mem);
        const bool in_set = strict ? m == Membership::Interior : is_member(m);
        if ((v < 0.0) != in_set) {
            res.verdict = Verdict::Fails;
            res.witness = y;
            res.detail = v < 0.0 ? "phi(y) < 0 but -y is not in the cone" : "phi(y) > 0 but -y is in the cone";
            return res;
        }
    }
    return res;
}

enum class MonotoneMode { Increasing, Strictly, Strongly };

inline const char* to_string(MonotoneMode m) {
    switch (m) {
    case MonotoneMode::Increasing: return "increasing";
    case MonotoneMode::Strictly: return "strictly";
    case MonotoneMode::Strongly: return "strongly";
    }
    return "?";
}

struct MonotoneResult {
    Verdict verdict = Verdict::HoldsOnSamples;
    std::optional<std::pair<Point, Point>> counterexample; // (ybar, ybar - d)
    std::size_t samples = 0;
};

/// Falsifier for K-monotonicity: phi(ybar - d) <= phi(ybar) for d in K (increasing), and < for d in
/// int K (strictly) or K \ {0} (strongly).
inline MonotoneResult check_monotone(const ScalarizerSpec& phi, const ConeRep& c, MonotoneMode mode,
                                     std::size_t samples, const Tolerances& tol = {}, std::uint64_t seed = 1) {
    const std::size_t n = c.dim();
    require(phi.dim() == n, ErrorKind::DimensionMismatch, "scalarizer and cone dimensions differ");
    if (mode == MonotoneMode::Strictly && !c.interior_supported())
        throw Error(ErrorKind::InteriorUnsupported,
                    std::string("strict monotonicity needs interior queries, unsupported for ") + to_string(c.kind()));
    Rng rng(seed);
    ConeSampler cone_pts(c, rng);
    MonotoneResult res;
    if (cone_pts.empty()) return res;
    for (std::size_t i = 0; i < samples; ++i) {
        const Point ybar = rng.box(n, -2.0, 2.0);
        const double s = std::pow(10.0, rng.uniform(-2.0, 1.0));
        Point d = cone_pts.draw(rng, mode != MonotoneMode::Strictly && rng.uniform() < 0.5) * s;
        if (mode == MonotoneMode::Strictly && classify(c, d, tol.eps_mem) != Membership::Interior) continue;
        if (mode == MonotoneMode::Strongly && norm_inf(d) <= tol.eps_mem) continue;
        ++res.samples;
        const ExtendedReal hi = phi(ybar, tol), lo = phi(ybar - d, tol);
        if (!hi.is_finite()) continue;
        if (!lo.is_finite()) {
            res.verdict = Verdict::Fails;
            res.counterexample = std::make_pair(ybar, ybar - d);
            return res;
        }
        const double rho = 1e-12 * std::max({1.0, std::abs(hi.value()), std::abs(lo.value())});
        const double drop = hi.value() - lo.value();
        const bool bad = mode == MonotoneMode::Increasing ? -drop > s * tol.eps_mem + rho : drop <= rho;
        if (bad) {
            res.verdict = Verdict::Fails;
            res.counterexample = std::make_pair(ybar, ybar - d);
            return res;
        }
    }
    return res;
}

} // namespace bpscal
