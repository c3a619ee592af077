#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"
#include "point.hpp"
#include "seminorm.hpp"
#include "simplex.hpp"

namespace bpscal {

enum class ConeKind { Orthant, Halfspace, Generated, RayUnion, BishopPhelps };

inline const char* to_string(ConeKind k) {
    switch (k) {
    case ConeKind::Orthant: return "orthant";
    case ConeKind::Halfspace: return "halfspace";
    case ConeKind::Generated: return "generated";
    case ConeKind::RayUnion: return "ray_union";
    case ConeKind::BishopPhelps: return "bishop_phelps";
    }
    return "?";
}

namespace detail {

/// Calls f on every k-subset of {0..m-1}; stops early if f returns false.
template <class F>
bool for_each_subset(std::size_t m, std::size_t k, F&& f) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    if (k > m) return true;
    for (;;) {
        if (!f(idx)) return false;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
        if (i == 0) return true;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

inline double binomial(std::size_t m, std::size_t k) {
    if (k > m) return 0.0;
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(m - k + i) / static_cast<double>(i);
    return r;
}

inline constexpr double kRayEnumLimit = 20000.0;

inline void push_unique_direction(std::vector<Point>& out, Point d, double tol = 1e-9) {
    d = d / norm2(d);
    for (const Point& o : out)
        if (approx_equal(o, d, tol)) return;
    out.push_back(std::move(d));
}

/// Extreme rays plus +-lineality basis of {y : <w,y> >= 0 for all rows w}. nullopt when the
/// subset enumeration exceeds the limit.
inline std::optional<std::vector<Point>> enumerate_rays(const std::vector<Point>& w, std::size_t n) {
    std::vector<Point> lin = linalg::null_space(w, n);
    std::vector<Point> rows = w;
    for (const Point& l : lin) rows.push_back(l);
    std::vector<Point> out;
    for (const Point& l : lin) {
        push_unique_direction(out, l);
        push_unique_direction(out, -l);
    }
    if (lin.size() == n) return out;
    if (binomial(rows.size(), n - 1) > kRayEnumLimit) return std::nullopt;
    const double tol = 1e-9;
    for_each_subset(rows.size(), n - 1, [&](const std::vector<std::size_t>& idx) {
        std::vector<Point> sub;
        for (std::size_t i : idx) sub.push_back(rows[i]);
        std::vector<Point> ns = linalg::null_space(sub, n);
        if (ns.size() != 1) return true;
        for (double s : {1.0, -1.0}) {
            Point d = ns[0] * s;
            bool ok = true;
            for (const Point& wi : w)
                if (dot(wi, d) < -tol * norm2(wi)) {
                    ok = false;
                    break;
                }
            for (const Point& l : lin)
                if (std::abs(dot(l, d)) > tol) ok = false;
            if (ok) push_unique_direction(out, d);
        }
        return true;
    });
    return out;
}

} // namespace detail

/// Linear subspace given by an orthonormal basis.
struct Subspace {
    std::size_t ambient = 0;
    std::vector<Point> basis;

    std::size_t dim() const noexcept { return basis.size(); }
    bool contains(const Point& y, double tol) const {
        return linalg::distance_to_span(y, basis) <= tol * std::max(1.0, norm_inf(y));
    }
};

/// Closed cone in R^n in one of five representations.
///
/// Orthant: R^n_+.  Halfspace: {y : <w_i,y> >= 0}.  Generated: conic hull of G.
/// RayUnion: union of the rays through G (not convex in general).
/// BishopPhelps: {y : <x*,y> >= alpha psi(y)}.
class ConeRep {
public:
    static ConeRep orthant(std::size_t n) {
        require(n > 0, ErrorKind::InvalidArgument, "orthant dimension must be positive");
        ConeRep c(ConeKind::Orthant, n);
        for (std::size_t i = 0; i < n; ++i) c.vecs_.push_back(Point::unit(n, i));
        c.facets_ = c.vecs_;
        return c;
    }

    static ConeRep halfspace(std::vector<Point> normals) {
        std::size_t n = check_vectors(normals, "halfspace normals");
        ConeRep c(ConeKind::Halfspace, n);
        c.vecs_ = std::move(normals);
        for (const Point& w : c.vecs_) c.facets_.push_back(w / norm2(w));
        return c;
    }

    static ConeRep generated(std::vector<Point> gens) {
        std::size_t n = check_vectors(gens, "generators");
        ConeRep c(ConeKind::Generated, n);
        c.vecs_ = std::move(gens);
        c.full_dim_ = linalg::rank(c.vecs_, n) == n;
        if (c.full_dim_) {
            if (auto f = detail::enumerate_rays(c.vecs_, n)) {
                c.facets_ = std::move(*f);
                c.has_facets_ = true;
            }
        }
        return c;
    }

    static ConeRep ray_union(std::vector<Point> gens) {
        std::size_t n = check_vectors(gens, "generators");
        ConeRep c(ConeKind::RayUnion, n);
        c.vecs_ = std::move(gens);
        return c;
    }

    static ConeRep bishop_phelps(Point xstar, double alpha, Seminorm psi) {
        require(xstar.size() > 0, ErrorKind::InvalidArgument, "x* must be nonempty");
        require(std::isfinite(alpha) && alpha >= 0.0, ErrorKind::InvalidArgument, "alpha must be finite and >= 0");
        psi.check_dim(xstar.size());
        ConeRep c(ConeKind::BishopPhelps, xstar.size());
        c.vecs_ = {std::move(xstar)};
        c.alpha_ = alpha;
        c.psi_ = std::move(psi);
        return c;
    }

    ConeKind kind() const noexcept { return kind_; }
    std::size_t dim() const noexcept { return n_; }

    /// Normals (Halfspace), generators (Generated, RayUnion), unit vectors (Orthant), {x*} (BishopPhelps).
    const std::vector<Point>& vectors() const noexcept { return vecs_; }
    const Point& xstar() const { return vecs_.at(0); }
    double alpha() const noexcept { return alpha_; }
    const Seminorm& psi() const {
        require(psi_.has_value(), ErrorKind::InvalidArgument, "cone has no seminorm");
        return *psi_;
    }

    /// Whether the representation supports Interior classification.
    bool interior_supported() const noexcept {
        switch (kind_) {
        case ConeKind::Orthant:
        case ConeKind::Halfspace:
        case ConeKind::BishopPhelps: return true;
        case ConeKind::Generated: return full_dim_ && has_facets_;
        case ConeKind::RayUnion: return false;
        }
        return false;
    }

    /// Unit inner normals for the polyhedral kinds (facets of a full-dimensional Generated cone).
    const std::vector<Point>& facet_normals() const noexcept { return facets_; }
    bool has_facets() const noexcept {
        return kind_ == ConeKind::Orthant || kind_ == ConeKind::Halfspace || (kind_ == ConeKind::Generated && has_facets_);
    }
    bool full_dimensional() const noexcept { return full_dim_; }

private:
    ConeRep(ConeKind k, std::size_t n) : kind_(k), n_(n) {}

    static std::size_t check_vectors(const std::vector<Point>& vs, const char* what) {
        require(!vs.empty(), ErrorKind::InvalidArgument, std::string(what) + " must be nonempty");
        std::size_t n = vs.front().size();
        require(n > 0, ErrorKind::InvalidArgument, std::string(what) + " must have positive dimension");
        for (const Point& v : vs) {
            require_dim(v, n, what);
            require(norm_inf(v) > 0.0, ErrorKind::InvalidArgument, std::string(what) + " must be nonzero");
        }
        return n;
    }

    ConeKind kind_;
    std::size_t n_;
    std::vector<Point> vecs_;
    std::vector<Point> facets_;
    bool has_facets_ = false;
    bool full_dim_ = true;
    double alpha_ = 0.0;
    std::optional<Seminorm> psi_;
};

enum class Membership { Interior, Boundary, Member, Outside };

inline const char* to_string(Membership m) {
    switch (m) {
    case Membership::Interior: return "interior";
    case Membership::Boundary: return "boundary";
    case Membership::Member: return "member";
    case Membership::Outside: return "outside";
    }
    return "?";
}

inline bool is_member(Membership m) noexcept { return m != Membership::Outside; }

namespace detail {

inline Membership classify_by_values(const std::vector<double>& v, double slack) {
    bool interior = true;
    for (double x : v) {
        if (x < -slack) return Membership::Outside;
        if (x <= slack) interior = false;
    }
    return interior ? Membership::Interior : Membership::Boundary;
}

/// min_{lambda >= 0} ||G lambda - y||_inf over max-normalized generators.
inline double conic_residual(const std::vector<Point>& gens, const Point& y) {
    const std::size_t n = y.size(), m = gens.size();
    LinearProgram lp(m + 1);
    std::vector<double> obj(m + 1, 0.0);
    obj[m] = -1.0;
    lp.set_objective(obj);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row(m + 1, 0.0);
        for (std::size_t j = 0; j < m; ++j) row[j] = gens[j][i] / norm_inf(gens[j]);
        row[m] = -1.0;
        lp.add_row(row, Sense::LessEq, y[i]);
        row[m] = 1.0;
        lp.add_row(row, Sense::GreaterEq, y[i]);
    }
    LpResult r = lp.solve();
    if (!r.optimal()) throw Error(ErrorKind::LpFailure, "conic residual LP did not solve");
    return r.x[m];
}

} // namespace detail

/// Classifies y against the cone with relative slack eps * max(1, psi(y), ||y||_inf).
///
/// Interior is reported only by representations that support it. For BishopPhelps cones it means
/// the strict inequality <x*,y> > alpha psi(y). Generated cones without facet data and RayUnion
/// cones report Member or Outside.
inline Membership classify(const ConeRep& c, const Point& y, double eps) {
    require_dim(y, c.dim(), "classify");
    const double yinf = norm_inf(y);
    switch (c.kind()) {
    case ConeKind::Orthant: return detail::classify_by_values(y.values(), eps * std::max(1.0, yinf));
    case ConeKind::Halfspace: {
        std::vector<double> v;
        for (const Point& w : c.facet_normals()) v.push_back(dot(w, y));
        return detail::classify_by_values(v, eps * std::max(1.0, yinf));
    }
    case ConeKind::Generated: {
        if (c.has_facets()) {
            std::vector<double> v;
            for (const Point& w : c.facet_normals()) v.push_back(dot(w, y));
            return detail::classify_by_values(v, eps * std::max(1.0, yinf));
        }
        if (yinf <= eps) return Membership::Member;
        return detail::conic_residual(c.vectors(), y) <= eps * std::max(1.0, yinf) ? Membership::Member
                                                                                   : Membership::Outside;
    }
    case ConeKind::RayUnion: {
        const double slack = eps * std::max(1.0, yinf);
        if (yinf <= slack) return Membership::Member;
        for (const Point& g : c.vectors()) {
            double t = std::max(0.0, dot(g, y) / dot(g, g));
            if (norm_inf(y - g * t) <= slack) return Membership::Member;
        }
        return Membership::Outside;
    }
    case ConeKind::BishopPhelps: {
        const double p = c.psi()(y);
        const double v = dot(c.xstar(), y) - c.alpha() * p;
        const double slack = eps * std::max({1.0, p, yinf});
        if (v < -slack) return Membership::Outside;
        return v > slack ? Membership::Interior : Membership::Boundary;
    }
    }
    return Membership::Outside;
}

/// Interior test; raises InteriorUnsupported for representations without interior support.
inline bool in_interior(const ConeRep& c, const Point& y, double eps) {
    if (!c.interior_supported())
        throw Error(ErrorKind::InteriorUnsupported,
                    std::string("interior queries are not supported for ") + to_string(c.kind()) +
                        (c.kind() == ConeKind::Generated ? " cones without full-dimensional facet data" : " cones"));
    return classify(c, y, eps) == Membership::Interior;
}

/// l(K) = K cap -K.
inline Subspace lineality(const ConeRep& c) {
    const std::size_t n = c.dim();
    switch (c.kind()) {
    case ConeKind::Orthant: return Subspace{n, {}};
    case ConeKind::Halfspace: return Subspace{n, linalg::null_space(c.vectors(), n)};
    case ConeKind::Generated:
        if (c.has_facets()) return Subspace{n, linalg::null_space(c.facet_normals(), n)};
        break;
    case ConeKind::RayUnion: break;
    case ConeKind::BishopPhelps: {
        std::vector<Point> rows{c.xstar()};
        if (c.alpha() > 0.0) {
            if (c.psi().is_norm(n)) return Subspace{n, {}};
            for (const Point& r : c.psi().zero_set_rows(n)) rows.push_back(r);
        }
        return Subspace{n, linalg::null_space(rows, n)};
    }
    }
    throw Error(ErrorKind::UnsupportedRepresentation,
                std::string("lineality is not available for ") + to_string(c.kind()) + " cones");
}

inline bool is_pointed(const ConeRep& c) { return lineality(c).dim() == 0; }

/// The cone -K in the same representation family.
inline ConeRep negate(const ConeRep& c) {
    auto neg = [](const std::vector<Point>& vs) {
        std::vector<Point> out;
        for (const Point& v : vs) out.push_back(-v);
        return out;
    };
    switch (c.kind()) {
    case ConeKind::Orthant: {
        std::vector<Point> w;
        for (std::size_t i = 0; i < c.dim(); ++i) w.push_back(Point::unit(c.dim(), i, -1.0));
        return ConeRep::halfspace(std::move(w));
    }
    case ConeKind::Halfspace: return ConeRep::halfspace(neg(c.vectors()));
    case ConeKind::Generated: return ConeRep::generated(neg(c.vectors()));
    case ConeKind::RayUnion: return ConeRep::ray_union(neg(c.vectors()));
    case ConeKind::BishopPhelps: return ConeRep::bishop_phelps(-c.xstar(), c.alpha(), c.psi());
    }
    return c;
}

/// Inner-normal description {y : <v,y> >= 0} of a convex cone. `exact` is false when the list is
/// an outer approximation (BishopPhelps with l2 in dimension >= 2).
inline std::vector<Point> inner_normals(const ConeRep& c, bool* exact = nullptr) {
    if (exact) *exact = true;
    switch (c.kind()) {
    case ConeKind::Orthant:
    case ConeKind::Halfspace: return c.facet_normals();
    case ConeKind::Generated:
        if (c.has_facets()) return c.facet_normals();
        break;
    case ConeKind::RayUnion: break;
    case ConeKind::BishopPhelps: {
        std::vector<Point> out;
        for (const Point& u : c.psi().dual_vertices(c.dim(), exact)) out.push_back(c.xstar() - u * c.alpha());
        return out;
    }
    }
    throw Error(ErrorKind::UnsupportedRepresentation,
                std::string("no halfspace description for ") + to_string(c.kind()) + " cones");
}

/// Conic generators. Exact for Orthant, Generated and RayUnion; for Halfspace and polyhedral
/// BishopPhelps cones they come from ray enumeration. Empty when unavailable.
inline std::vector<Point> cone_generators(const ConeRep& c, bool* exact = nullptr) {
    if (exact) *exact = true;
    switch (c.kind()) {
    case ConeKind::Orthant:
    case ConeKind::Generated:
    case ConeKind::RayUnion: return c.vectors();
    case ConeKind::Halfspace:
    case ConeKind::BishopPhelps: {
        bool normals_exact = true;
        std::vector<Point> w = inner_normals(c, &normals_exact);
        if (normals_exact) {
            if (auto r = detail::enumerate_rays(w, c.dim())) return *r;
        }
        if (exact) *exact = false;
        return {};
    }
    }
    return {};
}

} // namespace bpscal
