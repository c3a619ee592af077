#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "expr.hpp"
#include "vopt.hpp"

namespace bpscal::io {

using Json = nlohmann::ordered_json;

/// Grid sampling refuses to produce more images than this.
inline constexpr std::size_t max_images = 1000000;

namespace detail {

inline std::string at(const std::string& ptr, const std::string& key) { return ptr + "/" + key; }
inline std::string at(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

inline const Json& field(const Json& j, const std::string& ptr, const std::string& key) {
    if (!j.is_object()) throw SchemaError(ptr, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(at(ptr, key), "missing required field");
    return *it;
}

inline double number(const Json& j, const std::string& ptr) {
    if (!j.is_number()) throw SchemaError(ptr, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw SchemaError(ptr, "expected a finite number");
    return v;
}

inline std::size_t positive_int(const Json& j, const std::string& ptr) {
    if (!j.is_number_integer() || j.get<long long>() <= 0) throw SchemaError(ptr, "expected a positive integer");
    return static_cast<std::size_t>(j.get<long long>());
}

inline Point point(const Json& j, const std::string& ptr, std::size_t n) {
    if (!j.is_array()) throw SchemaError(ptr, "expected an array of numbers");
    if (j.size() != n) throw SchemaError(ptr, "expected " + std::to_string(n) + " components, got " + std::to_string(j.size()));
    Point p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = number(j[i], at(ptr, i));
    return p;
}

inline std::vector<Point> points(const Json& j, const std::string& ptr, std::size_t n) {
    if (!j.is_array() || j.empty()) throw SchemaError(ptr, "expected a nonempty array of vectors");
    std::vector<Point> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(point(j[i], at(ptr, i), n));
    return out;
}

inline std::string kind_of(const Json& j, const std::string& ptr) {
    const Json& k = field(j, ptr, "kind");
    if (!k.is_string()) throw SchemaError(at(ptr, "kind"), "expected a string");
    return k.get<std::string>();
}

inline Json points_json(const std::vector<Point>& ps) {
    Json a = Json::array();
    for (const Point& p : ps) a.push_back(p.values());
    return a;
}

/// Library errors raised while building a validated object become schema errors at `ptr`.
template <class F>
auto wrap(const std::string& ptr, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const SchemaError&) {
        throw;
    } catch (const Error& e) {
        throw SchemaError(ptr, e.what());
    }
}

} // namespace detail

inline Seminorm seminorm_from_json(const Json& j, std::size_t n, const std::string& ptr = "/seminorm") {
    const std::string k = detail::kind_of(j, ptr);
    if (k == "l1") return Seminorm::l1();
    if (k == "l2") return Seminorm::l2();
    if (k == "linf") return Seminorm::linf();
    if (k == "abs_functional")
        return Seminorm::abs_functional(detail::point(detail::field(j, ptr, "w"), detail::at(ptr, "w"), n));
    auto vecs = [&] { return detail::points(detail::field(j, ptr, "vectors"), detail::at(ptr, "vectors"), n); };
    if (k == "max_abs") return Seminorm::max_abs(vecs());
    if (k == "sum_abs") return Seminorm::sum_abs(vecs());
    if (k == "psi_max") return Seminorm::psi_max(vecs());
    throw SchemaError(detail::at(ptr, "kind"), "unknown seminorm kind '" + k + "'");
}

inline Json seminorm_to_json(const Seminorm& s) {
    Json j;
    j["kind"] = to_string(s.kind());
    if (s.kind() == SeminormKind::AbsFunctional) j["w"] = s.vectors().front().values();
    else if (!s.vectors().empty()) j["vectors"] = detail::points_json(s.vectors());
    return j;
}

inline ConeRep cone_from_json(const Json& j, std::size_t n, const std::string& ptr = "/cone") {
    const std::string k = detail::kind_of(j, ptr);
    if (k == "orthant") return ConeRep::orthant(n);
    auto vecs = [&](const char* key) { return detail::points(detail::field(j, ptr, key), detail::at(ptr, key), n); };
    if (k == "halfspace") return detail::wrap(ptr, [&] { return ConeRep::halfspace(vecs("normals")); });
    if (k == "generated") return detail::wrap(ptr, [&] { return ConeRep::generated(vecs("generators")); });
    if (k == "ray_union") return detail::wrap(ptr, [&] { return ConeRep::ray_union(vecs("generators")); });
    if (k == "bishop_phelps") {
        Point xs = detail::point(detail::field(j, ptr, "xstar"), detail::at(ptr, "xstar"), n);
        const double alpha = detail::number(detail::field(j, ptr, "alpha"), detail::at(ptr, "alpha"));
        if (alpha < 0.0) throw SchemaError(detail::at(ptr, "alpha"), "alpha must be >= 0");
        Seminorm psi = seminorm_from_json(detail::field(j, ptr, "seminorm"), n, detail::at(ptr, "seminorm"));
        return ConeRep::bishop_phelps(std::move(xs), alpha, std::move(psi));
    }
    throw SchemaError(detail::at(ptr, "kind"), "unknown cone kind '" + k + "'");
}

inline Json cone_to_json(const ConeRep& c) {
    Json j;
    j["kind"] = to_string(c.kind());
    switch (c.kind()) {
    case ConeKind::Orthant: break;
    case ConeKind::Halfspace: j["normals"] = detail::points_json(c.vectors()); break;
    case ConeKind::Generated:
    case ConeKind::RayUnion: j["generators"] = detail::points_json(c.vectors()); break;
    case ConeKind::BishopPhelps:
        j["xstar"] = c.xstar().values();
        j["alpha"] = c.alpha();
        j["seminorm"] = seminorm_to_json(c.psi());
        break;
    }
    return j;
}

inline Tolerances tolerances_from_json(const Json& j, const std::string& ptr = "/tolerances") {
    Tolerances t;
    if (!j.is_object()) throw SchemaError(ptr, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string p = detail::at(ptr, it.key());
        double v = detail::number(it.value(), p);
        if (!(v > 0.0)) throw SchemaError(p, "tolerances must be positive");
        if (it.key() == "eps_mem") t.eps_mem = v;
        else if (it.key() == "eps_strict") t.eps_strict = v;
        else if (it.key() == "eps_opt") t.eps_opt = v;
        else if (it.key() == "eps_root") t.eps_root = v;
        else throw SchemaError(p, "unknown tolerance");
    }
    detail::wrap(ptr, [&] {
        t.validate();
        return 0;
    });
    return t;
}

struct GridSource {
    std::vector<std::pair<double, double>> box;
    std::vector<std::size_t> grid;
    std::vector<std::string> objectives;
};

/// Samples the box row-major (the last variable varies fastest) and evaluates each objective.
/// Expression errors keep their kind and name the objective index.
inline std::pair<std::vector<std::string>, std::vector<Point>> sample_grid(const GridSource& g) {
    const std::size_t nv = g.box.size();
    std::vector<expr::Expr> objs;
    for (std::size_t i = 0; i < g.objectives.size(); ++i) {
        try {
            objs.push_back(expr::parse(g.objectives[i], nv));
        } catch (const ExprError& e) {
            throw ExprError(e.kind(), e.offset(), "objective " + std::to_string(i) + ": " + e.reason());
        }
    }
    std::size_t total = 1;
    for (std::size_t c : g.grid) {
        if (total > max_images / c) throw SchemaError("/source/grid", "grid exceeds " + std::to_string(max_images) + " images");
        total *= c;
    }
    std::vector<std::string> labels;
    std::vector<Point> images;
    labels.reserve(total);
    images.reserve(total);
    std::vector<std::size_t> idx(nv, 0);
    Point x(nv);
    for (std::size_t t = 0; t < total; ++t) {
        for (std::size_t v = 0; v < nv; ++v) {
            const auto [lo, hi] = g.box[v];
            x[v] = g.grid[v] == 1 ? lo : lo + (hi - lo) * static_cast<double>(idx[v]) / static_cast<double>(g.grid[v] - 1);
        }
        Point y(objs.size());
        for (std::size_t i = 0; i < objs.size(); ++i) {
            try {
                y[i] = expr::eval(objs[i], x);
            } catch (const ExprError& e) {
                throw ExprError(e.kind(), e.offset(),
                                "objective " + std::to_string(i) + " at grid point " + std::to_string(t) + ": " + e.reason());
            }
        }
        labels.push_back("g" + std::to_string(t));
        images.push_back(std::move(y));
        for (std::size_t v = nv; v-- > 0;) {
            if (++idx[v] < g.grid[v]) break;
            idx[v] = 0;
        }
    }
    return {std::move(labels), std::move(images)};
}

/// Builds and validates a problem from a parsed document.
inline VOProblem problem_from_json(const Json& j) {
    if (!j.is_object()) throw SchemaError("", "expected an object");
    const std::size_t n = detail::positive_int(detail::field(j, "", "dim"), "/dim");
    ConeRep K = cone_from_json(detail::field(j, "", "cone"), n);
    Seminorm psi = seminorm_from_json(detail::field(j, "", "seminorm"), n);
    Tolerances tol;
    if (j.contains("tolerances")) tol = tolerances_from_json(j["tolerances"]);
    const Json& src = detail::field(j, "", "source");
    if (!src.is_object()) throw SchemaError("/source", "expected an object");

    std::vector<std::string> labels;
    std::vector<Point> images;
    if (src.contains("images")) {
        images = detail::points(src["images"], "/source/images", n);
        if (src.contains("labels")) {
            const Json& l = src["labels"];
            if (!l.is_array() || l.size() != images.size())
                throw SchemaError("/source/labels", "expected one string per image");
            for (std::size_t i = 0; i < l.size(); ++i) {
                if (!l[i].is_string()) throw SchemaError(detail::at("/source/labels", i), "expected a string");
                labels.push_back(l[i].get<std::string>());
            }
        } else {
            for (std::size_t i = 0; i < images.size(); ++i) labels.push_back("x" + std::to_string(i + 1));
        }
    } else if (src.contains("box")) {
        GridSource g;
        const Json& box = src["box"];
        if (!box.is_array() || box.empty()) throw SchemaError("/source/box", "expected a nonempty array of [lo, hi]");
        for (std::size_t i = 0; i < box.size(); ++i) {
            const std::string p = detail::at("/source/box", i);
            Point b = detail::point(box[i], p, 2);
            if (!(b[0] <= b[1])) throw SchemaError(p, "lo must not exceed hi");
            g.box.emplace_back(b[0], b[1]);
        }
        const Json& grid = detail::field(src, "/source", "grid");
        if (grid.is_array()) {
            if (grid.size() != box.size()) throw SchemaError("/source/grid", "expected one count per variable");
            for (std::size_t i = 0; i < grid.size(); ++i)
                g.grid.push_back(detail::positive_int(grid[i], detail::at("/source/grid", i)));
        } else {
            g.grid.assign(box.size(), detail::positive_int(grid, "/source/grid"));
        }
        const Json& objs = detail::field(src, "/source", "objectives");
        if (!objs.is_array() || objs.size() != n)
            throw SchemaError("/source/objectives", "expected " + std::to_string(n) + " expressions");
        for (std::size_t i = 0; i < objs.size(); ++i) {
            if (!objs[i].is_string()) throw SchemaError(detail::at("/source/objectives", i), "expected a string");
            g.objectives.push_back(objs[i].get<std::string>());
        }
        std::tie(labels, images) = sample_grid(g);
    } else {
        throw SchemaError("/source", "expected either 'images' or 'box'");
    }
    return detail::wrap("", [&] { return VOProblem(std::move(labels), std::move(images), K, psi, tol); });
}

inline VOProblem load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw SchemaError("", std::string("invalid JSON: ") + e.what());
    }
    return problem_from_json(j);
}

/// Writes the problem with explicit images.
inline Json problem_to_json(const VOProblem& p) {
    Json j;
    j["dim"] = p.dim();
    j["cone"] = cone_to_json(p.K);
    j["seminorm"] = seminorm_to_json(p.psi);
    j["tolerances"] = {{"eps_mem", p.tol.eps_mem},
                       {"eps_strict", p.tol.eps_strict},
                       {"eps_opt", p.tol.eps_opt},
                       {"eps_root", p.tol.eps_root}};
    j["source"]["labels"] = p.labels;
    j["source"]["images"] = detail::points_json(p.images);
    return j;
}

} // namespace bpscal::io
