#pragma once

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "extended_real.hpp"
#include "point.hpp"

namespace bpscal::io {

struct ReportRow {
    std::string label;
    Point image;
    std::optional<ExtendedReal> value;
    std::optional<bool> in_eff, in_weff, in_peff;

    bool operator==(const ReportRow&) const = default;
};

struct ReportSet {
    std::string name;
    std::vector<std::string> labels;

    bool operator==(const ReportSet&) const = default;
};

struct ReportCertificate {
    std::string label;
    std::string kind;
    Point xstar;
    double alpha = 0.0;

    bool operator==(const ReportCertificate&) const = default;
};

struct ReportCheck {
    std::string name;
    std::string verdict;
    std::string detail;
    std::optional<Point> witness;

    bool operator==(const ReportCheck&) const = default;
};

/// Everything a subcommand produces. Contains no timing, so equal inputs give equal bytes.
struct RunReport {
    std::string command;
    std::uint64_t seed = 0;
    std::string status = "ok";
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<std::pair<std::string, ExtendedReal>> scalars;
    std::vector<ReportRow> rows;
    std::vector<ReportSet> sets;
    std::vector<ReportCertificate> certificates;
    std::vector<ReportCheck> checks;

    bool operator==(const RunReport&) const = default;
};

namespace detail {

using Json = nlohmann::ordered_json;

inline Json xreal_to_json(const ExtendedReal& x) { return x.is_finite() ? Json(x.value()) : Json("+inf"); }

inline ExtendedReal xreal_from_json(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "+inf") return ExtendedReal::plus_infinity();
    return ExtendedReal::finite(j.get<double>());
}

inline Json opt_bool(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }
inline std::optional<bool> opt_bool(const Json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<bool>();
}

inline Point point_from(const Json& j) { return Point(j.get<std::vector<double>>()); }

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

} // namespace detail

inline nlohmann::ordered_json to_json(const RunReport& r) {
    using detail::Json;
    Json j;
    j["command"] = r.command;
    j["seed"] = r.seed;
    j["status"] = r.status;
    Json params = Json::object();
    for (const auto& [k, v] : r.parameters) params[k] = v;
    j["parameters"] = params;
    Json scalars = Json::object();
    for (const auto& [k, v] : r.scalars) scalars[k] = detail::xreal_to_json(v);
    j["scalars"] = scalars;
    Json rows = Json::array();
    for (const ReportRow& row : r.rows) {
        Json o;
        o["label"] = row.label;
        o["image"] = row.image.values();
        o["value"] = row.value ? detail::xreal_to_json(*row.value) : Json(nullptr);
        o["in_eff"] = detail::opt_bool(row.in_eff);
        o["in_weff"] = detail::opt_bool(row.in_weff);
        o["in_peff"] = detail::opt_bool(row.in_peff);
        rows.push_back(o);
    }
    j["rows"] = rows;
    Json sets = Json::array();
    for (const ReportSet& s : r.sets) sets.push_back({{"name", s.name}, {"labels", s.labels}});
    j["sets"] = sets;
    Json certs = Json::array();
    for (const ReportCertificate& c : r.certificates)
        certs.push_back({{"label", c.label}, {"kind", c.kind}, {"xstar", c.xstar.values()}, {"alpha", c.alpha}});
    j["certificates"] = certs;
    Json checks = Json::array();
    for (const ReportCheck& c : r.checks) {
        Json o{{"name", c.name}, {"verdict", c.verdict}, {"detail", c.detail}};
        o["witness"] = c.witness ? Json(c.witness->values()) : Json(nullptr);
        checks.push_back(o);
    }
    j["checks"] = checks;
    return j;
}

inline RunReport report_from_json(const nlohmann::ordered_json& j) {
    RunReport r;
    r.command = j.at("command").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.status = j.at("status").get<std::string>();
    for (auto it = j.at("parameters").begin(); it != j.at("parameters").end(); ++it)
        r.parameters.emplace_back(it.key(), it.value().get<std::string>());
    for (auto it = j.at("scalars").begin(); it != j.at("scalars").end(); ++it)
        r.scalars.emplace_back(it.key(), detail::xreal_from_json(it.value()));
    for (const auto& o : j.at("rows")) {
        ReportRow row;
        row.label = o.at("label").get<std::string>();
        row.image = detail::point_from(o.at("image"));
        if (!o.at("value").is_null()) row.value = detail::xreal_from_json(o.at("value"));
        row.in_eff = detail::opt_bool(o.at("in_eff"));
        row.in_weff = detail::opt_bool(o.at("in_weff"));
        row.in_peff = detail::opt_bool(o.at("in_peff"));
        r.rows.push_back(std::move(row));
    }
    for (const auto& o : j.at("sets"))
        r.sets.push_back({o.at("name").get<std::string>(), o.at("labels").get<std::vector<std::string>>()});
    for (const auto& o : j.at("certificates"))
        r.certificates.push_back({o.at("label").get<std::string>(), o.at("kind").get<std::string>(),
                                  detail::point_from(o.at("xstar")), o.at("alpha").get<double>()});
    for (const auto& o : j.at("checks")) {
        ReportCheck c{o.at("name").get<std::string>(), o.at("verdict").get<std::string>(),
                      o.at("detail").get<std::string>(), std::nullopt};
        if (!o.at("witness").is_null()) c.witness = detail::point_from(o.at("witness"));
        r.checks.push_back(std::move(c));
    }
    return r;
}

/// Per-label table: label, f1..fn, value, in_eff, in_weff, in_peff. Unknown cells are empty.
inline std::string to_csv(const RunReport& r) {
    std::ostringstream os;
    const std::size_t n = r.rows.empty() ? 0 : r.rows.front().image.size();
    os << "label";
    for (std::size_t i = 0; i < n; ++i) os << ",f" << i + 1;
    os << ",value,in_eff,in_weff,in_peff\n";
    auto b = [](const std::optional<bool>& x) { return x ? (*x ? "1" : "0") : ""; };
    for (const ReportRow& row : r.rows) {
        os << detail::csv_field(row.label);
        for (double v : row.image.values()) os << ',' << detail::fmt(v);
        os << ',';
        if (row.value) os << (row.value->is_finite() ? detail::fmt(row.value->value()) : "+inf");
        os << ',' << b(row.in_eff) << ',' << b(row.in_weff) << ',' << b(row.in_peff) << '\n';
    }
    return os.str();
}

} // namespace bpscal::io
