#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "developable.hpp"
#include "verify.hpp"

namespace devsurf {

using nlohmann::json;

/// Schema violation carrying the path of the offending field.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

/// Versioned envelope around the entities that cross the CLI boundary.
struct Document {
    int version = 1;
    std::variant<BezierCurve, DevelopablePatch, std::vector<CheckReport>> payload;
};

namespace io_detail {

inline const json& require(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw ParseError(path, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) throw ParseError(path + "." + key, "missing field");
    return *it;
}

inline double number_at(const json& j, const std::string& path) {
    if (!j.is_number()) throw ParseError(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ParseError(path, "non-finite number");
    return v;
}

inline int int_at(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
    return j.get<int>();
}

}  // namespace io_detail

inline json to_json(const BezierCurve& c) {
    json pts = json::array();
    for (const Vec3& p : c.points) pts.push_back(json::array({p.x, p.y, p.z}));
    return json{{"degree", c.degree()}, {"points", std::move(pts)}};
}

inline BezierCurve curve_from_json(const json& j, const std::string& path) {
    using io_detail::int_at;
    using io_detail::number_at;
    using io_detail::require;
    const int degree = int_at(require(j, "degree", path), path + ".degree");
    const json& pts = require(j, "points", path);
    if (!pts.is_array() || pts.empty()) throw ParseError(path + ".points", "expected a non-empty array");
    if (static_cast<int>(pts.size()) != degree + 1)
        throw ParseError(path + ".points", "expected degree+1 control points");
    std::vector<Vec3> out;
    out.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const std::string pp = path + ".points[" + std::to_string(i) + "]";
        const json& e = pts[i];
        if (!e.is_array() || e.size() != 3) throw ParseError(pp, "expected [x, y, z]");
        out.emplace_back(number_at(e[0], pp), number_at(e[1], pp), number_at(e[2], pp));
    }
    return BezierCurve{std::move(out)};
}

inline json to_json(const RationalFunction& r) {
    return json{{"num", r.num().coeffs()}, {"den", r.den().coeffs()}};
}

inline RationalFunction rational_from_json(const json& j, const std::string& path) {
    using io_detail::number_at;
    using io_detail::require;
    const auto coeffs = [&](const char* key) {
        const json& a = require(j, key, path);
        const std::string pp = path + "." + key;
        if (!a.is_array() || a.empty()) throw ParseError(pp, "expected a non-empty coefficient array");
        std::vector<double> c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) c[i] = number_at(a[i], pp + "[" + std::to_string(i) + "]");
        return Polynomial::monomial(std::move(c));
    };
    const Polynomial num = coeffs("num");
    const Polynomial den = coeffs("den");
    if (den.is_zero()) throw ParseError(path + ".den", "zero denominator");
    return RationalFunction(num, den);
}

inline json to_json(const Certificate& cert) {
    return json{{"lambda_fn", to_json(cert.lambda_fn)}, {"m_fn", to_json(cert.m_fn)}};
}

inline json to_json(const DevelopablePatch& p) {
    json cert = nullptr;
    if (p.certificate) cert = to_json(*p.certificate);
    return json{{"c", to_json(p.c)}, {"d", to_json(p.d)}, {"certificate", std::move(cert)}};
}

inline DevelopablePatch patch_from_json(const json& j, const std::string& path) {
    using io_detail::require;
    BezierCurve c = curve_from_json(require(j, "c", path), path + ".c");
    BezierCurve d = curve_from_json(require(j, "d", path), path + ".d");
    if (c.degree() != d.degree()) throw ParseError(path, "boundary curves must have equal degrees");
    std::optional<Certificate> cert;
    if (const auto it = j.find("certificate"); it != j.end() && !it->is_null())
        cert = Certificate{rational_from_json(require(*it, "lambda_fn", path + ".certificate"),
                                              path + ".certificate.lambda_fn"),
                           rational_from_json(require(*it, "m_fn", path + ".certificate"),
                                              path + ".certificate.m_fn")};
    return DevelopablePatch{std::move(c), std::move(d), std::move(cert)};
}

inline json to_json(const CheckReport& r) {
    // JSON has no infinities; a vanishing-normal or pole-at-sample report
    // serializes as an over-any-tolerance sentinel instead.
    const double residual = std::isfinite(r.max_residual) ? r.max_residual : 1e308;
    return json{{"name", r.name},
                {"samples", r.samples},
                {"maxResidual", residual},
                {"argmaxLocation", json::array({r.argmax_location[0], r.argmax_location[1]})},
                {"pass", r.pass},
                {"tolerance", r.tolerance}};
}

inline CheckReport report_from_json(const json& j, const std::string& path) {
    using io_detail::int_at;
    using io_detail::require;
    CheckReport r;
    const json& name = require(j, "name", path);
    if (!name.is_string()) throw ParseError(path + ".name", "expected a string");
    r.name = name.get<std::string>();
    r.samples = int_at(require(j, "samples", path), path + ".samples");
    const json& mr = require(j, "maxResidual", path);
    if (!mr.is_number()) throw ParseError(path + ".maxResidual", "expected a number");
    r.max_residual = mr.get<double>();
    const json& loc = require(j, "argmaxLocation", path);
    if (!loc.is_array() || loc.size() != 2) throw ParseError(path + ".argmaxLocation", "expected [u, v]");
    r.argmax_location = {io_detail::number_at(loc[0], path + ".argmaxLocation"),
                         io_detail::number_at(loc[1], path + ".argmaxLocation")};
    const json& pass = require(j, "pass", path);
    if (!pass.is_boolean()) throw ParseError(path + ".pass", "expected a boolean");
    r.pass = pass.get<bool>();
    r.tolerance = io_detail::number_at(require(j, "tolerance", path), path + ".tolerance");
    return r;
}

inline std::string serialize(const Document& doc) {
    json j;
    j["version"] = doc.version;
    if (std::holds_alternative<BezierCurve>(doc.payload)) {
        j["entity"] = "curve";
        j["curve"] = to_json(std::get<BezierCurve>(doc.payload));
    } else if (std::holds_alternative<DevelopablePatch>(doc.payload)) {
        j["entity"] = "patch";
        j["patch"] = to_json(std::get<DevelopablePatch>(doc.payload));
    } else {
        j["entity"] = "report";
        json reports = json::array();
        for (const CheckReport& r : std::get<std::vector<CheckReport>>(doc.payload)) reports.push_back(to_json(r));
        j["reports"] = std::move(reports);
    }
    return j.dump(2) + "\n";
}

inline Document parse(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError("$", std::string("invalid JSON: ") + e.what());
    }
    using io_detail::int_at;
    using io_detail::require;
    Document doc;
    doc.version = int_at(require(j, "version", "$"), "$.version");
    if (doc.version != 1) throw ParseError("$.version", "unsupported document version");
    const json& entity = require(j, "entity", "$");
    if (!entity.is_string()) throw ParseError("$.entity", "expected a string");
    const std::string kind = entity.get<std::string>();
    if (kind == "curve") {
        doc.payload = curve_from_json(require(j, "curve", "$"), "curve");
    } else if (kind == "patch") {
        doc.payload = patch_from_json(require(j, "patch", "$"), "patch");
    } else if (kind == "report") {
        const json& reports = require(j, "reports", "$");
        if (!reports.is_array()) throw ParseError("$.reports", "expected an array");
        std::vector<CheckReport> rs;
        for (std::size_t i = 0; i < reports.size(); ++i)
            rs.push_back(report_from_json(reports[i], "reports[" + std::to_string(i) + "]"));
        doc.payload = std::move(rs);
    } else {
        throw ParseError("$.entity", "expected curve, patch or report");
    }
    return doc;
}

/// Wavefront OBJ tessellation on the closed [0,1]x[0,1] grid: nu*nv vertices
/// with the u index running fastest, then (nu-1)(nv-1) quads with 1-based
/// indices. Coordinates are printed with 9 significant digits.
inline std::string export_obj(const DevelopablePatch& patch, int nu, int nv) {
    if (nu < 2 || nv < 2) throw std::invalid_argument("export_obj: need at least a 2x2 grid");
    std::string out;
    out.reserve(static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv) * 32);
    char line[128];
    for (int j = 0; j < nv; ++j) {
        const double v = static_cast<double>(j) / (nv - 1);
        for (int i = 0; i < nu; ++i) {
            const double u = static_cast<double>(i) / (nu - 1);
            const Point3 p = surface_point(patch, u, v);
            std::snprintf(line, sizeof line, "v %.9g %.9g %.9g\n", p.x, p.y, p.z);
            out += line;
        }
    }
    for (int j = 0; j + 1 < nv; ++j)
        for (int i = 0; i + 1 < nu; ++i) {
            const int k = j * nu + i + 1;
            std::snprintf(line, sizeof line, "f %d %d %d %d\n", k, k + 1, k + nu + 1, k + nu);
            out += line;
        }
    return out;
}

}  // namespace devsurf
