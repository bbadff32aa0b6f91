#pragma once

/**
 * @file io.hpp
 * @brief JSON and text rendering of exact values, inequality systems, cones,
 *        polygons, billiard paths and sample reports.
 *
 * Exact values are written as {"coeffs": ["p/q", ...], "approx": double},
 * coefficients in the power basis of g = 2cos(pi/m). On input a bare integer
 * or a rational string ("3/4") is also accepted; JSON floats are rejected.
 */

#include <json.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "gti/cone.hpp"
#include "gti/oracles.hpp"
#include "gti/polygonlab.hpp"

namespace gti::io {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Exact values

inline json exact_json(const CycloReal& x) {
    json coeffs = json::array();
    for (const auto& c : x.coeffs()) coeffs.push_back(c.get_str());
    while (coeffs.size() > 1 && coeffs.back() == "0") coeffs.erase(coeffs.size() - 1);
    return {{"coeffs", coeffs}, {"approx", x.to_double()}};
}

inline Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw usage_error("expected an integer or a rational string, got " + j.dump());
}

inline CycloReal exact_from_json(const FieldPtr& ctx, const json& j) {
    if (j.is_object()) {
        if (!j.contains("coeffs") || !j["coeffs"].is_array()) throw usage_error("exact value needs a coeffs array");
        std::vector<Rational> c;
        for (const auto& e : j["coeffs"]) c.push_back(rational_from_json(e));
        return CycloReal::from_coeffs(ctx, std::move(c));
    }
    return CycloReal(ctx, rational_from_json(j));
}

inline json vec_json(const Vec2& v) { return json::array({exact_json(v.p), exact_json(v.q)}); }

inline Vec2 vec_from_json(const FieldPtr& ctx, const json& j) {
    if (!j.is_array() || j.size() != 2) throw usage_error("a point needs exactly two coordinates: " + j.dump());
    return {exact_from_json(ctx, j[0]), exact_from_json(ctx, j[1])};
}

/// Parses a decimal such as "-1.25e-3" into an exact rational.
inline Rational decimal_rational(const std::string& s) {
    std::size_t e = s.find_first_of("eE");
    std::string mant = s.substr(0, e);
    long exp10 = e == std::string::npos ? 0 : std::stol(s.substr(e + 1));
    std::size_t dot = mant.find('.');
    if (dot != std::string::npos) {
        exp10 -= static_cast<long>(mant.size() - dot - 1);
        mant.erase(dot, 1);
    }
    Rational q(mpz_class(mant, 10));
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    if (exp10 < 0) q /= p;
    else q *= p;
    q.canonicalize();
    return q;
}

/// 12 significant digits; "(exact)" is appended when that decimal is the value itself.
inline std::string text_value(const CycloReal& x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x.to_double());
    std::string out(buf);
    if (x.is_rational() && decimal_rational(out) == x.coeffs()[0]) out += " (exact)";
    return out;
}

// ---------------------------------------------------------------------------
// Weyl elements and functionals

inline json weyl_json(const WeylElement& g) {
    return {{"kind", g.kind == WeylElement::Kind::rotation ? "rot" : "ref"}, {"j", g.j}};
}

inline WeylElement weyl_from_json(const Dihedral& W, const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("j")) throw usage_error("bad Weyl element: " + j.dump());
    const std::string kind = j["kind"].get<std::string>();
    const int idx = j["j"].get<int>();
    if (kind == "rot") return W.rotation(idx);
    if (kind == "ref") return W.reflection(idx);
    throw usage_error("Weyl element kind must be rot or ref, got " + kind);
}

inline Provenance provenance_from_string(const std::string& s) {
    for (auto p : {Provenance::Ln, Provenance::Bn, Provenance::BnWeak, Provenance::custom})
        if (to_string(p) == s) return p;
    throw usage_error("unknown provenance " + s);
}

/// Rows are grouped by parity; within a group the order is the sorted order of the system.
inline json system_json(const InequalitySystem& sys) {
    json groups = json::array();
    for (int parity : {0, 1}) {
        json tuples = json::array();
        for (const auto& f : sys.functionals)
            if (f.parity() == parity) tuples.push_back(f.ints());
        groups.push_back({{"parity", parity}, {"tuples", tuples}});
    }
    return {{"m", sys.m}, {"n", sys.n}, {"parityGroups", groups}, {"provenance", to_string(sys.provenance)}};
}

inline InequalitySystem system_from_json(const json& j) {
    try {
        const int m = j.at("m").get<int>(), n = j.at("n").get<int>();
        Dihedral W(m);
        if (n < 1) throw usage_error("n must be positive");
        std::vector<Functional> fs;
        for (const auto& g : j.at("parityGroups")) {
            const int parity = g.at("parity").get<int>();
            for (const auto& t : g.at("tuples")) {
                auto f = Functional::from_ints(m, t.get<std::vector<int>>());
                if (f.parity() != parity) throw usage_error("tuple " + f.to_string() + " is filed under the wrong parity");
                fs.push_back(std::move(f));
            }
        }
        Provenance p = j.contains("provenance") ? provenance_from_string(j["provenance"].get<std::string>())
                                                : Provenance::custom;
        return InequalitySystem(m, n, std::move(fs), p);
    } catch (const json::exception& e) {
        throw usage_error(std::string("malformed inequality system: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Points, polygons and paths

/// Point file: {"m": int, "sides": [[a, b], ...]} with each side in the chamber.
inline std::pair<int, std::vector<DeltaVector>> point_from_json(const json& j) {
    try {
        const int m = j.at("m").get<int>();
        auto ctx = make_field(m);
        std::vector<DeltaVector> out;
        for (const auto& s : j.at("sides")) {
            Vec2 v = vec_from_json(ctx, s);
            DeltaVector d{v.p, v.q};
            if (!d.in_chamber()) throw domain_error("side " + std::to_string(out.size() + 1) + " lies outside the Weyl chamber");
            out.push_back(d);
        }
        return {m, out};
    } catch (const json::exception& e) {
        throw usage_error(std::string("malformed point file: ") + e.what());
    }
}

inline json point_json(int m, const std::vector<DeltaVector>& s) {
    json sides = json::array();
    for (const auto& d : s) sides.push_back(vec_json(d.as_vec()));
    return {{"m", m}, {"sides", sides}};
}

inline json polygon_json(const ApartmentPolygon& p) {
    json v = json::array();
    for (const auto& x : p.vertices) v.push_back(vec_json(x));
    return {{"m", p.m}, {"vertices", v}};
}

inline ApartmentPolygon polygon_from_json(const json& j) {
    try {
        ApartmentPolygon p;
        p.m = j.at("m").get<int>();
        auto ctx = make_field(p.m);
        for (const auto& x : j.at("vertices")) p.vertices.push_back(vec_from_json(ctx, x));
        return p;
    } catch (const json::exception& e) {
        throw usage_error(std::string("malformed polygon: ") + e.what());
    }
}

inline json path_json(const BilliardPath& p) {
    json pts = json::array();
    for (const auto& x : p.points) pts.push_back(vec_json(x));
    json out = {{"m", p.m}, {"apex", vec_json(p.apex)}, {"points", pts}};
    if (p.transitions) {
        json t = json::array();
        for (const auto& g : *p.transitions) t.push_back(weyl_json(g));
        out["vertexTransitions"] = t;
    }
    return out;
}

inline BilliardPath path_from_json(const json& j) {
    try {
        BilliardPath p;
        p.m = j.at("m").get<int>();
        Dihedral W(p.m);
        auto ctx = make_field(p.m);
        p.apex = vec_from_json(ctx, j.at("apex"));
        for (const auto& x : j.at("points")) p.points.push_back(vec_from_json(ctx, x));
        if (j.contains("vertexTransitions")) {
            const auto& t = j["vertexTransitions"];
            if (!t.is_array() || t.size() != 3) throw usage_error("vertexTransitions needs three Weyl elements");
            p.transitions = std::array<WeylElement, 3>{weyl_from_json(W, t[0]), weyl_from_json(W, t[1]),
                                                       weyl_from_json(W, t[2])};
        }
        return p;
    } catch (const json::exception& e) {
        throw usage_error(std::string("malformed billiard path: ") + e.what());
    }
}

inline json isometry_json(const AffineIsometry& f) {
    return {{"linear", weyl_json(f.linear)}, {"translation", vec_json(f.translation)}};
}

// ---------------------------------------------------------------------------
// Cones, certificates and reports

inline const char* kind_name(ConeRow::Kind k) {
    switch (k) {
        case ConeRow::Kind::functional: return "functional";
        case ConeRow::Kind::nonnegativity: return "nonnegativity";
        case ConeRow::Kind::derived: return "derived";
    }
    return "?";
}

inline json cone_json(const ConeSystem& cone) {
    json rows = json::array();
    for (const auto& r : cone.rows) {
        json c = json::array();
        for (const auto& x : r.coeffs) c.push_back(exact_json(x));
        rows.push_back({{"label", r.label}, {"kind", kind_name(r.kind)}, {"coeffs", c}});
    }
    return {{"m", cone.m}, {"variables", cone.variables}, {"sense", "coeffs . x <= 0"}, {"rows", rows}};
}

inline json certificate_json(const LPCertificate& c) {
    json out = {{"status", c.feasible() ? "feasible" : "infeasible"}};
    json v = json::array();
    for (const auto& x : c.feasible() ? c.witness : c.multipliers) v.push_back(exact_json(x));
    out[c.feasible() ? "witness" : "combination"] = v;
    return out;
}

inline json irredundancy_json(const ConeSystem& cone, const Irredundancy& r) {
    return {{"row", r.row},
            {"label", cone.rows[r.row].label},
            {"irredundant", r.irredundant},
            {"certificate", certificate_json(r.certificate)}};
}

inline json membership_json(const ConeSystem& cone, const Membership& mem) {
    json values = json::array();
    for (std::size_t i = 0; i < mem.values.size(); ++i) {
        json v = exact_json(mem.values[i]);
        values.push_back({{"row", i}, {"label", cone.rows[i].label}, {"value", v}});
    }
    return {{"status", to_string(mem.status)}, {"active", mem.active}, {"violated", mem.violated}, {"values", values}};
}

inline json report_json(const SampleReport& r) {
    json viol = json::array();
    for (const auto& v : r.violations) {
        json e = {{"sample", v.sample}, {"functional", v.functional}, {"margin", v.margin}};
        if (!v.exact.empty()) e["exact"] = v.exact;
        viol.push_back(e);
    }
    json per = json::array();
    for (std::size_t i = 0; i < r.functionals.size(); ++i)
        per.push_back({{"functional", r.functionals[i]}, {"worst", r.worst[i]}, {"saturated", r.saturated[i]}});
    return {{"oracle", r.oracle},
            {"m", r.m},
            {"n", r.n},
            {"seed", r.seed},
            {"count", r.count},
            {"tolerance", r.tolerance},
            {"exact", r.oracle == "apartment"},
            {"violationCount", r.violations.size()},
            {"violations", viol},
            {"functionals", per}};
}

}  // namespace gti::io
