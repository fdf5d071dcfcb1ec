// Text and JSON serialization: complexes, invariant records, multicurves.
#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "iotacx/invariants.hpp"
#include "iotacx/rcomplex.hpp"
#include "iotacx/slide.hpp"

namespace iotacx {

using nlohmann::json;

// ---------------------------------------------------------------------------
// almost iota-complexes
// ---------------------------------------------------------------------------

inline json toJson(const AlmostIotaComplex& c) {
    json gens = json::array();
    for (const auto& g : c.gens) {
        json e{{"name", g.name}, {"grU", g.grU}};
        if (g.grQ) e["grQ"] = *g.grQ;
        gens.push_back(std::move(e));
    }
    auto mat = [&c](const PolyMat& m) {
        json out = json::array();
        for (int j = 0; j < m.cols(); ++j)
            for (int i = 0; i < m.rows(); ++i)
                if (!m.at(i, j).isZero())
                    out.push_back({{"from", c.gens[j].name},
                                   {"to", c.gens[i].name},
                                   {"coeff", printCoeff(m.at(i, j))}});
        return out;
    };
    return json{{"generators", gens}, {"d", mat(c.d)}, {"iota", mat(c.iota)}};
}

struct ComplexParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline AlmostIotaComplex complexFromJson(const json& j) {
    AlmostIotaComplex c;
    if (!j.contains("generators") || !j["generators"].is_array())
        throw ComplexParseError("missing generators array");
    for (const auto& e : j["generators"]) {
        Generator g;
        g.name = e.at("name").get<std::string>();
        g.grU = e.at("grU").get<int>();
        if (e.contains("grQ")) g.grQ = e["grQ"].get<int>();
        c.gens.push_back(std::move(g));
    }
    const int n = c.size();
    c.d = PolyMat(n, n, Var::U);
    c.iota = PolyMat(n, n, Var::U);
    auto fill = [&c](PolyMat& m, const json& arr, const char* what) {
        for (const auto& e : arr) {
            std::string from = e.at("from").get<std::string>();
            std::string to = e.at("to").get<std::string>();
            int jIdx = c.indexOf(from), iIdx = c.indexOf(to);
            if (jIdx < 0) throw ComplexParseError(std::string(what) + ": unknown generator " + from);
            if (iIdx < 0) throw ComplexParseError(std::string(what) + ": unknown generator " + to);
            RElem coeff = parseCoeff(e.at("coeff").get<std::string>());
            if (!coeff.q.isZero())
                throw ComplexParseError(std::string(what) + ": coefficient must live in F2[U]");
            m.at(iIdx, jIdx) += coeff.uWithConstant();
        }
    };
    if (j.contains("d")) fill(c.d, j["d"], "d");
    if (j.contains("iota")) fill(c.iota, j["iota"], "iota");
    return c;
}

/// Inline input: the standard-complex grammar or a JSON object.
using ParsedComplex = std::variant<StandardParams, AlmostIotaComplex>;

inline ParsedComplex parseComplexText(const std::string& text) {
    size_t i = 0;
    while (i < text.size() && isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i < text.size() && text[i] == '{') {
        json j = json::parse(text);  // throws json::parse_error with position
        AlmostIotaComplex c = complexFromJson(j);
        auto rep = validate(c);
        if (!rep.ok()) {
            std::string msg = "complex fails validation:";
            for (const auto& chk : rep.checks)
                if (!chk.pass) msg += " [" + chk.name + (chk.message.empty() ? "" : ": " + chk.message) + "]";
            throw ComplexParseError(msg);
        }
        return c;
    }
    return parseParams(text);  // throws ParamsParseError with position
}

inline AlmostIotaComplex buildParsed(const ParsedComplex& p) {
    if (std::holds_alternative<StandardParams>(p)) return buildStandard(std::get<StandardParams>(p));
    return std::get<AlmostIotaComplex>(p);
}

// ---------------------------------------------------------------------------
// invariant records
// ---------------------------------------------------------------------------

inline json toJson(const InvariantRecord& rec) {
    json phi = json::object();
    for (const auto& [n, v] : rec.phi) phi[std::to_string(n)] = v;
    return json{{"params", printParams(rec.params)}, {"P", rec.P}, {"Pomega", rec.Pomega}, {"phi", phi}};
}

inline InvariantRecord invariantRecordFromJson(const json& j) {
    InvariantRecord rec;
    rec.params = parseParams(j.at("params").get<std::string>());
    rec.P = j.at("P").get<int>();
    rec.Pomega = j.at("Pomega").get<int>();
    for (const auto& [k, v] : j.at("phi").items()) rec.phi[std::stoi(k)] = v.get<int>();
    return rec;
}

// ---------------------------------------------------------------------------
// multicurves
// ---------------------------------------------------------------------------

inline json toJson(const Multicurve& mc) {
    json comps = json::array();
    for (const auto& c : mc.components) {
        json gens = json::array();
        for (int s : c.strands) gens.push_back(mc.gens[s].name);
        json segs = json::array();
        for (const auto& seg : c.segments)
            segs.push_back({{"face", seg.face == Var::U ? "U" : "Q"},
                            {"power", seg.power},
                            {"direction", seg.forward ? "forward" : "backward"}});
        auto endName = [](CurveComponent::End e) {
            switch (e) {
                case CurveComponent::End::UPuncture: return "U";
                case CurveComponent::End::QPuncture: return "Q";
                default: return "closed";
            }
        };
        json deco = json::array();
        for (int i = 0; i < c.decoration.rows(); ++i) {
            json row = json::array();
            for (int j = 0; j < c.decoration.cols(); ++j) row.push_back(c.decoration.get(i, j) ? 1 : 0);
            deco.push_back(std::move(row));
        }
        comps.push_back({{"generators", gens},
                         {"segments", segs},
                         {"start", endName(c.start)},
                         {"finish", endName(c.finish)},
                         {"copies", c.copies},
                         {"decoration", deco}});
    }
    return json{{"components", comps}};
}

}  // namespace iotacx
