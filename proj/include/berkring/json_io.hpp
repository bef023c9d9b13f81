#pragma once

// JSON encodings of the library's data. Rationals and polynomials are
// written as strings ("3/4", "2*T^2 - 1") so that values stay exact.

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "berkring/coverings.hpp"
#include "berkring/graded.hpp"
#include "berkring/parse.hpp"
#include "berkring/point.hpp"
#include "berkring/presentation.hpp"
#include "berkring/tate.hpp"

namespace berkring::json_io {

using nlohmann::json;

inline Rational rational_from(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_number()) return Rational(j.get<double>());
    throw std::invalid_argument("expected a rational, got " + j.dump());
}

inline json to_json(const Real& r) {
    json j{{"approx", r.value()}, {"exact", r.is_exact()}};
    j["value"] = r.is_exact() ? r.exact().get_str() : r.str();
    return j;
}

inline json to_json(const NormBound& b) {
    if (b.is_infinite()) return json{{"value", "inf"}, {"exact", true}};
    return to_json(b.value());
}

// ---------------------------------------------------------------------------
// Graded sets

inline json to_json(const GradedSet& X) {
    json els = json::array();
    for (const auto& l : X.labels()) {
        const Real& g = X.grade(l);
        els.push_back({{"label", l}, {"grade", g.is_exact() ? json(g.exact().get_str()) : json(g.value())}});
    }
    return json{{"elements", els}};
}

inline GradedSet graded_set_from(const json& j) {
    std::vector<std::pair<Label, Real>> els;
    for (const auto& e : j.at("elements")) {
        const auto& g = e.at("grade");
        Real r = g.is_number_float() ? Real::approximate(g.get<double>()) : Real(rational_from(g));
        els.emplace_back(e.at("label").get<std::string>(), r);
    }
    return GradedSet(els);
}

// ---------------------------------------------------------------------------
// Presentations and domains

inline json to_json(const AffinoidPresentation& a) {
    json vars = json::array();
    for (const auto& v : a.vars()) vars.push_back({{"name", v.name}, {"rho", v.radius.get_str()}});
    json rels = json::array();
    for (const auto& r : a.relations()) rels.push_back(to_string(r));
    return json{{"base", std::string(name(a.base()))}, {"vars", vars}, {"dagger", a.dagger()}, {"relations", rels}};
}

inline AffinoidPresentation presentation_from(const json& j) {
    std::vector<Variable> vars;
    for (const auto& v : j.value("vars", json::array()))
        vars.push_back({v.at("name").get<std::string>(), v.contains("rho") ? rational_from(v["rho"]) : Rational(1)});
    std::vector<Poly> rels;
    for (const auto& r : j.value("relations", json::array())) rels.push_back(parse_expression(r.get<std::string>()));
    return AffinoidPresentation(parse_base_ring(j.at("base").get<std::string>()), vars, j.value("dagger", false), rels);
}

inline json to_json(const DomainPair& p) { return json{{"f", to_string(p.f)}, {"rho", p.rho.get_str()}}; }

inline DomainPair pair_from(const json& j) {
    return {parse_expression(j.at("f").get<std::string>()), j.contains("rho") ? rational_from(j["rho"]) : Rational(1)};
}

inline json to_json(const RationalDomainSpec& d, bool with_parent = true) {
    json pairs = json::array();
    for (const auto& p : d.pairs) pairs.push_back(to_json(p));
    json j{{"pairs", pairs}};
    if (with_parent) j["parent"] = to_json(d.parent);
    if (d.certificate) {
        json c = json::array();
        for (const auto& a : *d.certificate) c.push_back(to_string(a));
        j["certificate"] = c;
    }
    if (!d.names.empty()) j["names"] = d.names;
    return j;
}

inline RationalDomainSpec domain_from(const json& j, const AffinoidPresentation* parent = nullptr) {
    RationalDomainSpec d;
    d.parent = parent ? *parent : presentation_from(j.at("parent"));
    for (const auto& p : j.at("pairs")) d.pairs.push_back(pair_from(p));
    if (j.contains("certificate")) {
        std::vector<Poly> c;
        for (const auto& a : j["certificate"]) c.push_back(parse_expression(a.get<std::string>()));
        d.certificate = c;
    }
    if (j.contains("names")) d.names = j["names"].get<std::vector<std::string>>();
    return d;
}

// ---------------------------------------------------------------------------
// Coverings

inline json to_json(const Covering& c) {
    json gens = json::array();
    for (const auto& g : c.generators) gens.push_back(to_json(g));
    json members = json::array();
    for (const auto& m : c.members) {
        json factors = json::array();
        for (const auto& f : m.factors) factors.push_back(to_json(f, false));
        json mj{{"factors", factors}};
        if (!m.signs.empty()) mj["signs"] = m.signs;
        members.push_back(mj);
    }
    return json{{"parent", to_json(c.parent)},
                {"kind", std::string(name(c.kind))},
                {"generators", gens},
                {"members", members}};
}

/// Standard and Laurent coverings are rebuilt from their generators; custom
/// ones are read member by member.
inline Covering covering_from(const json& j) {
    AffinoidPresentation parent = presentation_from(j.at("parent"));
    std::vector<DomainPair> gens;
    for (const auto& g : j.value("generators", json::array())) gens.push_back(pair_from(g));
    std::string kind = j.value("kind", "custom");
    if (kind == "standard") return standard_covering(gens, parent);
    if (kind == "laurent") return laurent_covering(gens, parent);
    if (kind != "custom") throw std::invalid_argument("unknown covering kind '" + kind + "'");
    Covering c{parent, CoveringKind::custom, {}, gens};
    for (const auto& m : j.at("members")) {
        Domain d;
        for (const auto& f : m.at("factors")) d.factors.push_back(domain_from(f, &parent));
        if (m.contains("signs")) d.signs = m["signs"].get<std::vector<int>>();
        c.members.push_back(std::move(d));
    }
    return c;
}

// ---------------------------------------------------------------------------
// Points and reports

inline json to_json(const SpectrumPoint& b) {
    json j{{"kind", b.describe().substr(0, b.describe().find('('))}};
    if (b.prime()) j["p"] = b.prime();
    if (b.kind() == SpectrumPoint::Kind::archimedean || b.kind() == SpectrumPoint::Kind::padic)
        j["eps"] = b.eps().get_str();
    return j;
}

inline SpectrumPoint spectrum_point_from(const json& j) {
    std::string k = j.at("kind").get<std::string>();
    if (k == "trivial") return SpectrumPoint::trivial();
    if (k == "archimedean") return SpectrumPoint::archimedean(rational_from(j.at("eps")));
    if (k == "padic") return SpectrumPoint::padic(j.at("p").get<unsigned long>(), rational_from(j.at("eps")));
    if (k == "residue") return SpectrumPoint::residue(j.at("p").get<unsigned long>());
    throw std::invalid_argument("unknown spectrum point kind '" + k + "'");
}

inline json to_json(const Coord& c) {
    if (auto* z = std::get_if<ComplexCoord>(&c)) return json{{"z", {z->z.real(), z->z.imag()}}};
    if (auto* a = std::get_if<CenterCoord>(&c)) return json{{"center", a->center.get_str()}};
    const auto& g = std::get<GaussCoord>(c);
    return json{{"gauss", {{"center", g.center.get_str()}, {"radius", g.radius.get_str()}}}};
}

inline Coord coord_from(const json& j) {
    if (j.contains("z")) return ComplexCoord{{j["z"].at(0).get<double>(), j["z"].at(1).get<double>()}};
    if (j.contains("center")) return CenterCoord{rational_from(j["center"])};
    if (j.contains("gauss"))
        return GaussCoord{rational_from(j["gauss"].value("center", json("0"))), rational_from(j["gauss"].at("radius"))};
    throw std::invalid_argument("unknown coordinate " + j.dump());
}

inline json to_json(const FiberPoint& x) {
    json coords = json::object();
    for (const auto& [v, c] : x.coords) coords[v] = to_json(c);
    json j{{"base", to_json(x.base)}, {"coords", coords}};
    if (!x.dependent.empty()) {
        json dep = json::object();
        for (const auto& [v, rf] : x.dependent) dep[v] = {{"num", to_string(rf.num)}, {"den", to_string(rf.den)}};
        j["dependent"] = dep;
    }
    return j;
}

inline FiberPoint fiber_point_from(const json& j) {
    FiberPoint x;
    x.base = spectrum_point_from(j.at("base"));
    const json coords = j.value("coords", json::object());
    const json dependent = j.value("dependent", json::object());
    for (const auto& [v, c] : coords.items()) x.coords[v] = coord_from(c);
    for (const auto& [v, rf] : dependent.items())
        x.dependent[v] = RatFun{parse_expression(rf.at("num").get<std::string>()),
                                parse_expression(rf.value("den", std::string("1")))};
    return x;
}

inline json to_json(const ExactnessReport& r) {
    json j{{"stage", r.stage}, {"degree_bound", r.degree_bound}, {"status", r.status()}};
    if (r.witness) j["witness"] = *r.witness;
    return j;
}

}  // namespace berkring::json_io
