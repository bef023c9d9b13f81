#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "berkring/base_ring.hpp"
#include "berkring/parse.hpp"
#include "berkring/poly.hpp"

namespace berkring {

struct Variable {
    std::string name;
    Rational radius = 1;
    bool operator==(const Variable&) const = default;
};

/// R{rho^-1 T} / (relations), or its overconvergent version when `dagger`.
/// Elements are represented by polynomials.
class AffinoidPresentation {
public:
    AffinoidPresentation() = default;
    AffinoidPresentation(BaseRing base, std::vector<Variable> vars, bool dagger = false,
                         std::vector<Poly> relations = {})
        : base_(base), vars_(std::move(vars)), dagger_(dagger), relations_(std::move(relations)) {
        std::set<std::string> names;
        for (const auto& v : vars_) {
            if (v.radius <= 0) throw std::invalid_argument("radius of " + v.name + " must be positive");
            if (!names.insert(v.name).second) throw std::invalid_argument("duplicate variable " + v.name);
        }
        for (const auto& r : relations_) check_element(r);
    }

    BaseRing base() const { return base_; }
    const std::vector<Variable>& vars() const { return vars_; }
    bool dagger() const { return dagger_; }
    const std::vector<Poly>& relations() const { return relations_; }

    std::vector<std::string> var_names() const {
        std::vector<std::string> out;
        for (const auto& v : vars_) out.push_back(v.name);
        return out;
    }
    Radii radii() const {
        Radii r;
        for (const auto& v : vars_) r.emplace(v.name, v.radius);
        return r;
    }
    bool has_variable(const std::string& n) const {
        return std::any_of(vars_.begin(), vars_.end(), [&](const Variable& v) { return v.name == n; });
    }
    const Rational& radius(const std::string& n) const {
        for (const auto& v : vars_)
            if (v.name == n) return v.radius;
        throw std::out_of_range("no variable " + n);
    }

    /// Throws unless f is a polynomial over the base ring in the declared variables.
    void check_element(const Poly& f) const {
        for (const auto& v : f.variables())
            if (!has_variable(v)) throw std::invalid_argument("variable " + v + " is not declared in the algebra");
        if (f.is_laurent()) throw std::invalid_argument("negative exponents are not elements of the algebra");
        if (!f.in_ring(base_)) throw std::invalid_argument("coefficients of " + to_string(f) + " are not in " + std::string(name(base_)));
    }

    /// A variable name derived from `stem` that is not yet used.
    std::string fresh_name(const std::string& stem, const std::set<std::string>& also_taken = {}) const {
        auto taken = [&](const std::string& s) { return has_variable(s) || also_taken.count(s); };
        if (!taken(stem)) return stem;
        for (int k = 1;; ++k) {
            std::string s = stem + "_" + std::to_string(k);
            if (!taken(s)) return s;
        }
    }

    AffinoidPresentation with_base(BaseRing b) const { return AffinoidPresentation(b, vars_, dagger_, relations_); }

    AffinoidPresentation extended(const std::vector<Variable>& more, const std::vector<Poly>& more_relations) const {
        auto vs = vars_;
        vs.insert(vs.end(), more.begin(), more.end());
        auto rs = relations_;
        rs.insert(rs.end(), more_relations.begin(), more_relations.end());
        return AffinoidPresentation(base_, vs, dagger_, rs);
    }

    friend bool operator==(const AffinoidPresentation&, const AffinoidPresentation&) = default;

private:
    BaseRing base_ = BaseRing::Z_arch;
    std::vector<Variable> vars_;
    bool dagger_ = false;
    std::vector<Poly> relations_;
};

inline std::string describe(const AffinoidPresentation& a) {
    std::string s = std::string(name(a.base())) + (a.dagger() ? "{" : "<");
    for (std::size_t i = 0; i < a.vars().size(); ++i) {
        if (i) s += ", ";
        s += "(" + a.vars()[i].radius.get_str() + ")^-1 " + a.vars()[i].name;
    }
    s += a.dagger() ? "}^dagger" : ">";
    if (!a.relations().empty()) {
        s += " / (";
        for (std::size_t i = 0; i < a.relations().size(); ++i) s += (i ? ", " : "") + to_string(a.relations()[i]);
        s += ")";
    }
    return s;
}

/// Parses "Q[T]", "Z[T,S]/(S^2-T)" and similar; every radius defaults to 1.
/// The ring letter selects Q_triv or Z_arch unless `base` is given.
inline AffinoidPresentation parse_algebra(const std::string& text, std::optional<BaseRing> base = std::nullopt,
                                          const Radii& radii = {}, bool dagger = false) {
    auto open = text.find('[');
    auto close = text.find(']');
    std::string ring = text.substr(0, open);
    ring.erase(std::remove(ring.begin(), ring.end(), ' '), ring.end());
    BaseRing b = base ? *base : (ring == "Q" ? BaseRing::Q_triv : BaseRing::Z_arch);
    if (!base && ring != "Q" && ring != "Z") throw std::invalid_argument("unknown coefficient ring '" + ring + "'");
    std::vector<Variable> vars;
    if (open != std::string::npos) {
        if (close == std::string::npos || close < open) throw std::invalid_argument("missing ']' in algebra");
        std::string inner = text.substr(open + 1, close - open - 1);
        std::size_t pos = 0;
        while (pos <= inner.size()) {
            auto comma = inner.find(',', pos);
            std::string v = inner.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            v.erase(std::remove(v.begin(), v.end(), ' '), v.end());
            if (!v.empty()) {
                auto it = radii.find(v);
                vars.push_back({v, it == radii.end() ? Rational(1) : it->second});
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    std::vector<Poly> rels;
    auto slash = text.find('/', close == std::string::npos ? 0 : close);
    if (slash != std::string::npos) {
        std::string rest = text.substr(slash + 1);
        auto lp = rest.find('('), rp = rest.rfind(')');
        if (lp == std::string::npos || rp == std::string::npos) throw std::invalid_argument("relations must be parenthesized");
        std::string inner = rest.substr(lp + 1, rp - lp - 1);
        int depth = 0;
        std::string cur;
        for (char c : inner) {
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (c == ',' && depth == 0) {
                rels.push_back(parse_expression(cur));
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!cur.empty()) rels.push_back(parse_expression(cur));
    }
    return AffinoidPresentation(b, vars, dagger, rels);
}

/// Which variables are free coordinates and which are determined by the
/// relations, as rational functions of the free ones.
struct Elimination {
    std::vector<std::string> free;
    std::map<std::string, RatFun> dependent;
};

/// Each relation must be linear in some not-yet-eliminated variable; the
/// latest declared such variable is solved for. Throws if a relation cannot
/// be used this way.
inline Elimination eliminate(const AffinoidPresentation& a) {
    std::map<std::string, RatFun> raw;
    auto names = a.var_names();
    for (const auto& r : a.relations()) {
        bool done = false;
        for (auto it = names.rbegin(); it != names.rend() && !done; ++it) {
            const std::string& v = *it;
            if (raw.count(v) || r.degree_in(v) != 1) continue;
            auto cs = r.coefficients_in(v);
            if (cs[1].is_zero()) continue;
            raw[v] = RatFun{-cs[0], cs[1]};
            done = true;
        }
        if (!done) throw std::invalid_argument("cannot solve relation " + to_string(r) + " for a variable");
    }
    Elimination e;
    for (const auto& n : names)
        if (!raw.count(n)) e.free.push_back(n);

    std::set<std::string> visiting;
    std::function<RatFun(const std::string&)> resolve = [&](const std::string& v) -> RatFun {
        if (auto it = e.dependent.find(v); it != e.dependent.end()) return it->second;
        if (!visiting.insert(v).second) throw std::invalid_argument("cyclic relations through " + v);
        const RatFun& rf = raw.at(v);
        std::map<std::string, RatFun> sub;
        for (const auto& u : rf.num.variables())
            if (raw.count(u)) sub[u] = resolve(u);
        for (const auto& u : rf.den.variables())
            if (raw.count(u)) sub[u] = resolve(u);
        RatFun n = substitute_rational(rf.num, sub), d = substitute_rational(rf.den, sub);
        RatFun out{n.num * d.den, n.den * d.num};
        if (out.den.is_zero()) throw std::invalid_argument("relation for " + v + " degenerates");
        visiting.erase(v);
        e.dependent[v] = out;
        return out;
    };
    for (const auto& [v, rf] : raw) resolve(v);
    return e;
}

}  // namespace berkring
