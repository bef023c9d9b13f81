#pragma once

// Cech complexes of coverings over trivially valued Q and their exactness,
// verified degree by degree with normal forms and linear algebra over Q.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "berkring/affinoid.hpp"
#include "berkring/coverings.hpp"
#include "berkring/groebner.hpp"
#include "berkring/linalg.hpp"

namespace berkring {

using Substitution = std::map<std::string, Poly>;

struct CechMember {
    AffinoidPresentation algebra;
    std::vector<std::string> new_vars;
};

struct CechOverlap {
    std::size_t i = 0, j = 0;
    AffinoidPresentation algebra;
};

/// 0 -> A -> prod_i O(U_i) -> prod_{i<j} O(U_i cap U_j). The restriction maps
/// are variable substitutions: d0[i] sends A to member i, d1[k] sends members
/// i and j of overlap k into it. d1 is (s_i) -> (s_j - s_i) on U_ij.
struct CechComplex {
    AffinoidPresentation A;
    Covering covering;
    std::vector<CechMember> level1;
    std::vector<CechOverlap> level2;
    std::vector<Substitution> d0;
    std::vector<std::pair<Substitution, Substitution>> d1;
};

namespace detail {

inline Substitution identity_on(const std::vector<std::string>& vars) {
    Substitution s;
    for (const auto& v : vars) s.emplace(v, Poly::variable(v));
    return s;
}

inline IdealBasis ideal_of(const AffinoidPresentation& a) {
    return IdealBasis(a.var_names(), a.relations());
}

}  // namespace detail

/// Assembles the complex; the new variables of different members are renamed
/// apart so overlaps are presented by concatenating relation sets.
inline CechComplex cech_complex(const Covering& c) {
    const auto& A = c.parent;
    if (A.base() != BaseRing::Q_triv) throw std::invalid_argument("Cech complexes are supported over Q_triv only");
    for (const auto& v : A.vars())
        if (v.radius != 1) throw std::invalid_argument("Cech complexes need all radii equal to 1");
    for (const auto& g : c.generators)
        if (g.rho != 1) throw std::invalid_argument("Cech complexes need all radii equal to 1");
    if (c.members.empty()) throw std::invalid_argument("covering has no members");

    CechComplex cx{A, c, {}, {}, {}, {}};
    std::set<std::string> taken;
    for (const auto& v : A.var_names()) taken.insert(v);
    for (std::size_t i = 0; i < c.members.size(); ++i) {
        std::vector<std::string> names;
        AffinoidPresentation m = member_algebra(c, i, &names);
        std::map<std::string, std::string> rename;
        for (const auto& n : names) {
            std::string fresh = n;
            for (int k = 1; taken.count(fresh); ++k) fresh = n + "_" + std::to_string(k);
            taken.insert(fresh);
            rename[n] = fresh;
        }
        std::vector<Variable> vars;
        for (const auto& v : m.vars()) vars.push_back({rename.count(v.name) ? rename[v.name] : v.name, v.radius});
        std::vector<Poly> rels;
        for (const auto& r : m.relations()) rels.push_back(r.rename(rename));
        std::vector<std::string> fresh_names;
        for (const auto& n : names) fresh_names.push_back(rename[n]);
        cx.level1.push_back({AffinoidPresentation(m.base(), vars, m.dagger(), rels), fresh_names});
        cx.d0.push_back(detail::identity_on(A.var_names()));
    }
    const std::size_t base_rels = A.relations().size();
    for (std::size_t i = 0; i < cx.level1.size(); ++i)
        for (std::size_t j = i + 1; j < cx.level1.size(); ++j) {
            const auto& mi = cx.level1[i].algebra;
            const auto& mj = cx.level1[j].algebra;
            std::vector<Variable> vars = mi.vars();
            for (std::size_t k = A.vars().size(); k < mj.vars().size(); ++k) vars.push_back(mj.vars()[k]);
            std::vector<Poly> rels = mi.relations();
            rels.insert(rels.end(), mj.relations().begin() + static_cast<std::ptrdiff_t>(base_rels), mj.relations().end());
            cx.level2.push_back({i, j, AffinoidPresentation(A.base(), vars, A.dagger(), rels)});
            cx.d1.emplace_back(detail::identity_on(mi.var_names()), detail::identity_on(mj.var_names()));
        }
    return cx;
}

struct ExactnessReport {
    std::string stage;  ///< d1_d0, injectivity, middle, surjectivity or complete
    int degree_bound = 0;
    bool exact = false;
    std::optional<std::string> witness;
    std::string status() const { return exact ? "exact" : "failure"; }
};

/// d1 o d0 = 0 on the generators of A, by normal forms on each overlap.
inline bool check_d1_d0(const CechComplex& cx) {
    std::vector<Poly> gens{Poly(1)};
    for (const auto& v : cx.A.var_names()) gens.push_back(Poly::variable(v));
    for (std::size_t k = 0; k < cx.level2.size(); ++k) {
        IdealBasis I = detail::ideal_of(cx.level2[k].algebra);
        const auto& ov = cx.level2[k];
        for (const auto& g : gens) {
            Poly via_j = g.substitute(cx.d0[ov.j]).substitute(cx.d1[k].second);
            Poly via_i = g.substitute(cx.d0[ov.i]).substitute(cx.d1[k].first);
            if (!I.contains(via_j - via_i)) return false;
        }
    }
    return true;
}

namespace detail {

// Column indices for (block, monomial) coordinates.
class Coordinates {
public:
    std::size_t index(std::size_t block, const Monomial& m) {
        auto [it, inserted] = cols_.emplace(std::make_pair(block, m), keys_.size());
        if (inserted) keys_.push_back({block, m});
        return it->second;
    }
    const std::pair<std::size_t, Monomial>& key(std::size_t col) const { return keys_.at(col); }

    void add(linalg::SparseVec& v, std::size_t block, const Poly& p, const Rational& sign = Rational(1)) {
        linalg::SparseVec w;
        for (const auto& [m, c] : p.terms()) w.emplace(index(block, m), sign * c);
        linalg::axpy(v, Rational(1), w);
    }

private:
    std::map<std::pair<std::size_t, Monomial>, std::size_t> cols_;
    std::vector<std::pair<std::size_t, Monomial>> keys_;
};

inline std::string format_blocks(const linalg::SparseVec& v, const Coordinates& co, std::size_t blocks) {
    std::vector<Poly> parts(blocks);
    for (const auto& [col, c] : v) {
        const auto& [b, m] = co.key(col);
        parts[b].add_term(m, c);
    }
    if (blocks == 1) return to_string(parts[0]);
    std::string s = "(";
    for (std::size_t b = 0; b < blocks; ++b) s += (b ? ", " : "") + to_string(parts[b]);
    return s + ")";
}

}  // namespace detail

/// Checks, in filtration degrees up to D: d1 o d0 = 0; d0 is injective;
/// every element of ker d1 of degree <= D lies in d0 of A (preimages are
/// searched up to D times the largest generator degree); for two-member
/// coverings d1 hits every overlap element of degree <= D.
inline ExactnessReport check_exactness(const CechComplex& cx, int D = 6) {
    if (D < 0) throw std::invalid_argument("degree bound must be >= 0");
    if (cx.A.base() != BaseRing::Q_triv) throw std::invalid_argument("exactness is checked over Q_triv only");
    ExactnessReport rep{"d1_d0", D, false, std::nullopt};
    if (!check_d1_d0(cx)) return rep;

    int gen_degree = 1;
    for (const auto& g : cx.covering.generators) gen_degree = std::max(gen_degree, g.f.degree());
    const int d_pre = D * gen_degree;
    const std::size_t n1 = cx.level1.size();

    IdealBasis IA = detail::ideal_of(cx.A);
    std::vector<IdealBasis> I1, I2;
    for (const auto& m : cx.level1) I1.push_back(detail::ideal_of(m.algebra));
    for (const auto& o : cx.level2) I2.push_back(detail::ideal_of(o.algebra));

    // d0 on A up to degree d_pre; a dependency is a kernel element.
    detail::Coordinates c1;
    linalg::Echelon image0;
    auto a_basis = IA.standard_monomials(d_pre);
    for (std::size_t t = 0; t < a_basis.size(); ++t) {
        linalg::SparseVec v;
        for (std::size_t i = 0; i < n1; ++i) {
            Poly img = Poly::term(a_basis[t], Rational(1)).substitute(cx.d0[i]);
            c1.add(v, i, I1[i].normal_form(img));
        }
        auto dep = image0.insert(v, t);
        if (!dep.empty()) {
            rep.stage = "injectivity";
            Poly w;
            for (const auto& [k, c] : dep) w.add_term(a_basis[k], c);
            rep.witness = to_string(w);
            return rep;
        }
    }

    // d1 on members up to degree D.
    auto d1_image = [&](std::size_t i, const Monomial& m, detail::Coordinates& c2) {
        linalg::SparseVec v;
        Poly p = Poly::term(m, Rational(1));
        for (std::size_t k = 0; k < cx.level2.size(); ++k) {
            const auto& ov = cx.level2[k];
            if (ov.i == i) c2.add(v, k, I2[k].normal_form(p.substitute(cx.d1[k].first)), Rational(-1));
            if (ov.j == i) c2.add(v, k, I2[k].normal_form(p.substitute(cx.d1[k].second)));
        }
        return v;
    };

    rep.stage = "middle";
    std::vector<std::pair<std::size_t, Monomial>> v1;
    for (std::size_t i = 0; i < n1; ++i)
        for (const auto& m : I1[i].standard_monomials(D)) v1.emplace_back(i, m);
    detail::Coordinates c2;
    linalg::Echelon image1;
    for (std::size_t t = 0; t < v1.size(); ++t) {
        auto dep = image1.insert(d1_image(v1[t].first, v1[t].second, c2), t);
        if (dep.empty()) continue;
        linalg::SparseVec elem;
        for (const auto& [k, c] : dep) linalg::axpy(elem, c, linalg::SparseVec{{c1.index(v1[k].first, v1[k].second), Rational(1)}});
        if (!image0.contains(elem)) {
            rep.witness = detail::format_blocks(elem, c1, n1);
            return rep;
        }
    }

    if (n1 == 2) {
        rep.stage = "surjectivity";
        detail::Coordinates c3;
        linalg::Echelon onto;
        std::size_t t = 0;
        for (std::size_t i = 0; i < n1; ++i)
            for (const auto& m : I1[i].standard_monomials(d_pre)) onto.insert(d1_image(i, m, c3), t++);
        for (const auto& m : I2[0].standard_monomials(D)) {
            linalg::SparseVec target;
            c3.add(target, 0, Poly::term(m, Rational(1)));
            if (!onto.contains(target)) {
                rep.witness = to_string(Poly::term(m, Rational(1)));
                return rep;
            }
        }
    }

    rep.stage = "complete";
    rep.exact = true;
    return rep;
}

// ---------------------------------------------------------------------------
// Strict rational domains over Q_triv are localizations

struct LocalizationReport {
    bool ok = false;
    Poly inverse;  ///< an inverse of f_0 in the rational domain algebra
    std::string detail;
};

/// B = A[T_i]/(f_0 T_i - f_i) against C = A[Z]/(f_0 Z - 1) via T_i -> f_i Z
/// and Z -> u with f_0 u = 1 in B (u found among elements of degree <=
/// max_degree). Both maps must be well defined and mutually inverse on
/// generators.
inline LocalizationReport check_localization(const RationalDomainSpec& d, int max_degree = 8) {
    if (d.parent.base() != BaseRing::Q_triv) throw std::invalid_argument("localization check needs Q_triv");
    LocalizationReport rep;
    std::vector<std::string> names;
    AffinoidPresentation B = rational_domain_algebra(d, &names);
    std::string z = B.fresh_name("Z");
    const Poly& f0 = d.pairs[0].f;
    AffinoidPresentation C = d.parent.extended({{z, Rational(1)}}, {f0 * Poly::variable(z) - Poly(1)});
    IdealBasis IB = detail::ideal_of(B), IC = detail::ideal_of(C);

    detail::Coordinates co;
    linalg::Echelon rows;
    auto basis = IB.standard_monomials(max_degree);
    for (std::size_t t = 0; t < basis.size(); ++t) {
        linalg::SparseVec v;
        co.add(v, 0, IB.normal_form(f0 * Poly::term(basis[t], Rational(1))));
        rows.insert(v, t);
    }
    linalg::SparseVec one;
    co.add(one, 0, IB.normal_form(Poly(1)));
    auto sol = rows.solve(one);
    if (!sol) {
        rep.detail = "no inverse of " + to_string(f0) + " up to degree " + std::to_string(max_degree);
        return rep;
    }
    for (const auto& [k, c] : *sol) rep.inverse.add_term(basis[k], c);

    Substitution phi = detail::identity_on(d.parent.var_names());
    for (std::size_t i = 0; i < names.size(); ++i) phi[names[i]] = d.pairs[i + 1].f * Poly::variable(z);
    Substitution psi = detail::identity_on(d.parent.var_names());
    psi[z] = rep.inverse;

    for (const auto& r : B.relations())
        if (!IC.contains(r.substitute(phi))) {
            rep.detail = "B -> C does not respect " + to_string(r);
            return rep;
        }
    for (const auto& r : C.relations())
        if (!IB.contains(r.substitute(psi))) {
            rep.detail = "C -> B does not respect " + to_string(r);
            return rep;
        }
    for (const auto& v : B.var_names())
        if (!IB.contains(Poly::variable(v).substitute(phi).substitute(psi) - Poly::variable(v))) {
            rep.detail = "B -> C -> B is not the identity on " + v;
            return rep;
        }
    for (const auto& v : C.var_names())
        if (!IC.contains(Poly::variable(v).substitute(psi).substitute(phi) - Poly::variable(v))) {
            rep.detail = "C -> B -> C is not the identity on " + v;
            return rep;
        }
    rep.ok = true;
    return rep;
}

}  // namespace berkring
