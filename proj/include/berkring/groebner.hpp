#pragma once

// Groebner bases over Q in graded reverse lexicographic order, with the
// variable order given by declaration order (first declared = largest).

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "berkring/poly.hpp"
#include "berkring/real.hpp"

namespace berkring {

class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GroebnerLimits {
    int degree_cap = 48;
    std::size_t basis_cap = 4000;

    /// Defaults, with the degree cap overridable through BERKRING_DEGREE_CAP.
    static GroebnerLimits defaults() {
        GroebnerLimits l;
        if (const char* env = std::getenv("BERKRING_DEGREE_CAP")) {
            char* end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end != env && v > 0) l.degree_cap = static_cast<int>(v);
        }
        return l;
    }
};

namespace detail {

using Exps = std::vector<int>;

inline int exps_degree(const Exps& e) {
    int d = 0;
    for (int x : e) d += x;
    return d;
}

struct GrevlexGreater {
    bool operator()(const Exps& a, const Exps& b) const {
        int da = exps_degree(a), db = exps_degree(b);
        if (da != db) return da > db;
        for (std::size_t i = a.size(); i-- > 0;) {
            if (a[i] != b[i]) return a[i] < b[i];
        }
        return false;
    }
};

using DPoly = std::map<Exps, Rational, GrevlexGreater>;

inline bool divides(const Exps& a, const Exps& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Exps lcm(const Exps& a, const Exps& b) {
    Exps r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

inline Exps minus(const Exps& a, const Exps& b) {
    Exps r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline void make_monic(DPoly& p) {
    if (p.empty()) return;
    Rational lc = p.begin()->second;
    if (lc == 1) return;
    for (auto& [e, c] : p) c /= lc;
}

// p -= c * x^shift * g
inline void sub_multiple(DPoly& p, const Rational& c, const Exps& shift, const DPoly& g) {
    for (const auto& [e, a] : g) {
        Exps k(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) k[i] = e[i] + shift[i];
        auto [it, inserted] = p.emplace(std::move(k), Rational(-c * a));
        if (!inserted) {
            it->second -= c * a;
            if (it->second == 0) p.erase(it);
        }
    }
}

// Full reduction of p by a list of monic polynomials.
inline DPoly reduce(DPoly p, const std::vector<DPoly>& G) {
    DPoly r;
    while (!p.empty()) {
        auto it = p.begin();
        const DPoly* hit = nullptr;
        for (const auto& g : G) {
            if (divides(g.begin()->first, it->first)) {
                hit = &g;
                break;
            }
        }
        if (!hit) {
            r.insert(r.end(), *it);
            p.erase(it);
            continue;
        }
        Rational c = it->second;
        Exps shift = minus(it->first, hit->begin()->first);
        sub_multiple(p, c, shift, *hit);
    }
    return r;
}

}  // namespace detail

/// A polynomial ideal over Q with its reduced Groebner basis.
class IdealBasis {
public:
    IdealBasis() = default;

    IdealBasis(std::vector<std::string> vars, std::vector<Poly> generators,
               GroebnerLimits limits = GroebnerLimits::defaults())
        : vars_(std::move(vars)), generators_(std::move(generators)), limits_(limits) {
        std::set<std::string> seen;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (!seen.insert(vars_[i]).second) throw std::invalid_argument("duplicate variable " + vars_[i]);
            index_[vars_[i]] = i;
        }
        complete();
    }

    const std::vector<std::string>& variables() const { return vars_; }
    const std::vector<Poly>& generators() const { return generators_; }
    bool normalized() const { return true; }

    std::vector<Poly> basis() const {
        std::vector<Poly> out;
        for (const auto& g : basis_) out.push_back(to_poly(g));
        return out;
    }

    bool is_unit() const { return basis_.size() == 1 && detail::exps_degree(basis_[0].begin()->first) == 0; }

    Poly normal_form(const Poly& f) const { return to_poly(detail::reduce(to_dense(f), basis_)); }
    bool contains(const Poly& f) const { return normal_form(f).is_zero(); }

    std::vector<Monomial> leading_monomials() const {
        std::vector<Monomial> out;
        for (const auto& g : basis_) out.push_back(to_monomial(g.begin()->first));
        return out;
    }

    /// Monomials of total degree <= max_degree not divisible by any leading
    /// monomial; for a graded order they are a basis of the elements of
    /// filtration degree <= max_degree in the quotient ring.
    std::vector<Monomial> standard_monomials(int max_degree) const {
        std::vector<Monomial> out;
        if (is_unit()) return out;
        detail::Exps e(vars_.size(), 0);
        walk_standard(e, 0, 0, max_degree, out);
        return out;
    }

private:
    void walk_standard(detail::Exps& e, std::size_t from, int deg, int max_degree, std::vector<Monomial>& out) const {
        for (const auto& g : basis_)
            if (detail::divides(g.begin()->first, e)) return;
        out.push_back(to_monomial(e));
        if (deg == max_degree) return;
        for (std::size_t i = from; i < vars_.size(); ++i) {
            ++e[i];
            walk_standard(e, i, deg + 1, max_degree, out);
            --e[i];
        }
    }

    detail::DPoly to_dense(const Poly& f) const {
        detail::DPoly d;
        for (const auto& [m, c] : f.terms()) {
            detail::Exps e(vars_.size(), 0);
            for (const auto& [v, k] : m.powers()) {
                auto it = index_.find(v);
                if (it == index_.end()) throw std::invalid_argument("variable " + v + " not in the ideal's ring");
                if (k < 0) throw std::invalid_argument("negative exponent in ideal computation");
                e[it->second] = k;
            }
            d.emplace(std::move(e), c);
        }
        return d;
    }

    Monomial to_monomial(const detail::Exps& e) const {
        std::vector<Monomial::Power> ps;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) ps.emplace_back(vars_[i], e[i]);
        return Monomial::from_powers(std::move(ps));
    }

    Poly to_poly(const detail::DPoly& d) const {
        Poly p;
        for (const auto& [e, c] : d) p.add_term(to_monomial(e), c);
        return p;
    }

    void complete() {
        using detail::DPoly;
        using detail::Exps;
        std::vector<DPoly> G;
        for (const auto& f : generators_) {
            DPoly d = to_dense(f);
            if (d.empty()) continue;
            detail::make_monic(d);
            G.push_back(std::move(d));
        }
        if (G.empty()) return;

        struct Pair {
            int degree;
            std::size_t i, j;
        };
        std::vector<Pair> pairs;
        auto add_pairs = [&](std::size_t j) {
            for (std::size_t i = 0; i < j; ++i) {
                Exps l = detail::lcm(G[i].begin()->first, G[j].begin()->first);
                pairs.push_back({detail::exps_degree(l), i, j});
            }
        };
        for (std::size_t j = 1; j < G.size(); ++j) add_pairs(j);

        while (!pairs.empty()) {
            auto best = std::min_element(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
                return a.degree != b.degree ? a.degree < b.degree : (a.j != b.j ? a.j < b.j : a.i < b.i);
            });
            Pair pr = *best;
            pairs.erase(best);
            const Exps& li = G[pr.i].begin()->first;
            const Exps& lj = G[pr.j].begin()->first;
            Exps l = detail::lcm(li, lj);
            // coprime leading monomials: the S-polynomial reduces to zero
            if (detail::exps_degree(l) == detail::exps_degree(li) + detail::exps_degree(lj)) continue;
            if (pr.degree > limits_.degree_cap)
                throw ResourceLimitError("Groebner completion exceeds degree cap " + std::to_string(limits_.degree_cap));
            DPoly s;
            detail::sub_multiple(s, Rational(-1), detail::minus(l, li), G[pr.i]);
            detail::sub_multiple(s, Rational(1), detail::minus(l, lj), G[pr.j]);
            DPoly r = detail::reduce(std::move(s), G);
            if (r.empty()) continue;
            detail::make_monic(r);
            if (detail::exps_degree(r.begin()->first) == 0) {
                G.assign(1, std::move(r));
                pairs.clear();
                break;
            }
            G.push_back(std::move(r));
            if (G.size() > limits_.basis_cap)
                throw ResourceLimitError("Groebner basis exceeds size cap " + std::to_string(limits_.basis_cap));
            add_pairs(G.size() - 1);
        }

        // minimal, then reduced
        std::vector<DPoly> minimal;
        for (std::size_t i = 0; i < G.size(); ++i) {
            bool redundant = false;
            for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
                if (i == j) continue;
                const Exps& a = G[j].begin()->first;
                const Exps& b = G[i].begin()->first;
                if (detail::divides(a, b) && (a != b || j < i)) redundant = true;
            }
            if (!redundant) minimal.push_back(G[i]);
        }
        for (std::size_t i = 0; i < minimal.size(); ++i) {
            std::vector<DPoly> others;
            for (std::size_t j = 0; j < minimal.size(); ++j)
                if (j != i) others.push_back(minimal[j]);
            DPoly head;
            head.insert(*minimal[i].begin());
            DPoly tail = minimal[i];
            tail.erase(tail.begin());
            DPoly red = detail::reduce(std::move(tail), others);
            head.insert(red.begin(), red.end());
            minimal[i] = std::move(head);
        }
        std::sort(minimal.begin(), minimal.end(), [](const DPoly& a, const DPoly& b) {
            return detail::GrevlexGreater{}(b.begin()->first, a.begin()->first);
        });
        basis_ = std::move(minimal);
    }

    std::vector<std::string> vars_;
    std::map<std::string, std::size_t> index_;
    std::vector<Poly> generators_;
    GroebnerLimits limits_;
    std::vector<detail::DPoly> basis_;
};

inline Poly normal_form(const Poly& f, const IdealBasis& I) { return I.normal_form(f); }

/// Declaration-ordered variable list covering every variable of the given
/// polynomials, starting from `preferred`.
inline std::vector<std::string> variable_order(std::vector<std::string> preferred, const std::vector<Poly>& polys) {
    std::set<std::string> have(preferred.begin(), preferred.end());
    std::set<std::string> extra;
    for (const auto& p : polys)
        for (const auto& v : p.variables())
            if (!have.count(v)) extra.insert(v);
    preferred.insert(preferred.end(), extra.begin(), extra.end());
    return preferred;
}

}  // namespace berkring
