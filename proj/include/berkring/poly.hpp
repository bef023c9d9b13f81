#pragma once

// Sparse (Laurent) polynomials with exact rational coefficients over named
// variables.

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "berkring/base_ring.hpp"
#include "berkring/monomial.hpp"
#include "berkring/real.hpp"

namespace berkring {

class Poly {
public:
    using TermMap = std::map<Monomial, Rational>;

    Poly() = default;
    Poly(const Rational& c) {  // NOLINT(implicit)
        if (c != 0) terms_.emplace(Monomial{}, c);
    }
    Poly(long c) : Poly(Rational(c)) {}  // NOLINT(implicit)
    Poly(int c) : Poly(Rational(c)) {}   // NOLINT(implicit)

    static Poly variable(const std::string& name) { return term(Monomial::variable(name), Rational(1)); }
    static Poly term(const Monomial& m, const Rational& c) {
        Poly p;
        if (c != 0) p.terms_.emplace(m, c);
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }
    std::size_t size() const { return terms_.size(); }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    Rational constant_term() const { return coefficient(Monomial{}); }

    int degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
        return d;
    }
    int degree_in(const std::string& v) const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(v));
        return d;
    }
    int min_degree_in(const std::string& v) const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::min(d, m.exponent(v));
        return d;
    }

    std::set<std::string> variables() const {
        std::set<std::string> vs;
        for (const auto& [m, c] : terms_)
            for (const auto& [v, e] : m.powers()) vs.insert(v);
        return vs;
    }

    bool is_laurent() const {
        for (const auto& [m, c] : terms_)
            if (m.has_negative_exponent()) return true;
        return false;
    }

    bool is_integral() const {
        for (const auto& [m, c] : terms_)
            if (c.get_den() != 1) return false;
        return true;
    }

    bool in_ring(BaseRing r) const { return !integral_coefficients(r) || is_integral(); }

    /// Largest coefficient size in bits (numerator plus denominator).
    std::size_t coefficient_bits() const {
        std::size_t b = 0;
        for (const auto& [m, c] : terms_)
            b = std::max(b, mpz_sizeinbase(c.get_num_mpz_t(), 2) + mpz_sizeinbase(c.get_den_mpz_t(), 2));
        return b;
    }

    Poly& operator+=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, Rational(-c));
        return *this;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(const Poly& a) {
        Poly r;
        for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    friend bool operator==(const Poly&, const Poly&) = default;

    Poly scaled(const Rational& c) const {
        Poly r;
        if (c == 0) return r;
        for (const auto& [m, a] : terms_) r.terms_.emplace(m, a * c);
        return r;
    }

    Poly pow(unsigned k) const {
        Poly result(1), base = *this;
        while (k) {
            if (k & 1u) result *= base;
            k >>= 1u;
            if (k) base = base * base;
        }
        return result;
    }

    /// Replaces variables by polynomials (nonnegative exponents only for
    /// substituted variables).
    Poly substitute(const std::map<std::string, Poly>& sub) const {
        Poly r;
        std::map<std::pair<std::string, int>, Poly> cache;
        for (const auto& [m, c] : terms_) {
            Poly t(c);
            std::vector<Monomial::Power> kept;
            for (const auto& [v, e] : m.powers()) {
                auto it = sub.find(v);
                if (it == sub.end()) {
                    kept.emplace_back(v, e);
                    continue;
                }
                if (e < 0) throw std::invalid_argument("cannot substitute into negative power of " + v);
                auto key = std::make_pair(v, e);
                auto cit = cache.find(key);
                if (cit == cache.end()) cit = cache.emplace(key, it->second.pow(static_cast<unsigned>(e))).first;
                t = t * cit->second;
            }
            r += t * term(Monomial::from_powers(std::move(kept)), Rational(1));
        }
        return r;
    }

    /// Replaces variables by Laurent monomials (e.g. X0 -> X1^-1).
    Poly substitute_monomials(const std::map<std::string, Monomial>& sub) const {
        Poly r;
        for (const auto& [m, c] : terms_) {
            Monomial out;
            for (const auto& [v, e] : m.powers()) {
                auto it = sub.find(v);
                out = out * (it == sub.end() ? Monomial::variable(v, e) : it->second.pow(e));
            }
            r.add_term(out, c);
        }
        return r;
    }

    Poly rename(const std::map<std::string, std::string>& names) const {
        std::map<std::string, Monomial> sub;
        for (const auto& [from, to] : names) sub.emplace(from, Monomial::variable(to));
        return substitute_monomials(sub);
    }

    /// Writes f = sum_k c_k * v^k and returns the coefficients c_k (k >= 0).
    std::vector<Poly> coefficients_in(const std::string& v) const {
        if (min_degree_in(v) < 0) throw std::invalid_argument("negative power of " + v);
        std::vector<Poly> cs(static_cast<std::size_t>(degree_in(v)) + 1);
        for (const auto& [m, c] : terms_) {
            int e = m.exponent(v);
            std::vector<Monomial::Power> rest;
            for (const auto& p : m.powers())
                if (p.first != v) rest.push_back(p);
            cs[static_cast<std::size_t>(e)].add_term(Monomial::from_powers(rest), c);
        }
        return cs;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

private:
    TermMap terms_;
};

namespace detail {

inline std::string monomial_string(const Monomial& m) {
    std::string s;
    for (const auto& [v, e] : m.powers()) {
        if (!s.empty()) s += "*";
        s += v;
        if (e < 0)
            s += "^(" + std::to_string(e) + ")";
        else if (e != 1)
            s += "^" + std::to_string(e);
    }
    return s;
}

}  // namespace detail

/// Printing order: descending total degree, then descending monomial.
/// The output reparses to an equal polynomial.
inline std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::vector<std::pair<Monomial, Rational>> ts(p.terms().begin(), p.terms().end());
    std::stable_sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
        int da = a.first.total_degree(), db = b.first.total_degree();
        if (da != db) return da > db;
        return a.first > b.first;
    });
    std::string out;
    bool first = true;
    for (const auto& [m, c] : ts) {
        Rational mag = abs(c);
        bool neg = c < 0;
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        first = false;
        if (m.is_one()) {
            out += mag.get_str();
        } else {
            if (mag != 1) out += mag.get_str() + "*";
            out += detail::monomial_string(m);
        }
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << to_string(p); }

/// A quotient num/den of polynomials, den != 0.
struct RatFun {
    Poly num;
    Poly den = Poly(1);
};

/// f with variables replaced by rational functions, as a single fraction.
inline RatFun substitute_rational(const Poly& f, const std::map<std::string, RatFun>& sub) {
    std::map<std::string, int> top;
    for (const auto& [v, rf] : sub) {
        (void)rf;
        int d = f.degree_in(v);
        if (f.min_degree_in(v) < 0) throw std::invalid_argument("Laurent power of dependent variable " + v);
        if (d > 0) top[v] = d;
    }
    RatFun out;
    out.num = Poly();
    out.den = Poly(1);
    for (const auto& [v, d] : top) out.den *= sub.at(v).den.pow(static_cast<unsigned>(d));
    std::map<std::pair<std::string, int>, Poly> num_pows, den_pows;
    auto cached = [](std::map<std::pair<std::string, int>, Poly>& c, const std::string& v, int e, const Poly& base) {
        auto key = std::make_pair(v, e);
        auto it = c.find(key);
        if (it == c.end()) it = c.emplace(key, base.pow(static_cast<unsigned>(e))).first;
        return it->second;
    };
    for (const auto& [m, c] : f.terms()) {
        Poly t(c);
        std::vector<Monomial::Power> kept;
        for (const auto& [v, e] : m.powers()) {
            if (!sub.count(v)) kept.emplace_back(v, e);
        }
        t = t * Poly::term(Monomial::from_powers(kept), Rational(1));
        for (const auto& [v, d] : top) {
            int e = m.exponent(v);
            const RatFun& rf = sub.at(v);
            if (e > 0) t *= cached(num_pows, v, e, rf.num);
            if (d - e > 0) t *= cached(den_pows, v, d - e, rf.den);
        }
        out.num += t;
    }
    return out;
}

}  // namespace berkring
