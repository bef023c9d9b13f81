#pragma once

// Exact rationals (GMP) and a real number that stays exact as long as the
// computation allows it.

#include <gmpxx.h>

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace berkring {

using Integer = mpz_class;
using Rational = mpq_class;

/// Relative slack used whenever at least one side of a comparison is inexact.
inline constexpr double kRelativeSlack = 1e-12;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "p", "-p/q" or a decimal literal such as "0.125".
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto trim = [](std::string& t) {
        auto b = t.find_first_not_of(" \t\n");
        auto e = t.find_last_not_of(" \t\n");
        t = (b == std::string::npos) ? std::string() : t.substr(b, e - b + 1);
    };
    trim(s);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
        bool neg = !whole.empty() && whole[0] == '-';
        if (neg || (!whole.empty() && whole[0] == '+')) whole = whole.substr(1);
        if (whole.empty()) whole = "0";
        if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos ||
            whole.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad decimal literal '" + s + "'");
        Integer num(whole + frac, 10);
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        Rational q = make_rational(num, den);
        return neg ? Rational(-q) : q;
    }
    auto slash = s.find('/');
    std::string a = s.substr(0, slash);
    std::string b = slash == std::string::npos ? "1" : s.substr(slash + 1);
    auto ok = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        return i < t.size() && t.find_first_not_of("0123456789", i) == std::string::npos;
    };
    if (!ok(a) || !ok(b)) throw std::invalid_argument("bad rational literal '" + s + "'");
    if (a[0] == '+') a = a.substr(1);
    if (b[0] == '+') b = b.substr(1);
    return make_rational(Integer(a, 10), Integer(b, 10));
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

/// q^k for any integer k (k < 0 requires q != 0).
inline Rational pow(const Rational& q, long k) {
    if (k < 0) {
        if (q == 0) throw std::domain_error("negative power of zero");
        return pow(Rational(1 / q), -k);
    }
    Integer n, d;
    mpz_pow_ui(n.get_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(k));
    mpz_pow_ui(d.get_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(k));
    return make_rational(n, d);
}

/// Exact k-th root of a nonnegative rational when it exists.
inline std::optional<Rational> exact_root(const Rational& q, unsigned long k) {
    if (q < 0 || k == 0) return std::nullopt;
    Integer rn, rd;
    if (mpz_root(rn.get_mpz_t(), q.get_num_mpz_t(), k) == 0) return std::nullopt;
    if (mpz_root(rd.get_mpz_t(), q.get_den_mpz_t(), k) == 0) return std::nullopt;
    return make_rational(rn, rd);
}

/// p-adic valuation of a nonzero rational.
inline long valuation(const Rational& q, unsigned long p) {
    if (q == 0) throw std::domain_error("valuation of zero");
    Integer n = q.get_num(), d = q.get_den();
    long v = 0;
    if (n < 0) n = -n;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        ++v;
    }
    while (mpz_divisible_ui_p(d.get_mpz_t(), p)) {
        mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), p);
        --v;
    }
    return v;
}

inline bool is_prime(unsigned long p) {
    if (p < 2) return false;
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

/// Natural log of |q| for a nonzero rational, safe for huge numerators.
inline double log_abs(const Rational& q) {
    long en = 0, ed = 0;
    double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
    double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
    return std::log(std::fabs(mn)) - std::log(md) + static_cast<double>(en - ed) * std::log(2.0);
}

/// A nonnegative-or-signed real carrying an exact rational when one is known.
class Real {
public:
    Real() : exact_(Rational(0)), approx_(0.0) {}
    Real(const Rational& q) : exact_(q), approx_(q.get_d()) {}  // NOLINT(implicit)
    Real(long v) : Real(Rational(v)) {}                          // NOLINT(implicit)
    Real(int v) : Real(Rational(v)) {}                           // NOLINT(implicit)

    static Real approximate(double v) {
        Real r;
        r.exact_.reset();
        r.approx_ = v;
        return r;
    }

    bool is_exact() const { return exact_.has_value(); }
    const Rational& exact() const {
        if (!exact_) throw std::logic_error("Real has no exact value");
        return *exact_;
    }
    const std::optional<Rational>& maybe_exact() const { return exact_; }
    double value() const { return approx_; }

    std::string str() const { return exact_ ? exact_->get_str() : std::to_string(approx_); }

    friend Real operator+(const Real& a, const Real& b) {
        if (a.exact_ && b.exact_) return Real(Rational(*a.exact_ + *b.exact_));
        return approximate(a.approx_ + b.approx_);
    }
    friend Real operator-(const Real& a, const Real& b) {
        if (a.exact_ && b.exact_) return Real(Rational(*a.exact_ - *b.exact_));
        return approximate(a.approx_ - b.approx_);
    }
    friend Real operator*(const Real& a, const Real& b) {
        if (a.exact_ && b.exact_) return Real(Rational(*a.exact_ * *b.exact_));
        // an exact zero annihilates even an approximate factor
        if ((a.exact_ && *a.exact_ == 0) || (b.exact_ && *b.exact_ == 0)) return Real(0);
        return approximate(a.approx_ * b.approx_);
    }
    friend Real operator/(const Real& a, const Real& b) {
        if (b.exact_ && *b.exact_ == 0) throw std::domain_error("division by exact zero");
        if (a.exact_ && b.exact_) return Real(Rational(*a.exact_ / *b.exact_));
        if (a.exact_ && *a.exact_ == 0) return Real(0);
        return approximate(a.approx_ / b.approx_);
    }

private:
    std::optional<Rational> exact_;
    double approx_;
};

/// a <= b; exact if both sides are exact, otherwise with kRelativeSlack.
inline bool leq(const Real& a, const Real& b) {
    if (a.is_exact() && b.is_exact()) return a.exact() <= b.exact();
    double x = a.value(), y = b.value();
    double scale = std::max({1.0, std::fabs(x), std::fabs(y)});
    return x <= y + kRelativeSlack * scale;
}
inline bool less(const Real& a, const Real& b) { return !leq(b, a); }
inline bool same(const Real& a, const Real& b) { return leq(a, b) && leq(b, a); }

inline Real max(const Real& a, const Real& b) {
    if (a.is_exact() && b.is_exact()) return a.exact() >= b.exact() ? a : b;
    return a.value() >= b.value() ? a : b;
}

/// |a|^t for a nonnegative real; exact when t is a nonnegative integer or the
/// root is rational.
inline Real real_pow(const Real& a, const Rational& t) {
    if (a.is_exact()) {
        const Rational& q = a.exact();
        if (q == 0) return t > 0 ? Real(0) : Real(1);
        if (q == 1) return Real(1);
        if (t.get_den() == 1 && mpz_fits_slong_p(t.get_num_mpz_t()))
            return Real(pow(q, t.get_num().get_si()));
        if (q > 0 && mpz_fits_slong_p(t.get_num_mpz_t()) && mpz_fits_ulong_p(t.get_den_mpz_t())) {
            if (auto r = exact_root(q, t.get_den().get_ui())) return Real(pow(*r, t.get_num().get_si()));
        }
    }
    if (a.value() == 0.0) return Real::approximate(0.0);
    return Real::approximate(std::pow(a.value(), t.get_d()));
}

/// A norm value that may be +infinity (operator norms of unbounded maps).
class NormBound {
public:
    NormBound() = default;
    NormBound(const Real& v) : finite_(v) {}  // NOLINT(implicit)
    static NormBound infinity() {
        NormBound b;
        b.finite_.reset();
        return b;
    }
    bool is_infinite() const { return !finite_.has_value(); }
    const Real& value() const {
        if (!finite_) throw std::logic_error("infinite norm has no finite value");
        return *finite_;
    }
    double as_double() const {
        return finite_ ? finite_->value() : std::numeric_limits<double>::infinity();
    }
    std::string str() const { return finite_ ? finite_->str() : std::string("inf"); }

private:
    std::optional<Real> finite_ = Real(0);
};

inline bool leq(const NormBound& a, const Real& b) { return !a.is_infinite() && leq(a.value(), b); }

}  // namespace berkring
