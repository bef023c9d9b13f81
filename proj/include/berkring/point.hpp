#pragma once

// Points of the Berkovich spectrum of Z (archimedean or trivial norm) and
// fiber points over them for polynomial algebras.
//
// Normalizations: |n|_eps = |n|_inf^eps with eps in (0, 1]; the p-adic
// branch is |n| = p^(-eps * v_p(n)) with eps in (0, inf); Residue(p) is its
// eps -> inf limit (0 on pZ, 1 elsewhere).

#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "berkring/base_ring.hpp"
#include "berkring/poly.hpp"
#include "berkring/presentation.hpp"
#include "berkring/real.hpp"

namespace berkring {

class SpectrumPoint {
public:
    enum class Kind { trivial, archimedean, padic, residue };

    static SpectrumPoint trivial() { return SpectrumPoint(Kind::trivial, 0, Rational(0)); }
    static SpectrumPoint archimedean(const Rational& eps) {
        if (eps <= 0 || eps > 1) throw std::invalid_argument("archimedean eps must lie in (0, 1]");
        return SpectrumPoint(Kind::archimedean, 0, eps);
    }
    static SpectrumPoint padic(unsigned long p, const Rational& eps) {
        if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
        if (eps <= 0) throw std::invalid_argument("p-adic eps must be positive");
        return SpectrumPoint(Kind::padic, p, eps);
    }
    static SpectrumPoint residue(unsigned long p) {
        if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
        return SpectrumPoint(Kind::residue, p, Rational(0));
    }

    Kind kind() const { return kind_; }
    unsigned long prime() const { return p_; }
    const Rational& eps() const { return eps_; }
    bool archimedean_kind() const { return kind_ == Kind::archimedean; }

    /// Points of M(R) must be bounded by the norm of R.
    bool allowed_over(BaseRing r) const {
        switch (kind_) {
            case Kind::trivial: return true;
            case Kind::archimedean: return r == BaseRing::Z_arch;
            case Kind::padic:
            case Kind::residue: return r != BaseRing::Q_triv;
        }
        return false;
    }

    /// |q| at this point, if defined (Residue(p) is undefined on 1/p).
    std::optional<Real> try_norm(const Rational& q) const {
        if (q == 0) return Real(0);
        switch (kind_) {
            case Kind::trivial: return Real(1);
            case Kind::archimedean: return real_pow(Real(abs(q)), eps_);
            case Kind::padic: {
                long v = valuation(q, p_);
                if (v == 0) return Real(1);
                Rational t = eps_ * Rational(-v);
                return real_pow(Real(Rational(static_cast<long>(p_))), t);
            }
            case Kind::residue: {
                long v = valuation(q, p_);
                if (v < 0) return std::nullopt;
                return v > 0 ? Real(0) : Real(1);
            }
        }
        return std::nullopt;
    }

    Real norm(const Rational& q) const {
        auto v = try_norm(q);
        if (!v) throw std::domain_error(q.get_str() + " is not integral at " + describe());
        return *v;
    }

    std::string describe() const {
        switch (kind_) {
            case Kind::trivial: return "trivial";
            case Kind::archimedean: return "archimedean(" + eps_.get_str() + ")";
            case Kind::padic: return "padic(" + std::to_string(p_) + "," + eps_.get_str() + ")";
            case Kind::residue: return "residue(" + std::to_string(p_) + ")";
        }
        return "?";
    }

    bool operator==(const SpectrumPoint&) const = default;

private:
    SpectrumPoint(Kind k, unsigned long p, Rational eps) : kind_(k), p_(p), eps_(std::move(eps)) {}
    Kind kind_;
    unsigned long p_;
    Rational eps_;
};

/// A complex coordinate (archimedean points only).
struct ComplexCoord {
    std::complex<double> z;
};
/// A type-1 point T = center.
struct CenterCoord {
    Rational center;
};
/// The Gauss point of the disc |T - center| <= radius.
struct GaussCoord {
    Rational center;
    Rational radius;
};
using Coord = std::variant<ComplexCoord, CenterCoord, GaussCoord>;

inline std::string describe(const Coord& c) {
    if (auto* z = std::get_if<ComplexCoord>(&c)) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "z=%.12g%+.12gi", z->z.real(), z->z.imag());
        return buf;
    }
    if (auto* a = std::get_if<CenterCoord>(&c)) return "a=" + a->center.get_str();
    const auto& g = std::get<GaussCoord>(c);
    return "gauss(" + g.center.get_str() + "," + g.radius.get_str() + ")";
}

/// A point of M(A) for a polynomial algebra A: a base point, coordinates for
/// the free variables, and the dependent variables as rational functions of
/// the free ones.
struct FiberPoint {
    SpectrumPoint base = SpectrumPoint::trivial();
    std::map<std::string, Coord> coords;
    std::map<std::string, RatFun> dependent;
};

inline std::string describe(const FiberPoint& x) {
    std::string s = x.base.describe();
    for (const auto& [v, c] : x.coords) s += " " + v + ":" + describe(c);
    return s;
}

class MissingCoordinate : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::complex<double> complex_value(const Poly& f, const std::map<std::string, Coord>& coords) {
    std::map<std::string, std::complex<double>> zs;
    for (const auto& v : f.variables()) {
        auto it = coords.find(v);
        if (it == coords.end()) throw MissingCoordinate("no coordinate for variable " + v);
        auto* z = std::get_if<ComplexCoord>(&it->second);
        if (!z) throw std::invalid_argument("archimedean point needs complex coordinates");
        zs[v] = z->z;
    }
    std::complex<double> acc = 0;
    for (const auto& [m, c] : f.terms()) {
        std::complex<double> t = c.get_d();
        for (const auto& [v, e] : m.powers()) t *= std::pow(zs[v], e);
        acc += t;
    }
    return acc;
}

// |f(x)| on free coordinates at a non-archimedean point: substitute the
// type-1 coordinates, expand around Gauss centers, take the max over terms.
inline Real nonarch_value(const Poly& f, const SpectrumPoint& base, const std::map<std::string, Coord>& coords) {
    std::map<std::string, Poly> centers, shifts;
    std::map<std::string, Rational> radii;
    for (const auto& v : f.variables()) {
        auto it = coords.find(v);
        if (it == coords.end()) throw MissingCoordinate("no coordinate for variable " + v);
        if (auto* a = std::get_if<CenterCoord>(&it->second)) {
            centers[v] = Poly(a->center);
        } else if (auto* g = std::get_if<GaussCoord>(&it->second)) {
            if (g->center != 0) shifts[v] = Poly::variable(v) + Poly(g->center);
            radii[v] = g->radius;
        } else {
            throw std::invalid_argument("complex coordinate at a non-archimedean point");
        }
    }
    Poly g = f;
    if (!centers.empty()) {
        if (f.is_laurent()) {
            // Laurent powers of type-1 coordinates: substitute monomial by monomial.
            Poly r;
            for (const auto& [m, c] : f.terms()) {
                Rational k = c;
                std::vector<Monomial::Power> rest;
                for (const auto& [v, e] : m.powers()) {
                    auto it = centers.find(v);
                    if (it == centers.end())
                        rest.emplace_back(v, e);
                    else
                        k *= pow(it->second.constant_term(), e);
                }
                r.add_term(Monomial::from_powers(rest), k);
            }
            g = r;
        } else {
            g = g.substitute(centers);
        }
    }
    if (!shifts.empty()) g = g.substitute(shifts);
    Real best(0);
    for (const auto& [m, c] : g.terms()) {
        Real t = base.norm(c);
        for (const auto& [v, e] : m.powers()) t = t * Real(pow(radii.at(v), e));
        best = max(best, t);
    }
    return best;
}

inline Real free_value(const Poly& f, const FiberPoint& x) {
    if (f.is_zero()) return Real(0);
    if (x.base.archimedean_kind()) {
        double v = std::abs(complex_value(f, x.coords));
        if (x.base.eps() == 1) return Real::approximate(v);
        return Real::approximate(v == 0.0 ? 0.0 : std::pow(v, x.base.eps().get_d()));
    }
    return nonarch_value(f, x.base, x.coords);
}

}  // namespace detail

/// |f(x)|. Dependent variables are substituted first, giving |N(x)| / |D(x)|.
inline Real eval_point(const Poly& f, const FiberPoint& x) {
    bool uses_dependent = false;
    for (const auto& v : f.variables()) uses_dependent = uses_dependent || x.dependent.count(v);
    if (!uses_dependent) return detail::free_value(f, x);
    RatFun q = substitute_rational(f, x.dependent);
    Real d = detail::free_value(q.den, x);
    if (d.is_exact() ? d.exact() == 0 : d.value() == 0.0)
        throw std::domain_error("dependent variable has a pole at " + describe(x));
    return detail::free_value(q.num, x) / d;
}

/// Whether x is a point of M(A): coordinates respect the radii, dependent
/// variables are finite and within their radii, and the relations vanish.
inline bool in_spectrum(const FiberPoint& x, const AffinoidPresentation& a) {
    if (!x.base.allowed_over(a.base())) return false;
    try {
        for (const auto& v : a.vars()) {
            auto it = x.coords.find(v.name);
            if (it != x.coords.end()) {
                if (auto* z = std::get_if<ComplexCoord>(&it->second)) {
                    if (!x.base.archimedean_kind()) return false;
                    double r = std::pow(std::abs(z->z), x.base.eps().get_d());
                    if (r > v.radius.get_d() * (1 + 1e-9)) return false;
                } else if (auto* c = std::get_if<CenterCoord>(&it->second)) {
                    if (x.base.archimedean_kind()) return false;
                    auto n = x.base.try_norm(c->center);
                    if (!n || !leq(*n, Real(v.radius))) return false;
                } else {
                    const auto& g = std::get<GaussCoord>(it->second);
                    if (x.base.archimedean_kind() || g.radius <= 0) return false;
                    auto n = x.base.try_norm(g.center);
                    if (!n || !leq(*n, Real(v.radius)) || g.radius > v.radius) return false;
                }
            } else if (x.dependent.count(v.name)) {
                const RatFun& rf = x.dependent.at(v.name);
                Real d = detail::free_value(rf.den, x);
                if (d.is_exact() ? d.exact() == 0 : d.value() <= 1e-300) return false;
                if (!leq(eval_point(Poly::variable(v.name), x), Real(v.radius))) return false;
            } else {
                return false;
            }
        }
        for (const auto& r : a.relations()) {
            Real v = eval_point(r, x);
            if (v.is_exact() ? v.exact() != 0 : v.value() > 1e-9) return false;
        }
    } catch (const std::domain_error&) {
        return false;
    }
    return true;
}

}  // namespace berkring
