#pragma once

// Rational domains: their algebras, membership of spectrum points,
// unit-ideal validation, base change and the P^1 chart transition.

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "berkring/groebner.hpp"
#include "berkring/point.hpp"
#include "berkring/presentation.hpp"
#include "berkring/seminorm.hpp"
#include "berkring/spectrum.hpp"

namespace berkring {

/// The radius family nu_k = rho * (1 + 2^-k), k = 0..K, of an overconvergent
/// algebra R{rho^-1 T}^dagger; each nu_k strictly dominates rho.
struct DaggerFamily {
    Radii rho;
    std::vector<Radii> schedule;
};

inline DaggerFamily dagger_family(const Radii& rho, int K) {
    if (K < 0) throw std::invalid_argument("K must be >= 0");
    DaggerFamily fam{rho, {}};
    for (int k = 0; k <= K; ++k) {
        Radii nu;
        Rational factor = 1 + pow(Rational(2), -k);
        for (const auto& [v, r] : rho) nu.emplace(v, r * factor);
        fam.schedule.push_back(std::move(nu));
    }
    return fam;
}

/// l1 norms of f along the radius family (non-increasing in k).
inline std::vector<Real> dagger_norms(const Poly& f, const DaggerFamily& fam, BaseRing base) {
    std::vector<Real> out;
    for (const auto& nu : fam.schedule) out.push_back(l1_norm(f, nu, base));
    return out;
}

struct DomainPair {
    Poly f;
    Rational rho = 1;
};

/// D(f_0, rho_0 | f_1, rho_1, ..., f_n, rho_n) =
///   { x : rho_0 |f_i(x)| <= rho_i |f_0(x)| for i = 1..n }.
/// `certificate`, when given, holds a_0..a_n with sum a_i f_i = 1 in the
/// parent (optionally followed by multipliers of the parent's relations).
struct RationalDomainSpec {
    AffinoidPresentation parent;
    std::vector<DomainPair> pairs;
    std::optional<std::vector<Poly>> certificate;
    std::vector<std::string> names;  ///< optional names for the adjoined variables
};

enum class UnitIdeal { unit, not_unit, indeterminate };

inline std::string_view name(UnitIdeal u) {
    switch (u) {
        case UnitIdeal::unit: return "true";
        case UnitIdeal::not_unit: return "false";
        case UnitIdeal::indeterminate: return "INDETERMINATE";
    }
    return "?";
}

class UnitIdealError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Whether fs generate the unit ideal of the parent algebra. A certificate is
/// checked exactly and throws if wrong. Without one, Q-based algebras are
/// decided by a Groebner basis; Z-based ones are decided only when a unit
/// constant is among fs (unit) or the ideal is proper even over Q (not unit).
inline UnitIdeal validate_unit_ideal(const std::vector<Poly>& fs, const AffinoidPresentation& parent,
                                     const std::optional<std::vector<Poly>>& certificate = std::nullopt) {
    for (const auto& f : fs) parent.check_element(f);
    const auto& rels = parent.relations();
    if (certificate) {
        const auto& c = *certificate;
        if (c.size() != fs.size() && c.size() != fs.size() + rels.size())
            throw std::invalid_argument("certificate length must match the generators");
        Poly s(-1);
        for (std::size_t i = 0; i < fs.size(); ++i) s += c[i] * fs[i];
        for (std::size_t k = fs.size(); k < c.size(); ++k) s += c[k] * rels[k - fs.size()];
        for (const auto& a : c)
            if (!a.in_ring(parent.base())) throw std::invalid_argument("certificate coefficients outside the base ring");
        bool ok = s.is_zero();
        if (!ok && parent.base() == BaseRing::Q_triv && !rels.empty())
            ok = IdealBasis(variable_order(parent.var_names(), rels), rels).contains(s);
        if (!ok) throw UnitIdealError("certificate does not certify the unit ideal");
        return UnitIdeal::unit;
    }
    if (!integral_coefficients(parent.base())) {
        std::vector<Poly> gens = fs;
        gens.insert(gens.end(), rels.begin(), rels.end());
        return IdealBasis(variable_order(parent.var_names(), gens), gens).is_unit() ? UnitIdeal::unit
                                                                                   : UnitIdeal::not_unit;
    }
    for (const auto& f : fs)
        if (f.is_constant() && abs(f.constant_term()) == 1) return UnitIdeal::unit;
    std::vector<Poly> gens = fs;
    gens.insert(gens.end(), rels.begin(), rels.end());
    if (!IdealBasis(variable_order(parent.var_names(), gens), gens).is_unit()) return UnitIdeal::not_unit;
    return UnitIdeal::indeterminate;
}

/// A(rho_1/rho_0)^-1 T_1, ..., (rho_n/rho_0)^-1 T_n) / (f_0 T_i - f_i): adjoins
/// n variables, inherits the dagger flag. `new_names` receives the adjoined
/// variable names.
inline AffinoidPresentation rational_domain_algebra(const RationalDomainSpec& d,
                                                    std::vector<std::string>* new_names = nullptr) {
    if (d.pairs.empty()) throw std::invalid_argument("a rational domain needs at least f_0");
    std::vector<Poly> fs;
    for (const auto& p : d.pairs) {
        if (p.rho <= 0) throw std::invalid_argument("radii must be positive");
        fs.push_back(p.f);
    }
    UnitIdeal u = validate_unit_ideal(fs, d.parent, d.certificate);
    if (u != UnitIdeal::unit)
        throw UnitIdealError(std::string("generators are not certified to be the unit ideal (") +
                             std::string(name(u)) + ")");
    const std::size_t n = d.pairs.size() - 1;
    if (!d.names.empty() && d.names.size() != n) throw std::invalid_argument("one name per adjoined variable");
    std::vector<Variable> vars;
    std::vector<Poly> rels;
    std::set<std::string> taken;
    for (std::size_t i = 1; i <= n; ++i) {
        std::string stem = !d.names.empty() ? d.names[i - 1] : (n == 1 ? "T" : "T" + std::to_string(i));
        std::string v = d.parent.fresh_name(stem, taken);
        taken.insert(v);
        vars.push_back({v, d.pairs[i].rho / d.pairs[0].rho});
        rels.push_back(d.pairs[0].f * Poly::variable(v) - d.pairs[i].f);
    }
    if (new_names) {
        new_names->clear();
        for (const auto& v : vars) new_names->push_back(v.name);
    }
    return d.parent.extended(vars, rels);
}

/// rho_0 |f_i(x)| <= rho_i |f_0(x)| for all i >= 1 (non-strict, exact on
/// exact values).
inline bool domain_membership(const FiberPoint& x, const RationalDomainSpec& d) {
    if (d.pairs.empty()) throw std::invalid_argument("empty rational domain");
    Real f0 = eval_point(d.pairs[0].f, x);
    for (std::size_t i = 1; i < d.pairs.size(); ++i) {
        Real lhs = Real(d.pairs[0].rho) * eval_point(d.pairs[i].f, x);
        Real rhs = Real(d.pairs[i].rho) * f0;
        if (!leq(lhs, rhs)) return false;
    }
    return true;
}

/// The same presentation over another base ring along Z -> Q or
/// Z_arch -> Z_triv.
inline AffinoidPresentation base_change(const AffinoidPresentation& a, BaseRing target) {
    if (!has_coefficient_map(a.base(), target))
        throw std::invalid_argument(std::string("no coefficient map ") + std::string(name(a.base())) + " -> " +
                                    std::string(name(target)));
    return a.with_base(target);
}

inline RationalDomainSpec base_change(const RationalDomainSpec& d, BaseRing target) {
    RationalDomainSpec out = d;
    out.parent = base_change(d.parent, target);
    return out;
}

// ---------------------------------------------------------------------------
// Chart transition X0 -> 1/X1 on the annulus |X| = 1

struct ChartSample {
    FiberPoint point;    ///< in the X0 chart
    FiberPoint matched;  ///< in the X1 chart
    double lhs = 0.0;
    double rhs = 0.0;
};

struct ChartReport {
    Poly transformed;  ///< f(1/X1)
    std::vector<ChartSample> samples;
    double max_discrepancy = 0.0;
    bool ok(double tol = 1e-9) const { return max_discrepancy < tol; }
};

/// Evaluates f at each annulus sample of the X0 chart and f(1/X1) at the
/// matching point of the X1 chart.
inline ChartReport chart_isometry_check(const Poly& f, const std::vector<FiberPoint>& samples,
                                        const std::string& x0 = "X0", const std::string& x1 = "X1") {
    for (const auto& v : f.variables())
        if (v != x0) throw std::invalid_argument("chart function may only involve " + x0);
    ChartReport rep;
    rep.transformed = f.substitute_monomials({{x0, Monomial::variable(x1, -1)}});
    for (const auto& x : samples) {
        auto it = x.coords.find(x0);
        if (it == x.coords.end()) throw MissingCoordinate("sample has no " + x0 + " coordinate");
        FiberPoint y;
        y.base = x.base;
        if (auto* z = std::get_if<ComplexCoord>(&it->second)) {
            if (std::fabs(std::abs(z->z) - 1.0) > 1e-9) throw std::invalid_argument("sample outside the annulus |X| = 1");
            y.coords[x1] = ComplexCoord{1.0 / z->z};
        } else if (auto* a = std::get_if<CenterCoord>(&it->second)) {
            auto n = x.base.try_norm(a->center);
            if (!n || !same(*n, Real(1))) throw std::invalid_argument("sample outside the annulus |X| = 1");
            y.coords[x1] = CenterCoord{Rational(1 / a->center)};
        } else {
            const auto& g = std::get<GaussCoord>(it->second);
            if (g.center != 0 || g.radius != 1) throw std::invalid_argument("sample outside the annulus |X| = 1");
            y.coords[x1] = GaussCoord{Rational(0), Rational(1)};
        }
        double lhs = eval_point(f, x).value();
        double rhs = eval_point(rep.transformed, y).value();
        rep.max_discrepancy = std::max(rep.max_discrepancy, std::fabs(lhs - rhs) / std::max(1.0, std::fabs(lhs)));
        rep.samples.push_back({x, y, lhs, rhs});
    }
    return rep;
}

/// Annulus samples: `torus` archimedean points per eps in the grid, plus the
/// Gauss point and the unit centers +-1 on non-archimedean branches.
inline std::vector<FiberPoint> annulus_samples(BaseRing base, std::size_t torus, const SamplingDensity& d,
                                               const std::string& x0 = "X0") {
    std::vector<FiberPoint> out;
    for (const auto& b : sample_base_points(base, d)) {
        if (b.archimedean_kind()) {
            for (std::size_t k = 0; k < torus; ++k) {
                double th = 2 * std::numbers::pi * (static_cast<double>(k) + 0.5) / static_cast<double>(torus);
                out.push_back({b, {{x0, ComplexCoord{std::polar(1.0, th)}}}, {}});
            }
            continue;
        }
        out.push_back({b, {{x0, GaussCoord{Rational(0), Rational(1)}}}, {}});
        for (long c : {1L, -1L}) out.push_back({b, {{x0, CenterCoord{Rational(c)}}}, {}});
    }
    return out;
}

}  // namespace berkring
