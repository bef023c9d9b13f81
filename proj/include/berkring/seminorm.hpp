#pragma once

// Seminorms on polynomial rings over the base rings and the bounds derived
// from them. Also holds the axiom checker used by the property tests.

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "berkring/base_ring.hpp"
#include "berkring/graded.hpp"
#include "berkring/groebner.hpp"
#include "berkring/poly.hpp"
#include "berkring/real.hpp"

namespace berkring {

/// ||f||_1 = sum_alpha |a_alpha| * rho^alpha.
inline Real l1_norm(const Poly& f, const Radii& radii, BaseRing base) {
    Real s(0);
    for (const auto& [m, c] : f.terms()) s = s + base_norm_eval(base, c) * monomial_grading(m, radii);
    return s;
}

/// max_alpha |a_alpha| * rho^alpha. Over a trivially valued base this is the
/// Gauss norm, which is multiplicative.
inline Real linf_norm(const Poly& f, const Radii& radii, BaseRing base) {
    Real s(0);
    for (const auto& [m, c] : f.terms()) s = max(s, base_norm_eval(base, c) * monomial_grading(m, radii));
    return s;
}

// ---------------------------------------------------------------------------
// Uniformization |a|_u = lim_n |a^n|^(1/n)

struct UniformizationReport {
    std::vector<double> roots;                  ///< roots[n-1] = |a^n|^(1/n)
    std::vector<std::pair<int, double>> dyadic;  ///< (n, root) for n = 1, 2, 4, ...
    double estimate = 0.0;                      ///< root at n = n_max
    bool dyadic_monotone = true;
};

namespace detail {
inline double log_of(const Real& v) {
    if (v.is_exact()) return v.exact() == 0 ? -INFINITY : log_abs(v.exact());
    return v.value() == 0.0 ? -INFINITY : std::log(v.value());
}
}  // namespace detail

/// Powers a, a^2, ..., a^n_max with `mul`, norms with `norm` (returning Real);
/// `check` may throw when an intermediate power grows past a budget.
template <class T, class Mul, class Norm, class Check>
UniformizationReport uniformization_estimate(const T& a, int n_max, Mul mul, Norm norm, Check check) {
    if (n_max < 4) throw std::invalid_argument("uniformization needs n_max >= 4");
    UniformizationReport rep;
    T power = a;
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) power = mul(power, a);
        check(power);
        double lg = detail::log_of(norm(power));
        rep.roots.push_back(std::isinf(lg) ? 0.0 : std::exp(lg / n));
    }
    for (int n = 1; n <= n_max; n *= 2) rep.dyadic.emplace_back(n, rep.roots[static_cast<std::size_t>(n - 1)]);
    for (std::size_t k = 1; k < rep.dyadic.size(); ++k) {
        double prev = rep.dyadic[k - 1].second, cur = rep.dyadic[k].second;
        if (cur > prev * (1 + kRelativeSlack) + 1e-300) rep.dyadic_monotone = false;
    }
    rep.estimate = rep.roots.back();
    return rep;
}

inline constexpr std::size_t kDefaultBitBudget = 1u << 16;

inline auto bit_budget_check(std::size_t budget) {
    return [budget](const Poly& p) {
        if (p.coefficient_bits() > budget)
            throw ResourceLimitError("coefficient size exceeds bit budget of " + std::to_string(budget));
    };
}

/// Uniformization of the l1 norm on R[vars] at the given radii.
inline UniformizationReport uniformization_estimate(const Poly& a, const Radii& radii, BaseRing base, int n_max,
                                                    std::size_t bit_budget = kDefaultBitBudget) {
    return uniformization_estimate(
        a, n_max, [](const Poly& x, const Poly& y) { return x * y; },
        [&](const Poly& x) { return l1_norm(x, radii, base); }, bit_budget_check(bit_budget));
}

/// Uniformization of the l1 norm of normal forms in Q[vars]/I.
inline UniformizationReport uniformization_estimate(const Poly& a, const IdealBasis& ideal, const Radii& radii,
                                                    int n_max, std::size_t bit_budget = kDefaultBitBudget) {
    return uniformization_estimate(
        ideal.normal_form(a), n_max, [&](const Poly& x, const Poly& y) { return ideal.normal_form(x * y); },
        [&](const Poly& x) { return l1_norm(x, radii, BaseRing::Q_triv); }, bit_budget_check(bit_budget));
}

// ---------------------------------------------------------------------------
// Residue seminorm |x| = inf_{m in x + I} |m|

/// A quotient R[vars]/(relations) with the l1 norm at the given radii.
struct QuotientPresentation {
    BaseRing base = BaseRing::Z_arch;
    std::vector<std::string> vars;
    Radii radii;
    std::vector<Poly> relations;
};

/// Multipliers g_i range over polynomials of degree <= max_degree whose
/// coefficients are k / denominator with |k / denominator| <= max_coeff.
struct ResidueSearchBudget {
    int max_degree = 1;
    long max_coeff = 4;
    long denominator = 1;
    std::size_t max_candidates = 2'000'000;
};

enum class BoundKind { exact, upper_bound, sampled_estimate };

inline std::string_view name(BoundKind k) {
    switch (k) {
        case BoundKind::exact: return "EXACT";
        case BoundKind::upper_bound: return "UPPER_BOUND";
        case BoundKind::sampled_estimate: return "SAMPLED_ESTIMATE";
    }
    return "?";
}

struct ResidueBound {
    Real value;
    Poly representative;
    BoundKind kind = BoundKind::upper_bound;
    std::size_t explored = 0;
};

namespace detail {
inline void monomials_up_to(const std::vector<std::string>& vars, int max_degree, std::vector<Monomial>& out) {
    std::vector<int> e(vars.size(), 0);
    std::function<void(std::size_t, int)> walk = [&](std::size_t from, int deg) {
        std::vector<Monomial::Power> ps;
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (e[i]) ps.emplace_back(vars[i], e[i]);
        out.push_back(Monomial::from_powers(ps));
        if (deg == max_degree) return;
        for (std::size_t i = from; i < vars.size(); ++i) {
            ++e[i];
            walk(i, deg + 1);
            --e[i];
        }
    };
    walk(0, 0);
}
}  // namespace detail

/// min ||a + sum_i g_i rel_i||_1 over the search box; an upper bound for the
/// residue seminorm of the class of a.
inline ResidueBound residue_seminorm_bound(const QuotientPresentation& q, const Poly& a,
                                           const ResidueSearchBudget& budget) {
    if (budget.max_degree < 0 || budget.max_coeff < 0 || budget.denominator <= 0)
        throw std::invalid_argument("empty search box");
    if (!a.in_ring(q.base)) throw std::invalid_argument("element not over the base ring");
    if (integral_coefficients(q.base) && budget.denominator != 1)
        throw std::invalid_argument("fractional multipliers over an integral base");

    std::vector<Monomial> ms;
    detail::monomials_up_to(q.vars, budget.max_degree, ms);
    std::vector<Poly> shifts;
    for (const auto& r : q.relations)
        for (const auto& m : ms) shifts.push_back(r * Poly::term(m, Rational(1)));

    const long span = budget.max_coeff * budget.denominator;
    double count = std::pow(static_cast<double>(2 * span + 1), static_cast<double>(shifts.size()));
    if (count > static_cast<double>(budget.max_candidates))
        throw ResourceLimitError("residue search box has too many candidates");

    ResidueBound best{l1_norm(a, q.radii, q.base), a, BoundKind::upper_bound, 1};
    if (q.base == BaseRing::Q_triv && !q.relations.empty()) {
        IdealBasis I(variable_order(q.vars, q.relations), q.relations);
        Poly nf = I.normal_form(a);
        Real v = l1_norm(nf, q.radii, q.base);
        if (less(v, best.value)) best = {v, nf, BoundKind::upper_bound, 1};
    }
    std::vector<long> k(shifts.size(), -span);
    if (shifts.empty()) return best;
    while (true) {
        Poly cand = a;
        for (std::size_t i = 0; i < k.size(); ++i)
            if (k[i] != 0) cand += shifts[i].scaled(make_rational(k[i], budget.denominator));
        ++best.explored;
        Real v = l1_norm(cand, q.radii, q.base);
        if (less(v, best.value)) {
            best.value = v;
            best.representative = cand;
        }
        std::size_t i = 0;
        while (i < k.size() && k[i] == span) k[i++] = -span;
        if (i == k.size()) break;
        ++k[i];
    }
    return best;
}

// ---------------------------------------------------------------------------
// Projective tensor seminorm on R^(M) (x) R^(N)

struct ElementaryTensor {
    Rational coeff = 1;
    CoeffVector left;
    CoeffVector right;
};

struct TensorBound {
    Real value;
    BoundKind kind = BoundKind::upper_bound;
    std::string representation;  ///< which rewrite achieved the minimum
};

/// Minimum of sum_i |a_i| |m_i| |n_i| over the supplied representation and
/// a few local rewrites of it (merging equal left/right factors, full
/// expansion in the basis of M x N).
inline TensorBound projective_tensor_bound(const std::vector<ElementaryTensor>& t, const GradedSet& M,
                                           const GradedSet& N, BaseRing base) {
    auto cost = [&](const std::vector<ElementaryTensor>& rep) {
        Real s(0);
        for (const auto& e : rep) {
            if (e.coeff == 0) continue;
            s = s + base_norm_eval(base, e.coeff) * l1_norm(e.left, M, base) * l1_norm(e.right, N, base);
        }
        return s;
    };
    auto add_vec = [](const CoeffVector& a, const CoeffVector& b, const Rational& cb) {
        std::map<Label, Rational> m = a.entries();
        for (const auto& [l, c] : b.entries()) m[l] += cb * c;
        return CoeffVector(a.integral() && b.integral(), m);
    };
    auto scale_vec = [](const CoeffVector& a, const Rational& c) {
        std::map<Label, Rational> m;
        for (const auto& [l, x] : a.entries()) m[l] = x * c;
        return CoeffVector(a.integral() && c.get_den() == 1, m);
    };

    TensorBound best{cost(t), BoundKind::upper_bound, "given"};
    auto consider = [&](const std::vector<ElementaryTensor>& rep, const char* label) {
        Real c = cost(rep);
        if (less(c, best.value)) best = {c, BoundKind::upper_bound, label};
    };

    // merge terms sharing the left factor: a m(x)n + b m(x)n' = m (x) (a n + b n')
    {
        std::vector<ElementaryTensor> merged;
        for (const auto& e : t) {
            auto it = std::find_if(merged.begin(), merged.end(),
                                   [&](const ElementaryTensor& x) { return x.left.entries() == e.left.entries(); });
            if (it == merged.end())
                merged.push_back({Rational(1), e.left, scale_vec(e.right, e.coeff)});
            else
                it->right = add_vec(it->right, e.right, e.coeff);
        }
        consider(merged, "merged-left");
    }
    {
        std::vector<ElementaryTensor> merged;
        for (const auto& e : t) {
            auto it = std::find_if(merged.begin(), merged.end(),
                                   [&](const ElementaryTensor& x) { return x.right.entries() == e.right.entries(); });
            if (it == merged.end())
                merged.push_back({Rational(1), scale_vec(e.left, e.coeff), e.right});
            else
                it->left = add_vec(it->left, e.left, e.coeff);
        }
        consider(merged, "merged-right");
    }
    {
        std::map<std::pair<Label, Label>, Rational> coeffs;
        for (const auto& e : t)
            for (const auto& [x, a] : e.left.entries())
                for (const auto& [y, b] : e.right.entries()) coeffs[{x, y}] += e.coeff * a * b;
        std::vector<ElementaryTensor> expanded;
        for (const auto& [xy, c] : coeffs) {
            if (c == 0) continue;
            expanded.push_back({c, CoeffVector(true, {{xy.first, Rational(1)}}),
                                CoeffVector(true, {{xy.second, Rational(1)}})});
        }
        consider(expanded, "expanded");
    }
    return best;
}

// ---------------------------------------------------------------------------
// Axiom checks

struct AxiomViolation {
    std::string axiom;
    std::size_t first = 0;
    std::size_t second = 0;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct AxiomReport {
    std::size_t checked = 0;
    std::vector<AxiomViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks |a| >= 0, |0| = 0, |1| <= 1, |a + b| <= |a| + |b| and (when
/// `multiplicative`) |ab| <= |a||b| on consecutive sample pairs. `norm` must
/// return a Real; comparisons are exact when both sides are exact.
template <class T, class Norm>
AxiomReport seminorm_axiom_report(const Norm& norm, const std::vector<T>& samples, bool multiplicative = true,
                                  T zero = T(0), T one = T(1)) {
    AxiomReport rep;
    auto flag = [&](const char* axiom, std::size_t i, std::size_t j, const Real& lhs, const Real& rhs) {
        rep.violations.push_back({axiom, i, j, lhs.value(), rhs.value()});
    };
    Real z = norm(zero);
    if (!same(z, Real(0))) flag("zero", 0, 0, z, Real(0));
    if (multiplicative) {
        Real o = norm(one);
        if (!leq(o, Real(1))) flag("unit", 0, 0, o, Real(1));
    }
    std::vector<Real> values;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        values.push_back(norm(samples[i]));
        ++rep.checked;
        if (less(values[i], Real(0))) flag("nonnegative", i, i, values[i], Real(0));
    }
    const std::size_t n = samples.size();
    for (std::size_t i = 0; i + 1 < n || (n > 1 && i < n); ++i) {
        std::size_t j = (i + 1) % n;
        const Real& a = values[i];
        const Real& b = values[j];
        Real s = norm(samples[i] + samples[j]);
        if (!leq(s, a + b)) flag("triangle", i, j, s, a + b);
        if (multiplicative) {
            Real p = norm(samples[i] * samples[j]);
            if (!leq(p, a * b)) flag("submultiplicative", i, j, p, a * b);
        }
        rep.checked += 1;
    }
    return rep;
}

/// Module version: |a + b| <= |a| + |b| and |r a| <= |r| |a| for scalars r.
template <class T, class Norm, class Scale, class ScalarNorm, class S>
AxiomReport module_seminorm_axiom_report(const Norm& norm, const std::vector<T>& samples, const std::vector<S>& scalars,
                                         const Scale& scale, const ScalarNorm& scalar_norm, T zero = T()) {
    AxiomReport rep = seminorm_axiom_report(norm, samples, false, zero, zero);
    for (std::size_t i = 0; i < samples.size() && !scalars.empty(); ++i) {
        const S& r = scalars[i % scalars.size()];
        Real lhs = norm(scale(r, samples[i]));
        Real rhs = scalar_norm(r) * norm(samples[i]);
        if (!leq(lhs, rhs)) rep.violations.push_back({"scalar", i, i, lhs.value(), rhs.value()});
        ++rep.checked;
    }
    return rep;
}

}  // namespace berkring
