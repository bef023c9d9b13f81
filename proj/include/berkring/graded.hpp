#pragma once

// Finite R_+-graded sets, maps between them, tensor gradings, free-module
// norms and the rho-integer filtration predicate.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "berkring/base_ring.hpp"
#include "berkring/monomial.hpp"
#include "berkring/real.hpp"

namespace berkring {

using Label = std::string;

/// A finite set X with a grading |.|_X : X -> R_+.
class GradedSet {
public:
    GradedSet() = default;
    GradedSet(std::initializer_list<std::pair<Label, Real>> elements) {
        for (const auto& [l, g] : elements) insert(l, g);
    }
    explicit GradedSet(const std::vector<std::pair<Label, Real>>& elements) {
        for (const auto& [l, g] : elements) insert(l, g);
    }

    const std::vector<Label>& labels() const { return labels_; }
    std::size_t size() const { return labels_.size(); }
    bool contains(const Label& l) const { return grades_.count(l) != 0; }

    const Real& grade(const Label& l) const {
        auto it = grades_.find(l);
        if (it == grades_.end()) throw std::out_of_range("label '" + l + "' not in graded set");
        return it->second;
    }

private:
    void insert(const Label& l, const Real& g) {
        if (!std::isfinite(g.value()) || less(g, Real(0)))
            throw std::invalid_argument("grade of '" + l + "' must be finite and >= 0");
        if (!grades_.emplace(l, g).second) throw std::invalid_argument("duplicate label '" + l + "'");
        labels_.push_back(l);
    }

    std::vector<Label> labels_;
    std::map<Label, Real> grades_;
};

class GradedMap {
public:
    GradedMap(GradedSet source, GradedSet target, std::map<Label, Label> assignment)
        : source_(std::move(source)), target_(std::move(target)), assignment_(std::move(assignment)) {
        for (const auto& l : source_.labels()) {
            auto it = assignment_.find(l);
            if (it == assignment_.end()) throw std::invalid_argument("map undefined on '" + l + "'");
            if (!target_.contains(it->second))
                throw std::invalid_argument("image '" + it->second + "' is not a target label");
        }
        if (assignment_.size() != source_.size()) throw std::invalid_argument("assignment has labels outside the source");
    }

    const GradedSet& source() const { return source_; }
    const GradedSet& target() const { return target_; }
    const Label& operator()(const Label& x) const { return assignment_.at(x); }

private:
    GradedSet source_, target_;
    std::map<Label, Label> assignment_;
};

/// |f| = max_x |f(x)| / |x| with 0/0 = 0 and c/0 = +inf for c > 0.
inline NormBound operator_norm(const GradedMap& f) {
    Real best(0);
    for (const auto& x : f.source().labels()) {
        const Real& gx = f.source().grade(x);
        const Real& gy = f.target().grade(f(x));
        bool gx_zero = gx.is_exact() ? gx.exact() == 0 : gx.value() == 0.0;
        if (gx_zero) {
            bool gy_zero = gy.is_exact() ? gy.exact() == 0 : gy.value() == 0.0;
            if (!gy_zero) return NormBound::infinity();
            continue;
        }
        best = max(best, gy / gx);
    }
    return best;
}

enum class MapClass { graded, contracting, bounded, unbounded };

struct MapClassification {
    MapClass kind;
    NormBound norm;
};

inline MapClassification classify_map(const GradedMap& f) {
    NormBound n = operator_norm(f);
    bool graded = true;
    for (const auto& x : f.source().labels())
        graded = graded && same(f.source().grade(x), f.target().grade(f(x)));
    if (graded) return {MapClass::graded, n};
    if (n.is_infinite()) return {MapClass::unbounded, n};
    if (leq(n.value(), Real(1))) return {MapClass::contracting, n};
    return {MapClass::bounded, n};
}

enum class TensorMode { mult, p_additive, max };

/// |(x,y)| = |x|*|y|, (|x|^p + |y|^p)^(1/p), or max(|x|, |y|).
struct TensorSpec {
    TensorMode mode = TensorMode::mult;
    Rational p = 1;
};

inline Label pair_label(const Label& x, const Label& y) { return "(" + x + "," + y + ")"; }

inline Real p_sum(const Real& a, const Real& b, const Rational& p) {
    if (p == 1) return a + b;
    Real s = real_pow(a, p) + real_pow(b, p);
    return real_pow(s, Rational(1 / p));
}

inline GradedSet tensor_graded(const GradedSet& X, const GradedSet& Y, const TensorSpec& spec) {
    if (spec.mode == TensorMode::p_additive && spec.p <= 0)
        throw std::invalid_argument("p-additive tensor grading needs p > 0");
    std::vector<std::pair<Label, Real>> out;
    for (const auto& x : X.labels()) {
        for (const auto& y : Y.labels()) {
            const Real &a = X.grade(x), &b = Y.grade(y);
            Real g;
            switch (spec.mode) {
                case TensorMode::mult: g = a * b; break;
                case TensorMode::p_additive: g = p_sum(a, b, spec.p); break;
                case TensorMode::max: g = max(a, b); break;
            }
            out.emplace_back(pair_label(x, y), g);
        }
    }
    return GradedSet(out);
}

/// An element sum_x a_x {x} of the free module R^(X), R in {Z, Q}.
class CoeffVector {
public:
    CoeffVector() = default;
    CoeffVector(bool integral, std::map<Label, Rational> entries) : integral_(integral) {
        for (auto& [l, a] : entries) {
            if (integral_ && a.get_den() != 1) throw std::invalid_argument("non-integral entry for '" + l + "'");
            if (a != 0) entries_.emplace(l, a);
        }
    }
    static CoeffVector integers(std::initializer_list<std::pair<Label, long>> es) {
        std::map<Label, Rational> m;
        for (const auto& [l, a] : es) m[l] += Rational(a);
        return CoeffVector(true, m);
    }

    bool integral() const { return integral_; }
    const std::map<Label, Rational>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    void check_support(const GradedSet& X) const {
        for (const auto& [l, a] : entries_)
            if (!X.contains(l)) throw std::invalid_argument("support label '" + l + "' not in graded set");
    }

private:
    bool integral_ = true;
    std::map<Label, Rational> entries_;
};

namespace detail {
inline void require_base_for(const CoeffVector& a, BaseRing base) {
    if (!a.integral() && integral_coefficients(base))
        throw std::invalid_argument("rational coefficient vector over an integral base ring");
}
}  // namespace detail

/// ||a||_1 = sum_x |a_x| * |x|.
inline Real l1_norm(const CoeffVector& a, const GradedSet& X, BaseRing base) {
    a.check_support(X);
    detail::require_base_for(a, base);
    Real s(0);
    for (const auto& [l, c] : a.entries()) s = s + base_norm_eval(base, c) * X.grade(l);
    return s;
}

/// |a|_inf = max_x |a_x| * |x|.
inline Real linf_norm(const CoeffVector& a, const GradedSet& X, BaseRing base) {
    a.check_support(X);
    detail::require_base_for(a, base);
    Real m(0);
    for (const auto& [l, c] : a.entries()) m = max(m, base_norm_eval(base, c) * X.grade(l));
    return m;
}

/// (f_* a)_y = sum_{f(x) = y} a_x.
inline CoeffVector pushforward(const GradedMap& f, const CoeffVector& a) {
    a.check_support(f.source());
    std::map<Label, Rational> out;
    for (const auto& [l, c] : a.entries()) out[f(l)] += c;
    return CoeffVector(a.integral(), out);
}

inline constexpr std::size_t kFiltrationSupportCap = 12;

/// a lies in R^(X)_{<= rho} iff for every subset Z of the support and every
/// partition Z = Z_1 u ... u Z_k,
///   |sum_Z a_z| <= rho * max_i |sum_{Z_i} a_z|.
/// `norm` maps a ring element to its Real norm. The quantifier is checked
/// exhaustively (Bell-number many cases), so the support is capped.
inline bool rho_filter_membership(const CoeffVector& a, const Real& rho,
                                  const std::function<Real(const Rational&)>& norm) {
    if (less(rho, Real(0))) throw std::invalid_argument("rho must be >= 0");
    std::vector<Rational> xs;
    for (const auto& [l, c] : a.entries()) xs.push_back(c);
    if (xs.size() > kFiltrationSupportCap)
        throw std::length_error("support of size " + std::to_string(xs.size()) + " exceeds the cap of " +
                                std::to_string(kFiltrationSupportCap));
    const std::size_t n = xs.size();

    // Enumerate subsets Z together with a partition of Z: every element is
    // either excluded or assigned to a block (restricted growth labelling).
    std::vector<Rational> blocks;
    blocks.reserve(n);
    Rational total(0);
    bool ok = true;
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
        if (!ok) return;
        if (i == n) {
            if (blocks.empty()) return;
            Real worst(0);
            for (const auto& b : blocks) worst = max(worst, norm(b));
            if (!leq(norm(total), rho * worst)) ok = false;
            return;
        }
        walk(i + 1);  // z_i not in Z
        total += xs[i];
        for (std::size_t b = 0; b < blocks.size() && ok; ++b) {
            blocks[b] += xs[i];
            walk(i + 1);
            blocks[b] -= xs[i];
        }
        blocks.push_back(xs[i]);
        walk(i + 1);
        blocks.pop_back();
        total -= xs[i];
    };
    walk(0);
    return ok;
}

inline bool rho_filter_membership(const CoeffVector& a, const Real& rho, BaseRing base) {
    detail::require_base_for(a, base);
    return rho_filter_membership(a, rho, [base](const Rational& q) { return base_norm_eval(base, q); });
}

}  // namespace berkring
