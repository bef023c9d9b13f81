#pragma once

// Sparse row echelon forms over Q with combination tracking.

#include <cstddef>
#include <map>
#include <optional>
#include <utility>

#include "berkring/real.hpp"

namespace berkring::linalg {

using SparseVec = std::map<std::size_t, Rational>;

/// y += a * x
inline void axpy(SparseVec& y, const Rational& a, const SparseVec& x) {
    if (a == 0) return;
    for (const auto& [k, v] : x) {
        auto [it, inserted] = y.emplace(k, a * v);
        if (!inserted) {
            it->second += a * v;
            if (it->second == 0) y.erase(it);
        }
    }
}

/// Rows in echelon form. Each row remembers which combination of the
/// inserted vectors produced it, so dependencies come out as kernel vectors.
class Echelon {
public:
    struct Reduced {
        SparseVec residual;
        SparseVec combination;
    };

    /// v minus its projection onto the row space; `c` is updated along.
    Reduced reduce(SparseVec v, SparseVec c = {}) const {
        auto it = v.begin();
        while (it != v.end()) {
            std::size_t col = it->first;
            auto row = rows_.find(col);
            if (row == rows_.end()) {
                ++it;
                continue;
            }
            Rational factor = it->second;
            axpy(v, -factor, row->second.first);
            axpy(c, -factor, row->second.second);
            it = v.upper_bound(col);
        }
        return {std::move(v), std::move(c)};
    }

    /// Inserts v (tagged as input number `tag`). Returns an empty map if v
    /// was independent, else the dependency among inputs summing to zero.
    SparseVec insert(const SparseVec& v, std::size_t tag) {
        SparseVec c{{tag, Rational(1)}};
        auto r = reduce(v, std::move(c));
        if (r.residual.empty()) return std::move(r.combination);
        std::size_t pivot = r.residual.begin()->first;
        Rational inv = 1 / r.residual.begin()->second;
        for (auto& [k, x] : r.residual) x *= inv;
        for (auto& [k, x] : r.combination) x *= inv;
        rows_.emplace(pivot, std::make_pair(std::move(r.residual), std::move(r.combination)));
        return {};
    }

    bool contains(const SparseVec& v) const { return reduce(v).residual.empty(); }

    /// Coefficients over the inserted vectors expressing v, if it lies in the span.
    std::optional<SparseVec> solve(const SparseVec& v) const {
        auto r = reduce(v);
        if (!r.residual.empty()) return std::nullopt;
        SparseVec out;
        for (const auto& [k, x] : r.combination)
            if (x != 0) out.emplace(k, -x);
        return out;
    }

    std::size_t rank() const { return rows_.size(); }

private:
    std::map<std::size_t, std::pair<SparseVec, SparseVec>> rows_;
};

}  // namespace berkring::linalg
