#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "berkring/real.hpp"

namespace berkring {

/// Radii attached to variables, by name.
using Radii = std::map<std::string, Rational>;

/// A Laurent monomial: variable names with nonzero integer exponents,
/// kept sorted by name.
class Monomial {
public:
    using Power = std::pair<std::string, int>;

    Monomial() = default;

    static Monomial variable(std::string name, int exponent = 1) {
        Monomial m;
        if (exponent != 0) m.powers_.emplace_back(std::move(name), exponent);
        return m;
    }

    static Monomial from_powers(std::vector<Power> powers) {
        std::sort(powers.begin(), powers.end());
        Monomial m;
        for (auto& [v, e] : powers) {
            if (!m.powers_.empty() && m.powers_.back().first == v)
                m.powers_.back().second += e;
            else
                m.powers_.emplace_back(v, e);
        }
        std::erase_if(m.powers_, [](const Power& p) { return p.second == 0; });
        return m;
    }

    const std::vector<Power>& powers() const { return powers_; }
    bool is_one() const { return powers_.empty(); }

    int exponent(const std::string& v) const {
        auto it = std::lower_bound(powers_.begin(), powers_.end(), v,
                                   [](const Power& p, const std::string& s) { return p.first < s; });
        return (it != powers_.end() && it->first == v) ? it->second : 0;
    }

    int total_degree() const {
        int d = 0;
        for (const auto& p : powers_) d += p.second;
        return d;
    }

    bool has_negative_exponent() const {
        return std::any_of(powers_.begin(), powers_.end(), [](const Power& p) { return p.second < 0; });
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial m;
        auto i = a.powers_.begin(), j = b.powers_.begin();
        while (i != a.powers_.end() || j != b.powers_.end()) {
            if (j == b.powers_.end() || (i != a.powers_.end() && i->first < j->first)) {
                m.powers_.push_back(*i++);
            } else if (i == a.powers_.end() || j->first < i->first) {
                m.powers_.push_back(*j++);
            } else {
                int e = i->second + j->second;
                if (e != 0) m.powers_.emplace_back(i->first, e);
                ++i;
                ++j;
            }
        }
        return m;
    }

    Monomial pow(int k) const {
        Monomial m;
        if (k == 0) return m;
        for (const auto& [v, e] : powers_) m.powers_.emplace_back(v, e * k);
        return m;
    }

    auto operator<=>(const Monomial&) const = default;
    bool operator==(const Monomial&) const = default;

private:
    std::vector<Power> powers_;
};

/// ||X^alpha||_m = prod_v rho_v^alpha_v. The empty monomial has grading 1.
inline Real monomial_grading(const Monomial& m, const Radii& radii) {
    Rational g(1);
    for (const auto& [v, e] : m.powers()) {
        auto it = radii.find(v);
        if (it == radii.end()) throw std::invalid_argument("no radius for variable " + v);
        if (it->second <= 0) throw std::invalid_argument("radius of " + v + " must be positive");
        g *= pow(it->second, e);
    }
    return Real(g);
}

}  // namespace berkring
