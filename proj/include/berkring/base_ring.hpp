#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "berkring/real.hpp"

namespace berkring {

/// The concrete base Banach rings: (Z, |.|_inf), (Z, |.|_0) and (Q, |.|_0).
enum class BaseRing { Z_arch, Z_triv, Q_triv };

inline std::string_view name(BaseRing r) {
    switch (r) {
        case BaseRing::Z_arch: return "Z_arch";
        case BaseRing::Z_triv: return "Z_triv";
        case BaseRing::Q_triv: return "Q_triv";
    }
    return "?";
}

inline BaseRing parse_base_ring(std::string_view s) {
    if (s == "Z_arch" || s == "Z") return BaseRing::Z_arch;
    if (s == "Z_triv" || s == "Z0" || s == "Z_0") return BaseRing::Z_triv;
    if (s == "Q_triv" || s == "Q") return BaseRing::Q_triv;
    throw std::invalid_argument("unknown base ring '" + std::string(s) + "'");
}

inline bool integral_coefficients(BaseRing r) { return r != BaseRing::Q_triv; }
inline bool trivially_valued(BaseRing r) { return r != BaseRing::Z_arch; }

/// Whether elements of `r` are also elements of `s` (Z -> Q, Z_arch -> Z_triv).
inline bool has_coefficient_map(BaseRing from, BaseRing to) {
    if (from == to) return true;
    if (from == BaseRing::Q_triv) return false;
    return to != BaseRing::Z_arch;
}

inline void require_in_ring(BaseRing r, const Rational& a) {
    if (integral_coefficients(r) && a.get_den() != 1)
        throw std::invalid_argument(a.get_str() + " is not an element of " + std::string(name(r)));
}

/// |a| in the base ring. Exact in all three cases.
inline Real base_norm_eval(BaseRing r, const Rational& a) {
    require_in_ring(r, a);
    if (r == BaseRing::Z_arch) return Real(abs(a));
    return a == 0 ? Real(0) : Real(1);
}

}  // namespace berkring
