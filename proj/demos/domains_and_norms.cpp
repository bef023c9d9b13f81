// The p-adic integers and the reals as rational domains over Z, and
// spectral norms of 1 + T over the two base rings.

#include <iostream>

#include "berkring/berkring.hpp"

using namespace berkring;

int main() {
    AffinoidPresentation z_triv(BaseRing::Z_triv, {});
    RationalDomainSpec zp{z_triv, {{Poly(1), Rational(1)}, {Poly(2), Rational(1, 2)}}, std::nullopt, {}};
    std::cout << "Z_2 as " << describe(rational_domain_algebra(zp)) << "\n";
    for (const auto& b : sample_base_points(BaseRing::Z_triv, {})) {
        FiberPoint x;
        x.base = b;
        if (domain_membership(x, zp)) std::cout << "  contains " << b.describe() << "\n";
    }

    AffinoidPresentation z_arch(BaseRing::Z_arch, {});
    RationalDomainSpec reals{z_arch, {{Poly(2), Rational(1)}, {Poly(1), Rational(1, 2)}}, std::nullopt, {}};
    std::cout << "R as " << describe(rational_domain_algebra(reals)) << "\n";
    for (const auto& b : sample_base_points(BaseRing::Z_arch, {})) {
        FiberPoint x;
        x.base = b;
        if (domain_membership(x, reals)) std::cout << "  contains " << b.describe() << "\n";
    }

    Poly f = parse_expression("1 + T");
    Radii rho{{"T", Rational(1)}};
    for (auto base : {BaseRing::Z_arch, BaseRing::Z_triv}) {
        auto r = spectral_norm(f, rho, base);
        std::cout << "|1+T|_sp over " << name(base) << " = " << r.value.str() << " (" << r.branch << ")\n";
    }
}
