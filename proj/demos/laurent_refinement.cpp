// Refines the standard covering of Q[T] generated by T and 1 - T by a
// Laurent covering, then checks the Cech complex of a Laurent covering.

#include <iostream>

#include "berkring/berkring.hpp"

using namespace berkring;

int main() {
    AffinoidPresentation A = parse_algebra("Q[T]");
    Poly T = Poly::variable("T");
    Covering std_cov = standard_covering({{T, Rational(1)}, {Poly(1) - T, Rational(1)}}, A);

    auto ref = refine_rational_to_laurent(std_cov);
    std::cout << "c = " << ref.c.get_str() << ", " << ref.laurent.members.size() << " Laurent members\n";
    for (std::size_t m = 0; m < ref.laurent.members.size(); ++m) {
        std::cout << "  member " << m << " surviving:";
        for (auto i : ref.surviving[m]) std::cout << " " << to_string(std_cov.generators[i].f);
        std::cout << "\n";
    }

    for (const char* f : {"T", "T^2 - T", "T^3 + 1"}) {
        auto cx = cech_complex(laurent_covering({{parse_expression(f), Rational(1)}}, A));
        auto rep = check_exactness(cx, 6);
        std::cout << "Laurent covering by " << f << ": " << rep.status() << " up to degree " << rep.degree_bound
                  << "\n";
    }
}
