#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "berkring/berkring.hpp"
#include "oracles.hpp"

using namespace berkring;

namespace {

Poly P(const char* s) { return parse_expression(s); }
const Radii kUnit{{"T", Rational(1)}};

// Dense integer polynomial helpers for the residue oracle.
using Dense = std::vector<long>;
Dense mul(const Dense& a, const Dense& b) {
    Dense r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}
long l1(const Dense& a) {
    long s = 0;
    for (long x : a) s += std::labs(x);
    return s;
}

}  // namespace

TEST(BaseNorm, Examples) {
    EXPECT_EQ(base_norm_eval(BaseRing::Z_arch, Rational(-7)).exact(), 7);
    EXPECT_EQ(base_norm_eval(BaseRing::Z_triv, Rational(-7)).exact(), 1);
    EXPECT_EQ(base_norm_eval(BaseRing::Z_triv, Rational(0)).exact(), 0);
    EXPECT_EQ(base_norm_eval(BaseRing::Q_triv, Rational(3, 5)).exact(), 1);
}

TEST(BaseNorm, FractionsAreNotIntegers) {
    EXPECT_THROW(base_norm_eval(BaseRing::Z_arch, Rational(1, 2)), std::invalid_argument);
}

TEST(BaseRingNames, RoundTrip) {
    for (auto r : {BaseRing::Z_arch, BaseRing::Z_triv, BaseRing::Q_triv}) EXPECT_EQ(parse_base_ring(name(r)), r);
    EXPECT_THROW(parse_base_ring("R"), std::invalid_argument);
}

TEST(Parse, Examples) {
    Poly f = P("1+T");
    EXPECT_EQ(f, Poly(1) + Poly::variable("T"));
    Poly g = P("2*T^2 - 3/4");
    EXPECT_EQ(g.coefficient(Monomial::variable("T", 2)), 2);
    EXPECT_EQ(g.constant_term(), Rational(-3, 4));
}

TEST(Parse, SyntaxErrorOffset) {
    try {
        P("1+");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 2u);
    }
}

TEST(Parse, NegativeExponentsAndParentheses) {
    EXPECT_EQ(P("(X0 + 1)^2"), P("X0^2 + 2*X0 + 1"));
    EXPECT_TRUE(P("X0^-1").is_laurent());
    EXPECT_EQ(P("-(T - 1)"), P("1 - T"));
}

TEST(Parse, PrintingRoundTripsOnRandomPolynomials) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        Poly f = oracle::random_poly(rng, 6, 9) * oracle::random_poly(rng, 2, 3, "S");
        EXPECT_EQ(P(to_string(f).c_str()), f) << to_string(f);
    }
}

TEST(PolyNorms, L1AndLinf) {
    EXPECT_EQ(l1_norm(P("3+2*T"), kUnit, BaseRing::Z_arch).exact(), 5);
    EXPECT_EQ(linf_norm(P("3+2*T"), kUnit, BaseRing::Z_arch).exact(), 3);
    Radii r{{"T", Rational(1, 2)}};
    EXPECT_EQ(l1_norm(P("3+2*T^2"), r, BaseRing::Z_arch).exact(), Rational(7, 2));
    EXPECT_EQ(linf_norm(P("5*T^3 - 4"), {{"T", Rational(2)}}, BaseRing::Z_triv).exact(), 8);
}

TEST(PolyNorms, GaussNormIsMultiplicativeOverTrivialBase) {
    std::mt19937_64 rng(5);
    Radii r{{"T", Rational(3, 2)}};
    for (int i = 0; i < 100; ++i) {
        Poly f = oracle::random_poly(rng, 4, 5), g = oracle::random_poly(rng, 4, 5);
        EXPECT_EQ(linf_norm(f * g, r, BaseRing::Z_triv).exact(),
                  linf_norm(f, r, BaseRing::Z_triv).exact() * linf_norm(g, r, BaseRing::Z_triv).exact());
    }
}

TEST(Uniformization, Examples) {
    IdealBasis I({"T"}, {P("T^2")});
    auto q = uniformization_estimate(P("T"), I, kUnit, 8);
    EXPECT_EQ(q.roots[0], 1.0);
    for (std::size_t n = 1; n < q.roots.size(); ++n) EXPECT_EQ(q.roots[n], 0.0);
    EXPECT_DOUBLE_EQ(uniformization_estimate(Poly(2), {}, BaseRing::Z_arch, 8).estimate, 2.0);
    auto b = uniformization_estimate(P("1+T"), kUnit, BaseRing::Z_arch, 16);
    for (double r : b.roots) EXPECT_NEAR(r, 2.0, 1e-12);
    EXPECT_TRUE(b.dyadic_monotone);
}

TEST(Uniformization, DyadicSubsequenceIsNonIncreasing) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 40; ++i) {
        auto rep = uniformization_estimate(oracle::random_poly(rng, 3, 4), kUnit, BaseRing::Z_arch, 32);
        EXPECT_TRUE(rep.dyadic_monotone);
        ASSERT_EQ(rep.dyadic.size(), 6u);
        EXPECT_EQ(rep.dyadic.back().first, 32);
    }
}

TEST(Uniformization, BitBudgetIsEnforced) {
    EXPECT_THROW(uniformization_estimate(P("7+13*T"), kUnit, BaseRing::Z_arch, 64, 32), ResourceLimitError);
    EXPECT_THROW(uniformization_estimate(P("T"), kUnit, BaseRing::Z_arch, 3), std::invalid_argument);
}

TEST(Residue, ZeroClass) {
    QuotientPresentation q{BaseRing::Z_arch, {"T"}, kUnit, {P("T-2")}};
    auto b = residue_seminorm_bound(q, Poly(), {});
    EXPECT_EQ(b.value.exact(), 0);
}

TEST(Residue, ClassOfTModTMinusTwoMatchesEnumeration) {
    QuotientPresentation q{BaseRing::Z_arch, {"T"}, kUnit, {P("T-2")}};
    auto b = residue_seminorm_bound(q, P("T"), {1, 4, 1});
    // brute force over g = u + vT, |u|, |v| <= 4
    long best = 1;
    for (long u = -4; u <= 4; ++u)
        for (long v = -4; v <= 4; ++v) {
            Dense c = mul({u, v}, {-2, 1});
            c[1] += 1;
            best = std::min(best, l1(c));
        }
    EXPECT_EQ(b.value.exact(), best);
    EXPECT_LE(b.value.value(), 2.0);
    EXPECT_EQ(l1_norm(b.representative, kUnit, BaseRing::Z_arch).exact(), b.value.exact());
    EXPECT_EQ(b.explored, 81u + 1u);
}

TEST(Residue, RepresentativeIsInTheClass) {
    QuotientPresentation q{BaseRing::Z_arch, {"T"}, kUnit, {P("T-2")}};
    auto b = residue_seminorm_bound(q, P("3*T^2 + T"), {1, 4, 1});
    // same class iff equal after evaluating at the root T = 2
    auto at2 = [](const Poly& f) { return f.substitute({{"T", Poly(2)}}).constant_term(); };
    EXPECT_EQ(at2(b.representative), at2(P("3*T^2 + T")));
    EXPECT_TRUE(leq(b.value, l1_norm(P("3*T^2 + T"), kUnit, BaseRing::Z_arch)));
}

TEST(Residue, RationalQuotientByT) {
    QuotientPresentation q{BaseRing::Q_triv, {"T"}, kUnit, {P("T")}};
    auto b = residue_seminorm_bound(q, P("T"), {0, 1, 1});
    EXPECT_EQ(b.value.exact(), 0);
    EXPECT_TRUE(b.representative.is_zero());
}

TEST(Residue, BudgetErrors) {
    QuotientPresentation q{BaseRing::Z_arch, {"T"}, kUnit, {P("T-2")}};
    EXPECT_THROW(residue_seminorm_bound(q, P("T"), {-1, 4, 1}), std::invalid_argument);
    EXPECT_THROW(residue_seminorm_bound(q, P("T"), {1, 4, 2}), std::invalid_argument);
    EXPECT_THROW(residue_seminorm_bound(q, P("T"), {6, 50, 1}), ResourceLimitError);
}

TEST(ProjectiveTensor, Examples) {
    GradedSet M{{"m", Real(2)}, {"m2", Real(5)}}, N{{"n", Real(3)}, {"n2", Real(7)}};
    auto m = CoeffVector::integers({{"m", 1}}), n = CoeffVector::integers({{"n", 1}}),
         n2 = CoeffVector::integers({{"n2", 1}});
    EXPECT_EQ(projective_tensor_bound({{1, m, n}}, M, N, BaseRing::Z_arch).value.exact(), 6);
    EXPECT_EQ(projective_tensor_bound({}, M, N, BaseRing::Z_arch).value.exact(), 0);
    EXPECT_EQ(projective_tensor_bound({{1, m, n}, {1, m, n2}}, M, N, BaseRing::Z_arch).value.exact(), 2 * (3 + 7));
}

TEST(ProjectiveTensor, CancellingTermsMergeToZero) {
    GradedSet M{{"m", Real(2)}}, N{{"n", Real(3)}};
    auto m = CoeffVector::integers({{"m", 1}}), n = CoeffVector::integers({{"n", 1}});
    auto b = projective_tensor_bound({{1, m, n}, {-1, m, n}}, M, N, BaseRing::Z_arch);
    EXPECT_EQ(b.value.exact(), 0);
}

TEST(Axioms, L1OnRandomIntegerPolynomials) {
    std::mt19937_64 rng(23);
    std::vector<Poly> xs;
    for (int i = 0; i < 100; ++i) xs.push_back(oracle::random_poly(rng, 4, 6));
    auto rep = seminorm_axiom_report([](const Poly& f) { return l1_norm(f, kUnit, BaseRing::Z_arch); }, xs);
    EXPECT_TRUE(rep.ok());
    EXPECT_GE(rep.checked, 200u);
}

TEST(Axioms, TrivialNormOnRationals) {
    std::vector<Rational> xs;
    for (int i = -10; i <= 10; ++i) xs.push_back(make_rational(i, 3));
    auto rep = seminorm_axiom_report([](const Rational& q) { return base_norm_eval(BaseRing::Q_triv, q); }, xs);
    EXPECT_TRUE(rep.ok());
}

TEST(Axioms, SignedNormIsRejectedAtFirstNegativeSample) {
    std::vector<Rational> xs{Rational(2), Rational(3), Rational(-1), Rational(-5)};
    auto rep = seminorm_axiom_report([](const Rational& q) { return Real(q); }, xs);
    ASSERT_FALSE(rep.ok());
    EXPECT_EQ(rep.violations.front().axiom, "nonnegative");
    EXPECT_EQ(rep.violations.front().first, 2u);
}

TEST(Axioms, LinfOverArchimedeanIntegersIsAModuleSeminorm) {
    std::mt19937_64 rng(29);
    std::vector<Poly> xs;
    for (int i = 0; i < 100; ++i) xs.push_back(oracle::random_poly(rng, 4, 6));
    std::vector<Rational> scalars{Rational(-3), Rational(2), Rational(5)};
    auto rep = module_seminorm_axiom_report(
        [](const Poly& f) { return linf_norm(f, kUnit, BaseRing::Z_arch); }, xs, scalars,
        [](const Rational& r, const Poly& f) { return f.scaled(r); },
        [](const Rational& r) { return base_norm_eval(BaseRing::Z_arch, r); });
    EXPECT_TRUE(rep.ok());
    // but it is not submultiplicative: |(1+T)^2| = 2 > 1
    EXPECT_EQ(linf_norm(P("(1+T)^2"), kUnit, BaseRing::Z_arch).exact(), 2);
}

TEST(Groebner, NormalForms) {
    EXPECT_TRUE(IdealBasis({"T"}, {P("T")}).normal_form(P("T^2")).is_zero());
    IdealBasis unit({"T"}, {P("T"), P("1-T")});
    EXPECT_TRUE(unit.is_unit());
    EXPECT_TRUE(unit.normal_form(Poly(1)).is_zero());
    IdealBasis sq({"T"}, {P("T^2"), P("T^3")});
    EXPECT_EQ(sq.normal_form(Poly(1)), Poly(1));
    EXPECT_FALSE(sq.is_unit());
    ASSERT_EQ(sq.basis().size(), 1u);
    EXPECT_EQ(sq.basis()[0], P("T^2"));
}

TEST(Groebner, MembershipOfRandomCombinations) {
    std::mt19937_64 rng(31);
    IdealBasis I({"T", "S"}, {P("S^2 - T"), P("T*S - 1")});
    for (int i = 0; i < 50; ++i) {
        Poly a = oracle::random_poly(rng, 3, 3) * oracle::random_poly(rng, 2, 3, "S");
        Poly b = oracle::random_poly(rng, 3, 3);
        EXPECT_TRUE(I.contains(a * P("S^2 - T") + b * P("T*S - 1")));
    }
    EXPECT_FALSE(I.contains(P("S - 1")));
}

TEST(Groebner, StandardMonomialsOfPrincipalIdeal) {
    IdealBasis I({"T"}, {P("T^3 + 1")});
    auto ms = I.standard_monomials(5);
    EXPECT_EQ(ms.size(), 3u);
}
