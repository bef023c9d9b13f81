#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "berkring/berkring.hpp"
#include "oracles.hpp"

using namespace berkring;

namespace {

Poly P(const char* s) { return parse_expression(s); }

RationalDomainSpec zp_spec(unsigned long p) {
    return {AffinoidPresentation(BaseRing::Z_triv, {}), {{Poly(1), 1}, {Poly(static_cast<long>(p)), Rational(1, 2)}},
            std::nullopt, {}};
}

RationalDomainSpec reals_spec() {
    return {AffinoidPresentation(BaseRing::Z_arch, {}), {{Poly(2), 1}, {Poly(1), Rational(1, 2)}}, std::nullopt, {}};
}

FiberPoint base_point(const SpectrumPoint& b) { return FiberPoint{b, {}, {}}; }

}  // namespace

TEST(DaggerFamilyTest, RadiiDecreaseToRho) {
    auto fam = dagger_family({{"T", Rational(1)}}, 4);
    ASSERT_EQ(fam.schedule.size(), 5u);
    for (std::size_t k = 1; k < fam.schedule.size(); ++k) EXPECT_LT(fam.schedule[k].at("T"), fam.schedule[k - 1].at("T"));
    for (const auto& nu : fam.schedule) EXPECT_GT(nu.at("T"), 1);
    auto norms = dagger_norms(P("1+T^2"), fam, BaseRing::Z_arch);
    for (std::size_t k = 1; k < norms.size(); ++k) EXPECT_TRUE(less(norms[k], norms[k - 1]));
    EXPECT_TRUE(less(Real(2), norms.back()));
    EXPECT_THROW(dagger_family({{"T", Rational(1)}}, -1), std::invalid_argument);
}

TEST(RationalDomainAlgebra, PAdicIntegers) {
    std::vector<std::string> names;
    auto a = rational_domain_algebra(zp_spec(2), &names);
    EXPECT_EQ(names, std::vector<std::string>{"T"});
    EXPECT_EQ(a.base(), BaseRing::Z_triv);
    ASSERT_EQ(a.vars().size(), 1u);
    EXPECT_EQ(a.vars()[0].radius, Rational(1, 2));
    ASSERT_EQ(a.relations().size(), 1u);
    EXPECT_EQ(a.relations()[0], P("T - 2"));
    EXPECT_EQ(describe(a), "Z_triv<(1/2)^-1 T> / (T - 2)");
}

TEST(RationalDomainAlgebra, RealNumbers) {
    auto a = rational_domain_algebra(reals_spec());
    EXPECT_EQ(a.relations()[0], P("2*T - 1"));
    EXPECT_EQ(a.vars()[0].radius, Rational(1, 2));
    EXPECT_EQ(describe(a), "Z_arch<(1/2)^-1 T> / (2*T - 1)");
}

TEST(RationalDomainAlgebra, SinglePairLeavesAlgebraUnchanged) {
    AffinoidPresentation A(BaseRing::Q_triv, {{"T", 1}});
    RationalDomainSpec d{A, {{Poly(1), 1}}, std::nullopt, {}};
    EXPECT_EQ(rational_domain_algebra(d), A);
}

TEST(RationalDomainAlgebra, FreshNamesAvoidParentVariables) {
    AffinoidPresentation A(BaseRing::Q_triv, {{"T", 1}});
    RationalDomainSpec d{A, {{P("T"), 1}, {Poly(1), 1}, {P("T^2+1"), 2}}, std::nullopt, {}};
    std::vector<std::string> names;
    auto B = rational_domain_algebra(d, &names);
    EXPECT_EQ(names, (std::vector<std::string>{"T1", "T2"}));
    EXPECT_EQ(B.radius("T2"), 2);
    RationalDomainSpec e{A, {{P("T"), 1}, {Poly(1), 1}}, std::nullopt, {"T"}};
    rational_domain_algebra(e, &names);
    EXPECT_EQ(names, std::vector<std::string>{"T_1"});
}

TEST(RationalDomainAlgebra, NonUnitIdealIsRejected) {
    AffinoidPresentation A(BaseRing::Q_triv, {{"T", 1}});
    RationalDomainSpec d{A, {{P("T"), 1}, {P("T^2"), 1}}, std::nullopt, {}};
    EXPECT_THROW(rational_domain_algebra(d), UnitIdealError);
}

TEST(DomainMembership, PAdicIntegersPerBranch) {
    auto d = zp_spec(2);
    EXPECT_TRUE(domain_membership(base_point(SpectrumPoint::padic(2, 1)), d));
    EXPECT_FALSE(domain_membership(base_point(SpectrumPoint::trivial()), d));
    EXPECT_TRUE(domain_membership(base_point(SpectrumPoint::residue(2)), d));
    EXPECT_FALSE(domain_membership(base_point(SpectrumPoint::padic(2, Rational(1, 2))), d));
    EXPECT_FALSE(domain_membership(base_point(SpectrumPoint::padic(3, 5)), d));
    EXPECT_FALSE(domain_membership(base_point(SpectrumPoint::residue(3)), d));
}

TEST(DomainMembership, PAdicTailMatchesDirectEvaluation) {
    // 2 * |p|^eps <= 1 iff p^-eps <= 1/2 iff eps >= log 2 / log p
    auto d = zp_spec(3);
    for (int j = 1; j <= 40; ++j) {
        Rational eps(j, 10);
        bool expect = std::pow(3.0, -eps.get_d()) <= 0.5;
        EXPECT_EQ(domain_membership(base_point(SpectrumPoint::padic(3, eps)), d), expect) << eps.get_str();
    }
}

TEST(DomainMembership, RealNumbers) {
    auto d = reals_spec();
    EXPECT_TRUE(domain_membership(base_point(SpectrumPoint::archimedean(1)), d));
    EXPECT_FALSE(domain_membership(base_point(SpectrumPoint::archimedean(Rational(1, 2))), d));
    EXPECT_FALSE(domain_membership(base_point(SpectrumPoint::trivial()), d));
    for (int j = 1; j <= 20; ++j)
        EXPECT_FALSE(domain_membership(base_point(SpectrumPoint::padic(2, make_rational(j, 4))), d));
}

TEST(DomainMembership, EqualPairsContainEverything) {
    AffinoidPresentation A(BaseRing::Z_arch, {{"T", 1}});
    RationalDomainSpec d{A, {{P("1+T"), 1}, {P("1+T"), 1}, {P("1+T"), 1}}, std::nullopt, {}};
    for (const auto& x : sample_spectrum(A, {})) EXPECT_TRUE(domain_membership(x, d));
}

TEST(UnitIdealCheck, Examples) {
    AffinoidPresentation Z(BaseRing::Z_triv, {});
    EXPECT_EQ(validate_unit_ideal({Poly(1), Poly(2)}, Z, std::vector<Poly>{Poly(1), Poly(0)}), UnitIdeal::unit);
    AffinoidPresentation Q(BaseRing::Q_triv, {{"T", 1}});
    EXPECT_EQ(validate_unit_ideal({P("T"), P("1-T")}, Q), UnitIdeal::unit);
    AffinoidPresentation ZT(BaseRing::Z_arch, {{"T", 1}});
    EXPECT_EQ(validate_unit_ideal({Poly(2), P("T")}, ZT), UnitIdeal::indeterminate);
    EXPECT_EQ(validate_unit_ideal({Poly(2), P("T")}, Q), UnitIdeal::unit);
    EXPECT_EQ(validate_unit_ideal({P("T"), P("T^2")}, ZT), UnitIdeal::not_unit);
    EXPECT_EQ(name(UnitIdeal::indeterminate), "INDETERMINATE");
}

TEST(UnitIdealCheck, BadCertificateThrows) {
    AffinoidPresentation Q(BaseRing::Q_triv, {{"T", 1}});
    EXPECT_THROW(validate_unit_ideal({P("T"), P("1-T")}, Q, std::vector<Poly>{Poly(1), Poly(2)}), UnitIdealError);
    EXPECT_THROW(validate_unit_ideal({P("T"), P("1-T")}, Q, std::vector<Poly>{Poly(1)}), std::invalid_argument);
    EXPECT_EQ(validate_unit_ideal({P("T"), P("1-T")}, Q, std::vector<Poly>{Poly(1), Poly(1)}), UnitIdeal::unit);
}

TEST(BaseChange, IdentityKeepsPresentation) {
    auto A = parse_algebra("Z[T,S]/(S^2-T)", BaseRing::Z_arch);
    EXPECT_EQ(base_change(A, BaseRing::Z_arch), A);
}

TEST(BaseChange, SpectralNormOfOnePlusT) {
    Radii r{{"T", Rational(1)}};
    double arch = spectral_norm(P("1+T"), r, BaseRing::Z_arch).value.value();
    double triv = spectral_norm(P("1+T"), r, BaseRing::Z_triv).value.value();
    EXPECT_NEAR(arch, 2.0, 1e-9);
    EXPECT_EQ(triv, 1.0);
    EXPECT_NEAR(oracle::spectral(P("1+T"), 1, BaseRing::Z_triv, 20, 1, 50), triv, 1e-12);
}

TEST(BaseChange, RealsSpecOnPAdicBranchIsEmpty) {
    auto d = base_change(reals_spec(), BaseRing::Z_triv);
    SamplingDensity dens;
    dens.eps_grid = 16;
    dens.prime_cutoff = 7;
    for (const auto& x : restrict_to_branch(sample_spectrum(d.parent, dens), SpectrumPoint::Kind::padic, 2))
        EXPECT_FALSE(domain_membership(x, d));
}

TEST(BaseChange, RationalsOverIntegersAreRejected) {
    AffinoidPresentation Q(BaseRing::Q_triv, {{"T", 1}}, false, {P("T/2 - 1")});
    EXPECT_THROW(base_change(Q, BaseRing::Z_arch), std::invalid_argument);
    EXPECT_THROW(base_change(Q, BaseRing::Z_triv), std::invalid_argument);
    AffinoidPresentation Z(BaseRing::Z_triv, {{"T", 1}});
    EXPECT_THROW(base_change(Z, BaseRing::Z_arch), std::invalid_argument);
    EXPECT_EQ(base_change(Z, BaseRing::Q_triv).base(), BaseRing::Q_triv);
}

TEST(ChartIsometry, Examples) {
    FiberPoint x{SpectrumPoint::archimedean(1), {{"X0", ComplexCoord{{0, 1}}}}, {}};
    auto rep = chart_isometry_check(P("X0 + 2"), {x});
    ASSERT_EQ(rep.samples.size(), 1u);
    EXPECT_NEAR(rep.samples[0].lhs, std::sqrt(5.0), 1e-12);
    EXPECT_NEAR(rep.samples[0].rhs, std::sqrt(5.0), 1e-12);
    auto z = std::get<ComplexCoord>(rep.samples[0].matched.coords.at("X1")).z;
    EXPECT_NEAR(z.imag(), -1.0, 1e-15);
    auto pts = annulus_samples(BaseRing::Z_arch, 8, {});
    auto id = chart_isometry_check(P("X0"), pts);
    for (const auto& s : id.samples) {
        EXPECT_NEAR(s.lhs, 1.0, 1e-12);
        EXPECT_NEAR(s.rhs, 1.0, 1e-12);
    }
}

TEST(ChartIsometry, LaurentPolynomialOnTorus) {
    SamplingDensity d;
    d.eps_grid = 1;
    d.prime_cutoff = 0;
    auto pts = restrict_to_branch(annulus_samples(BaseRing::Z_arch, 16, d), SpectrumPoint::Kind::archimedean);
    ASSERT_EQ(pts.size(), 16u);
    auto rep = chart_isometry_check(P("X0^2 + X0^-1"), pts);
    EXPECT_LT(rep.max_discrepancy, 1e-9);
    EXPECT_EQ(rep.transformed, P("X1^-2 + X1"));
}

TEST(ChartIsometry, RandomLaurentPolynomialsAllBranches) {
    std::mt19937_64 rng(53);
    auto pts = annulus_samples(BaseRing::Z_arch, 16, {});
    for (int i = 0; i < 10; ++i) {
        Poly f = oracle::random_poly(rng, 5, 7, "X0") * Poly::term(Monomial::variable("X0", -2), 1);
        EXPECT_TRUE(chart_isometry_check(f, pts).ok()) << to_string(f);
    }
}

TEST(ChartIsometry, RejectsPointsOffTheAnnulus) {
    FiberPoint x{SpectrumPoint::archimedean(1), {{"X0", ComplexCoord{{0.5, 0}}}}, {}};
    EXPECT_THROW(chart_isometry_check(P("X0"), {x}), std::invalid_argument);
    EXPECT_THROW(chart_isometry_check(P("T"), {}), std::invalid_argument);
}
