#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "berkring/berkring.hpp"

using namespace berkring;

namespace {

Real R(long n, long d = 1) { return Real(make_rational(n, d)); }

GradedMap one_arrow(const Real& a, const Real& b) { return GradedMap({{"a", a}}, {{"b", b}}, {{"a", "b"}}); }

// Independent filtration check over subsets given as bitmasks: every subset
// Z and every set partition of Z built by recursive block assignment.
bool filtration_oracle(const std::vector<long>& xs, long rho) {
    const int n = static_cast<int>(xs.size());
    for (int mask = 1; mask < (1 << n); ++mask) {
        std::vector<int> idx;
        long total = 0;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) {
                idx.push_back(i);
                total += xs[i];
            }
        std::vector<long> sums;
        bool bad = false;
        std::function<void(std::size_t)> go = [&](std::size_t k) {
            if (bad) return;
            if (k == idx.size()) {
                long worst = 0;
                for (long s : sums) worst = std::max(worst, std::labs(s));
                if (std::labs(total) > rho * worst) bad = true;
                return;
            }
            for (std::size_t j = 0; j < sums.size(); ++j) {
                sums[j] += xs[idx[k]];
                go(k + 1);
                sums[j] -= xs[idx[k]];
            }
            sums.push_back(xs[idx[k]]);
            go(k + 1);
            sums.pop_back();
        };
        go(0);
        if (bad) return false;
    }
    return true;
}

CoeffVector vec(const std::vector<long>& xs) {
    std::map<Label, Rational> m;
    for (std::size_t i = 0; i < xs.size(); ++i) m["x" + std::to_string(i)] = Rational(xs[i]);
    return CoeffVector(true, m);
}

}  // namespace

TEST(OperatorNorm, IdentityHasNormOne) {
    GradedSet X{{"a", R(2)}};
    auto n = operator_norm(GradedMap(X, X, {{"a", "a"}}));
    ASSERT_FALSE(n.is_infinite());
    EXPECT_EQ(n.value().exact(), 1);
}

TEST(OperatorNorm, SingleRatio) { EXPECT_EQ(operator_norm(one_arrow(R(1), R(3))).value().exact(), 3); }

TEST(OperatorNorm, ZeroGradedSourceIsUnbounded) {
    EXPECT_TRUE(operator_norm(one_arrow(R(0), R(1))).is_infinite());
}

TEST(OperatorNorm, ZeroOverZeroCountsAsZero) {
    auto n = operator_norm(one_arrow(R(0), R(0)));
    ASSERT_FALSE(n.is_infinite());
    EXPECT_EQ(n.value().exact(), 0);
}

TEST(OperatorNorm, TakesMaximumOverSource) {
    GradedSet X{{"a", R(1)}, {"b", R(4)}}, Y{{"u", R(3)}, {"v", R(2)}};
    EXPECT_EQ(operator_norm(GradedMap(X, Y, {{"a", "u"}, {"b", "v"}})).value().exact(), 3);
}

TEST(GradedMapTest, RejectsPartialAssignment) {
    GradedSet X{{"a", R(1)}, {"b", R(1)}}, Y{{"u", R(1)}};
    EXPECT_THROW(GradedMap(X, Y, {{"a", "u"}}), std::invalid_argument);
    EXPECT_THROW(GradedMap(X, Y, {{"a", "u"}, {"b", "w"}}), std::invalid_argument);
}

TEST(GradedSetTest, RejectsNegativeAndDuplicateGrades) {
    EXPECT_THROW((GradedSet{{"a", R(-1)}}), std::invalid_argument);
    EXPECT_THROW((GradedSet{{"a", R(1)}, {"a", R(2)}}), std::invalid_argument);
}

TEST(ClassifyMap, Examples) {
    EXPECT_EQ(classify_map(one_arrow(R(2), R(2))).kind, MapClass::graded);
    EXPECT_EQ(classify_map(one_arrow(R(2), R(1))).kind, MapClass::contracting);
    EXPECT_EQ(classify_map(one_arrow(R(0), R(1))).kind, MapClass::unbounded);
    auto b = classify_map(one_arrow(R(1), R(5)));
    EXPECT_EQ(b.kind, MapClass::bounded);
    EXPECT_EQ(b.norm.value().exact(), 5);
}

TEST(TensorGraded, ThreeModes) {
    GradedSet A{{"a", R(2)}}, B{{"b", R(3)}};
    EXPECT_EQ(tensor_graded(A, B, {TensorMode::mult, 1}).grade("(a,b)").exact(), 6);
    EXPECT_EQ(tensor_graded(A, B, {TensorMode::max, 1}).grade("(a,b)").exact(), 3);
    GradedSet C{{"a", R(3)}}, D{{"b", R(4)}};
    auto p2 = tensor_graded(C, D, {TensorMode::p_additive, Rational(2)}).grade("(a,b)");
    ASSERT_TRUE(p2.is_exact());
    EXPECT_EQ(p2.exact(), 5);
}

TEST(TensorGraded, RejectsNonPositiveP) {
    GradedSet A{{"a", R(2)}};
    EXPECT_THROW(tensor_graded(A, A, {TensorMode::p_additive, Rational(0)}), std::invalid_argument);
    EXPECT_THROW(tensor_graded(A, A, {TensorMode::p_additive, Rational(-1)}), std::invalid_argument);
}

TEST(TensorGraded, SizeIsProduct) {
    GradedSet A{{"a", R(1)}, {"b", R(2)}}, B{{"c", R(1)}, {"d", R(1)}, {"e", R(3)}};
    EXPECT_EQ(tensor_graded(A, B, {}).size(), 6u);
}

TEST(CoeffNorms, L1Examples) {
    GradedSet X{{"x", R(1)}, {"y", R(1)}};
    auto a = CoeffVector::integers({{"x", 3}, {"y", 2}});
    EXPECT_EQ(l1_norm(a, X, BaseRing::Z_arch).exact(), 5);
    EXPECT_EQ(l1_norm(a, X, BaseRing::Z_triv).exact(), 2);
    GradedSet X2{{"x", R(2)}};
    EXPECT_EQ(l1_norm(CoeffVector::integers({{"x", 3}}), X2, BaseRing::Z_arch).exact(), 6);
}

TEST(CoeffNorms, LinfExamples) {
    GradedSet X{{"x", R(1)}, {"y", R(1)}};
    EXPECT_EQ(linf_norm(CoeffVector::integers({{"x", 3}, {"y", 2}}), X, BaseRing::Z_arch).exact(), 3);
    EXPECT_EQ(linf_norm(CoeffVector(), X, BaseRing::Z_arch).exact(), 0);
    GradedSet X2{{"x", R(4)}, {"y", R(1)}};
    EXPECT_EQ(linf_norm(CoeffVector::integers({{"x", 1}, {"y", 5}}), X2, BaseRing::Z_arch).exact(), 5);
}

TEST(CoeffNorms, SupportOutsideGradedSetThrows) {
    GradedSet X{{"x", R(1)}};
    EXPECT_THROW(l1_norm(CoeffVector::integers({{"z", 1}}), X, BaseRing::Z_arch), std::invalid_argument);
}

TEST(CoeffNorms, RationalEntriesNeedRationalBase) {
    GradedSet X{{"x", R(1)}};
    CoeffVector a(false, {{"x", Rational(1, 2)}});
    EXPECT_THROW(l1_norm(a, X, BaseRing::Z_arch), std::invalid_argument);
    EXPECT_EQ(l1_norm(a, X, BaseRing::Q_triv).exact(), 1);
}

TEST(Pushforward, IsContractionForContractingMaps) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> g(1, 6), c(-5, 5);
    for (int trial = 0; trial < 200; ++trial) {
        GradedSet X{{"a", R(g(rng))}, {"b", R(g(rng))}, {"c", R(g(rng))}};
        GradedSet Y{{"u", R(g(rng))}, {"v", R(g(rng))}};
        std::map<Label, Label> f{{"a", rng() % 2 ? "u" : "v"}, {"b", rng() % 2 ? "u" : "v"}, {"c", "u"}};
        GradedMap F(X, Y, f);
        auto a = CoeffVector::integers({{"a", c(rng)}, {"b", c(rng)}, {"c", c(rng)}});
        Real lhs = l1_norm(pushforward(F, a), Y, BaseRing::Z_arch);
        Real rhs = operator_norm(F).value() * l1_norm(a, X, BaseRing::Z_arch);
        EXPECT_TRUE(leq(lhs, rhs)) << lhs.str() << " > " << rhs.str();
    }
}

TEST(Pushforward, MergesCoefficients) {
    GradedSet X{{"a", R(1)}, {"b", R(1)}}, Y{{"u", R(1)}};
    auto out = pushforward(GradedMap(X, Y, {{"a", "u"}, {"b", "u"}}), CoeffVector::integers({{"a", 2}, {"b", -2}}));
    EXPECT_TRUE(out.is_zero());
}

TEST(RhoFilter, KnownCounterexample) {
    EXPECT_TRUE(rho_filter_membership(vec({1, 1, 2}), R(2), BaseRing::Z_arch));
    EXPECT_TRUE(rho_filter_membership(vec({0, 0, -1}), R(2), BaseRing::Z_arch));
    EXPECT_FALSE(rho_filter_membership(vec({1, 1, 1}), R(2), BaseRing::Z_arch));
}

TEST(RhoFilter, ZeroVectorIsInEveryLevel) { EXPECT_TRUE(rho_filter_membership(CoeffVector(), R(0), BaseRing::Z_arch)); }

TEST(RhoFilter, SupportCap) {
    std::vector<long> big(13, 1);
    EXPECT_THROW(rho_filter_membership(vec(big), R(2), BaseRing::Z_arch), std::length_error);
}

TEST(RhoFilter, AgreesWithOracleOnRandomVectors) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> c(-3, 3), len(1, 5), rho(1, 4);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<long> xs(static_cast<std::size_t>(len(rng)));
        for (auto& x : xs) x = c(rng);
        std::vector<long> support;
        for (long x : xs)
            if (x) support.push_back(x);
        long r = rho(rng);
        EXPECT_EQ(rho_filter_membership(vec(xs), R(r), BaseRing::Z_arch), filtration_oracle(support, r));
    }
}

TEST(RhoFilter, NestingAndScaling) {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<long> c(-4, 4), len(1, 5);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<long> xs(static_cast<std::size_t>(len(rng)));
        for (auto& x : xs) x = c(rng);
        for (long r = 1; r < 5; ++r)
            if (rho_filter_membership(vec(xs), R(r), BaseRing::Z_arch)) {
                EXPECT_TRUE(rho_filter_membership(vec(xs), R(r + 1), BaseRing::Z_arch));
            }
        bool in2 = rho_filter_membership(vec(xs), R(2), BaseRing::Z_arch);
        for (long k : {-3L, 2L, 5L}) {
            std::vector<long> ys = xs;
            for (auto& y : ys) y *= k;
            EXPECT_EQ(rho_filter_membership(vec(ys), R(2), BaseRing::Z_arch), in2);
        }
    }
}

TEST(RhoFilter, TrivialNormAcceptsEverythingAtLevelOne) {
    EXPECT_TRUE(rho_filter_membership(vec({1, 1, 1}), R(1), BaseRing::Z_triv));
    EXPECT_TRUE(rho_filter_membership(vec({3, -3, 2}), R(1), BaseRing::Z_triv));
}

TEST(MonomialGradingTest, Examples) {
    EXPECT_EQ(monomial_grading(Monomial::variable("T", 2), {{"T", Rational(3)}}).exact(), 9);
    EXPECT_EQ(monomial_grading(Monomial{}, {}).exact(), 1);
    auto m = Monomial::variable("X") * Monomial::variable("Y", 2);
    EXPECT_EQ(monomial_grading(m, {{"X", Rational(2)}, {"Y", Rational(1, 2)}}).exact(), Rational(1, 2));
}

TEST(MonomialGradingTest, MissingRadiusThrows) {
    EXPECT_THROW(monomial_grading(Monomial::variable("S"), {{"T", Rational(1)}}), std::invalid_argument);
}

TEST(MonomialGradingTest, IsMultiplicative) {
    Radii r{{"X", Rational(3, 2)}, {"Y", Rational(2, 5)}};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            auto m = Monomial::variable("X", a) * Monomial::variable("Y", b);
            auto n = Monomial::variable("X", b) * Monomial::variable("Y", a + 1);
            EXPECT_EQ(monomial_grading(m * n, r).exact(),
                      monomial_grading(m, r).exact() * monomial_grading(n, r).exact());
        }
}
