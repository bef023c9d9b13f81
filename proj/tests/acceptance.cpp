// Acceptance run: one PASS/FAIL line per criterion, each with its
// tolerance and time limit. Exits 1 if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "berkring/berkring.hpp"
#include "oracles.hpp"

using namespace berkring;

namespace {

struct Outcome {
    bool ok = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double limit_ms;
    std::function<Outcome()> run;
};

Poly P(const char* s) { return parse_expression(s); }

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

// Violations whose relative excess is within `slack`, as allowed for
// floating-point norms, are not counted.
std::size_t hard_violations(const AxiomReport& r, double slack) {
    std::size_t n = 0;
    for (const auto& v : r.violations)
        if (v.axiom == "nonnegative" || v.axiom == "zero" || v.lhs - v.rhs > slack * std::max(1.0, std::fabs(v.rhs)))
            ++n;
    return n;
}

CoeffVector vec(std::initializer_list<long> xs) {
    std::map<Label, Rational> m;
    long i = 0;
    for (long x : xs) m["x" + std::to_string(i++)] = Rational(x);
    return CoeffVector(true, m);
}

// 1 ------------------------------------------------------------------------
Outcome filtration() {
    bool a = rho_filter_membership(vec({1, 1, 2}), Real(2), BaseRing::Z_arch);
    bool b = rho_filter_membership(vec({0, 0, -1}), Real(2), BaseRing::Z_arch);
    bool c = !rho_filter_membership(vec({1, 1, 1}), Real(2), BaseRing::Z_arch);
    return {a && b && c, std::string("(1,1,2) ") + (a ? "in" : "OUT") + ", (0,0,-1) " + (b ? "in" : "OUT") +
                             ", (1,1,1) " + (c ? "out" : "IN")};
}

// 2 ------------------------------------------------------------------------
Outcome axioms() {
    const std::size_t N = 1000;
    const double slack = 1e-9;
    std::mt19937_64 rng(2024);
    const Radii r1{{"T", Rational(1)}}, r32{{"T", Rational(3, 2)}};
    std::vector<Poly> polys;
    for (std::size_t i = 0; i < N; ++i) polys.push_back(oracle::random_poly(rng, 4, 9));
    std::uniform_int_distribution<long> num(-50, 50), den(1, 20);
    std::vector<Rational> rats;
    for (std::size_t i = 0; i < N; ++i) rats.push_back(make_rational(num(rng), den(rng)));
    std::vector<Rational> ints;
    for (std::size_t i = 0; i < N; ++i) ints.push_back(Rational(num(rng)));

    std::string detail;
    std::size_t bad = 0, checked = 0;
    auto tally = [&](const char* name, const AxiomReport& rep, double s) {
        std::size_t v = hard_violations(rep, s);
        bad += v;
        checked += rep.checked;
        if (v) detail += std::string(name) + ":" + std::to_string(v) + " ";
    };
    tally("l1", seminorm_axiom_report([&](const Poly& f) { return l1_norm(f, r32, BaseRing::Z_arch); }, polys), 0);
    tally("linf(module)",
          module_seminorm_axiom_report(
              [&](const Poly& f) { return linf_norm(f, r32, BaseRing::Z_arch); }, polys, ints,
              [](const Rational& k, const Poly& f) { return f.scaled(k); },
              [](const Rational& k) { return base_norm_eval(BaseRing::Z_arch, k); }),
          0);
    tally("gauss", seminorm_axiom_report([&](const Poly& f) { return linf_norm(f, r32, BaseRing::Z_triv); }, polys), 0);
    tally("trivial", seminorm_axiom_report([](const Rational& q) { return base_norm_eval(BaseRing::Q_triv, q); }, rats),
          0);
    for (auto eps : {Rational(1), Rational(1, 2), Rational(1, 7)}) {
        auto x = SpectrumPoint::archimedean(eps);
        tally("archimedean", seminorm_axiom_report([&](const Rational& q) { return x.norm(q); }, rats), slack);
    }
    tally("spectral",
          seminorm_axiom_report([&](const Poly& f) { return spectral_norm(f, r1, BaseRing::Z_arch).value; }, polys),
          slack);
    return {bad == 0, std::to_string(checked) + " checks, " + (bad ? "violations " + detail : "no violations")};
}

// 3 ------------------------------------------------------------------------
Outcome power_multiplicative() {
    std::mt19937_64 rng(3);
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
        Poly f = oracle::random_poly(rng, 4, 9);
        for (auto rho : {Rational(1, 2), Rational(1), Rational(2)}) {
            Radii r{{"T", rho}};
            double a = spectral_norm(f, r, BaseRing::Z_arch).value.value();
            double b = spectral_norm(f * f, r, BaseRing::Z_arch).value.value();
            worst = std::max(worst, std::fabs(b - a * a) / (a * a));
        }
    }
    return {worst <= 1e-6, fmt("150 cases, max relative error %.2e (tol 1e-6)", worst)};
}

// 4 ------------------------------------------------------------------------
Outcome oracle_agreement() {
    std::mt19937_64 rng(4);
    const Rational rhos[] = {Rational(1, 2), Rational(1), Rational(2)};
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
        Poly f = oracle::random_poly(rng, 4, 9);
        Rational rho = rhos[i % 3];
        double s = spectral_norm(f, {{"T", rho}}, BaseRing::Z_arch).value.value();
        double o = oracle::spectral(f, rho.get_d(), BaseRing::Z_arch, 1000, 1000, 50);
        worst = std::max(worst, std::fabs(s - o) / o);
    }
    return {worst <= 0.01, fmt("20 polynomials, max relative gap %.2e (tol 1e-2)", worst)};
}

// 5 ------------------------------------------------------------------------
Outcome domain_examples() {
    SamplingDensity d;
    d.eps_grid = 16;
    d.prime_cutoff = 13;
    RationalDomainSpec zp{AffinoidPresentation(BaseRing::Z_triv, {}), {{Poly(1), 1}, {Poly(2), Rational(1, 2)}},
                          std::nullopt, {}};
    RationalDomainSpec re{AffinoidPresentation(BaseRing::Z_arch, {}), {{Poly(2), 1}, {Poly(1), Rational(1, 2)}},
                          std::nullopt, {}};
    std::size_t n = 0, zp_in = 0, wrong = 0;
    for (const auto& x : sample_spectrum(AffinoidPresentation(BaseRing::Z_arch, {}), d)) {
        ++n;
        const auto& b = x.base;
        bool tail = (b.kind() == SpectrumPoint::Kind::padic && b.prime() == 2 && b.eps() >= 1) ||
                    b == SpectrumPoint::residue(2);
        if (!b.archimedean_kind()) {
            bool in = domain_membership(x, zp);
            zp_in += in;
            wrong += in != tail;
        }
        wrong += domain_membership(x, re) != (b == SpectrumPoint::archimedean(1));
    }
    return {wrong == 0, std::to_string(n) + " base points, Z_2 domain holds at " + std::to_string(zp_in) +
                            ", mismatches " + std::to_string(wrong)};
}

// 6 ------------------------------------------------------------------------
SamplingDensity refinement_density() {
    SamplingDensity d;
    d.gauss_radius_grid = 16;
    d.random_points = 60;
    d.seed = 6;
    d.centers = {Rational(1), Rational(-1), Rational(2), Rational(-2), Rational(1, 2), Rational(-1, 2),
                 Rational(3), Rational(1, 3), Rational(3, 2), Rational(2, 3)};
    return d;
}

Outcome refinements() {
    std::mt19937_64 rng(6);
    std::size_t min_points = SIZE_MAX;
    int failures = 0;
    const auto density = refinement_density();

    // unit coverings in Q[T, U]/(TU - 1) with radii 2
    AffinoidPresentation U(BaseRing::Q_triv, {{"T", 2}, {"U", 2}}, false, {P("T*U - 1")});
    auto upts = sample_spectrum(U, density);
    min_points = std::min(min_points, upts.size());
    const Poly units[] = {P("T"), P("U"), P("T^2"), P("2*U"), Poly(3), Poly(Rational(1, 2)), P("3*T"), P("U^2")};
    const Rational radii[] = {Rational(1, 2), Rational(1), Rational(2)};
    for (int k = 0; k < 10; ++k) {
        std::size_t n = 1 + rng() % 3;
        std::vector<DomainPair> gens;
        for (std::size_t i = 0; i < n; ++i) gens.push_back({units[rng() % 8], radii[rng() % 3]});
        auto c = standard_covering(gens, U);
        std::vector<std::optional<Poly>> inv(n);
        for (std::size_t i = 0; i < n; ++i) {
            const Poly& f = gens[i].f;
            if (f == P("T")) inv[i] = P("U");
            if (f == P("U")) inv[i] = P("T");
            if (f == P("T^2")) inv[i] = P("U^2");
            if (f == P("U^2")) inv[i] = P("T^2");
            if (f == P("2*U")) inv[i] = P("T/2");
            if (f == P("3*T")) inv[i] = P("U/3");
        }
        auto r = refine_units_to_laurent(c, inv);
        if (!check_refinement(r.laurent, c, upts).ok) ++failures;
    }

    // standard coverings of Q[T]
    AffinoidPresentation A(BaseRing::Q_triv, {{"T", 1}});
    auto apts = sample_spectrum(A, density);
    min_points = std::min(min_points, apts.size());
    int built = 0;
    while (built < 10) {
        std::size_t n = 2 + rng() % 2;
        std::vector<DomainPair> gens;
        for (std::size_t i = 0; i < n; ++i) gens.push_back({oracle::random_poly(rng, 2, 3), radii[rng() % 3]});
        Covering c;
        try {
            c = standard_covering(gens, A);
        } catch (const UnitIdealError&) {
            continue;
        }
        ++built;
        auto r = refine_rational_to_laurent(c, density);
        if (!r.verified || !check_surviving_generators(r, c.generators, apts).ok) ++failures;
    }
    bool ok = failures == 0 && min_points >= 500;
    return {ok, "20 coverings, " + std::to_string(failures) + " failures, >= " + std::to_string(min_points) +
                    " sampled points each (need 500)"};
}

// 7 ------------------------------------------------------------------------
Outcome tate() {
    AffinoidPresentation A(BaseRing::Q_triv, {{"T", 1}});
    std::string detail;
    bool ok = true;
    for (const char* f : {"T", "T^2", "T-1", "T^2-T"}) {
        auto rep = check_exactness(cech_complex(laurent_covering({{P(f), 1}}, A)), 6);
        ok = ok && rep.exact;
        if (!rep.exact) detail += std::string(f) + " fails at " + rep.stage + "; ";
    }
    auto B = parse_algebra("Q[T,S]/(S^2-T)");
    auto two = check_exactness(cech_complex(laurent_covering({{P("S"), 1}}, B)), 6);
    ok = ok && two.exact;
    if (!two.exact) detail += "Q[T,S]/(S^2-T) fails; ";
    auto broken = check_exactness(cech_complex(without_member(laurent_covering({{P("T"), 1}}, A), 0)), 6);
    bool caught = !broken.exact && broken.witness.has_value();
    ok = ok && caught;
    detail += "4 one-variable cases and Q[T,S]/(S^2-T) exact; broken complex " +
              (caught ? "fails at " + broken.stage + " with witness " + *broken.witness : std::string("NOT caught"));
    return {ok, detail};
}

// 8 ------------------------------------------------------------------------
Outcome chart() {
    SamplingDensity d;
    d.eps_grid = 2;
    d.prime_cutoff = 0;
    auto pts = restrict_to_branch(annulus_samples(BaseRing::Z_arch, 32, d), SpectrumPoint::Kind::archimedean);
    std::mt19937_64 rng(8);
    double worst = 0;
    for (int i = 0; i < 10; ++i) {
        Poly f = oracle::random_poly(rng, 6, 9, "X0") * Poly::term(Monomial::variable("X0", -3), 1);
        worst = std::max(worst, chart_isometry_check(f, pts).max_discrepancy);
    }
    return {pts.size() == 64 && worst < 1e-9,
            fmt("%.0f samples x 10 Laurent polynomials, max discrepancy %.2e (tol 1e-9)", double(pts.size()), worst)};
}

// 9 ------------------------------------------------------------------------
Outcome base_change_sanity() {
    Radii r{{"T", Rational(1)}};
    double arch = spectral_norm(P("1+T"), r, BaseRing::Z_arch).value.value();
    auto triv = spectral_norm(P("1+T"), r, BaseRing::Z_triv).value;
    auto A = parse_algebra("Z[T,S]/(S^2-T)", BaseRing::Z_arch);
    bool same_pres = base_change(A, BaseRing::Z_arch) == A;
    bool ok = std::fabs(arch - 2) < 1e-9 && triv.is_exact() && triv.exact() == 1 && same_pres;
    return {ok, fmt("Z_arch %.9f, Z_triv %.0f, ", arch, triv.value()) + (same_pres ? "identity preserved" : "CHANGED")};
}

// 10 -----------------------------------------------------------------------
Outcome uniformization() {
    std::mt19937_64 rng(10);
    Radii r{{"T", Rational(1)}};
    int nonmono = 0;
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        Poly f = oracle::random_poly(rng, 4, 9);
        auto rep = uniformization_estimate(f, r, BaseRing::Z_arch, 64);
        nonmono += !rep.dyadic_monotone;
        double s = spectral_norm(f, r, BaseRing::Z_arch).value.value();
        worst = std::max(worst, std::fabs(rep.estimate - s) / s);
    }
    return {nonmono == 0 && worst <= 0.05,
            fmt("100 instances, %.0f non-monotone, max gap at n=64 %.3f (tol 0.05)", nonmono, worst)};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "filtration counterexample", 1.0, filtration},
        {2, "seminorm axiom suite", 5000.0, axioms},
        {3, "power-multiplicativity of the spectral norm", 30000.0, power_multiplicative},
        {4, "spectral norm vs dense sampling oracle", 120000.0, oracle_agreement},
        {5, "Z_p and R as rational domains", 1000.0, domain_examples},
        {6, "refinement lemmas", 60000.0, refinements},
        {7, "Tate acyclicity", 60000.0, tate},
        {8, "P^1 chart isometry", 5000.0, chart},
        {9, "base change", 1000.0, base_change_sanity},
        {10, "uniformization monotonicity", 60000.0, uniformization},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        bool pass = o.ok && ms <= c.limit_ms;
        failed += !pass;
        std::printf("%s %2d %s: %s [%.3f ms, limit %.0f ms]\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(),
                    o.detail.c_str(), ms, c.limit_ms);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
