#pragma once

// Standard and Laurent coverings, the two refinements to Laurent coverings,
// and pointwise verification on sampled spectra.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "berkring/affinoid.hpp"
#include "berkring/groebner.hpp"
#include "berkring/spectrum.hpp"

namespace berkring {

enum class CoveringKind { standard, laurent, custom };

inline std::string_view name(CoveringKind k) {
    switch (k) {
        case CoveringKind::standard: return "standard";
        case CoveringKind::laurent: return "laurent";
        case CoveringKind::custom: return "custom";
    }
    return "?";
}

/// An intersection of rational domains of the same parent; no factors means
/// the whole space. Laurent members record their sign vector.
struct Domain {
    std::vector<RationalDomainSpec> factors;
    std::vector<int> signs;
};

struct Covering {
    AffinoidPresentation parent;
    CoveringKind kind = CoveringKind::custom;
    std::vector<Domain> members;
    std::vector<DomainPair> generators;
};

inline bool domain_membership(const FiberPoint& x, const Domain& d) {
    for (const auto& f : d.factors)
        if (!domain_membership(x, f)) return false;
    return true;
}

/// The algebra of an intersection: each factor is adjoined on top of the
/// previous one. `new_names` receives all adjoined variables.
inline AffinoidPresentation domain_algebra(const Domain& d, std::vector<std::string>* new_names = nullptr) {
    if (new_names) new_names->clear();
    if (d.factors.empty()) throw std::invalid_argument("domain without factors has no recorded parent");
    AffinoidPresentation cur = d.factors.front().parent;
    for (const auto& f : d.factors) {
        RationalDomainSpec g = f;
        g.parent = cur;
        std::vector<std::string> names;
        cur = rational_domain_algebra(g, &names);
        if (new_names) new_names->insert(new_names->end(), names.begin(), names.end());
    }
    return cur;
}

inline AffinoidPresentation member_algebra(const Covering& c, std::size_t i,
                                           std::vector<std::string>* new_names = nullptr) {
    if (c.members.at(i).factors.empty()) {
        if (new_names) new_names->clear();
        return c.parent;
    }
    return domain_algebra(c.members[i], new_names);
}

/// Member i is D(f_i, rho_i | f_0, rho_0, ..., f_n, rho_n) with f_i omitted
/// from the tail.
inline Covering standard_covering(const std::vector<DomainPair>& gens, const AffinoidPresentation& parent,
                                  const std::optional<std::vector<Poly>>& certificate = std::nullopt) {
    if (gens.empty()) throw std::invalid_argument("a standard covering needs at least one generator");
    std::vector<Poly> fs;
    for (const auto& g : gens) {
        if (g.rho <= 0) throw std::invalid_argument("radii must be positive");
        fs.push_back(g.f);
    }
    UnitIdeal u = validate_unit_ideal(fs, parent, certificate);
    if (u != UnitIdeal::unit)
        throw UnitIdealError("generators of a standard covering must generate the unit ideal (" +
                             std::string(name(u)) + ")");
    Covering c{parent, CoveringKind::standard, {}, gens};
    for (std::size_t i = 0; i < gens.size(); ++i) {
        RationalDomainSpec d{parent, {gens[i]}, std::nullopt, {}};
        std::optional<std::vector<Poly>> cert;
        if (certificate) cert = std::vector<Poly>{(*certificate)[i]};
        for (std::size_t j = 0; j < gens.size(); ++j) {
            if (j == i) continue;
            d.pairs.push_back(gens[j]);
            if (cert) cert->push_back((*certificate)[j]);
        }
        if (cert)
            for (std::size_t k = gens.size(); k < certificate->size(); ++k) cert->push_back((*certificate)[k]);
        d.certificate = cert;
        c.members.push_back({{std::move(d)}, {}});
    }
    return c;
}

/// The 2^n members over sign vectors, +1 before -1 in each position with the
/// first pair varying slowest. Sign +1 is |f| <= rho, sign -1 is |f| >= rho.
inline Covering laurent_covering(const std::vector<DomainPair>& pairs, const AffinoidPresentation& parent) {
    if (pairs.size() > 20) throw std::invalid_argument("too many Laurent pairs");
    for (const auto& p : pairs) {
        if (p.rho <= 0) throw std::invalid_argument("radii must be positive");
        parent.check_element(p.f);
    }
    Covering c{parent, CoveringKind::laurent, {}, pairs};
    const std::size_t n = pairs.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        Domain d;
        for (std::size_t i = 0; i < n; ++i) {
            bool minus = (mask >> (n - 1 - i)) & 1;
            std::string suffix = n == 1 ? "" : std::to_string(i + 1);
            RationalDomainSpec s{parent, {}, std::nullopt, {}};
            if (!minus) {
                s.pairs = {{Poly(1), Rational(1)}, pairs[i]};
                s.names = {"X" + suffix};
            } else {
                s.pairs = {pairs[i], {Poly(1), Rational(1)}};
                s.names = {"Y" + suffix};
            }
            d.factors.push_back(std::move(s));
            d.signs.push_back(minus ? -1 : 1);
        }
        c.members.push_back(std::move(d));
    }
    return c;
}

inline Covering without_member(const Covering& c, std::size_t i) {
    if (i >= c.members.size()) throw std::out_of_range("no such member");
    Covering out = c;
    out.kind = CoveringKind::custom;
    out.members.erase(out.members.begin() + static_cast<std::ptrdiff_t>(i));
    return out;
}

// ---------------------------------------------------------------------------
// Verification

struct CoverReport {
    bool ok = true;
    std::optional<FiberPoint> witness;
    std::size_t points = 0;
};

/// Whether every point lies in some member; otherwise an uncovered point.
inline CoverReport check_is_covering(const Covering& c, const std::vector<FiberPoint>& points, unsigned jobs = 1) {
    auto covered = parallel_map<char>(points.size(), jobs, [&](std::size_t k) -> char {
        for (const auto& m : c.members)
            if (domain_membership(points[k], m)) return 1;
        return 0;
    });
    CoverReport r{true, std::nullopt, points.size()};
    for (std::size_t k = 0; k < points.size(); ++k)
        if (!covered[k]) {
            r.ok = false;
            r.witness = points[k];
            break;
        }
    return r;
}

struct RefinementReport {
    bool ok = true;
    std::vector<std::optional<std::size_t>> target;  ///< a coarse member containing each fine member
    std::optional<std::size_t> failing_member;
    std::optional<FiberPoint> witness;
};

/// For every fine member V some coarse member U contains all sampled points
/// of V. On failure, names a fine member and one of its points outside the
/// first coarse member.
inline RefinementReport check_refinement(const Covering& fine, const Covering& coarse,
                                         const std::vector<FiberPoint>& points, unsigned jobs = 1) {
    if (!(fine.parent == coarse.parent)) throw std::invalid_argument("coverings of different parents");
    auto in = [&](const Covering& c) {
        return parallel_map<std::vector<char>>(points.size(), jobs, [&](std::size_t k) {
            std::vector<char> row;
            for (const auto& m : c.members) row.push_back(domain_membership(points[k], m) ? 1 : 0);
            return row;
        });
    };
    auto fin = in(fine), crs = in(coarse);
    RefinementReport r;
    for (std::size_t v = 0; v < fine.members.size(); ++v) {
        std::optional<std::size_t> hit;
        for (std::size_t u = 0; u < coarse.members.size() && !hit; ++u) {
            bool all = true;
            for (std::size_t k = 0; k < points.size() && all; ++k)
                if (fin[k][v] && !crs[k][u]) all = false;
            if (all) hit = u;
        }
        r.target.push_back(hit);
        if (!hit && r.ok) {
            r.ok = false;
            r.failing_member = v;
            for (std::size_t k = 0; k < points.size(); ++k)
                if (fin[k][v] && (coarse.members.empty() || !crs[k][0])) {
                    r.witness = points[k];
                    break;
                }
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Rational coverings refined by Laurent coverings

struct RationalRefinement {
    Rational c;
    InfMaxResult estimate;
    Covering laurent;
    std::vector<std::vector<std::size_t>> surviving;  ///< per member: indices with sign -1
    int retries = 0;
    bool verified = false;
    std::optional<FiberPoint> witness;  ///< a point violating the last attempt
};

struct SurvivorReport {
    bool ok = true;
    std::optional<std::size_t> member;
    std::optional<FiberPoint> witness;
};

/// On every member V and sampled x in V: max over eliminated indices of
/// rho_i^-1 |f_i(x)| is <= c^-1 < max over surviving indices.
inline SurvivorReport check_surviving_generators(const RationalRefinement& r, const std::vector<DomainPair>& gens,
                                                 const std::vector<FiberPoint>& points) {
    Real cinv(Rational(1 / r.c));
    for (std::size_t m = 0; m < r.laurent.members.size(); ++m) {
        const auto& signs = r.laurent.members[m].signs;
        for (const auto& x : points) {
            if (!domain_membership(x, r.laurent.members[m])) continue;
            Real eliminated(0), surviving(0);
            for (std::size_t i = 0; i < gens.size(); ++i) {
                Real v = eval_point(gens[i].f, x) / Real(gens[i].rho);
                if (signs[i] < 0)
                    surviving = max(surviving, v);
                else
                    eliminated = max(eliminated, v);
            }
            if (!leq(eliminated, cinv) || !less(cinv, surviving)) return {false, m, x};
        }
    }
    return {};
}

/// Picks c = 2 / inf_x max rho_i^-1 |f_i(x)| from a sampled estimate and
/// returns the Laurent covering generated by (f_i, rho_i / c). When a sampled
/// point contradicts c^-1 < max_i rho_i^-1 |f_i(x)|, c is doubled and the
/// covering rebuilt, at most `max_retries` times.
inline RationalRefinement refine_rational_to_laurent(const Covering& c, const SamplingDensity& density = {},
                                                     unsigned jobs = 1, int max_retries = 8) {
    if (c.kind != CoveringKind::standard) throw std::invalid_argument("expected a standard covering");
    std::vector<Poly> fs;
    std::vector<Rational> rhos;
    for (const auto& g : c.generators) {
        fs.push_back(g.f);
        rhos.push_back(g.rho);
    }
    RationalRefinement r;
    r.estimate = inf_max(fs, rhos, c.parent, density, jobs);
    const Real& a = r.estimate.value;
    if (a.is_exact() ? a.exact() == 0 : a.value() <= 0)
        throw std::domain_error("generators have a common zero on the sample; they cannot generate the unit ideal");
    Rational alpha = a.is_exact() ? a.exact() : Rational(a.value());
    r.c = 2 / alpha;
    auto points = sample_spectrum(c.parent, density);
    for (r.retries = 0;; ++r.retries) {
        std::vector<DomainPair> pairs;
        if (c.generators.size() > 1)
            for (const auto& g : c.generators) pairs.push_back({g.f, g.rho / r.c});
        r.laurent = laurent_covering(pairs, c.parent);
        r.surviving.clear();
        for (const auto& m : r.laurent.members) {
            std::vector<std::size_t> s;
            for (std::size_t i = 0; i < m.signs.size(); ++i)
                if (m.signs[i] < 0) s.push_back(i);
            r.surviving.push_back(std::move(s));
        }
        if (pairs.empty()) {
            r.verified = true;
            return r;
        }
        auto rep = check_surviving_generators(r, c.generators, points);
        if (rep.ok) {
            r.verified = true;
            r.witness.reset();
            return r;
        }
        r.witness = rep.witness;
        if (r.retries >= max_retries) return r;
        r.c *= 2;
    }
}

// ---------------------------------------------------------------------------
// Coverings by units refined by Laurent coverings

struct UnitRefinement {
    Covering laurent;
    std::vector<std::pair<std::size_t, std::size_t>> index_pairs;  ///< (i, j), i < j, per Laurent pair
    std::vector<Poly> inverses;
    std::vector<std::size_t> target;  ///< per Laurent member, a containing member of the input
};

inline bool is_inverse(const Poly& f, const Poly& g, const AffinoidPresentation& a) {
    Poly d = f * g - Poly(1);
    if (d.is_zero()) return true;
    if (a.relations().empty()) return false;
    return IdealBasis(variable_order(a.var_names(), a.relations()), a.relations()).contains(d);
}

/// An inverse of f read off a relation of the form f*Y - 1 (or 1 - f*Y).
inline std::optional<Poly> inverse_from_relations(const Poly& f, const AffinoidPresentation& a) {
    for (const auto& r : a.relations())
        for (const auto& v : a.var_names()) {
            Poly y = Poly::variable(v);
            if (r == f * y - Poly(1) || r == Poly(1) - f * y) return y;
        }
    return std::nullopt;
}

/// For generators that are units of the parent, the Laurent covering by
/// (f_i g_j, rho_i / rho_j), i < j, with g_j an inverse of f_j. `inverses`
/// may supply some or all inverses; the rest are read off the relations.
inline UnitRefinement refine_units_to_laurent(const Covering& c,
                                              const std::vector<std::optional<Poly>>& inverses = {}) {
    if (c.kind != CoveringKind::standard) throw std::invalid_argument("expected a standard covering");
    const std::size_t n = c.generators.size();
    if (!inverses.empty() && inverses.size() != n) throw std::invalid_argument("one inverse slot per generator");
    UnitRefinement r;
    for (std::size_t j = 0; j < n; ++j) {
        const Poly& f = c.generators[j].f;
        std::optional<Poly> g = inverses.empty() ? std::nullopt : inverses[j];
        if (g) {
            c.parent.check_element(*g);
            if (!is_inverse(f, *g, c.parent))
                throw std::invalid_argument("supplied inverse of " + to_string(f) + " is wrong");
        } else {
            bool unit_constant = f.is_constant() && !f.is_zero() &&
                                 (!integral_coefficients(c.parent.base()) || abs(f.constant_term()) == 1);
            if (unit_constant)
                g = Poly(Rational(1 / f.constant_term()));
            else
                g = inverse_from_relations(f, c.parent);
        }
        if (!g) throw std::invalid_argument("missing invertibility witness for " + to_string(f));
        r.inverses.push_back(*g);
    }
    std::vector<DomainPair> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            pairs.push_back({c.generators[i].f * r.inverses[j], c.generators[i].rho / c.generators[j].rho});
            r.index_pairs.emplace_back(i, j);
        }
    r.laurent = laurent_covering(pairs, c.parent);
    // Sign +1 on (i, j) means rho_i^-1 |f_i| <= rho_j^-1 |f_j|: j wins. The
    // vertex with the most wins is maximal at every point of the member.
    for (const auto& m : r.laurent.members) {
        std::vector<int> wins(n, 0);
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            auto [i, j] = r.index_pairs[k];
            ++wins[m.signs[k] > 0 ? j : i];
        }
        std::size_t best = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (wins[i] > wins[best]) best = i;
        r.target.push_back(best);
    }
    return r;
}

}  // namespace berkring
