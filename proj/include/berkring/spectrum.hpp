#pragma once

// Finite witness sets of spectra, spectral norms and the inf of
// max_i rho_i^-1 |f_i(x)|.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <thread>
#include <vector>

#include "berkring/point.hpp"
#include "berkring/presentation.hpp"
#include "berkring/seminorm.hpp"

namespace berkring {

/// Runs fn(i) for i in [0, n) on `jobs` threads; results are stored by index
/// so the outcome does not depend on scheduling.
template <class R, class Fn>
std::vector<R> parallel_map(std::size_t n, unsigned jobs, Fn fn) {
    std::vector<R> out(n);
    if (jobs <= 1 || n < 64) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(jobs);
    for (unsigned t = 0; t < jobs; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < n; i += jobs) out[i] = fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

// ---------------------------------------------------------------------------
// Sampling

struct SamplingDensity {
    std::size_t eps_grid = 4;           ///< archimedean eps = j/N; p-adic eps = 2j/N (j = 1..N)
    unsigned prime_cutoff = 5;          ///< p-adic and residue branches for p <= P
    std::size_t torus_grid = 8;         ///< angles on each archimedean circle
    std::size_t radial_levels = 0;      ///< extra archimedean circles inside the boundary
    std::size_t gauss_radius_grid = 3;  ///< Gauss radii rho*j/G (j = 1..G)
    std::vector<Rational> centers = {Rational(1), Rational(-1), Rational(2), Rational(1, 2)};
    std::size_t random_points = 0;      ///< extra seeded points per fiber coordinate
    std::uint64_t seed = 0;
    std::size_t max_points = 500000;

    bool empty() const {
        return eps_grid == 0 && prime_cutoff < 2 && torus_grid == 0 && gauss_radius_grid == 0 && centers.empty() &&
               random_points == 0;
    }
};

inline std::vector<unsigned long> primes_up_to(unsigned long n) {
    std::vector<unsigned long> ps;
    for (unsigned long p = 2; p <= n; ++p)
        if (is_prime(p)) ps.push_back(p);
    return ps;
}

/// Base points of M(R) covered by the sample: the trivial point, p-adic
/// branches and residue points for p <= P, archimedean points over Z_arch.
inline std::vector<SpectrumPoint> sample_base_points(BaseRing base, const SamplingDensity& d) {
    std::vector<SpectrumPoint> out{SpectrumPoint::trivial()};
    if (base == BaseRing::Q_triv) return out;
    for (auto p : primes_up_to(d.prime_cutoff)) {
        for (std::size_t j = 1; j <= d.eps_grid; ++j)
            out.push_back(SpectrumPoint::padic(p, make_rational(static_cast<long>(2 * j), static_cast<long>(d.eps_grid))));
        out.push_back(SpectrumPoint::residue(p));
    }
    if (base == BaseRing::Z_arch)
        for (std::size_t j = 1; j <= d.eps_grid; ++j)
            out.push_back(SpectrumPoint::archimedean(make_rational(static_cast<long>(j), static_cast<long>(d.eps_grid))));
    return out;
}

namespace detail {

inline std::vector<Coord> fiber_coords(const SpectrumPoint& b, const Rational& rho, const SamplingDensity& d,
                                       std::mt19937_64& rng) {
    std::vector<Coord> out;
    if (b.archimedean_kind()) {
        double R = std::pow(rho.get_d(), 1.0 / b.eps().get_d());
        out.push_back(ComplexCoord{0.0});
        for (std::size_t level = 0; level <= d.radial_levels; ++level) {
            double r = R * static_cast<double>(d.radial_levels + 1 - level) / static_cast<double>(d.radial_levels + 1);
            for (std::size_t k = 0; k < d.torus_grid; ++k) {
                double th = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d.torus_grid);
                out.push_back(ComplexCoord{std::polar(r, th)});
            }
        }
        for (const auto& c : d.centers)
            if (std::fabs(c.get_d()) <= R) out.push_back(ComplexCoord{c.get_d()});
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (std::size_t k = 0; k < d.random_points; ++k) {
            double r = R * std::sqrt(unit(rng)), th = 2 * std::numbers::pi * unit(rng);
            out.push_back(ComplexCoord{std::polar(r, th)});
        }
        return out;
    }
    auto fits = [&](const Rational& c) {
        auto n = b.try_norm(c);
        return n && leq(*n, Real(rho));
    };
    out.push_back(CenterCoord{Rational(0)});
    for (std::size_t j = 1; j <= d.gauss_radius_grid; ++j)
        out.push_back(GaussCoord{Rational(0), Rational(rho * static_cast<long>(j) / static_cast<long>(d.gauss_radius_grid))});
    std::vector<Rational> centers = d.centers;
    std::uniform_int_distribution<long> num(-12, 12), den(1, 6);
    for (std::size_t k = 0; k < d.random_points; ++k) centers.push_back(make_rational(num(rng), den(rng)));
    for (const auto& c : centers) {
        if (c == 0 || !fits(c)) continue;
        out.push_back(CenterCoord{c});
        Real cn = b.norm(c);
        for (std::size_t j = 1; j <= d.gauss_radius_grid; ++j) {
            Rational r = rho * static_cast<long>(j) / static_cast<long>(d.gauss_radius_grid);
            // Gauss points around c with r >= |c| coincide with those around 0
            if (less(Real(r), cn)) out.push_back(GaussCoord{c, r});
        }
    }
    return out;
}

}  // namespace detail

/// A deterministic finite subset of M(A) for the given density and seed.
inline std::vector<FiberPoint> sample_spectrum(const AffinoidPresentation& alg, const SamplingDensity& d) {
    if (d.empty()) throw std::invalid_argument("empty sampling density");
    Elimination elim = eliminate(alg);
    std::mt19937_64 rng(d.seed);
    std::vector<FiberPoint> out;
    for (const auto& b : sample_base_points(alg.base(), d)) {
        std::vector<std::vector<Coord>> per_var;
        std::size_t total = 1;
        for (const auto& v : elim.free) {
            per_var.push_back(detail::fiber_coords(b, alg.radius(v), d, rng));
            total *= per_var.back().size();
        }
        if (out.size() + total > d.max_points)
            throw ResourceLimitError("sample exceeds " + std::to_string(d.max_points) + " points");
        std::vector<std::size_t> idx(per_var.size(), 0);
        for (std::size_t n = 0; n < total; ++n) {
            FiberPoint x;
            x.base = b;
            for (std::size_t i = 0; i < per_var.size(); ++i) x.coords.emplace(elim.free[i], per_var[i][idx[i]]);
            x.dependent = elim.dependent;
            if (elim.dependent.empty() || in_spectrum(x, alg)) out.push_back(std::move(x));
            for (std::size_t i = 0; i < idx.size(); ++i) {
                if (++idx[i] < per_var[i].size()) break;
                idx[i] = 0;
            }
        }
    }
    return out;
}

/// Keeps the points whose base point lies on the given branch family.
inline std::vector<FiberPoint> restrict_to_branch(const std::vector<FiberPoint>& pts, SpectrumPoint::Kind kind,
                                                  unsigned long prime = 0) {
    std::vector<FiberPoint> out;
    for (const auto& x : pts)
        if (x.base.kind() == kind && (prime == 0 || x.base.prime() == prime)) out.push_back(x);
    return out;
}

// ---------------------------------------------------------------------------
// Spectral norm

struct SpectralOptions {
    int eps_grid = 64;
    double eps_min = 1e-3;
    double eps_tolerance = 1e-9;
    int torus_grid = 256;
    std::size_t torus_budget = 65536;  ///< total grid points on multi-variable tori
};

struct SpectralResult {
    Real value;
    FiberPoint witness;
    std::string branch;
    double tolerance = 0.0;
};

namespace detail {

// f on the torus |z_v| = R_v, rescaled so the largest term has modulus 1.
class ScaledTorus {
public:
    ScaledTorus(const Poly& f, const std::vector<std::string>& vars, const std::vector<double>& log_radii) {
        std::vector<double> logs;
        for (const auto& [m, c] : f.terms()) {
            std::vector<int> e(vars.size(), 0);
            double lg = log_abs(c);
            for (std::size_t i = 0; i < vars.size(); ++i) {
                e[i] = m.exponent(vars[i]);
                lg += e[i] * log_radii[i];
            }
            exps_.push_back(e);
            logs.push_back(lg);
            signs_.push_back(c > 0 ? 1.0 : -1.0);
        }
        log_scale_ = logs.empty() ? 0.0 : *std::max_element(logs.begin(), logs.end());
        for (std::size_t k = 0; k < logs.size(); ++k) coef_.push_back(signs_[k] * std::exp(logs[k] - log_scale_));
        single_ = vars.size() == 1;
        if (single_) {
            int d = 0;
            for (const auto& e : exps_) d = std::max(d, e[0]);
            dense_.assign(static_cast<std::size_t>(d) + 1, 0.0);
            for (std::size_t k = 0; k < exps_.size(); ++k) dense_[static_cast<std::size_t>(exps_[k][0])] += coef_[k];
        }
    }

    /// |f / scale|^2 at the torus point with angles th.
    double abs2_at(const std::vector<double>& th) const {
        if (single_) return abs2_unit(std::polar(1.0, th[0]));
        std::complex<double> s = 0;
        for (std::size_t k = 0; k < coef_.size(); ++k) {
            double phase = 0;
            for (std::size_t i = 0; i < th.size(); ++i) phase += exps_[k][i] * th[i];
            s += std::polar(coef_[k], phase);
        }
        return std::norm(s);
    }

    /// |f / scale|^2 at w on the unit circle (one variable only).
    double abs2_unit(std::complex<double> w) const {
        double re = 0, im = 0;
        const double wr = w.real(), wi = w.imag();
        for (std::size_t k = dense_.size(); k-- > 0;) {
            double t = re * wr - im * wi + dense_[k];
            im = re * wi + im * wr;
            re = t;
        }
        return re * re + im * im;
    }

    /// log |f| from a value of abs2_at.
    double log_from_abs2(double a2) const { return a2 == 0.0 ? -INFINITY : 0.5 * std::log(a2) + log_scale_; }

    /// log |f| at the torus point with angles th.
    double log_abs_at(const std::vector<double>& th) const { return log_from_abs2(abs2_at(th)); }

    bool single() const { return single_; }

private:
    std::vector<std::vector<int>> exps_;
    std::vector<double> coef_, signs_, dense_;
    double log_scale_ = 0.0;
    bool single_ = false;
};

// Golden-section maximization of a unimodal-ish function on [a, b].
template <class F>
std::pair<double, double> golden_max(F f, double a, double b, double tol) {
    const double g = (std::sqrt(5.0) - 1) / 2;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    while (std::fabs(b - a) > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    double x = (a + b) / 2;
    double fx = f(x);
    if (fc > fx) { x = c; fx = fc; }
    if (fd > fx) { x = d; fx = fd; }
    return {x, fx};
}

// Unit roots exp(2 pi i k / n), cached per thread.
inline const std::vector<std::complex<double>>& unit_roots(std::size_t n) {
    thread_local std::map<std::size_t, std::vector<std::complex<double>>> cache;
    auto& w = cache[n];
    if (w.empty())
        for (std::size_t k = 0; k < n; ++k)
            w.push_back(std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n)));
    return w;
}

// max over the torus of log |f|, grid search plus local refinement.
inline std::pair<double, std::vector<double>> torus_max(const ScaledTorus& t, std::size_t nvars,
                                                        const SpectralOptions& o) {
    const double two_pi = 2 * std::numbers::pi;
    if (nvars == 0) return {t.log_abs_at({}), {}};
    std::size_t per = nvars == 1 ? static_cast<std::size_t>(o.torus_grid)
                                 : std::max<std::size_t>(8, static_cast<std::size_t>(std::pow(
                                                                static_cast<double>(o.torus_budget), 1.0 / nvars)));
    std::size_t total = 1;
    for (std::size_t i = 0; i < nvars; ++i) total *= per;
    std::vector<double> th(nvars, 0.0);
    auto angles_of = [&](std::size_t n) {
        std::vector<double> a(nvars);
        for (std::size_t i = 0; i < nvars; ++i, n /= per)
            a[i] = two_pi * static_cast<double>(n % per) / static_cast<double>(per);
        return a;
    };
    std::vector<std::pair<double, std::size_t>> top;
    const std::size_t keep = 3;
    const auto& roots = unit_roots(per);
    std::vector<std::size_t> idx(nvars, 0);
    for (std::size_t n = 0; n < total; ++n) {
        double v;
        if (t.single()) {
            v = t.abs2_unit(roots[n]);
        } else {
            for (std::size_t i = 0; i < nvars; ++i)
                th[i] = two_pi * static_cast<double>(idx[i]) / static_cast<double>(per);
            v = t.abs2_at(th);
            for (std::size_t i = 0; i < nvars; ++i) {
                if (++idx[i] < per) break;
                idx[i] = 0;
            }
        }
        if (top.size() < keep || v > top.back().first) {
            top.emplace_back(v, n);
            std::sort(top.begin(), top.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
            if (top.size() > keep) top.pop_back();
        }
    }
    const double step = two_pi / static_cast<double>(per);
    std::pair<double, std::vector<double>> best{-1.0, {}};
    for (const auto& [v0, n0] : top) {
        std::pair<double, std::vector<double>> cand{v0, angles_of(n0)};
        for (int sweep = 0; sweep < (nvars == 1 ? 1 : 4); ++sweep) {
            for (std::size_t i = 0; i < nvars; ++i) {
                th = cand.second;
                auto f = [&](double a) {
                    th[i] = a;
                    return t.abs2_at(th);
                };
                auto [a, v] = golden_max(f, cand.second[i] - step, cand.second[i] + step, 1e-9);
                if (v > cand.first) {
                    cand.second[i] = a;
                    cand.first = v;
                }
            }
        }
        if (cand.first > best.first) best = std::move(cand);
    }
    return {t.log_from_abs2(best.first), best.second};
}

}  // namespace detail

/// sup of |f(x)| over the implemented branch families of M(R{rho^-1 T}).
/// Non-archimedean branches: the trivial Gauss norm max_{a != 0} rho^alpha,
/// which dominates every p-adic and residue Gauss norm and is attained at the
/// trivial point. Archimedean branch (Z_arch only): maximize
/// eps * log max_{|z_v| = rho_v^(1/eps)} |f(z)| over eps in (0, 1].
inline SpectralResult spectral_norm(const Poly& f, const Radii& radii, BaseRing base,
                                    const SpectralOptions& o = {}) {
    if (f.is_laurent()) throw std::invalid_argument("spectral norm on a polydisc needs a polynomial");
    if (!f.in_ring(base)) throw std::invalid_argument("coefficients not in the base ring");
    const auto used = f.variables();
    std::vector<std::string> vars(used.begin(), used.end());
    for (const auto& v : vars)
        if (!radii.count(v)) throw std::invalid_argument("no radius for " + v);

    SpectralResult res;
    res.witness.base = SpectrumPoint::trivial();
    for (const auto& [v, r] : radii) res.witness.coords[v] = GaussCoord{Rational(0), r};
    res.branch = "trivial";
    Real triv(0);
    for (const auto& [m, c] : f.terms()) triv = max(triv, monomial_grading(m, radii));
    res.value = triv;
    if (base != BaseRing::Z_arch || f.is_zero()) return res;

    std::vector<double> log_rho;
    for (const auto& v : vars) log_rho.push_back(std::log(radii.at(v).get_d()));
    auto objective = [&](double log_eps, std::vector<double>* angles) {
        double eps = std::exp(log_eps);
        std::vector<double> lr;
        for (double l : log_rho) lr.push_back(l / eps);
        detail::ScaledTorus t(f, vars, lr);
        auto [lg, th] = detail::torus_max(t, vars.size(), o);
        if (angles) *angles = th;
        return eps * lg;
    };
    const double lo = std::log(o.eps_min);
    std::vector<double> grid(static_cast<std::size_t>(o.eps_grid)), vals(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        grid[j] = lo + (0.0 - lo) * static_cast<double>(j) / static_cast<double>(grid.size() - 1);
        vals[j] = objective(grid[j], nullptr);
    }
    std::size_t j = static_cast<std::size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin());
    double a = grid[j == 0 ? 0 : j - 1], b = grid[std::min(j + 1, grid.size() - 1)];
    auto [u, hv] = detail::golden_max([&](double x) { return objective(x, nullptr); }, a, b, o.eps_tolerance);
    if (vals[j] > hv) {
        u = grid[j];
        hv = vals[j];
    }
    std::vector<double> th;
    objective(u, &th);
    double arch = std::exp(hv);
    if (arch > triv.value()) {
        double eps = std::exp(u);
        if (eps > 1) eps = 1;
        Rational eps_q(eps);
        FiberPoint w;
        w.base = SpectrumPoint::archimedean(eps_q);
        double e = eps_q.get_d();
        for (std::size_t i = 0; i < vars.size(); ++i)
            w.coords[vars[i]] = ComplexCoord{std::polar(std::exp(log_rho[i] / e), th[i])};
        for (const auto& [v, r] : radii)
            if (!w.coords.count(v)) w.coords[v] = ComplexCoord{0.0};
        res.value = Real::approximate(arch);
        res.witness = std::move(w);
        res.branch = "archimedean";
        res.tolerance = o.eps_tolerance;
    }
    return res;
}

// ---------------------------------------------------------------------------
// inf_x max_i rho_i^-1 |f_i(x)|

struct InfMaxResult {
    Real value;
    FiberPoint argmin;
    BoundKind kind = BoundKind::sampled_estimate;
    std::size_t points = 0;
};

inline Real max_ratio(const std::vector<Poly>& fs, const std::vector<Rational>& rhos, const FiberPoint& x) {
    Real m(0);
    for (std::size_t i = 0; i < fs.size(); ++i) m = max(m, eval_point(fs[i], x) / Real(rhos[i]));
    return m;
}

namespace detail {

inline std::vector<FiberPoint> perturbations(const FiberPoint& x) {
    std::vector<FiberPoint> out;
    for (const auto& [v, c] : x.coords) {
        if (auto* z = std::get_if<ComplexCoord>(&c)) {
            double r = std::max(std::abs(z->z), 1e-3);
            for (double dr : {-0.05, 0.05})
                for (double dth : {-0.05, 0.0, 0.05}) {
                    FiberPoint y = x;
                    std::complex<double> w = z->z == 0.0 ? std::complex<double>(r * dr, 0) : z->z;
                    y.coords[v] = ComplexCoord{w * (1 + dr) * std::polar(1.0, dth)};
                    out.push_back(std::move(y));
                }
        } else if (auto* g = std::get_if<GaussCoord>(&c)) {
            for (auto f : {Rational(3, 4), Rational(5, 4)}) {
                FiberPoint y = x;
                y.coords[v] = GaussCoord{g->center, g->radius * f};
                out.push_back(std::move(y));
            }
        }
    }
    const auto& b = x.base;
    if (b.kind() == SpectrumPoint::Kind::archimedean || b.kind() == SpectrumPoint::Kind::padic) {
        for (auto f : {Rational(15, 16), Rational(17, 16)}) {
            Rational e = b.eps() * f;
            if (b.archimedean_kind() && e > 1) continue;
            FiberPoint y = x;
            y.base = b.archimedean_kind() ? SpectrumPoint::archimedean(e) : SpectrumPoint::padic(b.prime(), e);
            out.push_back(std::move(y));
        }
    }
    return out;
}

}  // namespace detail

/// min of max_i rho_i^-1 |f_i(x)| over a sample of M(alg), followed by one
/// round of local refinement around the best points. An upper bound of the
/// true infimum, flagged as a sampled estimate.
inline InfMaxResult inf_max(const std::vector<Poly>& fs, const std::vector<Rational>& rhos,
                            const AffinoidPresentation& alg, const SamplingDensity& density = {},
                            unsigned jobs = 1) {
    if (fs.empty()) throw std::invalid_argument("inf_max needs at least one function");
    if (fs.size() != rhos.size()) throw std::invalid_argument("one radius per function");
    for (const auto& r : rhos)
        if (r <= 0) throw std::invalid_argument("radii must be positive");
    for (const auto& f : fs) alg.check_element(f);
    auto pts = sample_spectrum(alg, density);
    if (pts.empty()) throw std::invalid_argument("sample of the spectrum is empty");
    auto vals = parallel_map<Real>(pts.size(), jobs, [&](std::size_t i) { return max_ratio(fs, rhos, pts[i]); });

    std::vector<std::size_t> order(pts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return less(vals[a], vals[b]); });

    InfMaxResult res{vals[order[0]], pts[order[0]], BoundKind::sampled_estimate, pts.size()};
    for (std::size_t k = 0; k < std::min<std::size_t>(4, order.size()); ++k) {
        for (auto& y : detail::perturbations(pts[order[k]])) {
            if (!in_spectrum(y, alg)) continue;
            Real v = max_ratio(fs, rhos, y);
            ++res.points;
            if (less(v, res.value)) {
                res.value = v;
                res.argmin = y;
            }
        }
    }
    return res;
}

}  // namespace berkring
