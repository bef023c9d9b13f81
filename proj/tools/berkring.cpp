// berkring command-line front end.
//
// Exit codes: 0 success, 1 a verification failed (witness printed),
// 2 input error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "berkring/berkring.hpp"

using namespace berkring;
using nlohmann::json;

namespace {

struct Common {
    std::string format = "json";
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    std::string base;
    std::vector<std::string> rho;
    std::string algebra;
    bool dagger = false;
};

struct Sampling {
    std::size_t eps_grid = 4;
    unsigned primes = 5;
    std::size_t torus = 8;
    std::size_t gauss = 3;
    std::size_t random = 0;

    SamplingDensity density(std::uint64_t seed) const {
        SamplingDensity d;
        d.eps_grid = eps_grid;
        d.prime_cutoff = primes;
        d.torus_grid = torus;
        d.gauss_radius_grid = gauss;
        d.random_points = random;
        d.seed = seed;
        return d;
    }
};

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Radii parse_radii(const std::vector<std::string>& specs) {
    Radii r;
    for (const auto& s : specs) {
        auto eq = s.find('=');
        if (eq == std::string::npos) throw InputError("--rho expects NAME=VALUE, got '" + s + "'");
        r[s.substr(0, eq)] = parse_rational(s.substr(eq + 1));
        if (r[s.substr(0, eq)] <= 0) throw InputError("radius of " + s.substr(0, eq) + " must be positive");
    }
    return r;
}

/// "f" or "f:rho"; the radius is after the last colon outside parentheses.
DomainPair parse_pair(const std::string& s) {
    int depth = 0;
    std::size_t colon = std::string::npos;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (s[i] == ':' && depth == 0) colon = i;
    }
    if (colon == std::string::npos) return {parse_expression(s), Rational(1)};
    return {parse_expression(s.substr(0, colon)), parse_rational(s.substr(colon + 1))};
}

json read_json_arg(const std::string& arg) {
    std::string text = arg;
    auto first = arg.find_first_not_of(" \t\n");
    if (first == std::string::npos || (arg[first] != '{' && arg[first] != '[')) {
        std::ifstream in(arg);
        if (!in) throw InputError("cannot open " + arg);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
}

/// The algebra named by --algebra, else the polynomial ring over --base in
/// the variables of `polys` (plus those named by --rho).
AffinoidPresentation resolve_algebra(const Common& c, const std::vector<Poly>& polys) {
    Radii radii = parse_radii(c.rho);
    std::optional<BaseRing> base;
    if (!c.base.empty()) base = parse_base_ring(c.base);
    if (!c.algebra.empty()) return parse_algebra(c.algebra, base, radii, c.dagger);
    std::set<std::string> vars;
    for (const auto& [v, r] : radii) vars.insert(v);
    for (const auto& p : polys)
        for (const auto& v : p.variables()) vars.insert(v);
    std::vector<Variable> vs;
    for (const auto& v : vars) vs.push_back({v, radii.count(v) ? radii[v] : Rational(1)});
    return AffinoidPresentation(base.value_or(BaseRing::Z_arch), vs, c.dagger);
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string csv_field(std::string s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

void require_format(const std::string& f, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (f == a) return;
    throw InputError("format '" + f + "' is not available for this command");
}

// ---------------------------------------------------------------------------

int cmd_norm(const Common& c, const std::string& kind, const std::string& expr) {
    require_format(c.format, {"json", "csv"});
    Poly f = parse_expression(expr);
    AffinoidPresentation a = resolve_algebra(c, {f});
    a.check_element(f);
    Real v = kind == "linf" ? linf_norm(f, a.radii(), a.base()) : l1_norm(f, a.radii(), a.base());
    if (c.format == "csv") {
        std::cout << "norm,value\n" << kind << "," << v.str() << "\n";
        return 0;
    }
    json j = json_io::to_json(v);
    j["norm"] = kind;
    j["f"] = to_string(f);
    j["base"] = std::string(name(a.base()));
    print(j);
    return 0;
}

int cmd_spectral(const Common& c, const std::string& expr, int eps_grid, int torus) {
    require_format(c.format, {"json", "csv"});
    Poly f = parse_expression(expr);
    AffinoidPresentation a = resolve_algebra(c, {f});
    a.check_element(f);
    SpectralOptions o;
    o.eps_grid = eps_grid;
    o.torus_grid = torus;
    auto r = spectral_norm(f, a.radii(), a.base(), o);
    if (c.format == "csv") {
        std::cout << "f,value,branch\n" << csv_field(to_string(f)) << "," << r.value.str() << "," << r.branch << "\n";
        return 0;
    }
    json j = json_io::to_json(r.value);
    j["f"] = to_string(f);
    j["branch"] = r.branch;
    j["witness"] = json_io::to_json(r.witness);
    j["tolerance"] = r.tolerance;
    print(j);
    return 0;
}

int cmd_sample(const Common& c, const Sampling& s) {
    require_format(c.format, {"json", "csv"});
    AffinoidPresentation a = resolve_algebra(c, {});
    auto pts = sample_spectrum(a, s.density(c.seed));
    if (c.format == "csv") {
        std::cout << "index,point\n";
        for (std::size_t i = 0; i < pts.size(); ++i) std::cout << i << "," << csv_field(describe(pts[i])) << "\n";
        return 0;
    }
    json arr = json::array();
    for (const auto& x : pts) arr.push_back(json_io::to_json(x));
    print(json{{"algebra", describe(a)}, {"count", pts.size()}, {"points", arr}});
    return 0;
}

RationalDomainSpec domain_spec(const Common& c, const std::string& spec_arg, const std::vector<std::string>& pairs,
                               const std::vector<std::string>& certificate) {
    if (!spec_arg.empty()) return json_io::domain_from(read_json_arg(spec_arg));
    if (pairs.empty()) throw InputError("give --spec or at least one --pair");
    RationalDomainSpec d;
    std::vector<Poly> polys;
    for (const auto& p : pairs) {
        d.pairs.push_back(parse_pair(p));
        polys.push_back(d.pairs.back().f);
    }
    d.parent = resolve_algebra(c, polys);
    if (!certificate.empty()) {
        std::vector<Poly> cert;
        for (const auto& a : certificate) cert.push_back(parse_expression(a));
        d.certificate = cert;
    }
    return d;
}

int cmd_domain_member(const Common& c, const Sampling& s, const std::string& spec_arg,
                      const std::vector<std::string>& pairs, const std::vector<std::string>& certificate,
                      const std::string& point) {
    require_format(c.format, {"json", "csv"});
    RationalDomainSpec d = domain_spec(c, spec_arg, pairs, certificate);
    AffinoidPresentation alg = rational_domain_algebra(d);
    std::vector<FiberPoint> pts;
    if (!point.empty())
        pts.push_back(json_io::fiber_point_from(read_json_arg(point)));
    else
        pts = sample_spectrum(d.parent, s.density(c.seed));
    auto member = parallel_map<char>(pts.size(), c.jobs, [&](std::size_t i) -> char { return domain_membership(pts[i], d); });
    if (c.format == "csv") {
        std::cout << "point,member\n";
        for (std::size_t i = 0; i < pts.size(); ++i)
            std::cout << csv_field(describe(pts[i])) << "," << (member[i] ? "true" : "false") << "\n";
        return 0;
    }
    json res = json::array();
    std::size_t count = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        res.push_back({{"point", describe(pts[i])}, {"member", static_cast<bool>(member[i])}});
        count += member[i] ? 1 : 0;
    }
    print(json{{"domain", json_io::to_json(d)},
               {"algebra", json_io::to_json(alg)},
               {"algebra_text", describe(alg)},
               {"members", count},
               {"results", res}});
    return 0;
}

Covering covering_from_args(const Common& c, const std::string& kind, const std::vector<std::string>& gens,
                            const std::vector<std::string>& certificate, const std::string& file) {
    if (!file.empty()) return json_io::covering_from(read_json_arg(file));
    std::vector<DomainPair> ps;
    std::vector<Poly> polys;
    for (const auto& g : gens) {
        ps.push_back(parse_pair(g));
        polys.push_back(ps.back().f);
    }
    AffinoidPresentation a = resolve_algebra(c, polys);
    if (kind == "laurent") return laurent_covering(ps, a);
    if (ps.empty()) throw InputError("a standard covering needs --gen");
    std::optional<std::vector<Poly>> cert;
    if (!certificate.empty()) {
        cert.emplace();
        for (const auto& x : certificate) cert->push_back(parse_expression(x));
    }
    return standard_covering(ps, a, cert);
}

int cmd_cover_build(const Common& c, const Sampling& s, const Covering& cov) {
    require_format(c.format, {"json"});
    auto pts = sample_spectrum(cov.parent, s.density(c.seed));
    auto rep = check_is_covering(cov, pts, c.jobs);
    json j = json_io::to_json(cov);
    j["check"] = {{"covering", rep.ok}, {"points", rep.points}};
    if (rep.witness) j["check"]["witness"] = json_io::to_json(*rep.witness);
    print(j);
    return rep.ok ? 0 : 1;
}

int cmd_cover_check(const Common& c, const Sampling& s, const Covering& cov) {
    require_format(c.format, {"json"});
    auto pts = sample_spectrum(cov.parent, s.density(c.seed));
    auto rep = check_is_covering(cov, pts, c.jobs);
    json j{{"covering", rep.ok}, {"points", rep.points}, {"members", cov.members.size()}};
    if (rep.witness) {
        j["witness"] = json_io::to_json(*rep.witness);
        j["witness_text"] = describe(*rep.witness);
    }
    print(j);
    return rep.ok ? 0 : 1;
}

std::string signs_text(const std::vector<int>& s) {
    std::string out;
    for (int x : s) out += x > 0 ? '+' : '-';
    return out.empty() ? "." : out;
}

int cmd_cover_refine(const Common& c, const Sampling& s, const Covering& cov, const std::string& mode,
                     const std::vector<std::string>& inverses) {
    require_format(c.format, {"json", "csv"});
    auto density = s.density(c.seed);
    auto pts = sample_spectrum(cov.parent, density);
    struct Row {
        std::size_t member;
        std::string signs, surviving;
        std::size_t points;
    };
    std::vector<Row> rows;
    json j{{"mode", mode}};
    bool ok = true;
    const Covering* laurent = nullptr;
    RationalRefinement rr;
    UnitRefinement ur;
    if (mode == "rational") {
        rr = refine_rational_to_laurent(cov, density, c.jobs);
        laurent = &rr.laurent;
        auto rep = check_surviving_generators(rr, cov.generators, pts);
        ok = rr.verified && rep.ok;
        j["c"] = rr.c.get_str();
        j["inf_max"] = json_io::to_json(rr.estimate.value);
        j["inf_max_kind"] = std::string(name(rr.estimate.kind));
        j["retries"] = rr.retries;
        if (rep.witness) j["witness"] = describe(*rep.witness);
        for (std::size_t m = 0; m < rr.laurent.members.size(); ++m) {
            std::string sv;
            for (auto i : rr.surviving[m]) sv += (sv.empty() ? "" : " ") + std::to_string(i);
            rows.push_back({m, signs_text(rr.laurent.members[m].signs), sv, 0});
        }
    } else if (mode == "units") {
        std::vector<std::optional<Poly>> inv;
        for (const auto& g : inverses) inv.push_back(g == "-" ? std::nullopt : std::optional<Poly>(parse_expression(g)));
        ur = refine_units_to_laurent(cov, inv);
        laurent = &ur.laurent;
        auto rep = check_refinement(ur.laurent, cov, pts, c.jobs);
        ok = rep.ok;
        if (rep.witness) j["witness"] = describe(*rep.witness);
        for (std::size_t m = 0; m < ur.laurent.members.size(); ++m)
            rows.push_back({m, signs_text(ur.laurent.members[m].signs), "member " + std::to_string(ur.target[m]), 0});
    } else {
        throw InputError("--mode must be rational or units");
    }
    for (auto& r : rows)
        for (const auto& x : pts) r.points += domain_membership(x, laurent->members[r.member]) ? 1 : 0;
    if (c.format == "csv") {
        std::cout << "member,signs,surviving,verified_points\n";
        for (const auto& r : rows) std::cout << r.member << "," << r.signs << "," << csv_field(r.surviving) << "," << r.points << "\n";
        return ok ? 0 : 1;
    }
    json table = json::array();
    for (const auto& r : rows)
        table.push_back({{"member", r.member}, {"signs", r.signs}, {"surviving", r.surviving}, {"verified_points", r.points}});
    j["verified"] = ok;
    j["points"] = pts.size();
    j["laurent"] = json_io::to_json(*laurent);
    j["table"] = table;
    print(j);
    return ok ? 0 : 1;
}

int cmd_tate(const Common& c, const std::vector<std::string>& laurent, const std::vector<std::string>& standard,
             int degree, int drop) {
    require_format(c.format, {"json"});
    if (!laurent.empty() && !standard.empty())
        throw InputError("give either --laurent or --standard generators, not both");
    std::vector<DomainPair> ps;
    std::vector<Poly> polys;
    for (const auto& g : laurent.empty() ? standard : laurent) {
        ps.push_back(parse_pair(g));
        polys.push_back(ps.back().f);
    }
    AffinoidPresentation a = resolve_algebra(c, polys);
    Covering cov = standard.empty() ? laurent_covering(ps, a) : standard_covering(ps, a);
    if (drop >= 0) cov = without_member(cov, static_cast<std::size_t>(drop));
    auto cx = cech_complex(cov);
    auto rep = check_exactness(cx, degree);
    json j = json_io::to_json(rep);
    json l1 = json::array();
    for (const auto& m : cx.level1) l1.push_back(describe(m.algebra));
    json l2 = json::array();
    for (const auto& o : cx.level2) l2.push_back(describe(o.algebra));
    j["level0"] = describe(cx.A);
    j["level1"] = l1;
    j["level2"] = l2;
    print(j);
    return rep.exact ? 0 : 1;
}

int cmd_plot(const Common& c, const std::string& expr, const std::string& branch, std::size_t grid) {
    require_format(c.format, {"json", "csv", "svg"});
    Poly f = parse_expression(expr);
    AffinoidPresentation a = resolve_algebra(c, {f});
    a.check_element(f);
    auto rows = emit_profile(f, a.radii(), parse_branch(branch), grid);
    if (c.format == "csv") {
        std::cout << profile_csv(rows);
    } else if (c.format == "svg") {
        std::cout << profile_svg(rows, "|" + to_string(f) + "| on " + branch);
    } else {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back({{"branch", r.branch}, {"param", r.param}, {"value", r.value}});
        print(json{{"f", to_string(f)}, {"rows", arr}});
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"berkring: seminormed rings, Berkovich spectra, rational coverings and Tate acyclicity"};
    app.require_subcommand(1);
    Common c;
    Sampling s;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", c.format, "json, csv or svg")->capture_default_str();
        sub->add_option("--seed", c.seed, "seed for sampled points")->capture_default_str();
        sub->add_option("--jobs", c.jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
        sub->add_option("--base", c.base, "Z_arch, Z_triv or Q_triv");
        sub->add_option("--rho", c.rho, "radius NAME=VALUE (repeatable)");
        sub->add_option("--algebra", c.algebra, "presentation such as \"Q[T,S]/(S^2-T)\"");
        sub->add_flag("--dagger", c.dagger, "overconvergent algebra");
    };
    auto add_sampling = [&](CLI::App* sub) {
        sub->add_option("--eps-grid", s.eps_grid, "eps values per branch")->capture_default_str();
        sub->add_option("--primes", s.primes, "largest prime sampled")->capture_default_str();
        sub->add_option("--torus", s.torus, "angles per archimedean circle")->capture_default_str();
        sub->add_option("--gauss", s.gauss, "Gauss radii per center")->capture_default_str();
        sub->add_option("--random", s.random, "extra seeded points per coordinate")->capture_default_str();
    };

    std::string expr, kind = "l1";
    auto* norm = app.add_subcommand("norm", "l1 or l-infinity norm of a polynomial");
    add_common(norm);
    norm->add_flag_callback("--l1", [&] { kind = "l1"; }, "l1 norm (default)");
    norm->add_flag_callback("--linf", [&] { kind = "linf"; }, "l-infinity norm");
    norm->add_option("f", expr, "polynomial")->required();

    int eps_grid = 64, torus = 256;
    auto* spectral = app.add_subcommand("spectral", "spectral norm over the implemented branches");
    add_common(spectral);
    spectral->add_option("--eps-grid", eps_grid, "archimedean eps grid")->capture_default_str();
    spectral->add_option("--torus", torus, "torus grid")->capture_default_str();
    spectral->add_option("f", expr, "polynomial")->required();

    auto* sample = app.add_subcommand("spectrum-sample", "deterministic sample of a spectrum");
    add_common(sample);
    add_sampling(sample);

    std::string spec_arg, point;
    std::vector<std::string> pairs, certificate;
    auto* member = app.add_subcommand("domain-member", "membership in a rational domain");
    add_common(member);
    add_sampling(member);
    member->add_option("--spec", spec_arg, "domain spec as JSON or a JSON file");
    member->add_option("--pair", pairs, "f:rho, first is f_0 (repeatable)");
    member->add_option("--certificate", certificate, "a_i with sum a_i f_i = 1 (repeatable)");
    member->add_option("--point", point, "fiber point as JSON or a JSON file; default: sampled points");

    std::vector<std::string> gens;
    std::string covering_file;
    auto* cstd = app.add_subcommand("cover-standard", "standard covering of generators of the unit ideal");
    add_common(cstd);
    add_sampling(cstd);
    cstd->add_option("--gen", gens, "f:rho (repeatable)")->required();
    cstd->add_option("--certificate", certificate, "a_i with sum a_i f_i = 1 (repeatable)");

    auto* claur = app.add_subcommand("cover-laurent", "Laurent covering of pairs f:rho");
    add_common(claur);
    add_sampling(claur);
    claur->add_option("--gen", gens, "f:rho (repeatable)");

    std::string mode = "rational";
    std::vector<std::string> inverses;
    auto* cref = app.add_subcommand("cover-refine", "refine a standard covering by a Laurent covering");
    add_common(cref);
    add_sampling(cref);
    cref->add_option("--gen", gens, "f:rho (repeatable)");
    cref->add_option("--covering", covering_file, "standard covering as JSON or a JSON file");
    cref->add_option("--mode", mode, "rational or units")->capture_default_str();
    cref->add_option("--inverse", inverses, "inverse of each generator, '-' to read it off the relations");

    std::string cover_kind = "standard";
    auto* cchk = app.add_subcommand("cover-check", "check the covering property on sampled points");
    add_common(cchk);
    add_sampling(cchk);
    cchk->add_option("--covering", covering_file, "covering as JSON or a JSON file");
    cchk->add_option("--kind", cover_kind, "standard or laurent, with --gen")->capture_default_str();
    cchk->add_option("--gen", gens, "f:rho (repeatable)");

    std::vector<std::string> laurent, standard;
    int degree = 6, drop = -1;
    auto* tate = app.add_subcommand("tate-check", "exactness of the Cech complex over Q_triv");
    add_common(tate);
    tate->add_option("--laurent", laurent, "Laurent pair f[:rho] (repeatable)");
    tate->add_option("--standard", standard, "standard covering generator f (repeatable)");
    tate->add_option("--degree", degree, "degree bound")->capture_default_str();
    tate->add_option("--drop", drop, "remove this member before checking");

    std::string branch = "archimedean:1";
    std::size_t grid = 16;
    auto* plot = app.add_subcommand("plot", "|f| along one branch of the spectrum");
    add_common(plot);
    plot->add_option("--branch", branch, "trivial, padic:p, residue:p, archimedean or archimedean:eps")
        ->capture_default_str();
    plot->add_option("--grid", grid, "grid size")->capture_default_str();
    plot->add_option("f", expr, "polynomial")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*norm) return cmd_norm(c, kind, expr);
        if (*spectral) return cmd_spectral(c, expr, eps_grid, torus);
        if (*sample) return cmd_sample(c, s);
        if (*member) return cmd_domain_member(c, s, spec_arg, pairs, certificate, point);
        if (*cstd) return cmd_cover_build(c, s, covering_from_args(c, "standard", gens, certificate, ""));
        if (*claur) return cmd_cover_build(c, s, covering_from_args(c, "laurent", gens, {}, ""));
        if (*cref) return cmd_cover_refine(c, s, covering_from_args(c, "standard", gens, {}, covering_file), mode, inverses);
        if (*cchk) return cmd_cover_check(c, s, covering_from_args(c, cover_kind, gens, {}, covering_file));
        if (*tate) return cmd_tate(c, laurent, standard, degree, drop);
        if (*plot) return cmd_plot(c, expr, branch, grid);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
