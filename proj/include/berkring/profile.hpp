#pragma once

// Values of |f| along one branch of the spectrum, as CSV or SVG.
//
// Branches: "trivial" and "residue:p" (Gauss norms on radii rho*j/N),
// "padic:p" (Gauss norm at eps = 2j/N), "archimedean" (torus maximum at
// eps = j/N) and "archimedean:eps" (|f| at angles 2*pi*j/N on the boundary
// torus; all variables share the angle).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "berkring/point.hpp"
#include "berkring/spectrum.hpp"

namespace berkring {

struct ProfileRow {
    std::string branch;
    double param = 0.0;
    double value = 0.0;
};

struct BranchSpec {
    std::string family;  ///< trivial, padic, residue, archimedean
    unsigned long prime = 0;
    std::optional<Rational> eps;
    std::string label() const {
        if (prime) return family + ":" + std::to_string(prime);
        if (eps) return family + ":" + eps->get_str();
        return family;
    }
};

inline BranchSpec parse_branch(const std::string& s) {
    auto colon = s.find(':');
    BranchSpec b{s.substr(0, colon), 0, std::nullopt};
    std::string arg = colon == std::string::npos ? "" : s.substr(colon + 1);
    if (b.family == "trivial") {
        if (!arg.empty()) throw std::invalid_argument("trivial branch takes no parameter");
    } else if (b.family == "padic" || b.family == "residue") {
        if (arg.empty()) throw std::invalid_argument(b.family + " branch needs a prime, e.g. " + b.family + ":2");
        b.prime = std::stoul(arg);
        if (!is_prime(b.prime)) throw std::invalid_argument(arg + " is not prime");
    } else if (b.family == "archimedean") {
        if (!arg.empty()) {
            b.eps = parse_rational(arg);
            if (*b.eps <= 0 || *b.eps > 1) throw std::invalid_argument("archimedean eps must lie in (0, 1]");
        }
    } else {
        throw std::invalid_argument("unknown branch '" + s + "'");
    }
    return b;
}

namespace detail {

inline FiberPoint gauss_point(const SpectrumPoint& b, const std::set<std::string>& vars, const Radii& radii,
                              const Rational& scale) {
    FiberPoint x;
    x.base = b;
    for (const auto& v : vars) {
        auto it = radii.find(v);
        if (it == radii.end()) throw std::invalid_argument("no radius for " + v);
        x.coords[v] = GaussCoord{Rational(0), Rational(it->second * scale)};
    }
    return x;
}

}  // namespace detail

inline std::vector<ProfileRow> emit_profile(const Poly& f, const Radii& radii, const BranchSpec& b, std::size_t grid) {
    std::vector<ProfileRow> rows;
    const auto vars = f.variables();
    const std::string label = b.label();
    const long N = static_cast<long>(grid);
    for (long j = 1; j <= N && b.family != "archimedean"; ++j) {
        if (b.family == "padic") {
            Rational eps(2 * j, N);
            eps.canonicalize();
            auto x = detail::gauss_point(SpectrumPoint::padic(b.prime, eps), vars, radii, Rational(1));
            rows.push_back({label, eps.get_d(), eval_point(f, x).value()});
        } else {
            Rational scale(j, N);
            scale.canonicalize();
            auto base = b.family == "trivial" ? SpectrumPoint::trivial() : SpectrumPoint::residue(b.prime);
            rows.push_back({label, scale.get_d(), eval_point(f, detail::gauss_point(base, vars, radii, scale)).value()});
        }
    }
    if (b.family != "archimedean") return rows;
    for (const auto& v : vars)
        if (!radii.count(v)) throw std::invalid_argument("no radius for " + v);
    if (b.eps) {
        const double e = b.eps->get_d();
        for (long j = 0; j < N; ++j) {
            double th = 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(N);
            FiberPoint x;
            x.base = SpectrumPoint::archimedean(*b.eps);
            for (const auto& v : vars) x.coords[v] = ComplexCoord{std::polar(std::pow(radii.at(v).get_d(), 1 / e), th)};
            rows.push_back({label, th, eval_point(f, x).value()});
        }
        return rows;
    }
    std::vector<std::string> vs(vars.begin(), vars.end());
    for (long j = 1; j <= N; ++j) {
        double eps = static_cast<double>(j) / static_cast<double>(N);
        std::vector<double> lr;
        for (const auto& v : vs) lr.push_back(std::log(radii.at(v).get_d()) / eps);
        double value = 0.0;
        if (!f.is_zero()) {
            detail::ScaledTorus t(f, vs, lr);
            value = std::exp(eps * detail::torus_max(t, vs.size(), SpectralOptions{}).first);
        }
        rows.push_back({label, eps, value});
    }
    return rows;
}

inline std::string profile_csv(const std::vector<ProfileRow>& rows) {
    std::ostringstream os;
    os << "branch,param,value\n";
    char buf[64];
    for (const auto& r : rows) {
        os << r.branch << ',';
        std::snprintf(buf, sizeof buf, "%.12g", r.param);
        os << buf << ',';
        std::snprintf(buf, sizeof buf, "%.12g", r.value);
        os << buf << '\n';
    }
    return os.str();
}

/// A line plot of value against param.
inline std::string profile_svg(const std::vector<ProfileRow>& rows, const std::string& title = "") {
    const double W = 480, H = 320, pad = 40;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty()) os << "<text x=\"" << pad << "\" y=\"20\" font-size=\"14\">" << title << "</text>\n";
    os << "<line x1=\"" << pad << "\" y1=\"" << H - pad << "\" x2=\"" << W - pad << "\" y2=\"" << H - pad
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\"" << H - pad
       << "\" stroke=\"black\"/>\n";
    if (!rows.empty()) {
        double x0 = rows.front().param, x1 = x0, y0 = 0.0, y1 = 0.0;
        for (const auto& r : rows) {
            x0 = std::min(x0, r.param);
            x1 = std::max(x1, r.param);
            y1 = std::max(y1, r.value);
        }
        if (x1 == x0) x1 = x0 + 1;
        if (y1 == y0) y1 = y0 + 1;
        os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
        for (const auto& r : rows) {
            double px = pad + (r.param - x0) / (x1 - x0) * (W - 2 * pad);
            double py = H - pad - (r.value - y0) / (y1 - y0) * (H - 2 * pad);
            os << px << ',' << py << ' ';
        }
        os << "\"/>\n";
        os << "<text x=\"" << pad << "\" y=\"" << H - pad / 3 << "\" font-size=\"11\">" << x0 << "</text>\n";
        os << "<text x=\"" << W - pad << "\" y=\"" << H - pad / 3 << "\" font-size=\"11\">" << x1 << "</text>\n";
        os << "<text x=\"2\" y=\"" << pad << "\" font-size=\"11\">" << y1 << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace berkring
