// This file is part of carleman, a numerical toolkit for harmonic
// continuation in band domains.
// SPDX-License-Identifier: Apache-2.0

#ifndef CARLEMAN_CONFIG_HPP
#define CARLEMAN_CONFIG_HPP

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "carleman/analytic.hpp"
#include "carleman/core.hpp"
#include "carleman/csv.hpp"
#include "carleman/domain.hpp"
#include "carleman/quadrature.hpp"
#include "carleman/representation.hpp"

namespace carleman {

// Run configuration: one JSON file holding kernel parameters, the domain's
// curve descriptors, quadrature tolerances, and the command-specific blocks.
// All physical parameters are in the units of the band width h.

namespace detail {

inline std::vector<std::pair<std::string, std::string>> parse_kv_list(const std::string& args,
                                                                      const std::string& where) {
    std::vector<std::pair<std::string, std::string>> out;
    std::string item;
    std::stringstream ss(args);
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw config_error(where, "expected key=value, got '" + item + "'");
        out.emplace_back(trim(item.substr(0, eq)), trim(item.substr(eq + 1)));
    }
    return out;
}

inline double parse_num(const std::string& s, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw config_error(where, "cannot parse number '" + s + "'");
    }
}

inline std::vector<double> parse_num_list(const std::string& args, const std::string& where) {
    std::vector<double> out;
    std::string item;
    std::stringstream ss(args);
    while (std::getline(ss, item, ',')) out.push_back(parse_num(trim(item), where));
    return out;
}

}  // namespace detail

/// Parse a harmonic-function identifier:
///   strip_mode:n=1,A=1,B=0[,rho=1]   re_exp:lambda=0.4   im_exp:lambda=..
///   re_poly:k=2                      im_poly:k=3
inline HarmonicFn parse_harmonic(const std::string& id, double default_rho) {
    const auto colon = id.find(':');
    const std::string family = colon == std::string::npos ? id : id.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : id.substr(colon + 1);
    const std::string where = "harmonic '" + id + "'";
    if (family == "strip_mode") {
        StripMode m;
        m.rho = default_rho;
        for (const auto& [k, v] : detail::parse_kv_list(args, where)) {
            if (k == "n")
                m.n = static_cast<int>(detail::parse_num(v, where));
            else if (k == "A")
                m.coef_a = detail::parse_num(v, where);
            else if (k == "B")
                m.coef_b = detail::parse_num(v, where);
            else if (k == "rho")
                m.rho = detail::parse_num(v, where);
            else
                throw config_error(where, "unknown key '" + k + "'");
        }
        if (m.n <= 0) throw config_error(where, "mode index n must be positive");
        return m;
    }
    EntireHarmonic e;
    if (family == "re_exp" || family == "im_exp") {
        e.family = family == "re_exp" ? EntireFamily::re_exp : EntireFamily::im_exp;
        for (const auto& [k, v] : detail::parse_kv_list(args, where)) {
            if (k == "lambda")
                e.lambda = detail::parse_num(v, where);
            else
                throw config_error(where, "unknown key '" + k + "'");
        }
        return e;
    }
    if (family == "re_poly" || family == "im_poly") {
        e.family = family == "re_poly" ? EntireFamily::re_poly : EntireFamily::im_poly;
        for (const auto& [k, v] : detail::parse_kv_list(args, where)) {
            if (k == "k")
                e.k = static_cast<int>(detail::parse_num(v, where));
            else
                throw config_error(where, "unknown key '" + k + "'");
        }
        if (e.k < 0) throw config_error(where, "degree k must be nonnegative");
        return e;
    }
    throw config_error(where, "unknown family '" + family + "'");
}

inline std::string harmonic_id(const HarmonicFn& fn) {
    if (const auto* m = std::get_if<StripMode>(&fn)) {
        return "strip_mode:n=" + std::to_string(m->n) + ",A=" + format_double(m->coef_a) +
               ",B=" + format_double(m->coef_b) + ",rho=" + format_double(m->rho);
    }
    const auto& e = std::get<EntireHarmonic>(fn);
    switch (e.family) {
        case EntireFamily::re_exp: return "re_exp:lambda=" + format_double(e.lambda);
        case EntireFamily::im_exp: return "im_exp:lambda=" + format_double(e.lambda);
        case EntireFamily::re_poly: return "re_poly:k=" + std::to_string(e.k);
        default: return "im_poly:k=" + std::to_string(e.k);
    }
}

/// Parse a curve descriptor:
///   flat:LEVEL    sine:c0,c1,c2,c3    bump:base,amp,center,width    table:PATH
/// Table paths are resolved against `base_dir` and must be CSV with header y1,f.
inline BoundaryCurve parse_curve(CurveKind kind, const std::string& descriptor,
                                 const std::filesystem::path& base_dir) {
    const auto colon = descriptor.find(':');
    const std::string family =
        colon == std::string::npos ? descriptor : descriptor.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : descriptor.substr(colon + 1);
    const std::string where = std::string("domain.") + to_string(kind);
    if (family == "flat") {
        BoundaryCurve c = make_flat_curve(kind, detail::parse_num(args, where));
        c.descriptor = descriptor;
        return c;
    }
    if (family == "sine") {
        const auto v = detail::parse_num_list(args, where);
        if (v.size() != 4) throw config_error(where, "sine needs c0,c1,c2,c3");
        BoundaryCurve c = make_sine_curve(kind, v[0], v[1], v[2], v[3]);
        c.descriptor = descriptor;
        return c;
    }
    if (family == "bump") {
        const auto v = detail::parse_num_list(args, where);
        if (v.size() != 4) throw config_error(where, "bump needs base,amp,center,width");
        BoundaryCurve c = make_bump_curve(kind, v[0], v[1], v[2], v[3]);
        c.descriptor = descriptor;
        return c;
    }
    if (family == "table") {
        const std::filesystem::path p = std::filesystem::path(args).is_absolute()
                                            ? std::filesystem::path(args)
                                            : base_dir / args;
        const CsvTable t = read_csv(p.string(), {"y1", "f"});
        std::vector<double> xs, ys;
        xs.reserve(t.rows.size());
        ys.reserve(t.rows.size());
        for (const auto& row : t.rows) {
            xs.push_back(row[0]);
            ys.push_back(row[1]);
        }
        return make_table_curve(kind, std::move(xs), std::move(ys), descriptor);
    }
    throw config_error(where, "unknown curve family '" + family + "'");
}

struct TraceSpec {
    std::string source = "zero";
    double growth_rate_c = std::numeric_limits<double>::quiet_NaN();  // NaN: derive from source
};

struct RunConfig {
    KernelParams kernel = KernelParams::make(1.0, 3.0, 0.5);
    std::string domain_lower = "flat:0";
    std::string domain_upper;  // defaults to flat:h at load time
    QuadratureConfig quadrature;
    double near_tol = 1e-6;
    std::vector<Point2> points;
    TraceSpec trace_lower, trace_upper;
    std::vector<double> decay_radii = {2.0, 4.0, 6.0, 8.0};
    int decay_samples_per_radius = 6;
    std::filesystem::path base_dir = ".";

    BandDomain build_domain() const {
        return BandDomain::make(parse_curve(CurveKind::lower, domain_lower, base_dir),
                                parse_curve(CurveKind::upper, domain_upper, base_dir), kernel.h);
    }

    CauchyTrace build_trace(CurveKind kind, const BandDomain& domain) const {
        const TraceSpec& spec = kind == CurveKind::lower ? trace_lower : trace_upper;
        const std::string where = std::string("traces.") + to_string(kind);
        const auto colon = spec.source.find(':');
        const std::string family =
            colon == std::string::npos ? spec.source : spec.source.substr(0, colon);
        const std::string args = colon == std::string::npos ? "" : spec.source.substr(colon + 1);
        CauchyTrace t;
        if (family == "zero") {
            t = CauchyTrace::zero(kind);
        } else if (family == "exp_abs") {
            double c = 0.0, scale = 1.0;
            for (const auto& [k, v] : detail::parse_kv_list(args, where)) {
                if (k == "c")
                    c = detail::parse_num(v, where);
                else if (k == "scale")
                    scale = detail::parse_num(v, where);
                else
                    throw config_error(where, "unknown key '" + k + "'");
            }
            t = CauchyTrace::exp_abs(kind, c, scale);
        } else if (family == "from_harmonic") {
            const HarmonicFn fn = parse_harmonic(args, kernel.rho);
            t = CauchyTrace::from_harmonic(kind, fn, domain, spec.source);
        } else if (family == "table") {
            if (std::isnan(spec.growth_rate_c))
                throw config_error(where + ".growth_rate_c",
                                   "required for tabulated traces");
            const std::filesystem::path p = std::filesystem::path(args).is_absolute()
                                                ? std::filesystem::path(args)
                                                : base_dir / args;
            const CsvTable tab = read_csv(p.string(), {"y1", "value"});
            std::vector<double> xs, vs;
            for (const auto& row : tab.rows) {
                xs.push_back(row[0]);
                vs.push_back(row[1]);
            }
            t = CauchyTrace::from_table(kind, std::move(xs), std::move(vs), spec.growth_rate_c,
                                        spec.source);
        } else {
            throw config_error(where, "unknown trace source '" + family + "'");
        }
        if (!std::isnan(spec.growth_rate_c)) t.growth_rate_c = spec.growth_rate_c;
        if (!(t.growth_rate_c >= 0.0))
            throw config_error(where + ".growth_rate_c", "must be nonnegative");
        return t;
    }

    static RunConfig from_json(const nlohmann::json& j, std::filesystem::path base_dir = ".");
    static RunConfig load(const std::string& path);
    nlohmann::json to_json() const;
};

inline RunConfig RunConfig::from_json(const nlohmann::json& j, std::filesystem::path base_dir) {
    if (!j.is_object()) throw config_error("", "config root must be a JSON object");
    RunConfig cfg;
    cfg.base_dir = std::move(base_dir);

    double rho = 1.0, a = 3.0;
    double rho1 = std::numeric_limits<double>::quiet_NaN();
    if (j.contains("kernel")) {
        const auto& k = j.at("kernel");
        if (!k.is_object()) throw config_error("kernel", "must be an object");
        if (k.contains("rho")) rho = k.at("rho").get<double>();
        if (k.contains("a")) a = k.at("a").get<double>();
        if (k.contains("rho1")) rho1 = k.at("rho1").get<double>();
    }
    if (std::isnan(rho1)) rho1 = rho / 2.0;  // default rho1 = rho/2
    cfg.kernel = KernelParams::make(rho, a, rho1);

    cfg.domain_upper = "flat:" + format_double(cfg.kernel.h);
    if (j.contains("domain")) {
        const auto& d = j.at("domain");
        if (!d.is_object()) throw config_error("domain", "must be an object");
        if (d.contains("lower")) cfg.domain_lower = d.at("lower").get<std::string>();
        if (d.contains("upper")) cfg.domain_upper = d.at("upper").get<std::string>();
    }

    if (j.contains("quadrature")) {
        const auto& q = j.at("quadrature");
        if (!q.is_object()) throw config_error("quadrature", "must be an object");
        if (q.contains("abs_tol")) cfg.quadrature.abs_tol = q.at("abs_tol").get<double>();
        if (q.contains("rel_tol")) cfg.quadrature.rel_tol = q.at("rel_tol").get<double>();
        if (q.contains("max_subdivisions"))
            cfg.quadrature.max_subdivisions = q.at("max_subdivisions").get<int>();
        if (q.contains("policy")) {
            const std::string p = q.at("policy").get<std::string>();
            if (p == "fixed")
                cfg.quadrature.policy = SemiInfinitePolicy::fixed;
            else if (p == "decay_driven")
                cfg.quadrature.policy = SemiInfinitePolicy::decay_driven;
            else
                throw config_error("quadrature.policy", "must be 'fixed' or 'decay_driven'");
        }
        if (q.contains("u_max")) cfg.quadrature.u_max = q.at("u_max").get<double>();
    }
    cfg.quadrature.validate();

    if (j.contains("near_tol")) cfg.near_tol = j.at("near_tol").get<double>();
    if (!(cfg.near_tol > 0.0)) throw config_error("near_tol", "must be positive");

    if (j.contains("points")) {
        for (const auto& p : j.at("points")) {
            if (!p.is_array() || p.size() != 2)
                throw config_error("points", "each point must be an [x1, x2] pair");
            cfg.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        }
    }

    const auto read_trace = [&](const char* key, TraceSpec& spec) {
        if (!j.contains("traces") || !j.at("traces").contains(key)) return;
        const auto& t = j.at("traces").at(key);
        if (!t.is_object()) throw config_error(std::string("traces.") + key, "must be an object");
        if (t.contains("source")) spec.source = t.at("source").get<std::string>();
        if (t.contains("growth_rate_c")) spec.growth_rate_c = t.at("growth_rate_c").get<double>();
    };
    read_trace("lower", cfg.trace_lower);
    read_trace("upper", cfg.trace_upper);

    if (j.contains("decay")) {
        const auto& d = j.at("decay");
        if (d.contains("radii")) {
            cfg.decay_radii.clear();
            for (const auto& r : d.at("radii")) cfg.decay_radii.push_back(r.get<double>());
        }
        if (d.contains("samples_per_radius"))
            cfg.decay_samples_per_radius = d.at("samples_per_radius").get<int>();
        if (cfg.decay_samples_per_radius <= 0)
            throw config_error("decay.samples_per_radius", "must be positive");
    }
    return cfg;
}

inline RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw config_error("", std::string("invalid JSON in ") + path + ": " + e.what());
    }
    return from_json(j, std::filesystem::path(path).parent_path());
}

inline nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    j["kernel"] = {{"rho", kernel.rho}, {"a", kernel.a}, {"rho1", kernel.rho1}};
    j["domain"] = {{"lower", domain_lower}, {"upper", domain_upper}};
    j["quadrature"] = {
        {"abs_tol", quadrature.abs_tol},
        {"rel_tol", quadrature.rel_tol},
        {"max_subdivisions", quadrature.max_subdivisions},
        {"policy", quadrature.policy == SemiInfinitePolicy::fixed ? "fixed" : "decay_driven"},
        {"u_max", quadrature.u_max}};
    j["near_tol"] = near_tol;
    if (!points.empty()) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& p : points) arr.push_back({p.y1, p.y2});
        j["points"] = arr;
    }
    const auto trace_json = [](const TraceSpec& t) {
        nlohmann::json out = {{"source", t.source}};
        if (!std::isnan(t.growth_rate_c)) out["growth_rate_c"] = t.growth_rate_c;
        return out;
    };
    j["traces"] = {{"lower", trace_json(trace_lower)}, {"upper", trace_json(trace_upper)}};
    j["decay"] = {{"radii", decay_radii}, {"samples_per_radius", decay_samples_per_radius}};
    return j;
}

}  // namespace carleman

#endif  // CARLEMAN_CONFIG_HPP
