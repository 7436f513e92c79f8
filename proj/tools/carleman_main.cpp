// This file is part of carleman, a numerical toolkit for harmonic
// continuation in band domains.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Subcommands:
//   kernel-eval   batch-evaluate Phi(y, x) over a points CSV
//   verify        run the derivation suites; exit 1 on any failure
//   reconstruct   boundary-integral reconstruction at interior points
//   decay-report  max|U| / exp(pi R / (2h)) over circles |x| = R
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error,
// 3 I/O error.

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "carleman/config.hpp"
#include "carleman/csv.hpp"
#include "carleman/representation.hpp"
#include "carleman/verification.hpp"

namespace {

using namespace carleman;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitIoError = 3;

struct CommonArgs {
    std::string config_path;
    std::string points_path;
    std::string out_path;
    double tol_override = std::numeric_limits<double>::quiet_NaN();
};

RunConfig load_config(const CommonArgs& args) {
    RunConfig cfg = RunConfig::load(args.config_path);
    if (!std::isnan(args.tol_override)) {
        if (!(args.tol_override > 0.0))
            throw config_error("--tol", "override must be positive");
        cfg.quadrature.abs_tol = args.tol_override;
        cfg.quadrature.rel_tol = args.tol_override;
        cfg.quadrature.validate();
    }
    return cfg;
}

/// Rows are written to --out when given, otherwise to stdout.
void emit_csv(const std::string& out_path, const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream buf;
    for (std::size_t i = 0; i < header.size(); ++i) buf << (i ? "," : "") << header[i];
    buf << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) buf << (i ? "," : "") << row[i];
        buf << '\n';
    }
    if (out_path.empty()) {
        std::cout << buf.str();
        return;
    }
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw io_error("cannot open " + out_path + " for writing");
    out << buf.str();
}

std::vector<Point2> load_points(const CommonArgs& args, const RunConfig& cfg,
                                const std::vector<std::string>& header) {
    std::vector<Point2> pts;
    if (!args.points_path.empty()) {
        const CsvTable t = read_csv(args.points_path, header);
        for (const auto& row : t.rows) pts.push_back({row[0], row[1]});
    } else {
        pts = cfg.points;
    }
    return pts;
}

int cmd_kernel_eval(const CommonArgs& args) {
    const RunConfig cfg = load_config(args);
    std::vector<std::vector<std::string>> rows;
    std::vector<std::array<double, 4>> tuples;
    if (!args.points_path.empty()) {
        const CsvTable t = read_csv(args.points_path, {"y1", "y2", "x1", "x2"});
        for (const auto& row : t.rows) tuples.push_back({row[0], row[1], row[2], row[3]});
    } else {
        throw config_error("--points", "kernel-eval requires a points CSV (header y1,y2,x1,x2)");
    }
    for (const auto& [y1, y2, x1, x2] : tuples) {
        std::string phi = "nan", err = "nan", code = "0";
        try {
            const IntegralResult r =
                eval_phi({y1, y2}, {x1, x2}, cfg.kernel, cfg.quadrature);
            phi = format_double(r.value);
            err = format_double(r.error_estimate);
        } catch (const singularity_error&) {
            code = "1";
        } catch (const std::domain_error&) {
            code = "2";
        }
        rows.push_back({format_double(y1), format_double(y2), format_double(x1),
                        format_double(x2), phi, err, code});
    }
    emit_csv(args.out_path, {"y1", "y2", "x1", "x2", "phi", "error_estimate", "error"}, rows);
    return kExitOk;
}

int cmd_verify(const CommonArgs& args) {
    load_config(args);  // validates all config invariants
    const std::vector<SuiteResult> suites = run_verification_suites();
    std::vector<std::vector<std::string>> rows;
    bool all_pass = true;
    std::string first_failure;
    for (const auto& s : suites) {
        all_pass = all_pass && s.pass;
        if (!s.pass && first_failure.empty()) first_failure = s.name;
        std::ostringstream line;
        line << (s.pass ? "[PASS] " : "[FAIL] ") << s.name << ":";
        for (const auto& [k, v] : s.metrics) {
            line << ' ' << k << '=' << format_double(v);
            rows.push_back({s.name, k, format_double(v), s.pass ? "1" : "0"});
        }
        std::cout << line.str() << '\n';
    }
    if (!args.out_path.empty())
        emit_csv(args.out_path, {"suite", "metric", "value", "pass"}, rows);
    if (!all_pass) {
        std::cerr << "verification failed: " << first_failure << '\n';
        return kExitVerifyFailure;
    }
    return kExitOk;
}

int cmd_reconstruct(const CommonArgs& args) {
    const RunConfig cfg = load_config(args);
    const BandDomain domain = cfg.build_domain();
    const CauchyTrace lower = cfg.build_trace(CurveKind::lower, domain);
    const CauchyTrace upper = cfg.build_trace(CurveKind::upper, domain);
    const std::vector<Point2> pts = load_points(args, cfg, {"x1", "x2"});

    // coverage is a property of the input tables, not of a single row: check
    // it up front against the widest truncation radius in the batch
    double max_y = 0.0;
    for (const Point2& x : pts) {
        const double c = std::max(lower.growth_rate_c, upper.growth_rate_c);
        max_y = std::max(max_y, truncation_radius(cfg.kernel, c, x.y1, cfg.quadrature.abs_tol));
    }
    detail::check_trace_coverage(lower, max_y);
    detail::check_trace_coverage(upper, max_y);
    detail::check_curve_coverage(domain, max_y);

    std::vector<std::vector<std::string>> rows;
    for (const Point2& x : pts) {
        std::string value = "nan", i1 = "nan", i2 = "nan", ty = "nan", qe = "nan";
        std::string cls, code = "0";
        try {
            const ReconstructionReport rep =
                reconstruct(x, domain, lower, upper, cfg.kernel, cfg.quadrature, cfg.near_tol);
            value = format_double(rep.value);
            i1 = format_double(rep.I1);
            i2 = format_double(rep.I2);
            ty = format_double(rep.truncation_Y);
            qe = format_double(rep.quad_error);
            cls = to_string(rep.classification);
        } catch (const std::domain_error&) {
            cls = to_string(classify_point(domain, x, cfg.near_tol));
            code = "1";
        }
        rows.push_back({format_double(x.y1), format_double(x.y2), value, i1, i2, ty, qe, cls,
                        code});
    }
    emit_csv(args.out_path,
             {"x1", "x2", "value", "I1", "I2", "truncation_Y", "quad_error", "classification",
              "error"},
             rows);
    return kExitOk;
}

int cmd_decay_report(const CommonArgs& args) {
    const RunConfig cfg = load_config(args);
    const BandDomain domain = cfg.build_domain();
    const CauchyTrace lower = cfg.build_trace(CurveKind::lower, domain);
    const CauchyTrace upper = cfg.build_trace(CurveKind::upper, domain);

    std::vector<std::pair<Point2, double>> values;
    for (const double R : cfg.decay_radii) {
        int found = 0;
        const int n = cfg.decay_samples_per_radius;
        for (int i = 0; i < n; ++i) {
            const double x2 = cfg.kernel.h * (0.15 + 0.7 * (i + 0.5) / n);
            if (x2 >= R) continue;
            const double x1 = std::sqrt(R * R - x2 * x2);
            for (const double sign : {-1.0, 1.0}) {
                const Point2 x{sign * x1, x2};
                if (classify_point(domain, x, cfg.near_tol) != PointClass::inside) continue;
                const ReconstructionReport rep =
                    reconstruct(x, domain, lower, upper, cfg.kernel, cfg.quadrature, cfg.near_tol);
                values.emplace_back(x, rep.value);
                ++found;
            }
        }
        if (found == 0)
            std::cerr << "note: radius R=" << format_double(R)
                      << " has no sample points inside the domain; skipped\n";
    }
    std::vector<std::vector<std::string>> rows;
    for (const DecayRatio& d : decay_ratio_report(values, cfg.kernel))
        rows.push_back({format_double(d.radius), format_double(d.ratio)});
    emit_csv(args.out_path, {"R", "ratio"}, rows);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"band-kernel evaluation and harmonic continuation from Neumann boundary data"};
    app.require_subcommand(1);

    CommonArgs args;
    const auto add_common = [&](CLI::App* sub, bool with_points) {
        sub->add_option("--config", args.config_path, "JSON configuration file")->required();
        if (with_points) sub->add_option("--points", args.points_path, "points CSV file");
        sub->add_option("--out", args.out_path, "output CSV path (default: stdout)");
        sub->add_option("--tol", args.tol_override,
                        "override quadrature tolerances (abs and rel)");
    };

    CLI::App* kernel_eval =
        app.add_subcommand("kernel-eval", "evaluate Phi over a points CSV (header y1,y2,x1,x2)");
    add_common(kernel_eval, true);
    CLI::App* verify = app.add_subcommand("verify", "run the derivation verification suites");
    add_common(verify, false);
    CLI::App* reconstruct_cmd = app.add_subcommand(
        "reconstruct", "reconstruct U at interior points from Neumann traces");
    add_common(reconstruct_cmd, true);
    CLI::App* decay = app.add_subcommand("decay-report", "decay ratios over circles |x| = R");
    add_common(decay, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfigError;
    }

    try {
        if (app.got_subcommand(kernel_eval)) return cmd_kernel_eval(args);
        if (app.got_subcommand(verify)) return cmd_verify(args);
        if (app.got_subcommand(reconstruct_cmd)) return cmd_reconstruct(args);
        return cmd_decay_report(args);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const csv_error& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitIoError;
    } catch (const io_error& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIoError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIoError;
    }
}
