#pragma once

// Command layer behind the axirh executable: config loading, overrides, the five
// commands and report emission. Argument parsing itself lives in tools/.

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "axirh/config.hpp"
#include "axirh/disk_rh.hpp"
#include "axirh/errors.hpp"
#include "axirh/fd_oracle.hpp"
#include "axirh/field_io.hpp"
#include "axirh/plane_domain.hpp"
#include "axirh/solver_api.hpp"

namespace axirh::cli {

namespace fs = std::filesystem;

enum ExitCode : int { ok = 0, usage = 1, unsolvable = 2, nonconvergent = 3 };

struct Options {
    std::string command;
    fs::path config;
    fs::path output_dir = ".";
    std::vector<std::string> overrides;
    std::optional<long> seed;
    fs::path fields;  ///< verify input; defaults to the configured fields_csv
};

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> c{"solve", "verify", "oracle-compare", "index", "map-check"};
    return c;
}

namespace detail {

inline json complex_list(const std::vector<cplx>& v) {
    json a = json::array();
    for (const cplx& c : v) a.push_back({c.real(), c.imag()});
    return a;
}

inline json residual_json(const ResidualReport& r) {
    return {{"pde_residual_max", r.pde_residual_max}, {"pde_residual_rms", r.pde_residual_rms},
            {"pde_residual_rel", r.pde_residual_rel}, {"bc_residual_max", r.bc_residual_max},
            {"bc_residual_rms", r.bc_residual_rms},   {"bc_residual_rel", r.bc_residual_rel},
            {"within_tolerance", r.within_tolerance}};
}

inline json diagnostics_json(const ResidualReport& r) {
    json violating = json::array();
    for (std::size_t k = 0; k < r.moments.size(); ++k)
        if (std::abs(r.moments[k]) > r.moment_tolerance)
            violating.push_back({{"k", k}, {"value", {r.moments[k].real(), r.moments[k].imag()}}});
    return {{"m", r.m},
            {"solvable", r.solvable},
            {"moments", complex_list(r.moments)},
            {"moment_tolerance", r.moment_tolerance},
            {"violating_moments", violating},
            {"iterations", r.iterations},
            {"converged", r.converged},
            {"history", r.history}};
}

inline fs::path resolve(const fs::path& dir, const std::string& p) {
    const fs::path q(p);
    return q.is_absolute() ? q : dir / q;
}

/// Fails before any computation if `path` cannot be created or appended to; a
/// file created only for the probe is removed again.
inline void probe_writable(const fs::path& path) {
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    const bool existed = fs::exists(path, ec);
    {
        std::ofstream f(path, std::ios::app);
        require(static_cast<bool>(f), ErrorCode::io, "output path not writable: " + path.string());
    }
    if (!existed) fs::remove(path, ec);
}

inline void write_report(const fs::path& path, const json& report) {
    std::ofstream f(path, std::ios::binary);
    require(static_cast<bool>(f), ErrorCode::io, "cannot write report " + path.string());
    f << report.dump(2) << '\n';
}

inline json load_config(const Options& opt) {
    std::ifstream in(opt.config);
    require(static_cast<bool>(in), ErrorCode::io, "cannot read config " + opt.config.string());
    json cfg = json::parse(in, nullptr, false);
    require(!cfg.is_discarded(), ErrorCode::config, "config is not valid JSON: " + opt.config.string());
    for (const auto& o : opt.overrides) apply_override(cfg, o);
    if (opt.seed) cfg["seed"] = *opt.seed;
    return cfg;
}

inline AxialSolution run_solver(const ProblemSpec& spec) {
    if (spec.kind == "schwarz") return solve_meta_schwarz(spec.problem, spec.options);
    return solve_meta(spec.problem, spec.options);
}

inline int solution_status(const ResidualReport& r, json& report) {
    if (!r.solvable) {
        report["status"] = "unsolvable";
        return unsolvable;
    }
    if (!r.converged) {
        report["status"] = "nonconvergent";
        return nonconvergent;
    }
    report["status"] = "ok";
    return ok;
}

inline int cmd_solve(const RunConfig& rc, const fs::path& fields, json& report, std::ostream& out) {
    const AxialSolution sol = run_solver(rc.spec);
    report["diagnostics"] = diagnostics_json(sol.report);
    const int code = solution_status(sol.report, report);
    if (sol.report.solvable && !sol.field.A.empty()) {
        report["residuals"] = residual_json(sol.report);
        write_field_csv(fields, sol.field, sol.alpha);
        report["outputs"]["fields_csv"] = fields.generic_string();
    }
    out << "status " << report["status"].get<std::string>() << "  m " << sol.report.m << "  iterations "
        << sol.report.iterations << '\n';
    return code;
}

inline int cmd_verify(const RunConfig& rc, const fs::path& fields, json& report, std::ostream& out) {
    const LoadedField lf = read_field_csv(fields);
    AxialProblem problem = rc.spec.problem;
    require(lf.alpha == problem.alpha, ErrorCode::congruence, "field alpha differs from the config's");
    if (rc.spec.kind == "schwarz") problem.lambda = [](const BoundaryPoint&) { return cplx(1.0, 0.0); };
    const ResidualReport r = verify(lf.field, problem, lf.alpha, rc.spec.options);
    report["residuals"] = residual_json(r);
    report["inputs"]["fields_csv"] = fields.generic_string();
    report["status"] = "ok";
    out << "pde_residual_rel " << r.pde_residual_rel << "  bc_residual_max " << r.bc_residual_max
        << (r.within_tolerance ? "" : "  (outside tolerance)") << '\n';
    return ok;
}

inline PlanarVekuaProblem planar_of(const ProblemSpec& spec) {
    const double alpha = spec.problem.alpha;
    const RealBoundaryFn g = spec.problem.g;
    const RealBoundaryFn g0 = [alpha, g](const BoundaryPoint& b) { return std::exp(-alpha * b.z.real()) * g(b); };
    const ComplexBoundaryFn lambda = spec.kind == "schwarz"
                                         ? ComplexBoundaryFn([](const BoundaryPoint&) { return cplx(1.0, 0.0); })
                                         : spec.problem.lambda;
    return make_planar_problem(spec.problem.n, spec.problem.map, lambda, g0, spec.options.similarity.boundary_N,
                               spec.problem.axis_margin);
}

inline int cmd_oracle(const RunConfig& rc, json& report, std::ostream& out) {
    const PlanarVekuaProblem planar = planar_of(rc.spec);
    const VekuaSolution sol = similarity_solve(planar, rc.spec.options.similarity);
    ResidualReport r;
    attach_diagnostics(r, sol, rc.spec.options);
    report["diagnostics"] = diagnostics_json(r);
    const int code = solution_status(r, report);
    json oracle = {{"rings", rc.oracle.rings}, {"angles", rc.oracle.angles}};
    if (sol.solvable) {
        const OracleComparison c = compare_with_oracle(sol, planar, rc.oracle.rings, rc.oracle.angles);
        oracle["rel_l2"] = c.rel_l2;
        oracle["lsq_residual"] = c.lsq_residual;
        oracle["normalization_rows"] = c.pins;
        out << "rel_l2 " << c.rel_l2 << "  lsq_residual " << c.lsq_residual << '\n';
    } else {
        const FDSystem sys = assemble(planar, rc.oracle.rings, rc.oracle.angles);
        oracle["lsq_residual"] = direct_solve(sys).residual;
        out << "unsolvable; lsq_residual " << oracle["lsq_residual"].get<double>() << '\n';
    }
    report["oracle"] = oracle;
    return code;
}

inline int cmd_index(const RunConfig& rc, json& report, std::ostream& out) {
    const PlanarVekuaProblem planar = planar_of(rc.spec);
    const DiskRHSolution s = solve_disk_rh(planar.lambda, planar.g, rc.spec.options.similarity.disk);
    ResidualReport r;
    r.m = s.m;
    r.solvable = s.solvable;
    r.moments = s.moments;
    r.moment_tolerance = rc.spec.options.similarity.disk.tol.moment * s.moment_scale;
    json d = diagnostics_json(r);
    d.erase("iterations");
    d.erase("converged");
    d.erase("history");
    report["index"] = d;
    report["status"] = "ok";
    out << "m " << s.m << "  moments " << complex_list(s.moments).dump() << '\n';
    return ok;
}

inline int cmd_map_check(const RunConfig& rc, json& report, std::ostream& out) {
    const MapDiagnostics d = map_diagnostics(rc.spec.domain.map, nullptr, rc.spec.domain.star.get());
    json m = {{"kind", d.kind},
              {"round_trip_max", d.round_trip_max},
              {"boundary_error", d.boundary_error},
              {"min_derivative", d.min_derivative},
              {"area_quadrature", d.area_quadrature},
              {"area_polygon", d.area_polygon},
              {"coefficients", complex_list(rc.spec.domain.map.coefficients())}};
    if (rc.spec.domain.star) {
        m["theodorsen"] = {{"iterations", rc.spec.domain.theodorsen.iterations},
                           {"contraction", rc.spec.domain.theodorsen.contraction},
                           {"last_update", rc.spec.domain.theodorsen.last_update}};
    }
    report["map"] = m;
    report["status"] = "ok";
    out << "kind " << d.kind << "  round_trip " << d.round_trip_max << "  boundary_error " << d.boundary_error
        << "  min|phi'| " << d.min_derivative << '\n';
    return ok;
}

}  // namespace detail

/// Runs one command; always tries to leave a report JSON behind, errors included.
inline int run(const Options& opt, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    const auto t0 = std::chrono::steady_clock::now();
    json report = {{"command", opt.command}};
    fs::path report_path = opt.output_dir / "report.json";
    int code = ok;
    try {
        require(std::find(commands().begin(), commands().end(), opt.command) != commands().end(), ErrorCode::config,
                "unknown command '" + opt.command + "'");
        const json cfg = detail::load_config(opt);
        const RunConfig rc = parse_run_config(cfg);
        report_path = detail::resolve(opt.output_dir, rc.output.report_json);
        const fs::path fields = opt.fields.empty() ? detail::resolve(opt.output_dir, rc.output.fields_csv) : opt.fields;
        detail::probe_writable(report_path);
        if (opt.command == "solve") detail::probe_writable(fields);

        report["config"] = rc.source;
        report["seed"] = rc.seed;
        if (opt.command == "solve") code = detail::cmd_solve(rc, fields, report, out);
        else if (opt.command == "verify") code = detail::cmd_verify(rc, fields, report, out);
        else if (opt.command == "oracle-compare") code = detail::cmd_oracle(rc, report, out);
        else if (opt.command == "index") code = detail::cmd_index(rc, report, out);
        else code = detail::cmd_map_check(rc, report, out);
    } catch (const Error& e) {
        code = e.code() == ErrorCode::convergence ? nonconvergent : usage;
        report["status"] = "error";
        report["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
        err << "error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        code = usage;
        report["status"] = "error";
        report["error"] = {{"code", "internal"}, {"message", e.what()}};
        err << "error: " << e.what() << '\n';
    }
    report["exit_code"] = code;
    report["timestamps"] = {
        {"wall_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
    try {
        detail::probe_writable(report_path);
        detail::write_report(report_path, report);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        if (code == ok) code = usage;
    }
    return code;
}

}  // namespace axirh::cli
