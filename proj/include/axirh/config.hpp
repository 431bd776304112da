#pragma once

// Strict JSON problem specifications: domain, boundary data and solver numerics.
// Unknown keys are rejected at every level; physical parameters have no defaults.

#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "axirh/axial_core.hpp"
#include "axirh/errors.hpp"
#include "axirh/plane_domain.hpp"
#include "axirh/solver_api.hpp"

namespace axirh {

using json = nlohmann::json;

namespace detail {

inline void allow_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
    require(j.is_object(), ErrorCode::config, where + " must be an object");
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (auto it = j.begin(); it != j.end(); ++it)
        require(allowed.count(it.key()) > 0, ErrorCode::config, "unknown key '" + it.key() + "' in " + where);
}

inline const json& need(const json& j, const char* key, const std::string& where) {
    require(j.contains(key), ErrorCode::config, "missing key '" + std::string(key) + "' in " + where);
    return j.at(key);
}

inline double number(const json& j, const std::string& what) {
    require(j.is_number(), ErrorCode::config, what + " must be a number");
    return j.get<double>();
}

inline long integer(const json& j, const std::string& what) {
    require(j.is_number_integer(), ErrorCode::config, what + " must be an integer");
    return j.get<long>();
}

inline cplx complex_value(const json& j, const std::string& what) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(), ErrorCode::config,
            what + " must be a number or a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

/// Shorthand boundary data: {"samples": [...]} and {"fourier": [...] or {"modes": [...]}}.
inline json desugar_boundary(const json& j) {
    if (!j.is_object() || j.contains("type") || j.size() != 1) return j;
    if (j.contains("samples")) return json{{"type", "samples"}, {"values", j["samples"]}};
    if (j.contains("fourier")) {
        const json& f = j["fourier"];
        return json{{"type", "fourier"}, {"modes", f.is_object() && f.contains("modes") ? f["modes"] : f}};
    }
    return j;
}

/// Uniform double in [0, 1) from the top 53 bits; independent of the standard
/// library's distribution implementations.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace detail

/// Seeded random trigonometric polynomial sum_{k<=d} a_k cos(ks) + b_k sin(ks)
/// with coefficients uniform in [-amplitude, amplitude] / (1 + k).
inline std::vector<std::pair<double, double>> random_trig_coefficients(std::uint64_t seed, int degree,
                                                                       double amplitude) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<double, double>> c(static_cast<std::size_t>(degree + 1));
    for (int k = 0; k <= degree; ++k) {
        const double s = amplitude / (1.0 + k);
        const double a = s * (2.0 * detail::unit_uniform(rng) - 1.0);
        const double b = k == 0 ? 0.0 : s * (2.0 * detail::unit_uniform(rng) - 1.0);
        c[static_cast<std::size_t>(k)] = {a, b};
    }
    return c;
}

/// Real boundary datum from its JSON form. `n` feeds the Cauchy-kernel trace.
inline RealBoundaryFn parse_real_boundary(const json& raw, int n, std::uint64_t seed, const std::string& where) {
    const json j = detail::desugar_boundary(raw);
    require(j.is_object(), ErrorCode::config, where + " must be an object");
    const std::string type = detail::need(j, "type", where).get<std::string>();
    if (type == "constant") {
        detail::allow_keys(j, {"type", "value"}, where);
        const double v = detail::number(detail::need(j, "value", where), where + ".value");
        return [v](const BoundaryPoint&) { return v; };
    }
    if (type == "samples") {
        detail::allow_keys(j, {"type", "values"}, where);
        const json& vals = detail::need(j, "values", where);
        require(vals.is_array() && vals.size() >= 8, ErrorCode::config, where + ".values needs >= 8 samples");
        std::vector<double> v;
        for (const auto& x : vals) v.push_back(detail::number(x, where + ".values"));
        auto f = std::make_shared<TrigInterpolant>(std::span<const double>(v));
        return [f](const BoundaryPoint& b) { return (*f)(b.parameter).real(); };
    }
    if (type == "fourier") {
        detail::allow_keys(j, {"type", "modes"}, where);
        std::vector<std::pair<long, cplx>> modes;
        for (const auto& m : detail::need(j, "modes", where)) {
            detail::allow_keys(m, {"k", "c"}, where + ".modes[]");
            modes.emplace_back(detail::integer(detail::need(m, "k", where), where + ".k"),
                               detail::complex_value(detail::need(m, "c", where), where + ".c"));
        }
        return [modes](const BoundaryPoint& b) {
            cplx acc{0.0, 0.0};
            for (const auto& [k, c] : modes) acc += c * std::polar(1.0, static_cast<double>(k) * b.parameter);
            return acc.real();
        };
    }
    if (type == "x0") {
        detail::allow_keys(j, {"type"}, where);
        return [](const BoundaryPoint& b) { return b.z.real(); };
    }
    if (type == "exp_x0") {
        detail::allow_keys(j, {"type", "alpha"}, where);
        const double a = detail::number(detail::need(j, "alpha", where), where + ".alpha");
        return [a](const BoundaryPoint& b) { return std::exp(a * b.z.real()); };
    }
    if (type == "cauchy_A") {
        detail::allow_keys(j, {"type", "center_x0"}, where);
        const double c = j.contains("center_x0") ? detail::number(j.at("center_x0"), where + ".center_x0") : 0.0;
        return [n, c](const BoundaryPoint& b) { return cauchy_kernel({b.z.real() - c, b.z.imag(), {}}, n).a; };
    }
    if (type == "random_trig") {
        detail::allow_keys(j, {"type", "degree", "amplitude", "seed_offset"}, where);
        const long d = detail::integer(detail::need(j, "degree", where), where + ".degree");
        require(d >= 0 && d <= 64, ErrorCode::config, where + ".degree must lie in [0, 64]");
        const double amp = j.contains("amplitude") ? detail::number(j.at("amplitude"), where + ".amplitude") : 1.0;
        const long off = j.contains("seed_offset") ? detail::integer(j.at("seed_offset"), where + ".seed_offset") : 0;
        const auto c = random_trig_coefficients(seed + static_cast<std::uint64_t>(off), static_cast<int>(d), amp);
        return [c](const BoundaryPoint& b) {
            double acc = 0.0;
            for (std::size_t k = 0; k < c.size(); ++k) {
                const double kk = static_cast<double>(k) * b.parameter;
                acc += c[k].first * std::cos(kk) + c[k].second * std::sin(kk);
            }
            return acc;
        };
    }
    fail(ErrorCode::config, "unknown boundary data type '" + type + "' in " + where);
}

/// Complex boundary coefficient: constant, samples of [re, im] pairs, or Fourier
/// modes lambda(s) = sum c_k e^{iks}.
inline ComplexBoundaryFn parse_complex_boundary(const json& raw, const std::string& where) {
    const json j = detail::desugar_boundary(raw);
    require(j.is_object(), ErrorCode::config, where + " must be an object");
    const std::string type = detail::need(j, "type", where).get<std::string>();
    if (type == "constant") {
        detail::allow_keys(j, {"type", "value"}, where);
        const cplx v = detail::complex_value(detail::need(j, "value", where), where + ".value");
        return [v](const BoundaryPoint&) { return v; };
    }
    if (type == "samples") {
        detail::allow_keys(j, {"type", "values"}, where);
        const json& vals = detail::need(j, "values", where);
        require(vals.is_array() && vals.size() >= 8, ErrorCode::config, where + ".values needs >= 8 samples");
        std::vector<cplx> v;
        for (const auto& x : vals) v.push_back(detail::complex_value(x, where + ".values"));
        auto f = std::make_shared<TrigInterpolant>(std::span<const cplx>(v));
        return [f](const BoundaryPoint& b) { return (*f)(b.parameter); };
    }
    if (type == "fourier") {
        detail::allow_keys(j, {"type", "modes"}, where);
        std::vector<std::pair<long, cplx>> modes;
        for (const auto& m : detail::need(j, "modes", where)) {
            detail::allow_keys(m, {"k", "c"}, where + ".modes[]");
            modes.emplace_back(detail::integer(detail::need(m, "k", where), where + ".k"),
                               detail::complex_value(detail::need(m, "c", where), where + ".c"));
        }
        return [modes](const BoundaryPoint& b) {
            cplx acc{0.0, 0.0};
            for (const auto& [k, c] : modes) acc += c * std::polar(1.0, static_cast<double>(k) * b.parameter);
            return acc;
        };
    }
    fail(ErrorCode::config, "unknown coefficient type '" + type + "' in " + where);
}

struct DomainSpec {
    ConformalMap map;
    std::string type;
    std::unique_ptr<StarDomain> star;  ///< set for star domains, used by map diagnostics
    TheodorsenReport theodorsen;
};

inline DomainSpec parse_domain(const json& j, double axis_margin) {
    const std::string where = "domain";
    require(j.is_object(), ErrorCode::config, "domain must be an object");
    DomainSpec d;
    d.type = detail::need(j, "type", where).get<std::string>();
    if (d.type == "disk") {
        detail::allow_keys(j, {"type", "center", "radius"}, where);
        const cplx c = detail::complex_value(detail::need(j, "center", where), "domain.center");
        const double r = detail::number(detail::need(j, "radius", where), "domain.radius");
        d.map = affine_disk_map(c, r, axis_margin);
    } else if (d.type == "poly_map") {
        detail::allow_keys(j, {"type", "coeffs"}, where);
        std::vector<cplx> c;
        for (const auto& x : detail::need(j, "coeffs", where)) c.push_back(detail::complex_value(x, "domain.coeffs"));
        d.map = supplied_map(std::move(c), axis_margin);
    } else if (d.type == "star") {
        detail::allow_keys(j, {"type", "center", "radius_samples", "boundary_N", "tol_map"}, where);
        d.star = std::make_unique<StarDomain>();
        d.star->center = detail::complex_value(detail::need(j, "center", where), "domain.center");
        for (const auto& x : detail::need(j, "radius_samples", where))
            d.star->radius_samples.push_back(detail::number(x, "domain.radius_samples"));
        TheodorsenOptions opt;
        opt.axis_margin = axis_margin;
        if (j.contains("boundary_N"))
            opt.boundary_n = static_cast<std::size_t>(detail::integer(j.at("boundary_N"), "domain.boundary_N"));
        if (j.contains("tol_map")) opt.tol_map = detail::number(j.at("tol_map"), "domain.tol_map");
        d.map = theodorsen_map(*d.star, opt, &d.theodorsen);
    } else {
        fail(ErrorCode::config, "unknown domain type '" + d.type + "'");
    }
    return d;
}

/// Solver numerics; every key has a documented default.
inline SolveOptions parse_solver(const json& j) {
    SolveOptions o;
    if (j.is_null()) return o;
    const std::string where = "solver";
    detail::allow_keys(j, {"tol_fp", "max_iter", "damping", "grid", "boundary_N", "lattice", "eps_w", "tol_pde",
                           "policy", "constants", "moment_range", "tolerances"},
                       where);
    auto& s = o.similarity;
    if (j.contains("tol_fp")) s.tol_fp = detail::number(j["tol_fp"], "solver.tol_fp");
    if (j.contains("max_iter")) s.max_iter = static_cast<int>(detail::integer(j["max_iter"], "solver.max_iter"));
    if (j.contains("damping")) s.damping = detail::number(j["damping"], "solver.damping");
    if (j.contains("eps_w")) s.eps_w = detail::number(j["eps_w"], "solver.eps_w");
    if (j.contains("tol_pde")) o.tol_pde = detail::number(j["tol_pde"], "solver.tol_pde");
    auto positive = [](long v, const char* what) {
        require(v > 0, ErrorCode::config, std::string(what) + " must be positive");
        return static_cast<std::size_t>(v);
    };
    if (j.contains("boundary_N"))
        s.boundary_N = positive(detail::integer(j["boundary_N"], "solver.boundary_N"), "solver.boundary_N");
    if (j.contains("grid")) {
        detail::allow_keys(j["grid"], {"K", "M"}, "solver.grid");
        if (j["grid"].contains("K")) s.grid_K = positive(detail::integer(j["grid"]["K"], "solver.grid.K"), "K");
        if (j["grid"].contains("M")) s.grid_M = positive(detail::integer(j["grid"]["M"], "solver.grid.M"), "M");
    }
    if (j.contains("lattice")) {
        detail::allow_keys(j["lattice"], {"radial", "angular"}, "solver.lattice");
        if (j["lattice"].contains("radial"))
            s.lattice_radial = positive(detail::integer(j["lattice"]["radial"], "solver.lattice.radial"), "radial");
        if (j["lattice"].contains("angular"))
            s.lattice_angular = positive(detail::integer(j["lattice"]["angular"], "solver.lattice.angular"), "angular");
    }
    if (j.contains("policy")) {
        const std::string p = j["policy"].get<std::string>();
        if (p == "zero") s.disk.policy = ConstantPolicy::zero;
        else if (p == "explicit") s.disk.policy = ConstantPolicy::explicit_values;
        else fail(ErrorCode::config, "solver.policy must be 'zero' or 'explicit'");
    }
    if (j.contains("constants")) {
        for (const auto& c : j["constants"]) s.disk.constants.push_back(detail::complex_value(c, "solver.constants"));
    }
    if (j.contains("moment_range")) {
        const std::string r = j["moment_range"].get<std::string>();
        if (r == "classical") s.disk.moment_range = MomentRange::classical;
        else if (r == "literal") s.disk.moment_range = MomentRange::literal;
        else fail(ErrorCode::config, "solver.moment_range must be 'classical' or 'literal'");
    }
    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        detail::allow_keys(t, {"fft", "fact", "rh", "moment", "coef", "alias"}, "solver.tolerances");
        auto& d = s.disk.tol;
        if (t.contains("fft")) d.fft = detail::number(t["fft"], "tolerances.fft");
        if (t.contains("fact")) d.fact = detail::number(t["fact"], "tolerances.fact");
        if (t.contains("rh")) d.rh = detail::number(t["rh"], "tolerances.rh");
        if (t.contains("moment")) d.moment = detail::number(t["moment"], "tolerances.moment");
        if (t.contains("coef")) d.coef = detail::number(t["coef"], "tolerances.coef");
        if (t.contains("alias")) d.alias = detail::number(t["alias"], "tolerances.alias");
    }
    s.validate();
    return o;
}

struct ProblemSpec {
    AxialProblem problem;
    DomainSpec domain;
    SolveOptions options;
    std::string kind = "rhbvp";  ///< rhbvp or schwarz
};

/// Parses the problem part of a run configuration (n, alpha, domain, lambda, g,
/// solver, axis_margin, kind).
inline ProblemSpec parse_problem(const json& cfg, std::uint64_t seed) {
    ProblemSpec p;
    const std::string where = "config";
    detail::allow_keys(cfg, {"n", "alpha", "kind", "axis_margin", "domain", "lambda", "g", "solver", "output", "oracle",
                             "seed"},
                       where);
    const long n = detail::integer(detail::need(cfg, "n", where), "n");
    require(n >= 1 && n <= 64, ErrorCode::config, "n must lie in [1, 64]");
    p.problem.n = static_cast<int>(n);
    p.problem.alpha = detail::number(detail::need(cfg, "alpha", where), "alpha");
    if (cfg.contains("axis_margin")) p.problem.axis_margin = detail::number(cfg["axis_margin"], "axis_margin");
    require(p.problem.axis_margin > 0.0, ErrorCode::config, "axis_margin must be positive");
    if (cfg.contains("kind")) {
        p.kind = cfg["kind"].get<std::string>();
        require(p.kind == "rhbvp" || p.kind == "schwarz", ErrorCode::config, "kind must be 'rhbvp' or 'schwarz'");
    }
    p.domain = parse_domain(detail::need(cfg, "domain", where), p.problem.axis_margin);
    p.problem.map = p.domain.map;
    if (p.kind == "schwarz") {
        require(!cfg.contains("lambda"), ErrorCode::config, "schwarz problems fix lambda = 1; drop 'lambda'");
        p.problem.lambda = [](const BoundaryPoint&) { return cplx(1.0, 0.0); };
    } else {
        p.problem.lambda = parse_complex_boundary(detail::need(cfg, "lambda", where), "lambda");
    }
    p.problem.g = parse_real_boundary(detail::need(cfg, "g", where), p.problem.n, seed, "g");
    p.options = parse_solver(cfg.contains("solver") ? cfg["solver"] : json());
    return p;
}

struct OutputSpec {
    std::string fields_csv = "fields.csv";
    std::string report_json = "report.json";
};

struct OracleSpec {
    std::size_t rings = 64;
    std::size_t angles = 64;
};

/// Full run configuration as consumed by the command-line tool.
struct RunConfig {
    ProblemSpec spec;
    OutputSpec output;
    OracleSpec oracle;
    std::uint64_t seed = 0;
    json source;  ///< the configuration after overrides, echoed into reports
};

inline RunConfig parse_run_config(const json& cfg) {
    RunConfig rc;
    rc.source = cfg;
    if (cfg.contains("seed")) {
        const long s = detail::integer(cfg["seed"], "seed");
        require(s >= 0, ErrorCode::config, "seed must be non-negative");
        rc.seed = static_cast<std::uint64_t>(s);
    }
    rc.spec = parse_problem(cfg, rc.seed);
    if (cfg.contains("output")) {
        const json& o = cfg["output"];
        detail::allow_keys(o, {"fields_csv", "report_json"}, "output");
        if (o.contains("fields_csv")) rc.output.fields_csv = o["fields_csv"].get<std::string>();
        if (o.contains("report_json")) rc.output.report_json = o["report_json"].get<std::string>();
    }
    if (cfg.contains("oracle")) {
        const json& o = cfg["oracle"];
        detail::allow_keys(o, {"rings", "angles"}, "oracle");
        auto at_least_16 = [](const json& v, const char* what) {
            const long x = detail::integer(v, what);
            require(x >= 16, ErrorCode::config, std::string(what) + " must be >= 16");
            return static_cast<std::size_t>(x);
        };
        if (o.contains("rings")) rc.oracle.rings = at_least_16(o["rings"], "oracle.rings");
        if (o.contains("angles")) rc.oracle.angles = at_least_16(o["angles"], "oracle.angles");
    }
    return rc;
}

/// Applies "a.b.c=value" overrides; only solver, output, oracle and seed may be
/// changed this way. The value is parsed as JSON, falling back to a string.
inline void apply_override(json& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    require(eq != std::string::npos && eq > 0, ErrorCode::config, "override must look like path=value: " + assignment);
    const std::string path = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    std::vector<std::string> parts;
    for (std::size_t b = 0;;) {
        const auto d = path.find('.', b);
        parts.push_back(path.substr(b, d == std::string::npos ? std::string::npos : d - b));
        require(!parts.back().empty(), ErrorCode::config, "empty component in override path " + path);
        if (d == std::string::npos) break;
        b = d + 1;
    }
    static const std::set<std::string> roots{"solver", "output", "oracle", "seed"};
    require(roots.count(parts.front()) > 0, ErrorCode::config,
            "overrides may only touch solver, output, oracle or seed, not '" + parts.front() + "'");
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;
    json* node = &cfg;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        if (!node->contains(parts[i])) (*node)[parts[i]] = json::object();
        node = &(*node)[parts[i]];
        require(node->is_object(), ErrorCode::config, "override path crosses a non-object at " + parts[i]);
    }
    (*node)[parts.back()] = value;
}

}  // namespace axirh
