#pragma once

// Problem-level entry points for axially monogenic (alpha = 0) and meta-monogenic
// RH problems, plus residual verification of a sampled solution.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "axirh/axial_core.hpp"
#include "axirh/errors.hpp"
#include "axirh/plane_domain.hpp"
#include "axirh/vekua.hpp"

namespace axirh {

/// Re{lambda phi} = g on the boundary of the axial domain whose meridian section
/// is D, for phi with (D - alpha) phi = 0.
struct AxialProblem {
    int n = 1;
    double alpha = 0.0;
    ConformalMap map;
    double axis_margin = default_axis_margin;
    ComplexBoundaryFn lambda;
    RealBoundaryFn g;

    void validate() const {
        require(n >= 1, ErrorCode::dimension, "dimension parameter n must be >= 1");
        require(std::isfinite(alpha), ErrorCode::config, "alpha must be finite");
        require(static_cast<bool>(lambda) && static_cast<bool>(g), ErrorCode::config, "lambda and g are required");
    }
};

struct SolveOptions {
    SimilarityConfig similarity;
    double tol_pde = 1e-2;  ///< lattice PDE residual relative to max |phi|, interior nodes
};

struct ResidualReport {
    double pde_residual_max = 0.0;
    double pde_residual_rms = 0.0;
    double pde_residual_rel = 0.0;
    double bc_residual_max = 0.0;
    double bc_residual_rms = 0.0;
    double bc_residual_rel = 0.0;
    int m = 0;
    bool solvable = true;
    std::vector<cplx> moments;
    double moment_tolerance = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> history;
    bool within_tolerance = false;
};

struct AxialSolution {
    double alpha = 0.0;
    AxialField field;
    VekuaSolution planar;
    ResidualReport report;
};

namespace detail {

inline double solution_scale(std::span<const double> A, std::span<const double> B) {
    double s = 0.0;
    for (std::size_t k = 0; k < A.size(); ++k) s = std::max(s, std::hypot(A[k], B[k]));
    return s;
}

}  // namespace detail

/// Recomputes the residuals of a sampled solution on a disk lattice (rows are
/// equispaced disk angles, the last column is the boundary).
///
/// The shifted field e^{-alpha x0}(A, B) is checked against the axial Vekua system
/// on nodes more than three cells from the boundary; the boundary condition is
/// checked on the last column.
inline ResidualReport verify(const AxialField& field, const AxialProblem& problem, double alpha,
                             const SolveOptions& opt = {}) {
    problem.validate();
    field.validate();
    const Lattice& L = field.lattice;
    L.validate_shape();
    require(field.n == problem.n, ErrorCode::congruence, "field dimension differs from the problem's");
    require(L.periodic_rows, ErrorCode::congruence, "verification needs a disk lattice");

    const auto t = circle_angles(L.rows);
    const std::size_t jb = L.cols - 1;
    double span_scale = 0.0;
    for (std::size_t k = 0; k < L.size(); ++k) span_scale = std::max(span_scale, std::hypot(L.x0[k], L.r[k]));
    for (std::size_t i = 0; i < L.rows; ++i) {
        const std::size_t k = L.index(i, jb);
        const cplx zb = problem.map.forward(std::polar(1.0, t[i]));
        require(std::abs(zb - cplx(L.x0[k], L.r[k])) <= 1e-9 * std::max(1.0, span_scale), ErrorCode::congruence,
                "lattice boundary column does not lie on the domain boundary");
    }

    ResidualReport rep;
    AxialField shifted = field;
    for (std::size_t k = 0; k < L.size(); ++k) {
        const double s = std::exp(-alpha * L.x0[k]);
        shifted.A[k] = s * field.A[k];
        shifted.B[k] = s * field.B[k];
    }
    const auto res = vesy_residual(shifted);
    const auto mask = interior_mask(L);
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < L.size(); ++k) {
        if (!mask[k]) continue;
        const double v = 0.5 * std::hypot(res.res1[k], res.res2[k]);
        rep.pde_residual_max = std::max(rep.pde_residual_max, v);
        sum += v * v;
        ++count;
    }
    rep.pde_residual_rms = count ? std::sqrt(sum / static_cast<double>(count)) : 0.0;
    const double scale = detail::solution_scale(shifted.A, shifted.B);
    rep.pde_residual_rel = scale > 0.0 ? rep.pde_residual_max / scale : rep.pde_residual_max;

    sum = 0.0;
    double gmax = 0.0;
    for (std::size_t i = 0; i < L.rows; ++i) {
        const std::size_t k = L.index(i, jb);
        const BoundaryPoint bp{cplx(L.x0[k], L.r[k]), problem.map.boundary_parameter(t[i])};
        const cplx lam = problem.lambda(bp);
        const double gv = problem.g(bp);
        const double v = std::abs(lam.real() * field.A[k] - lam.imag() * field.B[k] - gv);
        rep.bc_residual_max = std::max(rep.bc_residual_max, v);
        gmax = std::max(gmax, std::abs(gv));
        sum += v * v;
    }
    rep.bc_residual_rms = std::sqrt(sum / static_cast<double>(L.rows));
    rep.bc_residual_rel = rep.bc_residual_max / std::max(1.0, gmax);
    rep.within_tolerance =
        rep.pde_residual_rel <= opt.tol_pde && rep.bc_residual_rel <= opt.similarity.disk.tol.rh;
    return rep;
}

/// Index and solvability diagnostics of a planar solve, merged into a report.
inline void attach_diagnostics(ResidualReport& rep, const VekuaSolution& planar, const SolveOptions& opt) {
    rep.m = planar.m;
    rep.solvable = planar.solvable;
    rep.moments = planar.psi.moments;
    rep.moment_tolerance = opt.similarity.disk.tol.moment * planar.psi.moment_scale;
    rep.iterations = planar.iterations;
    rep.converged = planar.converged;
    rep.history = planar.history;
    rep.within_tolerance = rep.within_tolerance && rep.converged && rep.solvable;
}

/// Meta-monogenic problem (alpha may be 0): solve the monogenic problem with datum
/// e^{-alpha x0} g, then scale the field by e^{alpha x0}.
inline AxialSolution solve_meta(const AxialProblem& problem, const SolveOptions& opt = {}) {
    problem.validate();
    const double alpha = problem.alpha;
    const RealBoundaryFn& g = problem.g;
    const RealBoundaryFn g0 = [alpha, g](const BoundaryPoint& b) { return std::exp(-alpha * b.z.real()) * g(b); };
    const auto planar_problem = make_planar_problem(problem.n, problem.map, problem.lambda, g0,
                                                    opt.similarity.boundary_N, problem.axis_margin);
    AxialSolution sol;
    sol.alpha = alpha;
    sol.planar = similarity_solve(planar_problem, opt.similarity);
    if (!sol.planar.solvable || sol.planar.w.empty()) {
        attach_diagnostics(sol.report, sol.planar, opt);
        return sol;
    }
    sol.field = reconstruct_axial(sol.planar.lattice.lattice, sol.planar.w, problem.n);
    for (std::size_t k = 0; k < sol.field.A.size(); ++k) {
        const double s = std::exp(alpha * sol.field.lattice.x0[k]);
        sol.field.A[k] = s * sol.field.A[k];
        sol.field.B[k] = s * sol.field.B[k];
    }
    sol.report = verify(sol.field, problem, alpha, opt);
    attach_diagnostics(sol.report, sol.planar, opt);
    return sol;
}

/// Monogenic RH problem.
inline AxialSolution solve_rhbvp(const AxialProblem& problem, const SolveOptions& opt = {}) {
    require(problem.alpha == 0.0, ErrorCode::config, "solve_rhbvp needs alpha = 0; use solve_meta");
    return solve_meta(problem, opt);
}

namespace detail {

inline AxialProblem with_unit_lambda(AxialProblem p) {
    p.lambda = [](const BoundaryPoint&) { return cplx(1.0, 0.0); };
    return p;
}

}  // namespace detail

/// Schwarz problem Re phi = g (lambda = 1); any lambda in `problem` is ignored.
inline AxialSolution solve_schwarz(const AxialProblem& problem, const SolveOptions& opt = {}) {
    return solve_rhbvp(detail::with_unit_lambda(problem), opt);
}

/// Meta-monogenic Schwarz problem.
inline AxialSolution solve_meta_schwarz(const AxialProblem& problem, const SolveOptions& opt = {}) {
    return solve_meta(detail::with_unit_lambda(problem), opt);
}

}  // namespace axirh
