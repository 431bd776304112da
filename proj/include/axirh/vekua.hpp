#pragma once

// Planar Vekua problem d_zbar w + (n-1) i/(4 eta) (w - conj w) = 0 in D with
// Re{lambda w} = g on the boundary, solved through w = Psi(psi(z)) e^{nu(z)}:
// nu is the area transform of F(w) = (n-1) i/(4 eta) (1 - conj(w)/w) and Psi solves
// the disk problem with coefficient lambda e^{nu}. The coupling is resolved by
// damped Picard iteration.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "axirh/axial_core.hpp"
#include "axirh/disk_rh.hpp"
#include "axirh/errors.hpp"
#include "axirh/numerics.hpp"
#include "axirh/parallel.hpp"
#include "axirh/plane_domain.hpp"
#include "axirh/pompeiu.hpp"

namespace axirh {

/// A point of the boundary of D with its position in the domain's own
/// boundary parametrization.
struct BoundaryPoint {
    cplx z;
    double parameter = 0.0;
};

using ComplexBoundaryFn = std::function<cplx(const BoundaryPoint&)>;
using RealBoundaryFn = std::function<double(const BoundaryPoint&)>;

/// Boundary points phi(e^{i t_j}) at N equispaced disk angles.
inline std::vector<BoundaryPoint> disk_boundary_points(const ConformalMap& map, std::size_t n) {
    const auto t = circle_angles(n);
    std::vector<BoundaryPoint> pts(n);
    for (std::size_t j = 0; j < n; ++j) pts[j] = {map.forward(std::polar(1.0, t[j])), map.boundary_parameter(t[j])};
    return pts;
}

struct PlanarVekuaProblem {
    int n = 1;
    ConformalMap map;
    double axis_margin = default_axis_margin;
    std::vector<cplx> lambda;  ///< lambda at phi(e^{i t_j})
    std::vector<double> g;     ///< g at phi(e^{i t_j})

    void validate() const {
        require(n >= 1, ErrorCode::dimension, "dimension parameter n must be >= 1");
        require(lambda.size() == g.size(), ErrorCode::dimension, "lambda and g sample counts differ");
        validate_circle(std::span<const cplx>(lambda), "lambda");
        validate_circle(std::span<const double>(g), "g");
    }
};

inline PlanarVekuaProblem make_planar_problem(int n, ConformalMap map, const ComplexBoundaryFn& lambda,
                                              const RealBoundaryFn& g, std::size_t boundary_n,
                                              double axis_margin = default_axis_margin) {
    PlanarVekuaProblem p;
    p.n = n;
    p.axis_margin = axis_margin;
    const auto pts = disk_boundary_points(map, boundary_n);
    p.lambda.resize(boundary_n);
    p.g.resize(boundary_n);
    for (std::size_t j = 0; j < boundary_n; ++j) {
        require(pts[j].z.imag() >= axis_margin, ErrorCode::domain, "boundary point closer to the axis than allowed");
        p.lambda[j] = lambda(pts[j]);
        p.g[j] = g(pts[j]);
    }
    p.map = std::move(map);
    p.validate();
    return p;
}

/// F = (n-1) i/(4 eta) (1 - conj(w)/w), set to 0 where |w| <= eps_w * max|w|.
inline std::vector<cplx> vekua_rhs(std::span<const cplx> w, std::span<const double> eta, int n,
                                   double eps_w = 1e-12) {
    require(w.size() == eta.size(), ErrorCode::dimension, "w and eta sizes differ");
    std::vector<cplx> F(w.size(), cplx{0.0, 0.0});
    if (n == 1) return F;
    const double floor = eps_w * max_abs(w);
    const double nm1 = static_cast<double>(n - 1);
    for (std::size_t k = 0; k < w.size(); ++k) {
        require(eta[k] > 0.0, ErrorCode::domain, "Vekua coefficient evaluated at eta <= 0");
        if (std::abs(w[k]) <= floor || w[k] == cplx(0.0, 0.0)) continue;
        F[k] = cplx(0.0, nm1 / (4.0 * eta[k])) * (1.0 - std::conj(w[k]) / w[k]);
    }
    return F;
}

/// Disk data of the transplanted problem: lambda0 = lambda e^{nu} and g on the
/// equispaced circle.
inline std::pair<std::vector<cplx>, std::vector<double>> transplant(const PlanarVekuaProblem& problem,
                                                                    std::span<const cplx> nu_boundary) {
    require(nu_boundary.size() == problem.lambda.size(), ErrorCode::transplantation,
            "nu boundary samples do not match the problem's circle sampling");
    std::vector<cplx> l0(problem.lambda.size());
    for (std::size_t j = 0; j < l0.size(); ++j) l0[j] = problem.lambda[j] * std::exp(nu_boundary[j]);
    return {std::move(l0), problem.g};
}

struct SimilarityConfig {
    double tol_fp = 1e-8;
    int max_iter = 50;
    double damping = 0.7;
    std::size_t grid_K = 128;
    std::size_t grid_M = 64;
    std::size_t boundary_N = 256;
    std::size_t lattice_radial = 64;   ///< rings inside the boundary ring
    std::size_t lattice_angular = 128;
    double eps_w = 1e-12;
    DiskRHOptions disk;

    void validate() const {
        require(tol_fp > 0.0, ErrorCode::config, "tol_fp must be positive");
        require(max_iter >= 1, ErrorCode::config, "max_iter must be >= 1");
        require(damping > 0.0 && damping <= 1.0, ErrorCode::config, "damping must lie in (0, 1]");
        require(grid_K >= 4 && grid_M >= 4 && grid_K % 2 == 0, ErrorCode::config, "grid needs even K >= 4, M >= 4");
        require(boundary_N >= 16 && boundary_N % 2 == 0, ErrorCode::config, "boundary_N must be even and >= 16");
        require(lattice_radial >= 4 && lattice_angular >= 8, ErrorCode::config, "output lattice too coarse");
    }
};

/// Mapped polar lattice gamma = rho_j e^{i theta_i}, rho_j = (j + 1/2)/(Nr + 1/2),
/// so the last column is the boundary and the axis-free center is avoided.
struct DiskLattice {
    Lattice lattice;
    std::vector<cplx> gamma;
    std::vector<double> boundary_angle;  ///< theta_i of each row

    [[nodiscard]] double spacing() const { return 1.0 / (static_cast<double>(lattice.cols) - 0.5); }
};

inline DiskLattice disk_lattice(const ConformalMap& map, std::size_t radial, std::size_t angular) {
    DiskLattice d;
    Lattice& g = d.lattice;
    g.rows = angular;
    g.cols = radial + 1;
    g.periodic_rows = true;
    g.x0.resize(g.size());
    g.r.resize(g.size());
    d.gamma.resize(g.size());
    d.boundary_angle = circle_angles(angular);
    const double h = 1.0 / (static_cast<double>(radial) + 0.5);
    for (std::size_t i = 0; i < g.rows; ++i) {
        for (std::size_t j = 0; j < g.cols; ++j) {
            const double rho = j == radial ? 1.0 : (static_cast<double>(j) + 0.5) * h;
            const std::size_t k = g.index(i, j);
            d.gamma[k] = std::polar(rho, d.boundary_angle[i]);
            const cplx z = map.forward(d.gamma[k]);
            g.x0[k] = z.real();
            g.r[k] = z.imag();
        }
    }
    return d;
}

struct VekuaSolution {
    int n = 1;
    std::shared_ptr<const ConformalMap> map;
    std::shared_ptr<const AreaGrid> grid;
    DiskLattice lattice;
    std::vector<cplx> w;           ///< on the lattice
    std::vector<cplx> nu;          ///< on the lattice
    std::vector<cplx> w_grid;
    std::vector<cplx> nu_grid;
    std::vector<cplx> nu_boundary;
    std::vector<cplx> F;           ///< right-hand side that produced nu
    DiskRHSolution psi;
    int m = 0;
    int iterations = 0;
    bool converged = false;
    bool solvable = true;
    std::vector<double> history;

    /// w = Psi(gamma) e^{nu(gamma)} at disk points |gamma| <= 1.
    [[nodiscard]] std::vector<cplx> evaluate_disk(std::span<const cplx> gammas) const {
        const PompeiuOperator op(*map, *grid, gammas);
        const auto v = op.apply(F);
        std::vector<cplx> out(gammas.size());
        parallel_for(gammas.size(), [&](std::size_t k) { out[k] = psi(gammas[k]) * std::exp(v[k]); });
        return out;
    }

    /// w at physical points of the closure of D.
    [[nodiscard]] std::vector<cplx> evaluate(std::span<const cplx> z) const {
        std::vector<cplx> gam(z.size());
        for (std::size_t k = 0; k < z.size(); ++k) {
            gam[k] = map->inverse(z[k]);
            require(std::abs(gam[k]) <= 1.0 + 1e-10, ErrorCode::extrapolation, "evaluation point outside D");
            if (std::abs(gam[k]) > 1.0) gam[k] /= std::abs(gam[k]);
        }
        return evaluate_disk(gam);
    }
};

inline VekuaSolution similarity_solve(const PlanarVekuaProblem& problem, const SimilarityConfig& cfg = {}) {
    problem.validate();
    cfg.validate();
    require(problem.lambda.size() == cfg.boundary_N, ErrorCode::dimension,
            "problem sampling differs from the configured boundary_N");
    VekuaSolution sol;
    sol.n = problem.n;
    sol.map = std::make_shared<const ConformalMap>(problem.map);
    sol.grid = std::make_shared<const AreaGrid>(area_grid(*sol.map, cfg.grid_K, cfg.grid_M, problem.axis_margin));
    const AreaGrid& grid = *sol.grid;
    const std::size_t G = grid.size();
    const std::size_t N = cfg.boundary_N;

    std::vector<cplx> targets(grid.gamma);
    const auto t = circle_angles(N);
    for (double tj : t) targets.push_back(std::polar(1.0, tj));
    const PompeiuOperator op(*sol.map, grid, targets);
    std::vector<double> eta(G);
    for (std::size_t q = 0; q < G; ++q) eta[q] = grid.nodes[q].imag();

    auto eval_psi = [&](const DiskRHSolution& psi, std::span<const cplx> nu_g) {
        std::vector<cplx> out(G);
        parallel_for(G, [&](std::size_t q) { out[q] = psi(grid.gamma[q]) * std::exp(nu_g[q]); });
        return out;
    };

    sol.F.assign(G, cplx{0.0, 0.0});
    sol.nu_grid.assign(G, cplx{0.0, 0.0});
    sol.nu_boundary.assign(N, cplx{0.0, 0.0});
    sol.psi = solve_disk_rh(problem.lambda, problem.g, cfg.disk);
    sol.m = sol.psi.m;
    if (!sol.psi.solvable) {
        sol.solvable = false;
        return sol;
    }
    std::vector<cplx> w = eval_psi(sol.psi, sol.nu_grid);

    for (int it = 1; it <= cfg.max_iter; ++it) {
        auto F = vekua_rhs(w, eta, problem.n, cfg.eps_w);
        const auto nu = op.apply(F);
        std::vector<cplx> nu_g(nu.begin(), nu.begin() + static_cast<long>(G));
        std::vector<cplx> nu_b(nu.begin() + static_cast<long>(G), nu.end());
        const auto [l0, g0] = transplant(problem, nu_b);
        auto psi = solve_disk_rh(l0, g0, cfg.disk);
        sol.iterations = it;
        sol.m = psi.m;
        sol.F = std::move(F);
        sol.nu_grid = std::move(nu_g);
        sol.nu_boundary = std::move(nu_b);
        sol.psi = std::move(psi);
        if (!sol.psi.solvable) {
            sol.solvable = false;
            return sol;
        }
        const auto w_new = eval_psi(sol.psi, sol.nu_grid);
        double diff = 0.0, scale = 0.0;
        for (std::size_t q = 0; q < G; ++q) {
            diff = std::max(diff, std::abs(w_new[q] - w[q]));
            scale = std::max(scale, std::abs(w_new[q]));
        }
        const double update = scale > 0.0 ? diff / scale : diff;
        sol.history.push_back(update);
        for (std::size_t q = 0; q < G; ++q) w[q] = (1.0 - cfg.damping) * w[q] + cfg.damping * w_new[q];
        if (update <= cfg.tol_fp) {
            sol.converged = true;
            break;
        }
    }

    // final representation from the last nu and Psi
    sol.w_grid = eval_psi(sol.psi, sol.nu_grid);
    sol.lattice = disk_lattice(*sol.map, cfg.lattice_radial, cfg.lattice_angular);
    const PompeiuOperator op_lattice(*sol.map, grid, sol.lattice.gamma);
    sol.nu = op_lattice.apply(sol.F);
    sol.w.resize(sol.nu.size());
    parallel_for(sol.w.size(),
                 [&](std::size_t k) { sol.w[k] = sol.psi(sol.lattice.gamma[k]) * std::exp(sol.nu[k]); });
    return sol;
}

/// Complex residual d_zbar w + (n-1) i/(4r)(w - conj w) on a lattice, with the
/// lattice's second-order difference stencils.
inline std::vector<cplx> planar_residual(const Lattice& lattice, std::span<const cplx> w, int n) {
    require(w.size() == lattice.size(), ErrorCode::dimension, "samples not congruent with lattice");
    std::vector<double> re(w.size()), im(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
        re[k] = w[k].real();
        im[k] = w[k].imag();
    }
    const auto gr = lattice_gradient(lattice, re);
    const auto gi = lattice_gradient(lattice, im);
    const double nm1 = static_cast<double>(n - 1);
    std::vector<cplx> out(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
        require(lattice.r[k] > 0.0, ErrorCode::domain, "lattice touches the axis r <= 0");
        const cplx dx0(gr.d_x0[k], gi.d_x0[k]);
        const cplx dr(gr.d_r[k], gi.d_r[k]);
        const cplx dzbar = 0.5 * (dx0 + cplx(0.0, 1.0) * dr);
        out[k] = dzbar + cplx(0.0, nm1 / (4.0 * lattice.r[k])) * (w[k] - std::conj(w[k]));
    }
    return out;
}

/// |PDE residual| of a solution on its output lattice.
inline std::vector<double> vekua_pde_residual(const VekuaSolution& sol, int n) {
    require(sol.lattice.lattice.size() == sol.w.size() && !sol.w.empty(), ErrorCode::unsupported,
            "solution carries no structured lattice");
    const auto res = planar_residual(sol.lattice.lattice, sol.w, n);
    std::vector<double> out(res.size());
    for (std::size_t k = 0; k < res.size(); ++k) out[k] = std::abs(res[k]);
    return out;
}

/// Nodes of a disk lattice farther than `cells` spacings from the boundary ring.
inline std::vector<bool> interior_mask(const Lattice& lattice, std::size_t cells = 3) {
    std::vector<bool> mask(lattice.size(), false);
    for (std::size_t i = 0; i < lattice.rows; ++i)
        for (std::size_t j = 0; j + cells + 1 < lattice.cols; ++j) mask[lattice.index(i, j)] = true;
    return mask;
}

}  // namespace axirh
