#pragma once

// Brute-force check of the planar Vekua problem: second-order finite differences
// on a polar lattice of the unit disk, transported by the conformal map, with the
// boundary condition appended as extra rows and the overdetermined system solved
// in weighted least squares. A large normalized residual means the discrete
// problem has no solution.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "axirh/errors.hpp"
#include "axirh/numerics.hpp"
#include "axirh/plane_domain.hpp"
#include "axirh/vekua.hpp"

namespace axirh {

/// Node 0 is the disk center; ring i = 1..rings, angle j sits at 1 + (i-1)*angles + j.
struct FDGrid {
    std::size_t rings = 0;
    std::size_t angles = 0;
    double h = 0.0;
    std::vector<cplx> gamma;
    std::vector<cplx> z;
    std::vector<double> area;  ///< disk-coordinate area of each node's cell

    [[nodiscard]] std::size_t size() const noexcept { return gamma.size(); }
    [[nodiscard]] std::size_t node(std::size_t ring, std::size_t j) const noexcept {
        return ring == 0 ? 0 : 1 + (ring - 1) * angles + (j % angles);
    }
};

inline FDGrid fd_grid(const ConformalMap& map, std::size_t rings, std::size_t angles) {
    require(rings >= 16 && angles >= 16, ErrorCode::dimension, "oracle resolution must be >= 16 per direction");
    FDGrid g;
    g.rings = rings;
    g.angles = angles;
    g.h = 1.0 / static_cast<double>(rings);
    const double ht = two_pi / static_cast<double>(angles);
    g.gamma.push_back({0.0, 0.0});
    g.area.push_back(pi * 0.25 * g.h * g.h);
    for (std::size_t i = 1; i <= rings; ++i) {
        const double rho = static_cast<double>(i) * g.h;
        for (std::size_t j = 0; j < angles; ++j) {
            g.gamma.push_back(std::polar(rho, ht * static_cast<double>(j)));
            g.area.push_back(rho * g.h * ht * (i == rings ? 0.5 : 1.0));
        }
    }
    g.z.resize(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) g.z[k] = map.forward(g.gamma[k]);
    return g;
}

/// Point constraint on Re w (imaginary = false) or Im w at a node.
struct NormalizationRow {
    std::size_t node = 0;
    bool imaginary = true;
    double value = 0.0;
};

struct FDSystem {
    FDGrid grid;
    int n = 1;
    Eigen::SparseMatrix<double> A;  ///< rows already scaled by their weights
    Eigen::VectorXd b;
    std::size_t pde_rows = 0;
    std::size_t bc_rows = 0;
    std::size_t norm_rows = 0;

    [[nodiscard]] std::size_t unknowns() const noexcept { return 2 * grid.size(); }
};

/// Assembles PDE rows (multiplied by conj(phi') so all stencils live in the disk),
/// boundary rows lambda_1 Re w - lambda_2 Im w = g, and normalization rows.
/// `lambda` and `g` are sampled at the boundary ring's disk angles.
inline FDSystem assemble(int n, const ConformalMap& map, std::span<const cplx> lambda, std::span<const double> g,
                         std::size_t rings, std::span<const NormalizationRow> normalization = {}) {
    const std::size_t angles = lambda.size();
    require(g.size() == angles, ErrorCode::dimension, "lambda and g sample counts differ");
    FDSystem sys;
    sys.n = n;
    sys.grid = fd_grid(map, rings, angles);
    const FDGrid& G = sys.grid;
    for (const cplx& z : G.z) require(z.imag() > 0.0, ErrorCode::domain, "oracle node with eta <= 0");

    const double h = G.h;
    const double ht = two_pi / static_cast<double>(angles);
    const double nm1 = static_cast<double>(n - 1);
    std::vector<Eigen::Triplet<double>> trip;
    std::vector<double> rhs;
    std::size_t row = 0;

    auto u_col = [](std::size_t node) { return static_cast<int>(2 * node); };
    auto v_col = [](std::size_t node) { return static_cast<int>(2 * node + 1); };

    // one complex equation sum alpha_k w_k - 2 c v_0 = 0 becomes two real rows
    auto emit_pde = [&](const std::vector<std::pair<std::size_t, cplx>>& terms, std::size_t self, double weight) {
        const cplx c = std::conj(map.derivative(G.gamma[self])) * (nm1 / (4.0 * G.z[self].imag()));
        const int r0 = static_cast<int>(row), r1 = static_cast<int>(row + 1);
        for (const auto& [node, a] : terms) {
            trip.emplace_back(r0, u_col(node), weight * a.real());
            trip.emplace_back(r0, v_col(node), -weight * a.imag());
            trip.emplace_back(r1, u_col(node), weight * a.imag());
            trip.emplace_back(r1, v_col(node), weight * a.real());
        }
        trip.emplace_back(r0, v_col(self), -2.0 * weight * c.real());
        trip.emplace_back(r1, v_col(self), -2.0 * weight * c.imag());
        rhs.push_back(0.0);
        rhs.push_back(0.0);
        row += 2;
    };

    {
        std::vector<std::pair<std::size_t, cplx>> terms;
        cplx self_coeff{0.0, 0.0};
        for (std::size_t j = 0; j < angles; ++j) {
            const cplx a = std::polar(1.0, ht * static_cast<double>(j)) / (static_cast<double>(angles) * h);
            terms.emplace_back(G.node(1, j), a);
            self_coeff -= a;
        }
        terms.emplace_back(0, self_coeff);
        emit_pde(terms, 0, std::sqrt(G.area[0]));
    }
    for (std::size_t i = 1; i <= G.rings; ++i) {
        const double rho = static_cast<double>(i) * h;
        for (std::size_t j = 0; j < angles; ++j) {
            const cplx e = 0.5 * std::polar(1.0, ht * static_cast<double>(j));
            std::vector<std::pair<std::size_t, cplx>> terms;
            if (i < G.rings) {
                terms.emplace_back(G.node(i + 1, j), e / (2.0 * h));
                terms.emplace_back(G.node(i - 1, j), -e / (2.0 * h));
            } else {
                terms.emplace_back(G.node(i, j), 3.0 * e / (2.0 * h));
                terms.emplace_back(G.node(i - 1, j), -4.0 * e / (2.0 * h));
                terms.emplace_back(G.node(i - 2, j), e / (2.0 * h));
            }
            const cplx ang = e * cplx(0.0, 1.0 / rho) / (2.0 * ht);
            terms.emplace_back(G.node(i, j + 1), ang);
            terms.emplace_back(G.node(i, j + angles - 1), -ang);
            const std::size_t self = G.node(i, j);
            emit_pde(terms, self, std::sqrt(G.area[self]));
        }
    }
    sys.pde_rows = row;

    const double wb = std::sqrt(ht);
    for (std::size_t j = 0; j < angles; ++j) {
        const std::size_t node = G.node(G.rings, j);
        trip.emplace_back(static_cast<int>(row), u_col(node), wb * lambda[j].real());
        trip.emplace_back(static_cast<int>(row), v_col(node), -wb * lambda[j].imag());
        rhs.push_back(wb * g[j]);
        ++row;
    }
    sys.bc_rows = angles;

    for (const auto& nr : normalization) {
        require(nr.node < G.size(), ErrorCode::dimension, "normalization row references a missing node");
        trip.emplace_back(static_cast<int>(row), nr.imaginary ? v_col(nr.node) : u_col(nr.node), 1.0);
        rhs.push_back(nr.value);
        ++row;
    }
    sys.norm_rows = normalization.size();

    sys.A.resize(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(sys.unknowns()));
    sys.A.setFromTriplets(trip.begin(), trip.end());
    sys.b = Eigen::Map<const Eigen::VectorXd>(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
    return sys;
}

/// Assembly from boundary functions evaluated on the oracle's own boundary ring.
inline FDSystem assemble(int n, const ConformalMap& map, const ComplexBoundaryFn& lambda, const RealBoundaryFn& g,
                         std::size_t rings, std::size_t angles, std::span<const NormalizationRow> normalization = {}) {
    const auto pts = disk_boundary_points(map, angles);
    std::vector<cplx> l(angles);
    std::vector<double> gv(angles);
    for (std::size_t j = 0; j < angles; ++j) {
        l[j] = lambda(pts[j]);
        gv[j] = g(pts[j]);
    }
    return assemble(n, map, l, gv, rings, normalization);
}

/// Assembly from a planar problem's circle samples, resampled trigonometrically.
inline FDSystem assemble(const PlanarVekuaProblem& problem, std::size_t rings, std::size_t angles,
                         std::span<const NormalizationRow> normalization = {}) {
    const TrigInterpolant l{std::span<const cplx>(problem.lambda)};
    const TrigInterpolant gi{std::span<const double>(problem.g)};
    const auto t = circle_angles(angles);
    std::vector<cplx> lv(angles);
    std::vector<double> gv(angles);
    for (std::size_t j = 0; j < angles; ++j) {
        lv[j] = l(t[j]);
        gv[j] = gi(t[j]).real();
    }
    return assemble(problem.n, problem.map, lv, gv, rings, normalization);
}

struct FDSolution {
    std::vector<cplx> w;
    double residual = 0.0;  ///< ||A x - b|| / ||b|| in the row weighting
};

inline FDSolution direct_solve(const FDSystem& sys) {
    const Eigen::SparseMatrix<double> At = sys.A.transpose();
    const Eigen::SparseMatrix<double> N = At * sys.A;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(N);
    if (ldlt.info() != Eigen::Success) fail(ErrorCode::solver, "normal-equation factorization failed");
    const auto& d = ldlt.vectorD();
    const double dmax = d.cwiseAbs().maxCoeff();
    const double dmin = d.cwiseAbs().minCoeff();
    require(dmin > 1e-14 * dmax, ErrorCode::solver,
            "normal equations are numerically singular (condition estimate " + sci(dmax / dmin) +
                "); add normalization rows");
    const Eigen::VectorXd x = ldlt.solve(At * sys.b);
    if (ldlt.info() != Eigen::Success) fail(ErrorCode::solver, "normal-equation solve failed");
    FDSolution s;
    s.w.resize(sys.grid.size());
    for (std::size_t k = 0; k < s.w.size(); ++k)
        s.w[k] = {x[static_cast<Eigen::Index>(2 * k)], x[static_cast<Eigen::Index>(2 * k + 1)]};
    const double bn = sys.b.norm();
    const double rn = (sys.A * x - sys.b).norm();
    s.residual = bn > 0.0 ? rn / bn : rn;
    return s;
}

/// Singular values of the weighted system matrix, descending. Dense; meant for
/// rank probes at small resolution.
inline Eigen::VectorXd singular_values(const FDSystem& sys) {
    const Eigen::MatrixXd dense(sys.A);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(dense);
    return svd.singularValues();
}

/// Number of singular values below `gap` times the largest.
inline std::size_t rank_deficiency(const Eigen::VectorXd& sv, double gap = 1e-8) {
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] < gap * sv[0]) ++k;
    return k;
}

/// Agreement between a similarity solution and the least-squares oracle.
struct OracleComparison {
    double rel_l2 = 0.0;        ///< area-weighted relative L2 difference of w on the oracle nodes
    double lsq_residual = 0.0;  ///< weighted least-squares residual of the oracle system
    std::size_t pins = 0;       ///< normalization rows borrowed from the similarity solution
};

/// Pins the oracle's homogeneous freedom to the similarity solution: Im w at the
/// center, plus w at m further nodes of the middle ring for index m > 0.
inline std::vector<NormalizationRow> matching_normalization(const VekuaSolution& sol, const FDGrid& grid) {
    std::vector<std::size_t> nodes{0};
    const std::size_t extra = sol.m > 0 ? static_cast<std::size_t>(sol.m) : 0;
    for (std::size_t q = 0; q < extra; ++q) nodes.push_back(grid.node(grid.rings / 2, q * grid.angles / extra));
    std::vector<cplx> gam(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) gam[k] = grid.gamma[nodes[k]];
    const auto ref = sol.evaluate_disk(gam);
    std::vector<NormalizationRow> rows{{0, true, ref[0].imag()}};
    for (std::size_t k = 1; k < nodes.size(); ++k) {
        rows.push_back({nodes[k], false, ref[k].real()});
        rows.push_back({nodes[k], true, ref[k].imag()});
    }
    return rows;
}

inline OracleComparison compare_with_oracle(const VekuaSolution& sol, const PlanarVekuaProblem& problem,
                                            std::size_t rings, std::size_t angles) {
    require(sol.solvable && sol.grid != nullptr, ErrorCode::unsupported,
            "oracle comparison needs a solvable similarity solution");
    const FDGrid grid = fd_grid(problem.map, rings, angles);
    const auto pins = matching_normalization(sol, grid);
    const FDSystem sys = assemble(problem, rings, angles, pins);
    const FDSolution fd = direct_solve(sys);
    const auto ref = sol.evaluate_disk(sys.grid.gamma);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < ref.size(); ++k) {
        num += sys.grid.area[k] * std::norm(ref[k] - fd.w[k]);
        den += sys.grid.area[k] * std::norm(ref[k]);
    }
    OracleComparison c;
    c.rel_l2 = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
    c.lsq_residual = fd.residual;
    c.pins = pins.size();
    return c;
}

}  // namespace axirh
