#pragma once

// Area transform nu(z) = (1/pi) \iint_D F(rho) / (rho - z) dA evaluated through
// the unit disk. With z = phi(gamma) and H = (F o phi)|phi'|^2,
//
//   nu = C[H](gamma) / phi'(gamma) + (1/pi) \iint H(zeta) R(zeta, gamma) dA,
//   R  = 1/(phi(zeta) - phi(gamma)) - 1/(phi'(gamma)(zeta - gamma)),
//
// where C[H] = (1/pi) \iint H/(zeta - gamma) is computed exactly per Fourier mode
// of H: for gamma = s e^{i alpha} and H = sum_k h_k(rho) e^{ik theta},
//
//   C = 2 sum_{n>=0} e^{in alpha} \int_s^1 h_{n+1} (s/rho)^n drho
//     - 2 sum_{n>=0} e^{-i(n+1) alpha} \int_0^s h_{-n} (rho/s)^{n+1} drho.
//
// R is holomorphic in zeta, so the remainder is a smooth integrand handled by
// the grid quadrature; it vanishes for affine maps.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "axirh/errors.hpp"
#include "axirh/numerics.hpp"
#include "axirh/parallel.hpp"
#include "axirh/plane_domain.hpp"

namespace axirh {

class PompeiuOperator {
public:
    /// Targets are disk coordinates with |gamma| <= 1.
    PompeiuOperator(const ConformalMap& map, const AreaGrid& grid, std::span<const cplx> targets)
        : grid_(&grid), targets_(targets.begin(), targets.end()) {
        const std::size_t K = grid.angular;
        const std::size_t M = grid.radial;
        modes_ = K / 2;
        bary_ = barycentric_weights(grid.radii);

        ring_of_.resize(targets_.size());
        std::map<double, std::size_t> index;
        for (std::size_t t = 0; t < targets_.size(); ++t) {
            const double s = std::abs(targets_[t]);
            require(s <= 1.0 + 1e-12, ErrorCode::domain, "Pompeiu target outside the closed domain");
            const double key = std::min(s, 1.0);
            auto [it, inserted] = index.try_emplace(key, radii_.size());
            if (inserted) radii_.push_back(key);
            ring_of_[t] = it->second;
        }
        outer_.resize(radii_.size());
        inner_.resize(radii_.size());
        parallel_for(radii_.size(), [&](std::size_t r) { build_tables(r, M); });

        affine_ = map.kind() == MapKind::affine;
        dphi_.resize(targets_.size());
        for (std::size_t t = 0; t < targets_.size(); ++t) dphi_[t] = map.derivative(targets_[t]);
        if (!affine_) {
            zt_.resize(targets_.size());
            limit_.resize(targets_.size());
            for (std::size_t t = 0; t < targets_.size(); ++t) {
                zt_[t] = map.forward(targets_[t]);
                limit_[t] = -map.second_derivative(targets_[t]) / (2.0 * dphi_[t] * dphi_[t]);
            }
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return targets_.size(); }
    [[nodiscard]] const std::vector<cplx>& targets() const noexcept { return targets_; }

    /// nu at the targets for F sampled at the grid nodes (layout j*M + m).
    [[nodiscard]] std::vector<cplx> apply(std::span<const cplx> F) const {
        const AreaGrid& g = *grid_;
        require(F.size() == g.size(), ErrorCode::dimension, "Pompeiu input does not match the area grid");
        const std::size_t K = g.angular;
        const std::size_t M = g.radial;

        // angular Fourier modes of H on every quadrature ring: hk(m, k mod K)
        Eigen::MatrixXcd hk(static_cast<Eigen::Index>(M), static_cast<Eigen::Index>(K));
        std::vector<cplx> ring(K);
        for (std::size_t m = 0; m < M; ++m) {
            for (std::size_t j = 0; j < K; ++j) {
                const std::size_t q = j * M + m;
                ring[j] = F[q] * std::norm(g.dphi[q]);
            }
            const auto c = fourier_coefficients(ring);
            for (std::size_t k = 0; k < K; ++k) hk(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k)) = c[k];
        }
        const long Kl = static_cast<long>(K);
        auto h_at = [&](std::size_t m, long k) -> cplx {
            if (k >= Kl / 2 || k <= -Kl / 2) return {0.0, 0.0};
            return hk(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(((k % Kl) + Kl) % Kl));
        };

        // ring integrals A_n (outer part) and B_n (inner part) per target radius
        const std::size_t R = radii_.size();
        std::vector<std::vector<cplx>> A(R), B(R);
        parallel_for(R, [&](std::size_t r) {
            A[r].assign(modes_, cplx{0.0, 0.0});
            B[r].assign(modes_, cplx{0.0, 0.0});
            for (std::size_t n = 0; n < modes_; ++n) {
                cplx a{0.0, 0.0}, b{0.0, 0.0};
                for (std::size_t m = 0; m < M; ++m) {
                    a += outer_[r](static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m)) *
                         h_at(m, static_cast<long>(n) + 1);
                    b += inner_[r](static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m)) *
                         h_at(m, -static_cast<long>(n));
                }
                A[r][n] = a;
                B[r][n] = b;
            }
        });

        std::vector<cplx> H(F.size());
        if (!affine_) {
            for (std::size_t q = 0; q < F.size(); ++q) H[q] = F[q] * g.weights[q] / pi;
        }

        std::vector<cplx> out(targets_.size());
        parallel_for(targets_.size(), [&](std::size_t t) {
            const std::size_t r = ring_of_[t];
            const double alpha = std::arg(targets_[t]);
            const cplx e = std::polar(1.0, alpha);
            const cplx einv = std::conj(e);
            cplx c{0.0, 0.0};
            cplx ep{1.0, 0.0};   // e^{in alpha}
            cplx em = einv;      // e^{-i(n+1) alpha}
            for (std::size_t n = 0; n < modes_; ++n) {
                c += ep * A[r][n] - em * B[r][n];
                ep *= e;
                em *= einv;
            }
            cplx nu = 2.0 * c / dphi_[t];
            if (!affine_) {
                const cplx gt = targets_[t];
                const cplx zt = zt_[t];
                const cplx dt = dphi_[t];
                cplx acc{0.0, 0.0};
                for (std::size_t q = 0; q < H.size(); ++q) {
                    const cplx d = g.gamma[q] - gt;
                    if (std::abs(d) < 1e-7) {
                        acc += H[q] * limit_[t];
                    } else {
                        acc += H[q] * (1.0 / (g.nodes[q] - zt) - 1.0 / (dt * d));
                    }
                }
                nu += acc;
            }
            out[t] = nu;
        });
        return out;
    }

private:
    void build_tables(std::size_t r, std::size_t M) {
        const double s = radii_[r];
        const auto& nodes = grid_->radii;
        Eigen::MatrixXd outer = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(modes_), static_cast<Eigen::Index>(M));
        Eigen::MatrixXd inner = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(modes_), static_cast<Eigen::Index>(M));
        std::vector<double> L(M);

        // inner: polynomial integrand of degree <= M + modes, exact Gauss rule on [0, s]
        if (s > 0.0) {
            const auto rule = gauss_legendre(M / 2 + modes_ / 2 + 2, 0.0, s);
            for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
                lagrange_row(nodes, bary_, rule.nodes[q], L);
                const double x = rule.nodes[q] / s;
                double pw = x;  // (rho/s)^{n+1}
                for (std::size_t n = 0; n < modes_; ++n) {
                    const double wq = rule.weights[q] * pw;
                    for (std::size_t m = 0; m < M; ++m)
                        inner(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m)) += wq * L[m];
                    pw *= x;
                }
            }
        }
        // outer: (s/rho)^n concentrates at rho = s for large n, geometric panels toward s
        if (s < 1.0) {
            constexpr int panels = 14;
            const auto base = gauss_legendre(16, 0.0, 1.0);
            std::vector<double> breaks(panels + 1);
            breaks[0] = s;
            for (int p = 1; p <= panels; ++p) breaks[p] = s + (1.0 - s) * std::ldexp(1.0, p - panels);
            for (int p = 0; p < panels; ++p) {
                const double a = breaks[p], b = breaks[p + 1];
                for (std::size_t q = 0; q < base.nodes.size(); ++q) {
                    const double rho = a + (b - a) * base.nodes[q];
                    const double wgt = (b - a) * base.weights[q];
                    lagrange_row(nodes, bary_, rho, L);
                    const double x = s / rho;
                    double pw = 1.0;
                    for (std::size_t n = 0; n < modes_; ++n) {
                        const double wq = wgt * pw;
                        if (wq == 0.0) break;
                        for (std::size_t m = 0; m < M; ++m)
                            outer(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m)) += wq * L[m];
                        pw *= x;
                    }
                }
            }
        }
        outer_[r] = std::move(outer);
        inner_[r] = std::move(inner);
    }

    const AreaGrid* grid_;
    std::vector<cplx> targets_;
    std::size_t modes_ = 0;
    std::vector<double> bary_;
    std::vector<double> radii_;
    std::vector<std::size_t> ring_of_;
    std::vector<Eigen::MatrixXd> outer_;
    std::vector<Eigen::MatrixXd> inner_;
    bool affine_ = true;
    std::vector<cplx> dphi_;
    std::vector<cplx> zt_;
    std::vector<cplx> limit_;
};

/// nu at physical points z in the closure of D for F sampled on `grid`.
inline std::vector<cplx> pompeiu_transform(const ConformalMap& map, const AreaGrid& grid, std::span<const cplx> F,
                                           std::span<const cplx> z) {
    std::vector<cplx> gam(z.size());
    for (std::size_t t = 0; t < z.size(); ++t) {
        gam[t] = map.inverse(z[t]);
        require(std::abs(gam[t]) <= 1.0 + 1e-10, ErrorCode::domain, "Pompeiu target outside the closure of D");
        if (std::abs(gam[t]) > 1.0) gam[t] /= std::abs(gam[t]);
    }
    const PompeiuOperator op(map, grid, gam);
    return op.apply(F);
}

}  // namespace axirh
