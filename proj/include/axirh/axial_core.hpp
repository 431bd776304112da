#pragma once

// Paravector geometry of R^{n+1} and axial fields phi = A(x0, r) + omega B(x0, r).
//
// Axial Clifford values live in span{1, omega}, which is isomorphic to C because
// omega^2 = -1 for every unit 1-vector. All products the solver needs close in
// that subalgebra, so no general multivector arithmetic is carried here.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "axirh/errors.hpp"
#include "axirh/numerics.hpp"
#include "axirh/parallel.hpp"

namespace axirh {

/// Element x0 + sum_j x_j e_j of R^{n+1}.
class Paravector {
public:
    Paravector() = default;
    Paravector(double x0, std::vector<double> xvec) : x0_(x0), xvec_(std::move(xvec)) {}

    [[nodiscard]] double scalar() const noexcept { return x0_; }
    [[nodiscard]] const std::vector<double>& vector_part() const noexcept { return xvec_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return xvec_.size(); }

    [[nodiscard]] double norm() const {
        double s = x0_ * x0_;
        for (double v : xvec_) s += v * v;
        return std::sqrt(s);
    }

    [[nodiscard]] Paravector conjugate() const {
        std::vector<double> v(xvec_.size());
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = -xvec_[j];
        return {x0_, std::move(v)};
    }

    /// conjugate(x) / |x|^2
    [[nodiscard]] Paravector inverse() const {
        const double n2 = norm() * norm();
        require(n2 > 0.0, ErrorCode::singularity, "paravector inverse of zero");
        Paravector c = conjugate();
        c.x0_ /= n2;
        for (double& v : c.xvec_) v /= n2;
        return c;
    }

    friend bool operator==(const Paravector&, const Paravector&) = default;

private:
    double x0_ = 0.0;
    std::vector<double> xvec_;
};

/// Grades 0..2 of a Clifford element; enough to hold a product of two paravectors.
struct CliffordLowGrade {
    double scalar = 0.0;
    std::vector<double> vec;
    /// bivector coefficients of e_i e_j for i < j, packed row by row
    std::vector<double> bivec;
};

/// Product in R_{0,n} with e_j^2 = -1 and e_i e_j = -e_j e_i.
inline CliffordLowGrade multiply(const Paravector& x, const Paravector& y) {
    const std::size_t n = x.dimension();
    require(y.dimension() == n, ErrorCode::dimension, "paravector dimensions differ");
    CliffordLowGrade out;
    const auto& xv = x.vector_part();
    const auto& yv = y.vector_part();
    double dot = 0.0;
    out.vec.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        dot += xv[j] * yv[j];
        out.vec[j] = x.scalar() * yv[j] + y.scalar() * xv[j];
    }
    out.scalar = x.scalar() * y.scalar() - dot;
    out.bivec.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) out.bivec.push_back(xv[i] * yv[j] - xv[j] * yv[i]);
    }
    return out;
}

/// Point of the (x0, r) half-plane, optionally with its angular direction omega.
struct AxialPoint {
    double x0 = 0.0;
    double r = 0.0;
    std::optional<std::vector<double>> omega;

    void validate(double tol = 1e-12) const {
        require(r >= 0.0, ErrorCode::domain, "axial point with negative radius");
        if (omega) {
            double s = 0.0;
            for (double v : *omega) s += v * v;
            require(std::abs(s - 1.0) <= tol, ErrorCode::domain, "omega is not a unit vector");
        }
    }
};

/// a + omega b
struct AxialValue {
    double a = 0.0;
    double b = 0.0;

    friend AxialValue operator*(const AxialValue& u, const AxialValue& v) {
        return {u.a * v.a - u.b * v.b, u.a * v.b + u.b * v.a};
    }
    friend bool operator==(const AxialValue&, const AxialValue&) = default;

    [[nodiscard]] cplx as_complex() const noexcept { return {a, b}; }
};

/// Structured sample lattice in the (x0, r) half-plane. Nodes are stored row-major,
/// index (i, j) at i * cols + j. The first index may wrap around (mapped polar
/// lattices); derivatives are taken in index space and mapped through the
/// node Jacobian, so rectangular and curvilinear lattices share one code path.
struct Lattice {
    std::size_t rows = 0;
    std::size_t cols = 0;
    bool periodic_rows = false;
    std::vector<double> x0;
    std::vector<double> r;

    [[nodiscard]] std::size_t size() const noexcept { return rows * cols; }
    [[nodiscard]] std::size_t index(std::size_t i, std::size_t j) const noexcept { return i * cols + j; }

    /// Tensor grid x0 along rows, r along columns.
    static Lattice rectangular(double x0_min, double x0_max, std::size_t nx, double r_min, double r_max,
                               std::size_t nr) {
        require(nx >= 2 && nr >= 2, ErrorCode::dimension, "rectangular lattice needs two points per axis");
        Lattice g;
        g.rows = nx;
        g.cols = nr;
        g.x0.resize(nx * nr);
        g.r.resize(nx * nr);
        for (std::size_t i = 0; i < nx; ++i) {
            const double xv = x0_min + (x0_max - x0_min) * static_cast<double>(i) / static_cast<double>(nx - 1);
            for (std::size_t j = 0; j < nr; ++j) {
                g.x0[i * nr + j] = xv;
                g.r[i * nr + j] = r_min + (r_max - r_min) * static_cast<double>(j) / static_cast<double>(nr - 1);
            }
        }
        return g;
    }

    void validate_positive_radius() const {
        for (double v : r) require(v > 0.0, ErrorCode::domain, "lattice touches the axis r <= 0");
    }

    void validate_shape() const {
        require(x0.size() == size() && r.size() == size(), ErrorCode::dimension, "lattice arrays do not match shape");
        require(rows >= 3 && cols >= 3, ErrorCode::dimension, "lattice needs at least 3 points per direction");
    }
};

namespace detail {

/// Second-order index-space derivative along rows (i) or columns (j).
inline double index_derivative(const Lattice& g, std::span<const double> f, std::size_t i, std::size_t j,
                               bool along_rows) {
    if (along_rows) {
        const std::size_t n = g.rows;
        if (g.periodic_rows) {
            const std::size_t ip = (i + 1) % n;
            const std::size_t im = (i + n - 1) % n;
            return 0.5 * (f[g.index(ip, j)] - f[g.index(im, j)]);
        }
        if (i == 0) return 0.5 * (-3.0 * f[g.index(0, j)] + 4.0 * f[g.index(1, j)] - f[g.index(2, j)]);
        if (i == n - 1)
            return 0.5 * (3.0 * f[g.index(n - 1, j)] - 4.0 * f[g.index(n - 2, j)] + f[g.index(n - 3, j)]);
        return 0.5 * (f[g.index(i + 1, j)] - f[g.index(i - 1, j)]);
    }
    const std::size_t n = g.cols;
    if (j == 0) return 0.5 * (-3.0 * f[g.index(i, 0)] + 4.0 * f[g.index(i, 1)] - f[g.index(i, 2)]);
    if (j == n - 1) return 0.5 * (3.0 * f[g.index(i, n - 1)] - 4.0 * f[g.index(i, n - 2)] + f[g.index(i, n - 3)]);
    return 0.5 * (f[g.index(i, j + 1)] - f[g.index(i, j - 1)]);
}

}  // namespace detail

/// Physical partial derivatives (d/dx0, d/dr) of sampled data on a lattice.
struct LatticeGradient {
    std::vector<double> d_x0;
    std::vector<double> d_r;
};

inline LatticeGradient lattice_gradient(const Lattice& g, std::span<const double> f) {
    g.validate_shape();
    require(f.size() == g.size(), ErrorCode::dimension, "sample array not congruent with lattice");
    LatticeGradient out;
    out.d_x0.resize(g.size());
    out.d_r.resize(g.size());
    // periodic rows wrap their coordinates too; x0 and r are smooth functions of the index
    std::atomic<bool> degenerate{false};
    parallel_for(g.rows, [&](std::size_t i) {
        for (std::size_t j = 0; j < g.cols; ++j) {
            const double xi = detail::index_derivative(g, g.x0, i, j, true);
            const double xj = detail::index_derivative(g, g.x0, i, j, false);
            const double ri = detail::index_derivative(g, g.r, i, j, true);
            const double rj = detail::index_derivative(g, g.r, i, j, false);
            const double fi = detail::index_derivative(g, f, i, j, true);
            const double fj = detail::index_derivative(g, f, i, j, false);
            const double det = xi * rj - xj * ri;
            if (det == 0.0) degenerate = true;
            const std::size_t k = g.index(i, j);
            out.d_x0[k] = (fi * rj - fj * ri) / det;
            out.d_r[k] = (xi * fj - xj * fi) / det;
        }
    });
    require(!degenerate, ErrorCode::dimension, "degenerate lattice cell");
    return out;
}

/// Samples of phi = A + omega B for the ambient space R^{n+1}.
struct AxialField {
    int n = 1;
    Lattice lattice;
    std::vector<double> A;
    std::vector<double> B;

    void validate() const {
        require(n >= 1, ErrorCode::dimension, "dimension parameter n must be >= 1");
        require(A.size() == lattice.size() && B.size() == lattice.size(), ErrorCode::dimension,
                "A, B not congruent with lattice");
        lattice.validate_positive_radius();
    }
};

struct VekuaResidual {
    std::vector<double> res1;  ///< dA/dx0 - dB/dr - (n-1) B / r
    std::vector<double> res2;  ///< dB/dx0 + dA/dr
};

/// Residual of the axial Vekua system; vanishes for axially monogenic fields.
inline VekuaResidual vesy_residual(const AxialField& field) {
    field.lattice.validate_shape();
    field.validate();
    const auto ga = lattice_gradient(field.lattice, field.A);
    const auto gb = lattice_gradient(field.lattice, field.B);
    const double nm1 = static_cast<double>(field.n - 1);
    VekuaResidual out;
    out.res1.resize(field.lattice.size());
    out.res2.resize(field.lattice.size());
    for (std::size_t k = 0; k < field.lattice.size(); ++k) {
        out.res1[k] = ga.d_x0[k] - gb.d_r[k] - nm1 * field.B[k] / field.lattice.r[k];
        out.res2[k] = gb.d_x0[k] + ga.d_r[k];
    }
    return out;
}

/// Reference axially monogenic function conj(x) / |x|^{n+1} (unnormalized).
inline AxialValue cauchy_kernel(const AxialPoint& x, int n) {
    require(n >= 1, ErrorCode::dimension, "dimension parameter n must be >= 1");
    const double rho2 = x.x0 * x.x0 + x.r * x.r;
    require(rho2 > 0.0, ErrorCode::singularity, "Cauchy kernel evaluated at the origin");
    const double denom = std::pow(std::sqrt(rho2), n + 1);
    return {x.x0 / denom, -x.r / denom};
}

/// phi = Re(w) + omega Im(w) on the given lattice.
inline AxialField reconstruct_axial(const Lattice& lattice, std::span<const cplx> w, int n) {
    require(w.size() == lattice.size(), ErrorCode::dimension, "samples not congruent with lattice");
    AxialField f;
    f.n = n;
    f.lattice = lattice;
    f.A.resize(w.size());
    f.B.resize(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
        f.A[k] = w[k].real();
        f.B[k] = w[k].imag();
    }
    f.validate();
    return f;
}

namespace detail {

/// Inverts the bilinear cell map for (x0, r); returns local (s, t) when it converges.
inline std::optional<std::pair<double, double>> locate_in_cell(const Lattice& g, std::size_t i, std::size_t j,
                                                               double x0, double r) {
    const std::size_t i1 = g.periodic_rows ? (i + 1) % g.rows : i + 1;
    const std::size_t k00 = g.index(i, j), k10 = g.index(i1, j), k01 = g.index(i, j + 1), k11 = g.index(i1, j + 1);
    auto px = [&](double s, double t) {
        return (1 - s) * (1 - t) * g.x0[k00] + s * (1 - t) * g.x0[k10] + (1 - s) * t * g.x0[k01] + s * t * g.x0[k11];
    };
    auto pr = [&](double s, double t) {
        return (1 - s) * (1 - t) * g.r[k00] + s * (1 - t) * g.r[k10] + (1 - s) * t * g.r[k01] + s * t * g.r[k11];
    };
    double s = 0.5, t = 0.5;
    for (int it = 0; it < 30; ++it) {
        const double fx = px(s, t) - x0;
        const double fr = pr(s, t) - r;
        const double xs = (1 - t) * (g.x0[k10] - g.x0[k00]) + t * (g.x0[k11] - g.x0[k01]);
        const double xt = (1 - s) * (g.x0[k01] - g.x0[k00]) + s * (g.x0[k11] - g.x0[k10]);
        const double rs = (1 - t) * (g.r[k10] - g.r[k00]) + t * (g.r[k11] - g.r[k01]);
        const double rt = (1 - s) * (g.r[k01] - g.r[k00]) + s * (g.r[k11] - g.r[k10]);
        const double det = xs * rt - xt * rs;
        if (det == 0.0) return std::nullopt;
        const double ds = (fx * rt - fr * xt) / det;
        const double dt = (xs * fr - rs * fx) / det;
        s -= ds;
        t -= dt;
        if (std::abs(ds) + std::abs(dt) < 1e-14) break;
    }
    constexpr double eps = 1e-10;
    if (s < -eps || s > 1 + eps || t < -eps || t > 1 + eps) return std::nullopt;
    return std::pair{std::clamp(s, 0.0, 1.0), std::clamp(t, 0.0, 1.0)};
}

}  // namespace detail

/// Bilinear interpolation of (A, B) at (x0, r), embedded as A + omega B in R^{n+1}.
inline Paravector eval_axial(const AxialField& field, const AxialPoint& point) {
    require(point.omega.has_value(), ErrorCode::domain, "eval_axial needs the direction omega");
    point.validate(1e-10);
    const auto& g = field.lattice;
    const std::size_t row_cells = g.periodic_rows ? g.rows : g.rows - 1;
    for (std::size_t i = 0; i < row_cells; ++i) {
        for (std::size_t j = 0; j + 1 < g.cols; ++j) {
            auto loc = detail::locate_in_cell(g, i, j, point.x0, point.r);
            if (!loc) continue;
            const auto [s, t] = *loc;
            const std::size_t i1 = g.periodic_rows ? (i + 1) % g.rows : i + 1;
            auto blend = [&](const std::vector<double>& f) {
                return (1 - s) * (1 - t) * f[g.index(i, j)] + s * (1 - t) * f[g.index(i1, j)] +
                       (1 - s) * t * f[g.index(i, j + 1)] + s * t * f[g.index(i1, j + 1)];
            };
            const double a = blend(field.A);
            const double b = blend(field.B);
            std::vector<double> v(point.omega->size());
            for (std::size_t k = 0; k < v.size(); ++k) v[k] = b * (*point.omega)[k];
            return {a, std::move(v)};
        }
    }
    fail(ErrorCode::extrapolation, "point lies outside the sampled lattice");
}

}  // namespace axirh
