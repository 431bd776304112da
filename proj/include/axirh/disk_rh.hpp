#pragma once

// Riemann-Hilbert problem Re{lambda0 Psi} = g on the unit circle for Psi
// holomorphic in the disk: index, factorization through the Schwarz operator and
// the explicit solution formulas for both signs of the index.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "axirh/errors.hpp"
#include "axirh/numerics.hpp"

namespace axirh {

struct DiskTolerances {
    double fft = 1e-12;
    double fact = 1e-10;
    double rh = 1e-8;
    double moment = 1e-8;
    double coef = 1e-12;   ///< smallest admissible |lambda0| relative to its maximum
    double alias = 1e-6;   ///< top-band (|k| >= 3N/8) Fourier content relative to the largest mode
};

/// Validates circle samples: N >= 16, even, finite.
template <typename T>
void validate_circle(std::span<const T> v, const char* what) {
    require(v.size() >= 16 && v.size() % 2 == 0, ErrorCode::dimension,
            std::string(what) + ": circle data needs an even sample count >= 16");
    for (const auto& x : v) {
        require(std::isfinite(std::abs(x)), ErrorCode::domain, std::string(what) + ": non-finite sample");
    }
}

/// m = -(winding number of lambda0 about 0), from principal-branch increments.
inline int winding_index(std::span<const cplx> lambda0, const DiskTolerances& tol = {}) {
    validate_circle(lambda0, "lambda0");
    const double scale = max_abs(lambda0);
    for (const cplx& v : lambda0) {
        require(std::abs(v) > tol.coef * scale && std::abs(v) > 0.0, ErrorCode::degenerate_coefficient,
                "boundary coefficient vanishes on the circle");
    }
    const auto inc = phase_increments(lambda0);
    double total = 0.0;
    for (double d : inc) {
        require(std::abs(d) < 0.5 * pi, ErrorCode::undersampled,
                "argument increment of lambda0 reaches pi/2; increase the boundary resolution");
        total += d;
    }
    return -static_cast<int>(std::lround(total / two_pi));
}

namespace detail {

/// Largest coefficient magnitude in the band |k| >= 3N/8 (Nyquist included),
/// relative to the largest coefficient. Rounding-level content counts as zero.
inline double top_band_ratio(std::span<const cplx> c, double sample_scale) {
    const std::size_t n = c.size();
    double top = 0.0;
    for (std::size_t k = (3 * n) / 8; k <= n - (3 * n) / 8; ++k) top = std::max(top, std::abs(c[k]));
    const double all = max_abs(c);
    if (top <= static_cast<double>(n) * std::numeric_limits<double>::epsilon() * sample_scale) return 0.0;
    return top / all;
}

}  // namespace detail

/// Taylor coefficients a_0..a_{N/2-1} of the holomorphic S[u] with Re S[u] = u on
/// the circle and Im S[u](0) = 0. `data_scale` sets the rounding floor of the
/// aliasing check when u is itself near zero.
inline std::vector<cplx> schwarz_operator(std::span<const double> u, const DiskTolerances& tol = {},
                                          double data_scale = 0.0) {
    validate_circle(u, "schwarz input");
    const std::size_t n = u.size();
    const auto b = fourier_coefficients(u);
    const double ratio = detail::top_band_ratio(b, std::max(max_abs(u), data_scale));
    require(ratio <= tol.alias, ErrorCode::aliasing,
            "boundary data is not resolved at N = " + std::to_string(n) + " (top-band ratio " +
                sci(ratio) + ")");
    std::vector<cplx> a(n / 2);
    a[0] = b[0].real();
    for (std::size_t k = 1; k < n / 2; ++k) a[k] = 2.0 * b[k];
    return a;
}

/// Values of a Taylor series at the N equispaced circle points.
inline std::vector<cplx> circle_values(std::span<const cplx> taylor, std::size_t n) {
    require(taylor.size() <= n, ErrorCode::dimension, "Taylor series longer than the circle sampling");
    std::vector<cplx> c(n, cplx{0.0, 0.0});
    std::copy(taylor.begin(), taylor.end(), c.begin());
    return fourier_synthesis(c);
}

/// Taylor coefficients of a function given by boundary samples, assumed to extend
/// holomorphically. Returns the nonnegative modes and the largest negative-mode
/// magnitude via `leak`.
inline std::vector<cplx> taylor_from_circle(std::span<const cplx> values, double* leak = nullptr) {
    const std::size_t n = values.size();
    const auto c = fourier_coefficients(values);
    if (leak) {
        double l = 0.0;
        for (std::size_t k = n / 2; k < n; ++k) l = std::max(l, std::abs(c[k]));
        *leak = l;
    }
    return {c.begin(), c.begin() + static_cast<long>(n / 2)};
}

/// lambda0 = |lambda0| e^{-im theta} e^{i q}, chi = p + i q holomorphic.
struct DiskRHFactorization {
    int m = 0;
    std::vector<double> q;
    std::vector<cplx> chi_coeffs;
    std::vector<double> p;
    std::vector<double> modulus;
    double reconstruction_error = 0.0;

    [[nodiscard]] std::size_t size() const noexcept { return q.size(); }
    [[nodiscard]] cplx chi(cplx gamma) const { return horner(chi_coeffs, gamma); }
};

inline DiskRHFactorization factorize(std::span<const cplx> lambda0, const DiskTolerances& tol = {}) {
    DiskRHFactorization f;
    f.m = winding_index(lambda0, tol);
    const std::size_t n = lambda0.size();
    const auto theta = circle_angles(n);
    const auto inc = phase_increments(lambda0);
    f.q.resize(n);
    f.modulus.resize(n);
    double arg = std::arg(lambda0[0]);
    for (std::size_t j = 0; j < n; ++j) {
        if (j > 0) arg += inc[j - 1];
        f.q[j] = arg + f.m * theta[j];
        f.modulus[j] = std::abs(lambda0[j]);
    }
    const auto s = schwarz_operator(f.q, tol, two_pi);
    f.chi_coeffs.resize(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) f.chi_coeffs[k] = cplx(0.0, 1.0) * s[k];
    const auto chi_b = circle_values(f.chi_coeffs, n);
    f.p.resize(n);
    double err = 0.0;
    const double scale = max_abs(lambda0);
    for (std::size_t j = 0; j < n; ++j) {
        f.p[j] = chi_b[j].real();
        const cplx rec = f.modulus[j] * std::polar(1.0, -f.m * theta[j]) * std::exp(chi_b[j]) * std::exp(-f.p[j]);
        err = std::max(err, std::abs(rec - lambda0[j]));
    }
    f.reconstruction_error = err / scale;
    require(f.reconstruction_error <= tol.fact, ErrorCode::aliasing,
            "factorization identity fails (error " + sci(f.reconstruction_error) + ")");
    return f;
}

enum class ConstantPolicy { zero, explicit_values };
enum class MomentRange { classical, literal };

struct DiskRHOptions {
    ConstantPolicy policy = ConstantPolicy::zero;
    std::vector<cplx> constants;  ///< c_0..c_{2m} under explicit_values
    MomentRange moment_range = MomentRange::classical;
    DiskTolerances tol;
};

struct DiskRHSolution {
    int m = 0;
    DiskRHFactorization factorization;
    std::vector<cplx> psi_boundary;
    std::vector<cplx> psi_coeffs;
    std::vector<cplx> free_constants;
    std::vector<cplx> moments;
    bool solvable = true;
    double moment_scale = 0.0;
    double bc_residual = 0.0;       ///< max |Re{lambda0 Psi} - g|
    double bc_residual_rel = 0.0;   ///< the same over max(1, max|g|)

    [[nodiscard]] cplx operator()(cplx gamma) const { return horner(psi_coeffs, gamma); }
};

namespace detail {

inline void check_constants(std::span<const cplx> c, int m, double tol) {
    require(c.size() == static_cast<std::size_t>(2 * m + 1), ErrorCode::config,
            "explicit constants need 2m+1 = " + std::to_string(2 * m + 1) + " entries");
    double scale = 1.0;
    for (const cplx& v : c) scale = std::max(scale, std::abs(v));
    for (int k = 0; k <= m; ++k) {
        require(std::abs(c[static_cast<std::size_t>(2 * m - k)] + std::conj(c[static_cast<std::size_t>(k)])) <=
                    tol * scale,
                ErrorCode::config, "constants violate c_{2m-k} = -conj(c_k) at k = " + std::to_string(k));
    }
}

}  // namespace detail

inline DiskRHSolution solve_disk_rh(std::span<const cplx> lambda0, std::span<const double> g,
                                    const DiskRHOptions& opt = {}) {
    validate_circle(g, "g");
    require(g.size() == lambda0.size(), ErrorCode::dimension, "lambda0 and g sample counts differ");
    const std::size_t n = g.size();
    DiskRHSolution sol;
    sol.factorization = factorize(lambda0, opt.tol);
    const auto& f = sol.factorization;
    const int m = f.m;
    sol.m = m;

    std::vector<double> g1(n);
    for (std::size_t j = 0; j < n; ++j) g1[j] = g[j] * std::exp(f.p[j]) / f.modulus[j];
    const auto s = schwarz_operator(g1, opt.tol);
    sol.moment_scale = std::max(max_abs(std::span<const double>(g1)), 1e-300);

    // Phi = gamma^{-m} e^{chi} Psi, truncated to the N/2 resolved modes.
    std::vector<cplx> phi_tail;
    if (m >= 0) {
        std::vector<cplx> c(static_cast<std::size_t>(2 * m + 1), cplx{0.0, 0.0});
        if (opt.policy == ConstantPolicy::explicit_values) {
            detail::check_constants(opt.constants, m, opt.tol.rh);
            c = opt.constants;
        }
        sol.free_constants = c;
        require(static_cast<std::size_t>(2 * m + 1) < n / 2, ErrorCode::undersampled,
                "index too large for the boundary resolution");
        // gamma^m e^{-chi} S + e^{-chi} sum c_k gamma^k = e^{-chi} * poly
        std::vector<cplx> poly(n / 2, cplx{0.0, 0.0});
        for (std::size_t k = 0; k + static_cast<std::size_t>(m) < n / 2; ++k) poly[k + static_cast<std::size_t>(m)] = s[k];
        for (std::size_t k = 0; k < c.size(); ++k) poly[k] += c[k];
        phi_tail = std::move(poly);
    } else {
        const int count = opt.moment_range == MomentRange::classical ? -m : -m + 2;
        const auto b = fourier_coefficients(g1);
        sol.moments.resize(static_cast<std::size_t>(count));
        for (int k = 0; k < count; ++k) sol.moments[static_cast<std::size_t>(k)] = b[static_cast<std::size_t>(k)];
        for (const cplx& bk : sol.moments)
            if (std::abs(bk) > opt.tol.moment * sol.moment_scale) sol.solvable = false;
        std::vector<cplx> poly(n / 2, cplx{0.0, 0.0});
        for (std::size_t k = static_cast<std::size_t>(-m); k < n / 2; ++k) poly[k - static_cast<std::size_t>(-m)] = s[k];
        phi_tail = std::move(poly);
    }

    const auto theta = circle_angles(n);
    const auto chi_b = circle_values(f.chi_coeffs, n);
    const auto poly_b = circle_values(phi_tail, n);
    sol.psi_boundary.resize(n);
    for (std::size_t j = 0; j < n; ++j) sol.psi_boundary[j] = std::exp(-chi_b[j]) * poly_b[j];
    double leak = 0.0;
    sol.psi_coeffs = taylor_from_circle(sol.psi_boundary, &leak);
    while (sol.psi_coeffs.size() > 1 && sol.psi_coeffs.back() == cplx(0.0, 0.0)) sol.psi_coeffs.pop_back();

    double res = 0.0, gmax = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        res = std::max(res, std::abs((lambda0[j] * sol.psi_boundary[j]).real() - g[j]));
        gmax = std::max(gmax, std::abs(g[j]));
    }
    sol.bc_residual = res;
    sol.bc_residual_rel = res / std::max(1.0, gmax);
    if (sol.solvable) {
        const double pscale = std::max(1e-300, max_abs(std::span<const cplx>(sol.psi_boundary)));
        require(leak <= opt.tol.rh * std::max(1.0, pscale), ErrorCode::aliasing,
                "solution is not resolved at the boundary sampling (negative-mode leakage " + sci(leak) +
                    ")");
    }
    return sol;
}

/// Boundary samples of a real basis of homogeneous solutions (g = 0), m >= 0:
/// e^{-chi}(gamma^k - gamma^{2m-k}), i e^{-chi}(gamma^k + gamma^{2m-k}) for k < m,
/// and i e^{-chi} gamma^m. Empty for m < 0.
inline std::vector<std::vector<cplx>> homogeneous_basis(const DiskRHFactorization& f) {
    std::vector<std::vector<cplx>> basis;
    if (f.m < 0) return basis;
    const std::size_t n = f.size();
    const auto theta = circle_angles(n);
    const auto chi_b = circle_values(f.chi_coeffs, n);
    const int m = f.m;
    auto make = [&](auto&& poly) {
        std::vector<cplx> v(n);
        for (std::size_t j = 0; j < n; ++j) v[j] = std::exp(-chi_b[j]) * poly(theta[j]);
        basis.push_back(std::move(v));
    };
    const cplx I(0.0, 1.0);
    for (int k = 0; k < m; ++k) {
        make([&](double t) { return std::polar(1.0, k * t) - std::polar(1.0, (2 * m - k) * t); });
        make([&](double t) { return I * (std::polar(1.0, k * t) + std::polar(1.0, (2 * m - k) * t)); });
    }
    make([&](double t) { return I * std::polar(1.0, m * t); });
    return basis;
}

}  // namespace axirh
