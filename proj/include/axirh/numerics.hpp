#pragma once

// Shared numerical kernels: discrete Fourier transforms on the circle, Taylor
// series evaluation, Gauss-Legendre rules and polynomial interpolation.

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "axirh/errors.hpp"

namespace axirh {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Equispaced circle angles 2*pi*j/N.
inline std::vector<double> circle_angles(std::size_t n) {
    std::vector<double> t(n);
    for (std::size_t j = 0; j < n; ++j) t[j] = two_pi * static_cast<double>(j) / static_cast<double>(n);
    return t;
}

/// Fourier coefficients c_k = (1/N) sum_j x_j e^{-ik theta_j}, index k stored at k mod N.
inline std::vector<cplx> fourier_coefficients(std::span<const cplx> samples) {
    Eigen::FFT<double> fft;
    std::vector<cplx> in(samples.begin(), samples.end());
    std::vector<cplx> out;
    fft.fwd(out, in);
    const double scale = 1.0 / static_cast<double>(samples.size());
    for (auto& c : out) c *= scale;
    return out;
}

inline std::vector<cplx> fourier_coefficients(std::span<const double> samples) {
    std::vector<cplx> z(samples.begin(), samples.end());
    return fourier_coefficients(std::span<const cplx>(z));
}

/// Inverse of fourier_coefficients: x_j = sum_k c_k e^{ik theta_j}.
inline std::vector<cplx> fourier_synthesis(std::span<const cplx> coeffs) {
    Eigen::FFT<double> fft;
    std::vector<cplx> in(coeffs.begin(), coeffs.end());
    std::vector<cplx> out;
    fft.SetFlag(Eigen::FFT<double>::Unscaled);
    fft.inv(out, in);
    return out;
}

/// Signed-index access into a coefficient array laid out modulo N.
inline cplx mode(std::span<const cplx> coeffs, long k) {
    const long n = static_cast<long>(coeffs.size());
    return coeffs[static_cast<std::size_t>(((k % n) + n) % n)];
}

/// Truncated Taylor series a_0 + a_1 z + ... evaluated by Horner's rule.
inline cplx horner(std::span<const cplx> a, cplx z) {
    cplx acc{0.0, 0.0};
    for (std::size_t k = a.size(); k-- > 0;) acc = acc * z + a[k];
    return acc;
}

/// d/dz of the series.
inline cplx horner_derivative(std::span<const cplx> a, cplx z) {
    cplx acc{0.0, 0.0};
    for (std::size_t k = a.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * a[k];
    return acc;
}

inline cplx horner_second_derivative(std::span<const cplx> a, cplx z) {
    cplx acc{0.0, 0.0};
    for (std::size_t k = a.size(); k-- > 2;) acc = acc * z + static_cast<double>(k * (k - 1)) * a[k];
    return acc;
}

/// Trigonometric interpolant of N equispaced samples of a 2*pi-periodic function.
class TrigInterpolant {
public:
    TrigInterpolant() = default;

    explicit TrigInterpolant(std::span<const cplx> samples) : coeffs_(fourier_coefficients(samples)) {}

    explicit TrigInterpolant(std::span<const double> samples) : coeffs_(fourier_coefficients(samples)) {}

    [[nodiscard]] cplx operator()(double s) const {
        const long n = static_cast<long>(coeffs_.size());
        const long half = n / 2;
        cplx acc = coeffs_[0];
        for (long k = 1; k < (n + 1) / 2; ++k) {
            acc += mode(coeffs_, k) * std::polar(1.0, static_cast<double>(k) * s);
            acc += mode(coeffs_, -k) * std::polar(1.0, -static_cast<double>(k) * s);
        }
        if (n % 2 == 0 && n > 0) {
            // split the Nyquist mode symmetrically so real data stays real
            acc += coeffs_[static_cast<std::size_t>(half)] * std::cos(static_cast<double>(half) * s);
        }
        return acc;
    }

    [[nodiscard]] double derivative_real(double s) const {
        const long n = static_cast<long>(coeffs_.size());
        cplx acc{0.0, 0.0};
        for (long k = 1; k < (n + 1) / 2; ++k) {
            const double kk = static_cast<double>(k);
            acc += cplx(0.0, kk) * mode(coeffs_, k) * std::polar(1.0, kk * s);
            acc += cplx(0.0, -kk) * mode(coeffs_, -k) * std::polar(1.0, -kk * s);
        }
        return acc.real();
    }

    [[nodiscard]] const std::vector<cplx>& coefficients() const noexcept { return coeffs_; }

private:
    std::vector<cplx> coeffs_;
};

/// Gauss-Legendre rule mapped to [a, b].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Golub-Welsch: eigen-decomposition of the Legendre Jacobi matrix.
inline QuadratureRule gauss_legendre(std::size_t count, double a = -1.0, double b = 1.0) {
    require(count >= 1, ErrorCode::dimension, "Gauss-Legendre rule needs at least one node");
    QuadratureRule rule;
    rule.nodes.resize(count);
    rule.weights.resize(count);
    if (count == 1) {
        rule.nodes[0] = 0.5 * (a + b);
        rule.weights[0] = b - a;
        return rule;
    }
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(count));
    Eigen::VectorXd sub(static_cast<Eigen::Index>(count - 1));
    for (std::size_t k = 1; k < count; ++k) {
        const double kk = static_cast<double>(k);
        sub[static_cast<Eigen::Index>(k - 1)] = kk / std::sqrt(4.0 * kk * kk - 1.0);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const auto& vals = solver.eigenvalues();
    const auto& vecs = solver.eigenvectors();
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (std::size_t k = 0; k < count; ++k) {
        const auto ki = static_cast<Eigen::Index>(k);
        rule.nodes[k] = mid + half * vals[ki];
        rule.weights[k] = 2.0 * vecs(0, ki) * vecs(0, ki) * half;
    }
    return rule;
}

/// Barycentric weights for Lagrange interpolation on arbitrary distinct nodes.
inline std::vector<double> barycentric_weights(std::span<const double> nodes) {
    const std::size_t n = nodes.size();
    std::vector<double> w(n, 1.0);
    for (std::size_t j = 0; j < n; ++j) {
        double prod = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k != j) prod *= (nodes[j] - nodes[k]);
        }
        w[j] = 1.0 / prod;
    }
    // rescale to keep magnitudes near one; the interpolant is invariant
    double wmax = 0.0;
    for (double v : w) wmax = std::max(wmax, std::abs(v));
    for (double& v : w) v /= wmax;
    return w;
}

/// Row of Lagrange basis values L_j(x) for the given nodes.
inline void lagrange_row(std::span<const double> nodes, std::span<const double> bary, double x,
                         std::span<double> out) {
    const std::size_t n = nodes.size();
    for (std::size_t j = 0; j < n; ++j) {
        if (x == nodes[j]) {
            for (std::size_t k = 0; k < n; ++k) out[k] = (k == j) ? 1.0 : 0.0;
            return;
        }
    }
    double denom = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = bary[j] / (x - nodes[j]);
        denom += out[j];
    }
    for (std::size_t j = 0; j < n; ++j) out[j] /= denom;
}

/// Principal-branch phase increments between consecutive circle samples.
inline std::vector<double> phase_increments(std::span<const cplx> values) {
    const std::size_t n = values.size();
    std::vector<double> inc(n);
    for (std::size_t j = 0; j < n; ++j) {
        const cplx next = values[(j + 1) % n];
        inc[j] = std::arg(next / values[j]);
    }
    return inc;
}

inline double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double max_abs(std::span<const cplx> v) {
    double m = 0.0;
    for (const cplx& x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace axirh
