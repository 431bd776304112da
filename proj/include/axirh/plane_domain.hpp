#pragma once

// Projected planar domain D in the upper half-plane, conformal maps from the unit
// disk onto D, and area quadrature grids transplanted from the disk.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "axirh/errors.hpp"
#include "axirh/numerics.hpp"

namespace axirh {

inline constexpr double default_axis_margin = 1e-6;

namespace detail {

inline double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

inline bool segments_intersect(cplx p1, cplx p2, cplx q1, cplx q2) {
    const double d1 = cross(p2 - p1, q1 - p1);
    const double d2 = cross(p2 - p1, q2 - p1);
    const double d3 = cross(q2 - q1, p1 - q1);
    const double d4 = cross(q2 - q1, p2 - q1);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

}  // namespace detail

/// Closed boundary curve sampled at equispaced parameter values, counterclockwise,
/// strictly above the real axis.
class JordanDomain {
public:
    JordanDomain() = default;

    explicit JordanDomain(std::vector<cplx> boundary, double axis_margin = default_axis_margin)
        : boundary_(std::move(boundary)) {
        const std::size_t n = boundary_.size();
        require(n >= 8, ErrorCode::dimension, "Jordan boundary needs at least 8 samples");
        min_im_ = std::numeric_limits<double>::infinity();
        for (const cplx& z : boundary_) {
            require(std::isfinite(z.real()) && std::isfinite(z.imag()), ErrorCode::domain,
                    "non-finite boundary sample");
            min_im_ = std::min(min_im_, z.imag());
        }
        require(min_im_ >= axis_margin, ErrorCode::domain,
                "boundary comes closer than the axis margin to r = 0 (min Im = " + std::to_string(min_im_) + ")");
        require(signed_area() > 0.0, ErrorCode::domain, "boundary is not counterclockwise");
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 2; j < n; ++j) {
                if (i == 0 && j == n - 1) continue;
                require(!detail::segments_intersect(boundary_[i], boundary_[(i + 1) % n], boundary_[j],
                                                    boundary_[(j + 1) % n]),
                        ErrorCode::domain, "boundary polygon self-intersects");
            }
        }
    }

    [[nodiscard]] const std::vector<cplx>& boundary() const noexcept { return boundary_; }
    [[nodiscard]] double min_im() const noexcept { return min_im_; }

    /// Shoelace area of the boundary polygon.
    [[nodiscard]] double signed_area() const {
        double a = 0.0;
        const std::size_t n = boundary_.size();
        for (std::size_t j = 0; j < n; ++j) a += detail::cross(boundary_[j], boundary_[(j + 1) % n]);
        return 0.5 * a;
    }

    [[nodiscard]] double area() const { return std::abs(signed_area()); }

private:
    std::vector<cplx> boundary_;
    double min_im_ = 0.0;
};

/// Domain star-shaped about `center`, boundary center + rho(s) e^{is} with rho
/// sampled at equispaced polar angles.
struct StarDomain {
    cplx center;
    std::vector<double> radius_samples;

    [[nodiscard]] JordanDomain to_jordan(std::size_t n, double axis_margin = default_axis_margin) const {
        const TrigInterpolant rho{std::span<const double>(radius_samples)};
        std::vector<cplx> b(n);
        const auto t = circle_angles(n);
        for (std::size_t j = 0; j < n; ++j) b[j] = center + rho(t[j]).real() * std::polar(1.0, t[j]);
        return JordanDomain(std::move(b), axis_margin);
    }
};

enum class MapKind { affine, supplied_analytic, theodorsen };

inline std::string to_string(MapKind k) {
    switch (k) {
        case MapKind::affine: return "affine";
        case MapKind::supplied_analytic: return "supplied-analytic";
        case MapKind::theodorsen: return "theodorsen";
    }
    return "unknown";
}

/// Conformal map z = phi(gamma) of the closed unit disk onto the closure of D.
///
/// Every map source ends up as a Taylor polynomial in gamma: the affine map has
/// degree one, supplied maps carry their coefficients, and Theodorsen maps are
/// expanded from the converged boundary correspondence. The inverse is Newton
/// iteration seeded from a precomputed polar lattice of forward values.
class ConformalMap {
public:
    ConformalMap() = default;

    ConformalMap(MapKind kind, std::vector<cplx> coeffs, double tol_map)
        : kind_(kind), coeffs_(std::move(coeffs)), tol_map_(tol_map) {
        require(coeffs_.size() >= 2, ErrorCode::invalid_map, "map needs at least a linear term");
        build_seeds();
    }

    [[nodiscard]] MapKind kind() const noexcept { return kind_; }
    [[nodiscard]] const std::vector<cplx>& coefficients() const noexcept { return coeffs_; }
    [[nodiscard]] double tol_map() const noexcept { return tol_map_; }

    [[nodiscard]] cplx forward(cplx gamma) const {
        if (kind_ == MapKind::affine) return coeffs_[0] + coeffs_[1] * gamma;
        return horner(coeffs_, gamma);
    }

    [[nodiscard]] cplx derivative(cplx gamma) const {
        if (kind_ == MapKind::affine) return coeffs_[1];
        return horner_derivative(coeffs_, gamma);
    }

    [[nodiscard]] cplx second_derivative(cplx gamma) const {
        if (kind_ == MapKind::affine) return {0.0, 0.0};
        return horner_second_derivative(coeffs_, gamma);
    }

    /// gamma = psi(z). Throws an inversion error naming z when Newton stalls.
    [[nodiscard]] cplx inverse(cplx z) const {
        if (kind_ == MapKind::affine) return (z - coeffs_[0]) / coeffs_[1];
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < seed_images_.size(); ++k) {
            const double d = std::norm(seed_images_[k] - z);
            if (d < best_d) {
                best_d = d;
                best = k;
            }
        }
        cplx g = seed_points_[best];
        const double scale = std::max(1.0, std::abs(z));
        for (int it = 0; it < 60; ++it) {
            const cplx f = forward(g) - z;
            const cplx step = f / derivative(g);
            g -= step;
            if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(g)) || std::abs(f) <= 1e-16 * scale) {
                return g;
            }
        }
        if (std::abs(forward(g) - z) <= 1e-12 * scale) return g;
        fail(ErrorCode::inversion, "Newton inversion did not converge for z = (" + std::to_string(z.real()) + ", " +
                                       std::to_string(z.imag()) + ")");
    }

    /// Domain boundary parameter for disk angle t. Identity unless the map carries a
    /// nontrivial boundary correspondence (Theodorsen maps of star domains).
    [[nodiscard]] double boundary_parameter(double t) const {
        if (!correspondence_) return t;
        return t + (*correspondence_)(t).real();
    }

    void set_correspondence(TrigInterpolant theta_minus_t) {
        correspondence_ = std::make_shared<const TrigInterpolant>(std::move(theta_minus_t));
    }

    [[nodiscard]] bool has_correspondence() const noexcept { return static_cast<bool>(correspondence_); }

    /// Boundary samples phi(e^{i t_j}) as a Jordan domain.
    [[nodiscard]] JordanDomain boundary_domain(std::size_t n, double axis_margin = default_axis_margin) const {
        std::vector<cplx> b(n);
        const auto t = circle_angles(n);
        for (std::size_t j = 0; j < n; ++j) b[j] = forward(std::polar(1.0, t[j]));
        return JordanDomain(std::move(b), axis_margin);
    }

private:
    void build_seeds() {
        constexpr std::size_t rings = 32;
        constexpr std::size_t spokes = 32;
        seed_points_.clear();
        seed_points_.push_back({0.0, 0.0});
        for (std::size_t i = 1; i <= rings; ++i) {
            const double rho = static_cast<double>(i) / static_cast<double>(rings);
            for (std::size_t j = 0; j < spokes; ++j)
                seed_points_.push_back(std::polar(rho, two_pi * static_cast<double>(j) / spokes));
        }
        seed_images_.resize(seed_points_.size());
        for (std::size_t k = 0; k < seed_points_.size(); ++k) seed_images_[k] = forward(seed_points_[k]);
    }

    MapKind kind_ = MapKind::affine;
    std::vector<cplx> coeffs_;
    double tol_map_ = 1e-10;
    std::vector<cplx> seed_points_;
    std::vector<cplx> seed_images_;
    std::shared_ptr<const TrigInterpolant> correspondence_;
};

namespace detail {

/// Winding number of a sampled closed curve about `about`, by principal-branch
/// increments; `ok` is cleared when the sampling is too coarse to trust.
inline long sampled_winding(std::span<const cplx> curve, cplx about, bool& ok) {
    double total = 0.0;
    ok = true;
    const std::size_t n = curve.size();
    for (std::size_t j = 0; j < n; ++j) {
        const cplx a = curve[j] - about;
        const cplx b = curve[(j + 1) % n] - about;
        if (std::abs(a) == 0.0 || std::abs(b) == 0.0) {
            ok = false;
            return 0;
        }
        const double d = std::arg(b / a);
        if (std::abs(d) >= 0.5 * pi) ok = false;
        total += d;
    }
    return std::lround(total / two_pi);
}

/// Sampling certificate shared by supplied and Theodorsen maps: nonvanishing
/// derivative on a polar lattice, no critical points inside (argument principle on
/// phi'), boundary winding one, simple boundary above the axis.
inline void certify_map(const ConformalMap& map, double axis_margin) {
    constexpr std::size_t boundary_n = 512;
    std::vector<cplx> dphi(boundary_n);
    std::vector<cplx> phi(boundary_n);
    const auto t = circle_angles(boundary_n);
    double dscale = 0.0;
    for (std::size_t j = 0; j < boundary_n; ++j) {
        const cplx g = std::polar(1.0, t[j]);
        dphi[j] = map.derivative(g);
        phi[j] = map.forward(g);
        dscale = std::max(dscale, std::abs(dphi[j]));
    }
    bool ok = true;
    const long crit = sampled_winding(dphi, {0.0, 0.0}, ok);
    require(ok && crit == 0, ErrorCode::invalid_map,
            "map derivative vanishes inside the unit disk (critical points: " + std::to_string(crit) + ")");
    const long wind = sampled_winding(phi, map.forward({0.0, 0.0}), ok);
    require(ok && wind == 1, ErrorCode::invalid_map, "boundary image does not wind once around phi(0)");
    for (std::size_t i = 0; i <= 32; ++i) {
        const double rho = static_cast<double>(i) / 32.0;
        for (std::size_t j = 0; j < 64; ++j) {
            const cplx d = map.derivative(std::polar(rho, two_pi * static_cast<double>(j) / 64.0));
            require(std::abs(d) > 1e-10 * dscale, ErrorCode::invalid_map, "map derivative vanishes on the lattice");
        }
    }
    try {
        (void)JordanDomain(phi, axis_margin);
    } catch (const Error& e) {
        fail(ErrorCode::invalid_map, std::string("boundary image is not an admissible domain: ") + e.what());
    }
}

}  // namespace detail

/// Exact map of the disk |z - center| < radius.
inline ConformalMap affine_disk_map(cplx center, double radius, double axis_margin = default_axis_margin) {
    require(radius > 0.0, ErrorCode::domain, "disk radius must be positive");
    require(center.imag() - radius >= axis_margin, ErrorCode::domain,
            "disk touches or crosses the axis r = 0");
    return ConformalMap(MapKind::affine, {center, cplx(radius, 0.0)}, 1e-10);
}

/// Polynomial map phi(gamma) = sum_k a_k gamma^k, certified by sampling.
inline ConformalMap supplied_map(std::vector<cplx> coeffs, double axis_margin = default_axis_margin) {
    while (coeffs.size() > 2 && coeffs.back() == cplx(0.0, 0.0)) coeffs.pop_back();
    require(coeffs.size() >= 2 && coeffs[1] != cplx(0.0, 0.0), ErrorCode::invalid_map,
            "supplied map needs a nonzero linear coefficient");
    ConformalMap map(MapKind::supplied_analytic, std::move(coeffs), 1e-10);
    detail::certify_map(map, axis_margin);
    return map;
}

struct TheodorsenOptions {
    std::size_t boundary_n = 256;
    double tol_map = 1e-8;
    int max_iter = 200;
    double axis_margin = default_axis_margin;
};

struct TheodorsenReport {
    int iterations = 0;
    double contraction = 0.0;  ///< max |d log rho / d s|
    double last_update = 0.0;
};

/// Theodorsen's fixed-point iteration theta <- t + K[log rho(theta)] for the
/// boundary correspondence of a star-shaped domain, K the periodic conjugation
/// operator. The map phi(gamma) = c + gamma exp(h(gamma)) is then expanded from
/// the boundary values into a Taylor polynomial.
inline ConformalMap theodorsen_map(const StarDomain& domain, const TheodorsenOptions& opt = {},
                                   TheodorsenReport* report = nullptr) {
    require(domain.radius_samples.size() >= 8, ErrorCode::dimension, "star domain needs at least 8 radius samples");
    for (double v : domain.radius_samples)
        require(v > 0.0 && std::isfinite(v), ErrorCode::unsupported_domain,
                "radius function must be positive: domain is not star-shaped about the center");
    const std::size_t n = opt.boundary_n;
    require(n >= 16 && n % 2 == 0, ErrorCode::dimension, "boundary resolution must be even and >= 16");

    std::vector<double> log_rho(domain.radius_samples.size());
    for (std::size_t j = 0; j < log_rho.size(); ++j) log_rho[j] = std::log(domain.radius_samples[j]);
    const TrigInterpolant log_rho_fn{std::span<const double>(log_rho)};

    double contraction = 0.0;
    for (std::size_t j = 0; j < 4 * n; ++j)
        contraction = std::max(contraction,
                               std::abs(log_rho_fn.derivative_real(two_pi * static_cast<double>(j) / (4.0 * n))));

    const auto t = circle_angles(n);
    std::vector<double> theta(t);
    std::vector<cplx> lvals(n);
    double update = std::numeric_limits<double>::infinity();
    int iter = 0;
    const double target = std::min(opt.tol_map, 1e-13);
    for (; iter < opt.max_iter && update > target; ++iter) {
        for (std::size_t j = 0; j < n; ++j) lvals[j] = log_rho_fn(theta[j]).real();
        auto c = fourier_coefficients(lvals);
        // conjugate function: mode k -> -i sign(k) c_k, Nyquist and mean dropped
        c[0] = 0.0;
        c[n / 2] = 0.0;
        for (std::size_t k = 1; k < n / 2; ++k) {
            c[k] *= cplx(0.0, -1.0);
            c[n - k] *= cplx(0.0, 1.0);
        }
        const auto conj_vals = fourier_synthesis(c);
        double next_update = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double next = t[j] + conj_vals[j].real();
            next_update = std::max(next_update, std::abs(next - theta[j]));
            theta[j] = next;
        }
        if (iter > 5 && next_update > update && next_update > 1e-6) {
            fail(ErrorCode::convergence, "Theodorsen iteration diverges (contraction estimate " +
                                             sci(contraction) + ")");
        }
        update = next_update;
    }
    if (update > opt.tol_map) {
        fail(ErrorCode::convergence, "Theodorsen iteration did not converge (contraction estimate " +
                                         sci(contraction) + ", last update " + sci(update) +
                                         ")");
    }

    std::vector<cplx> zb(n);
    std::vector<double> shift(n);
    for (std::size_t j = 0; j < n; ++j) {
        zb[j] = domain.center + std::exp(log_rho_fn(theta[j]).real()) * std::polar(1.0, theta[j]);
        shift[j] = theta[j] - t[j];
    }
    const auto a = fourier_coefficients(zb);
    double scale = 0.0;
    for (const cplx& v : a) scale = std::max(scale, std::abs(v));
    double leak = 0.0;
    for (std::size_t k = n / 2; k < n; ++k) leak = std::max(leak, std::abs(a[k]));
    require(leak <= 1e-6 * scale, ErrorCode::convergence,
            "boundary correspondence is under-resolved (negative-frequency leakage " + sci(leak) + ")");
    std::vector<cplx> coeffs(a.begin(), a.begin() + static_cast<long>(n / 2));
    while (coeffs.size() > 2 && std::abs(coeffs.back()) < 1e-16 * scale) coeffs.pop_back();

    ConformalMap map(MapKind::theodorsen, std::move(coeffs), opt.tol_map);
    map.set_correspondence(TrigInterpolant(std::span<const double>(shift)));
    detail::certify_map(map, opt.axis_margin);
    if (report) *report = {iter, contraction, update};
    return map;
}

/// Star-shaped Jordan domain given by boundary samples: the polar angle about
/// `center` must increase monotonically once around; rho is resampled onto
/// equispaced polar angles before the Theodorsen iteration.
inline ConformalMap theodorsen_map(const JordanDomain& domain, cplx center, const TheodorsenOptions& opt = {},
                                   TheodorsenReport* report = nullptr) {
    const auto& b = domain.boundary();
    const std::size_t n = b.size();
    std::vector<double> sigma(n), rho(n);
    double acc = std::arg(b[0] - center);
    for (std::size_t j = 0; j < n; ++j) {
        if (j > 0) {
            const double d = std::arg((b[j] - center) / (b[j - 1] - center));
            require(d > 0.0, ErrorCode::unsupported_domain, "domain is not star-shaped about the given center");
            acc += d;
        }
        sigma[j] = acc;
        rho[j] = std::abs(b[j] - center);
        require(rho[j] > 0.0, ErrorCode::unsupported_domain, "center lies on the boundary");
    }
    const double closing = std::arg((b[0] - center) / (b[n - 1] - center));
    require(closing > 0.0 && std::abs(sigma[n - 1] + closing - sigma[0] - two_pi) < 1e-9,
            ErrorCode::unsupported_domain, "domain is not star-shaped about the given center");

    // periodic parts in the sample parameter u_j = 2 pi j / n
    const auto u = circle_angles(n);
    std::vector<double> sig_per(n);
    for (std::size_t j = 0; j < n; ++j) sig_per[j] = sigma[j] - sigma[0] - u[j];
    const TrigInterpolant sig_fn{std::span<const double>(sig_per)};
    const TrigInterpolant rho_fn{std::span<const double>(rho)};
    auto sigma_of = [&](double uu) { return sigma[0] + uu + sig_fn(uu).real(); };

    StarDomain star{center, std::vector<double>(n)};
    for (std::size_t k = 0; k < n; ++k) {
        // want polar angle s_k = 2 pi k / n (mod 2 pi), measured from the lifted start
        double target = two_pi * static_cast<double>(k) / static_cast<double>(n);
        while (target < sigma[0]) target += two_pi;
        while (target >= sigma[0] + two_pi) target -= two_pi;
        double lo = 0.0, hi = two_pi;
        for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (sigma_of(mid) < target) lo = mid;
            else hi = mid;
        }
        star.radius_samples[k] = rho_fn(0.5 * (lo + hi)).real();
    }
    return theodorsen_map(star, opt, report);
}

struct MapDiagnostics {
    std::string kind;
    double round_trip_max = 0.0;
    double boundary_error = 0.0;
    double min_derivative = 0.0;
    double area_quadrature = 0.0;
    double area_polygon = 0.0;
};

/// Quadrature nodes phi(gamma_{j,m}) on the tensor grid of K equispaced angles and
/// M Gauss-Legendre radii, so that sum_k w_k F(z_k) ~ integral over D of F dA.
/// Node (j, m) is stored at j * M + m.
struct AreaGrid {
    std::size_t angular = 0;  ///< K
    std::size_t radial = 0;   ///< M
    std::vector<double> radii;           ///< Gauss-Legendre nodes on (0, 1)
    std::vector<double> radial_weights;  ///< Gauss-Legendre weights on (0, 1)
    std::vector<cplx> gamma;             ///< disk coordinates
    std::vector<cplx> nodes;             ///< z = phi(gamma)
    std::vector<double> disk_weights;    ///< area weights in the disk
    std::vector<double> weights;         ///< disk weight * |phi'|^2
    std::vector<cplx> dphi;              ///< phi'(gamma)

    [[nodiscard]] std::size_t size() const noexcept { return nodes.size(); }

    [[nodiscard]] double total_weight() const {
        double s = 0.0;
        for (double w : weights) s += w;
        return s;
    }
};

inline AreaGrid area_grid(const ConformalMap& map, std::size_t K, std::size_t M, double min_im = 0.0) {
    require(K >= 4 && M >= 4, ErrorCode::dimension, "area grid needs K, M >= 4");
    AreaGrid g;
    g.angular = K;
    g.radial = M;
    const auto rule = gauss_legendre(M, 0.0, 1.0);
    g.radii = rule.nodes;
    g.radial_weights = rule.weights;
    const auto theta = circle_angles(K);
    g.gamma.resize(K * M);
    g.nodes.resize(K * M);
    g.disk_weights.resize(K * M);
    g.weights.resize(K * M);
    g.dphi.resize(K * M);
    for (std::size_t j = 0; j < K; ++j) {
        for (std::size_t m = 0; m < M; ++m) {
            const std::size_t k = j * M + m;
            g.gamma[k] = std::polar(g.radii[m], theta[j]);
            g.nodes[k] = map.forward(g.gamma[k]);
            g.dphi[k] = map.derivative(g.gamma[k]);
            g.disk_weights[k] = (two_pi / static_cast<double>(K)) * g.radial_weights[m] * g.radii[m];
            g.weights[k] = g.disk_weights[k] * std::norm(g.dphi[k]);
            require(g.nodes[k].imag() >= min_im, ErrorCode::domain,
                    "area grid node below the domain's certified distance from the axis");
        }
    }
    return g;
}

/// Round-trip, boundary tracing, derivative and area diagnostics. `reference`, when
/// given, is the domain the map was built for.
inline MapDiagnostics map_diagnostics(const ConformalMap& map, const JordanDomain* reference = nullptr,
                                      const StarDomain* star = nullptr) {
    MapDiagnostics d;
    d.kind = to_string(map.kind());
    d.min_derivative = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < 32; ++i) {
        for (std::size_t j = 0; j < 32; ++j) {
            const double rho = static_cast<double>(i) / 31.0;
            const cplx g = std::polar(rho, two_pi * (static_cast<double>(j) + 0.5) / 32.0);
            d.round_trip_max = std::max(d.round_trip_max, std::abs(map.inverse(map.forward(g)) - g));
            d.min_derivative = std::min(d.min_derivative, std::abs(map.derivative(g)));
        }
    }
    const std::size_t nb = reference ? reference->boundary().size() : 256;
    const auto t = circle_angles(nb);
    if (star) {
        const TrigInterpolant rho{std::span<const double>(star->radius_samples)};
        for (double tj : t) {
            const cplx z = map.forward(std::polar(1.0, tj)) - star->center;
            d.boundary_error = std::max(d.boundary_error, std::abs(std::abs(z) - rho(std::arg(z)).real()));
        }
    } else if (reference) {
        const auto& b = reference->boundary();
        for (std::size_t j = 0; j < nb; ++j) {
            const cplx z = map.forward(std::polar(1.0, t[j]));
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < b.size(); ++k) {
                const cplx a = b[k];
                const cplx e = b[(k + 1) % b.size()] - a;
                const double s = std::clamp(((z - a) * std::conj(e)).real() / std::norm(e), 0.0, 1.0);
                best = std::min(best, std::abs(a + s * e - z));
            }
            d.boundary_error = std::max(d.boundary_error, best);
        }
    }
    d.area_quadrature = area_grid(map, 128, 64).total_weight();
    d.area_polygon = map.boundary_domain(1024, 0.0).area();
    return d;
}

}  // namespace axirh
