#include <catch_amalgamated.hpp>

#include <cmath>

#include "axirh/pompeiu.hpp"
#include "oracles.hpp"

using namespace axirh;

namespace {

// F = dG/d(conj rho) for G = conj(rho)^2 rho + conj(rho) e^{0.3 rho}
cplx G(cplx r) { return std::conj(r) * std::conj(r) * r + std::conj(r) * std::exp(0.3 * r); }
cplx dG(cplx r) { return 2.0 * std::conj(r) * r + std::exp(0.3 * r); }

double green_error(const ConformalMap& map, std::size_t K, std::size_t M) {
    const AreaGrid g = area_grid(map, K, M);
    std::vector<cplx> F(g.size());
    for (std::size_t q = 0; q < g.size(); ++q) F[q] = dG(g.nodes[q]);
    std::vector<cplx> z;
    for (double s : {0.0, 0.3, 0.7, 0.95})
        for (int a = 0; a < 5; ++a) z.push_back(map.forward(std::polar(s, 0.7 + a * 1.3)));
    const auto nu = pompeiu_transform(map, g, F, z);
    auto c = [&](double t) { return map.forward(std::polar(1.0, t)); };
    auto dc = [&](double t) { return map.derivative(std::polar(1.0, t)) * cplx(0, 1) * std::polar(1.0, t); };
    double err = 0.0;
    for (std::size_t t = 0; t < z.size(); ++t) err = std::max(err, std::abs(nu[t] - oracle::green_pompeiu(G, c, dc, z[t])));
    return err;
}

}  // namespace

TEST_CASE("area transform matches Green's formula on the disk") {
    CHECK(green_error(affine_disk_map({0, 2}, 1.0), 64, 32) < 1e-10);
}

TEST_CASE("area transform matches Green's formula under a polynomial map") {
    CHECK(green_error(supplied_map({{0, 3}, {1, 0}, {0.1, 0.05}}), 128, 64) < 1e-9);
}

TEST_CASE("F = 1 on the disk at 2i gives nu = -conj(z) - 2i") {
    const ConformalMap map = affine_disk_map({0, 2}, 1.0);
    const AreaGrid g = area_grid(map, 64, 32);
    const std::vector<cplx> F(g.size(), cplx(1.0, 0.0));
    std::vector<cplx> z{{0, 2}, {0.5, 2.2}, {-0.1, 1.2}, {0, 3}};
    const auto nu = pompeiu_transform(map, g, F, z);
    for (std::size_t k = 0; k < z.size(); ++k) CHECK(std::abs(nu[k] - (-std::conj(z[k]) - cplx(0, 2))) < 1e-12);
}

TEST_CASE("finite-difference dbar of nu recovers -F") {
    const ConformalMap map = affine_disk_map({0, 2}, 1.0);
    const AreaGrid g = area_grid(map, 128, 64);
    auto f = [](cplx z) { return std::cos(z.real()) * cplx(1.0, 0.5) + std::sin(2.0 * z.imag()); };
    std::vector<cplx> F(g.size());
    for (std::size_t q = 0; q < g.size(); ++q) F[q] = f(g.nodes[q]);
    const double h = 1e-3;
    std::vector<cplx> probes{{0, 2}, {0.4, 2.3}, {-0.5, 1.7}};
    std::vector<cplx> pts;
    for (cplx p : probes)
        for (cplx d : {cplx(h, 0), cplx(-h, 0), cplx(0, h), cplx(0, -h)}) pts.push_back(p + d);
    const auto nu = pompeiu_transform(map, g, F, pts);
    for (std::size_t k = 0; k < probes.size(); ++k) {
        const cplx dx = (nu[4 * k] - nu[4 * k + 1]) / (2 * h);
        const cplx dy = (nu[4 * k + 2] - nu[4 * k + 3]) / (2 * h);
        CHECK(std::abs(0.5 * (dx + cplx(0, 1) * dy) + f(probes[k])) < 1e-5);
    }
}

TEST_CASE("targets outside the closed domain are rejected") {
    const ConformalMap map = affine_disk_map({0, 2}, 1.0);
    const AreaGrid g = area_grid(map, 16, 8);
    const std::vector<cplx> F(g.size(), cplx(1.0, 0.0));
    const std::vector<cplx> z{{0.0, 3.5}};
    CHECK_THROWS_AS(pompeiu_transform(map, g, F, z), Error);
    const std::vector<cplx> short_F(3);
    const PompeiuOperator op(map, g, std::vector<cplx>{{0.0, 0.0}});
    CHECK_THROWS_AS(op.apply(short_F), Error);
}
