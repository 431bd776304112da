#include <catch_amalgamated.hpp>

#include <cmath>

#include "axirh/axial_core.hpp"

using namespace axirh;
using Catch::Matchers::WithinAbs;

namespace {

AxialField sample(const Lattice& L, int n, auto&& f) {
    AxialField fld;
    fld.n = n;
    fld.lattice = L;
    fld.A.resize(L.size());
    fld.B.resize(L.size());
    for (std::size_t k = 0; k < L.size(); ++k) {
        const AxialValue v = f(L.x0[k], L.r[k]);
        fld.A[k] = v.a;
        fld.B[k] = v.b;
    }
    return fld;
}

double interior_max(const Lattice& L, const std::vector<double>& v) {
    double m = 0.0;
    for (std::size_t i = 1; i + 1 < L.rows; ++i)
        for (std::size_t j = 1; j + 1 < L.cols; ++j) m = std::max(m, std::abs(v[L.index(i, j)]));
    return m;
}

}  // namespace

TEST_CASE("paravector conjugate, norm and inverse") {
    const Paravector x(1.0, {2.0, -2.0});
    CHECK_THAT(x.norm(), WithinAbs(3.0, 1e-15));
    const Paravector xi = x.inverse();
    const auto p = multiply(x, xi);
    CHECK_THAT(p.scalar, WithinAbs(1.0, 1e-15));
    for (double v : p.vec) CHECK_THAT(v, WithinAbs(0.0, 1e-15));
    for (double v : p.bivec) CHECK_THAT(v, WithinAbs(0.0, 1e-15));
    CHECK_THROWS_AS(Paravector(0.0, {0.0, 0.0}).inverse(), Error);
}

TEST_CASE("Clifford product of 1-vectors anticommutes and squares to -1") {
    const Paravector e1(0.0, {1.0, 0.0, 0.0}), e2(0.0, {0.0, 1.0, 0.0});
    CHECK(multiply(e1, e1).scalar == -1.0);
    const auto a = multiply(e1, e2), b = multiply(e2, e1);
    CHECK(a.bivec[0] == 1.0);
    CHECK(b.bivec[0] == -1.0);
    CHECK_THROWS_AS(multiply(e1, Paravector(0.0, {1.0})), Error);
}

TEST_CASE("axial values multiply like complex numbers") {
    const AxialValue u{1.0, 2.0}, v{-0.5, 3.0};
    const cplx w = u.as_complex() * v.as_complex();
    const AxialValue p = u * v;
    CHECK(p.a == w.real());
    CHECK(p.b == w.imag());
}

TEST_CASE("Cauchy kernel solves the Vekua system with second-order lattice error") {
    for (int n : {1, 2, 3, 5}) {
        double prev = 0.0;
        for (std::size_t N : {21u, 41u, 81u}) {
            const Lattice L = Lattice::rectangular(-0.5, 0.5, N, 1.0, 2.0, N);
            const auto f = sample(L, n, [n](double x, double r) { return cauchy_kernel({x, r, {}}, n); });
            const auto res = vesy_residual(f);
            const double e = std::max(interior_max(L, res.res1), interior_max(L, res.res2));
            if (prev > 0.0) CHECK(prev / e > 3.0);
            prev = e;
        }
        CHECK(prev < 1e-2);
    }
}

TEST_CASE("a non-monogenic field leaves an O(1) residual") {
    const Lattice L = Lattice::rectangular(0.0, 1.0, 21, 1.0, 2.0, 21);
    const auto f = sample(L, 3, [](double x, double) { return AxialValue{0.0, x}; });
    const auto res = vesy_residual(f);
    CHECK(interior_max(L, res.res2) > 0.5);
}

TEST_CASE("lattice validation") {
    Lattice L = Lattice::rectangular(0.0, 1.0, 5, 0.0, 1.0, 5);
    AxialField f;
    f.lattice = L;
    f.A.assign(L.size(), 1.0);
    f.B.assign(L.size(), 0.0);
    CHECK_THROWS_AS(vesy_residual(f), Error);  // touches the axis
    f.A.pop_back();
    CHECK_THROWS_AS(f.validate(), Error);
    CHECK_THROWS_AS(cauchy_kernel({0.0, 0.0, {}}, 3), Error);
    CHECK_THROWS_AS(cauchy_kernel({1.0, 1.0, {}}, 0), Error);
}

TEST_CASE("reconstruct_axial and eval_axial embed A + omega B") {
    const Lattice L = Lattice::rectangular(-1.0, 1.0, 11, 0.5, 1.5, 11);
    std::vector<cplx> w(L.size());
    for (std::size_t k = 0; k < L.size(); ++k) w[k] = {1.0 + L.x0[k], 2.0 * L.r[k]};
    const AxialField f = reconstruct_axial(L, w, 2);
    const double s = std::sqrt(0.5);
    const Paravector p = eval_axial(f, {0.33, 0.77, std::vector<double>{s, -s}});
    CHECK_THAT(p.scalar(), WithinAbs(1.33, 1e-13));
    CHECK_THAT(p.vector_part()[0], WithinAbs(2 * 0.77 * s, 1e-13));
    CHECK_THAT(p.vector_part()[1], WithinAbs(-2 * 0.77 * s, 1e-13));
    CHECK_THROWS_AS(eval_axial(f, {0.0, 1.0, {}}), Error);
    CHECK_THROWS_AS(eval_axial(f, {5.0, 1.0, std::vector<double>{1.0, 0.0}}), Error);
}
