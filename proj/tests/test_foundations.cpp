#include <catch2/catch_amalgamated.hpp>

#include "waveop/directions.hpp"
#include "waveop/fft.hpp"
#include "waveop/grids.hpp"
#include "waveop/quadrature.hpp"
#include "waveop/special.hpp"

using namespace waveop;

TEST_CASE("dawson and faddeeva against quadrature") {
    // F(x) = e^{-x^2} int_0^x e^{t^2} dt
    for (double x : {0.05, 0.3, 1.0, 2.5, 4.0, 7.0}) {
        double direct = std::exp(-x * x) *
                        adaptive_simpson([](double t) { return std::exp(t * t); }, 0.0, x,
                                         1e-13 * std::exp(x * x));
        REQUIRE(dawson(x) == Catch::Approx(direct).epsilon(1e-9));
        REQUIRE(dawson(-x) == Catch::Approx(-direct).epsilon(1e-9));
    }
    // w(x) = e^{-x^2} + 2i/sqrt(pi) F(x)
    cplx w = faddeeva_w(1.3);
    REQUIRE(w.real() == Catch::Approx(std::exp(-1.69)).epsilon(1e-12));
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    Rule1D r = gauss_legendre(12);
    double s = 0;
    for (int i = 0; i < 12; ++i) s += r.weights[i] * std::pow(r.nodes[i], 22);
    REQUIRE(s == Catch::Approx(2.0 / 23.0).epsilon(1e-13));
    double sw = 0;
    for (double w : r.weights) sw += w;
    REQUIRE(sw == Catch::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("direction sets integrate spherical harmonics") {
    for (auto ds : {make_product_directions(8, 16), make_lebedev_directions(14),
                    make_lebedev_directions(26)}) {
        REQUIRE(ds.weight_sum() == Catch::Approx(4 * pi).epsilon(1e-12));
        for (const Vec3& d : ds.dirs) REQUIRE(d.norm() == Catch::Approx(1.0).margin(1e-14));
        // low-degree polynomials in omega: int x^2 = 4pi/3, int x^2 y^2 = 4pi/15
        double sx2 = ds.integrate([](const Vec3& w) { return w.x * w.x; });
        double sx2y2 = ds.integrate([](const Vec3& w) { return w.x * w.x * w.y * w.y; });
        double sxy = ds.integrate([](const Vec3& w) { return w.x * w.y; });
        REQUIRE(sx2 == Catch::Approx(4 * pi / 3).margin(1e-10));
        REQUIRE(sx2y2 == Catch::Approx(4 * pi / 15).margin(1e-10));
        REQUIRE(sxy == Catch::Approx(0.0).margin(1e-12));
    }
}

TEST_CASE("field3d multiplier roundtrip and sampling") {
    Field3D f = Field3D::centered(16, 8.0);
    f.fill([](const Vec3& x) { return std::exp(-x.norm2()); });
    double n0 = f.l2_norm();
    f.apply_multiplier([](const Vec3&) { return cplx(1.0); });
    REQUIRE(f.l2_norm() == Catch::Approx(n0).epsilon(1e-12));
    REQUIRE(std::abs(f.sample({0.1, -0.2, 0.3})) > 0.5);
    REQUIRE(f.sample({7.9, 0, 0}) == cplx(0.0));
}

TEST_CASE("fourier table matches analytic gaussian FT") {
    Field3D f = Field3D::centered(64, 16.0);
    f.fill([](const Vec3& x) { return std::exp(-x.norm2()); });
    FourierTable3D table(f);
    for (Vec3 xi : {Vec3{0, 0, 0}, Vec3{1.0, 0.3, -0.7}, Vec3{2.0, 0, 0}}) {
        cplx expect = std::pow(pi, 1.5) * std::exp(-xi.norm2() / 4);
        cplx got = table(xi);
        REQUIRE(std::abs(got - expect) < 1e-4 * std::pow(pi, 1.5));
    }
}

TEST_CASE("field2d h_half norm matches analytic gaussian value") {
    // f = e^{-|x|^2} in 2D has fhat = pi e^{-|xi|^2/4}, so
    // ||f||_{H^{1/2}}^2 = (2pi)^{-2} int |xi| pi^2 e^{-|xi|^2/2} dxi
    //                   = (pi/2) int_0^inf k^2 e^{-k^2/2} dk.
    double expect_sq =
        0.5 * pi *
        adaptive_simpson([](double k) { return k * k * std::exp(-k * k / 2); }, 0.0, 12.0, 1e-13);
    Field2D f(128, 20.0);
    f.fill([](double x, double y) { return std::exp(-(x * x + y * y)); });
    double got = f.h_half_norm();
    REQUIRE(got * got == Catch::Approx(expect_sq).epsilon(2e-3));
}
