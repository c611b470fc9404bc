#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <sixv/exact.hpp>
#include <sixv/formulas.hpp>

using namespace sixv;

static const CurveParams kSquare(0, 0, 1);
static const CurveParams kP1(0.5, 0.25, 0.25);
static const CurveParams kP2(0.25, 0.5, 0.25);

TEST_CASE("zeta and its derivative") {
    CHECK_THAT(zeta(1, kSquare), Catch::Matchers::WithinAbs(std::sqrt(3.0) - 1, 1e-12));
    for (double z : {0.1, 1.0, 10.0}) {
        double fd = (zeta(z + 1e-6, kP1) - zeta(z - 1e-6, kP1)) / 2e-6;
        CHECK_THAT(zetaPrime(z, kP1), Catch::Matchers::WithinAbs(fd, 1e-6));
    }
}

TEST_CASE("southeast curve endpoints") {
    auto e0 = curveSE(0, kP1);
    CHECK_THAT(e0.x, Catch::Matchers::WithinAbs(0.5 + kP1.b * kP1.c / (kP1.a + kP1.c), 1e-10));
    CHECK_THAT(e0.y, Catch::Matchers::WithinAbs(0.0, 1e-10));
    auto einf = curveSE(std::numeric_limits<double>::infinity(), kP1);
    CHECK_THAT(einf.x, Catch::Matchers::WithinAbs(1 + kP1.b, 1e-10));
    CHECK_THAT(einf.y,
               Catch::Matchers::WithinAbs(0.5 + kP1.a * kP1.b / (kP1.b + kP1.c), 1e-10));
}

TEST_CASE("Legendre identity along the curve") {
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        double z = 1e-4 * std::pow(1e8, i / 999.0);
        auto q = curveSE(z, kP2);
        worst = std::max(worst, std::abs(q.y - z * q.x + zeta(z, kP2)));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("square degeneration gives the ellipse") {
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        double z = 1e-4 * std::pow(1e8, i / 999.0);
        auto q = curveSE(z, kSquare);
        double r = (2 * q.x - 1) * (2 * q.x - 1) + (2 * q.y - 1) * (2 * q.y - 1) -
                   4 * (1 - q.x) * q.y - 1;
        worst = std::max(worst, std::abs(r));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("tangent parameter solver") {
    // closed form for the square case at psi = 1
    CHECK_THAT(solveZPsi(1, kSquare),
               Catch::Matchers::WithinAbs((-1 + std::sqrt(13.0)) / 2, 1e-9));
    // defining relation at a generic point
    for (double psi : {0.25, 1.0, 4.0}) {
        double z = solveZPsi(psi, kP2);
        CHECK(z > 0);
        CHECK(std::isfinite(nu(z, kP2)));
    }
}

TEST_CASE("refined weight examples") {
    CHECK(R(1, 1, 1, 1, 1) == 20);
    CHECK(R(2, 1, 1, 1, 1) == 40);
    CHECK(R(2, 2, 1, 1, 1) == 40);
}

TEST_CASE("refined pmf matches enumeration in the B = 0 sector") {
    Domain d(1, 0, 2);
    auto er = enumerateEnsembles(d);
    auto pmf = exactKPmf(er);
    for (int k = 1; k <= d.width(); ++k) {
        BigRat e = pmf.count(k) ? pmf[k] : BigRat(0);
        CHECK(refinedH(1, 0, 2, k) == e);
    }
}

TEST_CASE("exact normalization of refined pmf and phi pmf") {
    for (int A = 1; A <= 2; ++A)
        for (int B = 0; B <= 2; ++B)
            for (int C = 1; C <= 2; ++C) {
                BigRat s = 0;
                for (int k = 1; k <= A + 2 * B + C + 1; ++k) s += refinedH(A, B, C + 1, k);
                CHECK(s == 1);
                for (int Psi : {0, 1, 5}) {
                    ExactDist dist = phiPmf(A, B, C, Psi);
                    BigRat t = 0;
                    for (const BigRat& w : dist.weights) t += w;
                    CHECK(t == 1);
                }
            }
}

TEST_CASE("refinedH refuses the A = 0 sector") {
    CHECK_THROWS_AS(refinedH(0, 1, 2, 1), std::domain_error);
}

TEST_CASE("variational gradient vanishes at the predicted concentration point") {
    for (double psi : {0.25, 1.0, 4.0}) {
        double z = solveZPsi(psi, kP2);
        double X = nu(z, kP2), Y = sigma(z);
        auto v = variational(X, Y, psi, kP2);
        double st = 1e-5;
        auto fh = [&](double x, double y) {
            auto w = variational(x, y, psi, kP2);
            return w.f + w.h;
        };
        double gx = (fh(X + st, Y) - fh(X - st, Y)) / (2 * st);
        double gy = (fh(X, Y + st) - fh(X, Y - st)) / (2 * st);
        CHECK_THAT(gx, Catch::Matchers::WithinAbs(0.0, 1e-4));
        CHECK_THAT(gy, Catch::Matchers::WithinAbs(0.0, 1e-4));
        CHECK_THAT(v.gradX, Catch::Matchers::WithinAbs(gx, 1e-5));
        CHECK_THAT(v.gradY, Catch::Matchers::WithinAbs(gy, 1e-5));
    }
}

TEST_CASE("log-space pmf agrees with the exact pmf argmax") {
    int A = 2, B = 1, C = 2, Psi = 3;
    ExactDist dist = phiPmf(A, B, C, Psi);
    auto lw = phiLogWeights(A, B, C, Psi);
    CHECK(phiLogArgmax(lw) == dist.argmax());
}
