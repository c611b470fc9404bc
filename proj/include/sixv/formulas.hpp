#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "exact.hpp"  // BigInt / BigRat aliases

namespace sixv {

// ---------------------------------------------------------------------------
// Arctic-curve parameters and the generating function zeta.
// ---------------------------------------------------------------------------

struct CurveParams {
    double a = 0, b = 0, c = 1;

    CurveParams() = default;
    CurveParams(double a_, double b_, double c_) : a(a_), b(b_), c(c_) {
        if (a < 0 || b < 0 || c < 0 || std::abs(a + b + c - 1.0) > 1e-12)
            throw std::invalid_argument("curve parameters must lie on the simplex a+b+c=1");
    }
};

inline double zeta(double z, const CurveParams& p) {
    if (z < 0) throw std::domain_error("zeta: z must be >= 0");
    const double a = p.a, b = p.b, c = p.c;
    return std::sqrt(z * z + z + 1) +
           std::sqrt((z * b + z * c + a + c) * (z * b + z * c + a + c) - 4 * a * b * z) / 2 +
           ((b - c) * z - a - c) / 2 - 1;
}

inline double zetaPrime(double z, const CurveParams& p) {
    if (z < 0) throw std::domain_error("zetaPrime: z must be >= 0");
    const double a = p.a, b = p.b, c = p.c;
    double s = std::sqrt((z * b + z * c + a + c) * (z * b + z * c + a + c) - 4 * a * b * z);
    return (2 * z + 1) / (2 * std::sqrt(z * z + z + 1)) +
           ((b + c) * (b + c) * z - a * b + a * c + b * c + c * c) / (2 * s) + (b - c) / 2;
}

struct XY {
    double x = 0, y = 0;
};

// Southeast piece: x(z) = zeta'(z), y(z) = z zeta'(z) - zeta(z); the z = inf
// endpoint is the analytic tangency point (1+b, 1/2 + ab/(b+c)).
inline XY curveSE(double z, const CurveParams& p) {
    if (std::isinf(z)) return {1 + p.b, 0.5 + p.a * p.b / (p.b + p.c)};
    double xp = zetaPrime(z, p);
    return {xp, z * xp - zeta(z, p)};
}

enum class Piece { SE, SW, NE, NW_W, NW_N };

inline const char* pieceName(Piece t) {
    switch (t) {
        case Piece::SE: return "SE";
        case Piece::SW: return "SW";
        case Piece::NE: return "NE";
        case Piece::NW_W: return "NW_W";
        case Piece::NW_N: return "NW_N";
    }
    return "?";
}

// The other pieces are cyclic-parameter images of the SE piece.
inline XY curvePiece(Piece tag, double z, const CurveParams& p) {
    const double a = p.a, b = p.b, c = p.c;
    CurveParams bca(b, c, a), cab(c, a, b);
    switch (tag) {
        case Piece::SE: return curveSE(z, p);
        case Piece::SW: {
            XY q = curveSE(z, bca);
            return {q.y, 1 + c - q.x};
        }
        case Piece::NW_W: {
            XY q = curveSE(z, cab);
            return {1 + a - q.x, 1 + c - q.y};
        }
        case Piece::NW_N: {
            XY q = curveSE(z, bca);
            return {1 + b - q.x, 1 + a - q.y};
        }
        case Piece::NE: {
            XY q = curveSE(z, cab);
            return {1 + b - q.y, q.x};
        }
    }
    throw std::invalid_argument("unknown curve piece");
}

// The scaled domain limit: points of the region the curves live in.
inline bool inLimitRegion(double x, double y, const CurveParams& p, double eps = 1e-9) {
    const double a = p.a, b = p.b, c = p.c;
    bool lower = x >= -eps && x <= 1 + b + eps && y >= -eps && y <= a + c + eps;
    bool upper = x >= a + b - eps && x <= 1 + b + eps && y >= a + c - eps && y <= 1 + a + eps;
    return lower || upper;
}

struct TangentLine {
    double slope = 0, intercept = 0;
};

inline TangentLine tangentLine(double z, const CurveParams& p) {
    return {z, -zeta(z, p)};
}

inline double nu(double z, const CurveParams& p) {
    if (z < 0) throw std::domain_error("nu: z must be >= 0");
    if (z == 0) return 0.5 + p.b * p.c / (p.a + p.c);
    return zeta(z, p) / z;
}

inline double sigma(double z) {
    if (z < 0) throw std::domain_error("sigma: z must be >= 0");
    if (z == 0) return 0.5;
    return (std::sqrt(z * z + z + 1) - 1) / z;
}

// Unique z with zeta(z) = psi (zeta is strictly increasing from 0 to inf).
inline double solveZPsi(double psi, const CurveParams& p) {
    if (psi < 0) throw std::domain_error("solveZPsi: psi must be >= 0");
    if (psi == 0) return 0;
    double lo = 0, hi = 1;
    while (zeta(hi, p) < psi) hi *= 2;
    for (int it = 0; it < 200; ++it) {
        double mid = (lo + hi) / 2;
        if (std::abs(zeta(mid, p) - psi) < 1e-10) return mid;
        (zeta(mid, p) < psi ? lo : hi) = mid;
    }
    return (lo + hi) / 2;
}

// ---------------------------------------------------------------------------
// Exact combinatorics: R(X,Y), the refined correlation function, the Phi pmf.
// ---------------------------------------------------------------------------

inline BigInt binom(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

inline BigInt R(int X, int Y, int A, int B, int C) {
    if (A < 1) throw std::domain_error("R: requires A >= 1");
    const int N = A + B + C;
    if (Y < 1 || Y > X || X > A + 2 * B + C + 1)
        throw std::out_of_range("R: X,Y out of range");
    return binom(2 * N - Y + 1, N) * binom(N + Y - 1, N) * binom(C + X - Y, C) *
           binom(A + B - X + Y - 1, A - 1);
}

// Closed-form k-refined correlation function on T_{A,B,Cplus1}. The enumeration
// oracle disagrees with this formula whenever B >= 1 (see the tests); it is
// provided exactly as printed, and the acceptance harness reports the
// discrepancy rather than papering over it.
inline BigRat refinedH(int A, int B, int Cplus1, int k) {
    if (A < 1) throw std::domain_error("refinedH: requires A >= 1 (use enumeration for A=0)");
    if (Cplus1 < 2) throw std::domain_error("refinedH: requires Cplus1 >= 2");
    const int C = Cplus1 - 1, N = A + B + C;
    if (k < 1 || k > A + 2 * B + C + 1) throw std::out_of_range("refinedH: k out of range");
    BigInt num = 0;
    for (int Y = 1; Y <= k; ++Y) num += R(k, Y, A, B, C);
    return BigRat(num) / BigRat(binom(3 * N + 1, N) * binom(N, B));
}

struct ExactDist {
    int lo = 1, hi = 1;
    std::vector<BigRat> weights;  // index X - lo; sums to exactly 1
    BigInt Z = 0;                 // unnormalized total weight

    const BigRat& p(int X) const { return weights.at(static_cast<size_t>(X - lo)); }
    int argmax() const {
        int best = lo;
        for (int X = lo + 1; X <= hi; ++X)
            if (p(X) > p(best)) best = X;
        return best;
    }
};

// P[Phi = X] proportional to binom(Psi+X-1, Psi) * sum_{Y<=X} R(X,Y).
inline ExactDist phiPmf(int A, int B, int C, int Psi) {
    if (A < 1) throw std::domain_error("phiPmf: requires A >= 1");
    if (Psi < 0) throw std::domain_error("phiPmf: requires Psi >= 0");
    ExactDist d;
    d.lo = 1;
    d.hi = A + 2 * B + C + 1;
    std::vector<BigInt> w;
    for (int X = d.lo; X <= d.hi; ++X) {
        BigInt s = 0;
        for (int Y = 1; Y <= X; ++Y) s += R(X, Y, A, B, C);
        s *= binom(Psi + X - 1, Psi);
        d.Z += s;
        w.push_back(s);
    }
    for (const BigInt& x : w) d.weights.emplace_back(BigRat(x) / BigRat(d.Z));
    return d;
}

// Log-space variant for large N: log weights of the same pmf, via lgamma.
inline double logBinom(double n, double k) {
    if (k < 0 || n < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

inline std::vector<double> phiLogWeights(int A, int B, int C, int Psi) {
    if (A < 1) throw std::domain_error("phiLogWeights: requires A >= 1");
    const int N = A + B + C, hi = A + 2 * B + C + 1;
    std::vector<double> lw(static_cast<size_t>(hi), -std::numeric_limits<double>::infinity());
    for (int X = 1; X <= hi; ++X) {
        double best = -std::numeric_limits<double>::infinity();
        std::vector<double> terms;
        for (int Y = 1; Y <= X; ++Y) {
            double t = logBinom(2.0 * N - Y + 1, N) + logBinom(N + Y - 1.0, N) +
                       logBinom(C + X - Y, C) + logBinom(A + B - X + Y - 1.0, A - 1.0);
            terms.push_back(t);
            best = std::max(best, t);
        }
        if (std::isinf(best)) continue;
        double s = 0;
        for (double t : terms) s += std::exp(t - best);
        lw[static_cast<size_t>(X - 1)] = best + std::log(s) + logBinom(Psi + X - 1.0, Psi);
    }
    return lw;  // index X-1
}

inline int phiLogArgmax(const std::vector<double>& lw) {
    int best = 1;
    for (int X = 2; X <= static_cast<int>(lw.size()); ++X)
        if (lw[static_cast<size_t>(X - 1)] > lw[static_cast<size_t>(best - 1)]) best = X;
    return best;
}

// ---------------------------------------------------------------------------
// Variational functions f and h on D = {x < 1+b, x-b < y < min(x,1)}.
// ---------------------------------------------------------------------------

inline bool inVariationalDomain(double x, double y, const CurveParams& p, double margin = 0) {
    return x > margin && y > margin && x < 1 + p.b - margin && y > x - p.b + margin &&
           y < std::min(x, 1.0) - margin;
}

struct VariationalPoint {
    double x = 0, y = 0;
    double f = 0, h = 0;          // values
    double gradX = 0, gradY = 0;  // analytic gradient of f + h
};

inline VariationalPoint variational(double x, double y, double psi, const CurveParams& p) {
    if (psi <= 0) throw std::domain_error("variational: psi must be > 0");
    if (!inVariationalDomain(x, y, p))
        throw std::domain_error("variational: (x,y) outside the domain D");
    const double a = p.a, b = p.b, c = p.c;
    auto xlogx = [](double t) { return t <= 0 ? 0.0 : t * std::log(t); };
    if (2 - y <= 0 || 1 - y <= 0 || y <= 0 || c + x - y <= 0 || x - y <= 0 ||
        a + b + y - x <= 0 || b + y - x <= 0)
        throw std::domain_error("variational: logarithm singularity");
    VariationalPoint v;
    v.x = x;
    v.y = y;
    v.h = xlogx(2 - y) - xlogx(1 - y) + xlogx(1 + y) - xlogx(y) + xlogx(c + x - y) - xlogx(c) -
          xlogx(x - y) + xlogx(a + b + y - x) - xlogx(a) - xlogx(b + y - x);
    v.f = xlogx(psi + x) - xlogx(psi) - xlogx(x);
    v.gradX = std::log(psi + x) - std::log(x) + std::log(c + x - y) - std::log(x - y) -
              std::log(a + b + y - x) + std::log(b + y - x);
    v.gradY = -std::log(2 - y) + std::log(1 - y) + std::log(1 + y) - std::log(y) -
              std::log(c + x - y) + std::log(x - y) + std::log(a + b + y - x) -
              std::log(b + y - x);
    return v;
}

}  // namespace sixv
