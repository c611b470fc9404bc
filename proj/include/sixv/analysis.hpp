#pragma once
// Empirical statistics on sampled ensembles and their comparison against the
// analytic predictions: the approximate-convexity statistic Xi, lower convex
// envelopes, and distances between the rightmost path and the limiting
// southeast boundary curve.

#include <sixv/ensemble.hpp>
#include <sixv/formulas.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace sixv {

struct Vec2 {
    double x = 0, y = 0;
};

inline double dist(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

inline double pointSegDist(Vec2 p, Vec2 a, Vec2 b) {
    double dx = b.x - a.x, dy = b.y - a.y;
    double len2 = dx * dx + dy * dy;
    if (len2 == 0) return dist(p, a);
    double t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return dist(p, {a.x + t * dx, a.y + t * dy});
}

inline double pointPolylineDist(Vec2 p, const std::vector<Vec2>& poly) {
    if (poly.empty()) throw std::invalid_argument("pointPolylineDist: empty polyline");
    if (poly.size() == 1) return dist(p, poly.front());
    double best = 1e300;
    for (size_t i = 0; i + 1 < poly.size(); ++i)
        best = std::min(best, pointSegDist(p, poly[i], poly[i + 1]));
    return best;
}

// --- the approximate-convexity statistic Xi ------------------------------------
// Xi(p) = max over path points u, v in NE(u), and path points w inside the
// rectangle [u,v] lying weakly NW of the chord l(u,v), of the Euclidean
// distance from w to that chord.  Xi(p) = 0 iff p is weakly convex.

namespace detail {

inline void requireMonotone(const std::vector<Pt>& p) {
    for (size_t i = 0; i + 1 < p.size(); ++i)
        if (p[i + 1].x < p[i].x || p[i + 1].y < p[i].y)
            throw std::invalid_argument("Xi: path is not monotone");
}

// Perpendicular distance from w to the line through u,v, positive on the NW
// (upper-left) side, negative on the SE side.
inline double sideDist(Pt u, Pt v, Pt w) {
    double dx = v.x - u.x, dy = v.y - u.y;
    double len = std::hypot(dx, dy);
    if (len == 0) return 0;
    return (dx * (w.y - u.y) - dy * (w.x - u.x)) / len;
}

inline double cross(Pt o, Pt a, Pt b) {
    return static_cast<double>(a.x - o.x) * (b.y - o.y) -
           static_cast<double>(a.y - o.y) * (b.x - o.x);
}

}  // namespace detail

inline double xiBrute(const std::vector<Pt>& p) {
    detail::requireMonotone(p);
    double best = 0;
    size_t n = p.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t k = i + 1; k < n; ++k) {
            // monotone path: the points inside the rectangle [p_i, p_k] are
            // exactly p_i..p_k along the path
            for (size_t j = i + 1; j < k; ++j)
                best = std::max(best, detail::sideDist(p[i], p[k], p[j]));
        }
    return best;
}

// Same statistic, restricting the inner maximisation to the upper convex hull
// of the points between u and v: the maximum NW-side distance to any chord is
// attained at a hull vertex, so the result is bit-identical to brute force.
inline double xiPruned(const std::vector<Pt>& p) {
    detail::requireMonotone(p);
    double best = 0;
    size_t n = p.size();
    std::vector<Pt> hull;
    for (size_t i = 0; i < n; ++i) {
        hull.clear();
        hull.push_back(p[i]);
        for (size_t k = i + 1; k < n; ++k) {
            for (const Pt& w : hull)
                best = std::max(best, detail::sideDist(p[i], p[k], w));
            // extend the upper hull of p_i..p_k by p_k (points are sorted
            // lexicographically because the path is monotone)
            while (hull.size() >= 2 &&
                   detail::cross(hull[hull.size() - 2], hull.back(), p[k]) >= 0)
                hull.pop_back();
            hull.push_back(p[k]);
        }
    }
    return best;
}

// --- lower convex envelope ------------------------------------------------------
// The topmost convex curve below the path within its bounding rectangle: the
// lower convex hull chain from the first to the last path point.

inline std::vector<Pt> lowerEnvelope(const std::vector<Pt>& p) {
    detail::requireMonotone(p);
    std::vector<Pt> hull;
    for (const Pt& q : p) {
        while (hull.size() >= 2 &&
               detail::cross(hull[hull.size() - 2], hull.back(), q) <= 0)
            hull.pop_back();
        if (hull.empty() || !(hull.back() == q)) hull.push_back(q);
    }
    return hull;
}

struct EnvelopeGap {
    double pathToEnv = 0;  // max over path points of d(u, envelope)
    double envToPath = 0;  // max over envelope points of d(v, path)
};

// Computes both gap terms and asserts the envelope inequality
// pathToEnv + envToPath <= 2 Xi(p) on every call.
inline EnvelopeGap envelopeGap(const std::vector<Pt>& p) {
    std::vector<Pt> env = lowerEnvelope(p);
    std::vector<Vec2> envPoly, pathPoly;
    for (const Pt& q : env) envPoly.push_back({double(q.x), double(q.y)});
    for (const Pt& q : p) pathPoly.push_back({double(q.x), double(q.y)});

    EnvelopeGap g;
    // The distance from a point above a convex chain to the chain is convex
    // along each path segment, so the path-side maximum is at a vertex.
    for (const Vec2& q : pathPoly)
        g.pathToEnv = std::max(g.pathToEnv, pointPolylineDist(q, envPoly));
    // The reverse direction needs interior samples of the envelope segments.
    const int sub = 16;
    for (size_t i = 0; i + 1 < envPoly.size(); ++i)
        for (int s = 0; s <= sub; ++s) {
            double t = double(s) / sub;
            Vec2 q{envPoly[i].x + t * (envPoly[i + 1].x - envPoly[i].x),
                   envPoly[i].y + t * (envPoly[i + 1].y - envPoly[i].y)};
            g.envToPath = std::max(g.envToPath, pointPolylineDist(q, pathPoly));
        }
    if (envPoly.size() == 1) g.envToPath = pointPolylineDist(envPoly[0], pathPoly);

    double xi = xiPruned(p);
    if (g.pathToEnv + g.envToPath > 2 * xi + 1e-9)
        throw std::logic_error("envelopeGap: envelope inequality violated");
    return g;
}

// --- limit curves ----------------------------------------------------------------

// Sample one arctic-boundary piece on an M-point grid of the rational
// parameterisation z = t/(1-t), t in [0,1).
inline std::vector<Vec2> samplePiece(Piece tag, const CurveParams& p, int M = 512) {
    std::vector<Vec2> out;
    out.reserve(static_cast<size_t>(M) + 1);
    for (int i = 0; i <= M; ++i) {
        double t = double(i) / (M + 1);  // stops short of z = infinity
        XY q = curvePiece(tag, t / (1.0 - t), p);
        out.push_back({q.x, q.y});
    }
    return out;
}

// The completed southeast limit curve: the tangent segment along the x-axis,
// the curve piece B_SE, and the tangent segment along x = 1+b up to height
// yTop (the scaled exit of the rightmost path).
inline std::vector<Vec2> completedSECurve(const CurveParams& p, double yTop, int M = 512) {
    std::vector<Vec2> out;
    XY start = curveSE(0.0, p);
    out.push_back({0.0, 0.0});
    for (int i = 0; i <= M; ++i) {
        double t = double(i) / (M + 1);
        XY q = curveSE(t / (1.0 - t), p);
        out.push_back({q.x, q.y});
    }
    XY end = curveSE(std::numeric_limits<double>::infinity(), p);
    out.push_back({end.x, end.y});
    if (yTop > end.y) out.push_back({end.x, yTop});
    (void)start;
    return out;
}

// The four arctic-boundary pieces (NW chosen according to the sign of a-b; it
// is empty when a = b).  Consecutive pieces share tangency endpoints, so their
// concatenation is a closed loop bounding the liquid region.
inline std::vector<std::vector<Vec2>> arcticPieces(const CurveParams& p, int M = 512) {
    std::vector<std::vector<Vec2>> out;
    out.push_back(samplePiece(Piece::SE, p, M));
    out.push_back(samplePiece(Piece::NE, p, M));
    if (p.a > p.b)
        out.push_back(samplePiece(Piece::NW_W, p, M));
    else if (p.a < p.b)
        out.push_back(samplePiece(Piece::NW_N, p, M));
    out.push_back(samplePiece(Piece::SW, p, M));
    return out;
}

struct ArcticGeometry {
    std::vector<std::vector<Vec2>> pieces;
    std::vector<Piece> tags;  // tag of each entry of pieces, same order
    std::vector<Vec2> loop;   // closed boundary of the liquid region

    explicit ArcticGeometry(const CurveParams& p, int M = 512) : pieces(arcticPieces(p, M)) {
        tags = {Piece::SE, Piece::NE};
        if (p.a > p.b) tags.push_back(Piece::NW_W);
        else if (p.a < p.b) tags.push_back(Piece::NW_N);
        tags.push_back(Piece::SW);
        // Chain the pieces into one loop, flipping each to continue from the
        // current endpoint (the tangency points are shared, so the nearest
        // endpoint is the right one).
        loop = pieces.front();
        std::vector<std::vector<Vec2>> rest(pieces.begin() + 1, pieces.end());
        while (!rest.empty()) {
            Vec2 cur = loop.back();
            size_t bi = 0;
            bool flip = false;
            double bd = 1e300;
            for (size_t i = 0; i < rest.size(); ++i) {
                double df = dist(cur, rest[i].front()), db = dist(cur, rest[i].back());
                if (df < bd) bd = df, bi = i, flip = false;
                if (db < bd) bd = db, bi = i, flip = true;
            }
            std::vector<Vec2> piece = rest[bi];
            if (flip) std::reverse(piece.begin(), piece.end());
            loop.insert(loop.end(), piece.begin(), piece.end());
            rest.erase(rest.begin() + static_cast<long>(bi));
        }
    }

    // Membership in the union of per-piece outer quadrant regions: the SE
    // piece contributes the set of points lying (weakly) southeast of some
    // point of the piece, and similarly for the other directions. This is the
    // macroscopic frozen region; its complement within the domain closure is
    // the liquid region plus the thin wedges between tangency points.
    bool inFrozenQuadrants(Vec2 q) const {
        for (size_t i = 0; i < pieces.size(); ++i) {
            Piece t = tags[i];
            for (const Vec2& v : pieces[i]) {
                bool e = q.x >= v.x, w = q.x <= v.x, n = q.y >= v.y, s = q.y <= v.y;
                if (t == Piece::SE ? (e && s)
                    : t == Piece::SW ? (w && s)
                    : t == Piece::NE ? (e && n)
                                     : (w && n))  // NW_W or NW_N
                    return true;
            }
        }
        return false;
    }

    double distToUnion(Vec2 q) const {
        double best = 1e300;
        for (const auto& pc : pieces) best = std::min(best, pointPolylineDist(q, pc));
        return best;
    }

    // Even-odd ray cast against the closed loop.
    bool liquid(Vec2 q) const {
        bool in = false;
        size_t n = loop.size();
        for (size_t i = 0, j = n - 1; i < n; j = i++) {
            const Vec2 &a = loop[i], &b = loop[j];
            if ((a.y > q.y) != (b.y > q.y)) {
                double xc = a.x + (q.y - a.y) / (b.y - a.y) * (b.x - a.x);
                if (q.x < xc) in = !in;
            }
        }
        return in;
    }
};

// --- rightmost path vs the southeast limit curve -------------------------------

struct BoundaryError {
    double maxDist = 0;             // sup over path vertices of d(v, curve)
    double hausdorff = 0;           // symmetric Hausdorff distance
    double signedAreaMismatch = 0;  // area under path minus area under curve
};

namespace detail {
inline double areaUnder(const std::vector<Vec2>& poly) {
    double s = 0;
    for (size_t i = 0; i + 1 < poly.size(); ++i)
        s += (poly[i + 1].x - poly[i].x) * (poly[i].y + poly[i + 1].y) / 2.0;
    return s;
}
}  // namespace detail

inline BoundaryError boundaryError(const Ensemble& e, const CurveParams& p, int N) {
    if (N < 1) throw std::invalid_argument("boundaryError: N must be positive");
    PathCurve p1 = e.rightmostPath();
    std::vector<Vec2> path;
    for (const Pt& q : p1.pts)
        path.push_back({double(q.x) / N, double(q.y) / N});
    std::vector<Vec2> curve = completedSECurve(p, path.back().y);

    BoundaryError r;
    for (const Vec2& q : path) r.maxDist = std::max(r.maxDist, pointPolylineDist(q, curve));
    double back = 0;
    for (const Vec2& q : curve) back = std::max(back, pointPolylineDist(q, path));
    r.hausdorff = std::max(r.maxDist, back);
    r.signedAreaMismatch = detail::areaUnder(path) - detail::areaUnder(curve);
    return r;
}

// --- sample aggregation ----------------------------------------------------------

// Accumulates the per-vertex frozen frequency over a stream of samples.
struct FrozenFractionMap {
    Grid<double> freq;
    long long samples = 0;

    explicit FrozenFractionMap(const Domain& d)
        : freq(1, d.yMin(), d.width(), d.yMax() - d.yMin() + 1) {}

    void add(const Ensemble& e) {
        Grid<uint8_t> fr = e.frozenRegion();
        for (int x = fr.x0; x < fr.x0 + fr.nx; ++x)
            for (int y = fr.y0; y < fr.y0 + fr.ny; ++y)
                if (e.dom.contains(x, y) && fr.get(x, y)) freq.at(x, y) += 1.0;
        ++samples;
    }

    double fraction(int x, int y) const {
        return samples ? freq.get(x, y) / double(samples) : 0.0;
    }
};

struct AggregateStats {
    std::map<int, long long> kHist, phiHist;
    std::vector<double> xi, hausdorff, maxDist;
    long long samples = 0;

    void add(const Ensemble& e, const CurveParams* params = nullptr, int N = 0) {
        kHist[e.exitK()] += 1;
        if (e.dom.augmented) phiHist[e.phi()] += 1;
        PathCurve p1 = e.rightmostPath();
        xi.push_back(xiPruned(p1.pts));
        if (params && N > 0) {
            BoundaryError be = boundaryError(e, *params, N);
            hausdorff.push_back(be.hausdorff);
            maxDist.push_back(be.maxDist);
        }
        ++samples;
    }
};

}  // namespace sixv
