#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "geometry.hpp"

namespace sixv {

template <class T>
struct Grid {
    int x0 = 0, y0 = 0, nx = 0, ny = 0;
    std::vector<T> data;

    Grid() = default;
    Grid(int x0_, int y0_, int nx_, int ny_)
        : x0(x0_), y0(y0_), nx(nx_), ny(ny_), data(static_cast<size_t>(nx_) * ny_, T{}) {}

    bool inRange(int x, int y) const {
        return x >= x0 && x < x0 + nx && y >= y0 && y < y0 + ny;
    }
    T& at(int x, int y) { return data[static_cast<size_t>(y - y0) * nx + (x - x0)]; }
    const T& at(int x, int y) const {
        return data[static_cast<size_t>(y - y0) * nx + (x - x0)];
    }
    T get(int x, int y) const { return inRange(x, y) ? at(x, y) : T{}; }

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.x0 == b.x0 && a.y0 == b.y0 && a.nx == b.nx && a.ny == b.ny &&
               a.data == b.data;
    }
};

// Entrances u_1..u_k (SE-most path first) and exits w_1..w_k; r = required
// number of paths through diagonal edges.
struct BoundaryData {
    std::vector<Pt> u, w;
    int r = 0;
};

inline BoundaryData domainWallBoundary(const Domain& d) {
    BoundaryData b;
    b.r = d.A;
    int A = d.A, B = d.B, C = d.C;
    if (!d.augmented) {
        for (int i = 1; i <= A + C; ++i) b.u.push_back({0, i});
        for (int i = 1; i <= A; ++i) b.w.push_back({A + 2 * B + C + 1, A + B + C + i});
        for (int i = A + 1; i <= A + C; ++i)
            b.w.push_back({2 * A + 2 * B + C - i + 1, 2 * A + B + C + 1});
    } else {
        b.u.push_back({0, -d.Psi});
        for (int i = 2; i <= A + C + 1; ++i) b.u.push_back({0, i - 1});
        for (int i = 1; i <= A; ++i)
            b.w.push_back({A + 2 * B + C + 2, A + B + C + i});
        for (int i = A + 1; i <= A + C + 1; ++i)
            b.w.push_back({2 * A + 2 * B + C - i + 2, 2 * A + B + C + 1});
    }
    return b;
}

struct ArrowConfig {
    int i1 = 0, j1 = 0, i2 = 0, j2 = 0;  // vertical-in, horizontal-in, v-out, h-out
    bool is(int a, int b, int c, int dd) const {
        return i1 == a && j1 == b && i2 == c && dd == j2;
    }
    bool balanced() const { return i1 + j1 == i2 + j2; }
};

// One directed up-right path; pts runs from the entrance u to the exit w and
// includes unit-slope interpolation points along a diagonal edge, so that
// horizontal-slice comparisons see the diagonal.
struct PathCurve {
    std::vector<Pt> pts;
    int diag = 0;  // index of the diagonal edge used, 0 if none

    int yLo() const { return pts.front().y; }
    int yHi() const { return pts.back().y; }
    // min/max x among path points at height y (path is monotone, so the set
    // of points at a given height is a contiguous horizontal run).
    std::pair<int, int> xRange(int y) const {
        int lo = 1 << 30, hi = -(1 << 30);
        for (const Pt& p : pts)
            if (p.y == y) {
                lo = std::min(lo, p.x);
                hi = std::max(hi, p.x);
            }
        return {lo, hi};
    }
};

/// f <= g in the horizontal-slice partial order: at every common height the
// horizontal run of f starts and ends weakly left of the run of g.  (Requiring
// full separation instead would not even be reflexive for paths containing a
// horizontal run, and would leave the family without extremal elements.)
inline bool pathLE(const PathCurve& f, const PathCurve& g) {
    int lo = std::max(f.yLo(), g.yLo()), hi = std::min(f.yHi(), g.yHi());
    for (int y = lo; y <= hi; ++y) {
        auto [flo, fhi] = f.xRange(y);
        auto [glo, ghi] = g.xRange(y);
        if (fhi >= flo && ghi >= glo && (flo > glo || fhi > ghi)) return false;
    }
    return true;
}

enum class Order { Equal, Less, Greater, Incomparable };

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> issues;
    void fail(std::string s) {
        ok = false;
        issues.push_back(std::move(s));
    }
};

// Edge-occupancy representation of a directed path ensemble.
//   h(x,y): edge (x,y)-(x+1,y), x in [0, W] (x=0 west stubs, x=W east stubs)
//   v(x,y): edge (x,y)-(x,y+1), y in [yMin-1, yMax] (south and north stubs)
//   d[m-1]: m-th diagonal edge
struct Ensemble {
    Domain dom;
    BoundaryData bnd;
    Grid<uint8_t> h, v;
    std::vector<uint8_t> d;

    Ensemble() = default;
    explicit Ensemble(const Domain& dm) : Ensemble(dm, domainWallBoundary(dm)) {}
    Ensemble(const Domain& dm, BoundaryData b)
        : dom(dm),
          bnd(std::move(b)),
          h(0, dm.yMin(), dm.width() + 1, dm.yMax() - dm.yMin() + 1),
          v(1, dm.yMin() - 1, dm.width(), dm.yMax() - dm.yMin() + 2),
          d(static_cast<size_t>(dm.diagCount()), 0) {}

    int pathCount() const { return static_cast<int>(bnd.u.size()); }

    int diagAtLow(int x, int y) const {  // m if (x,y) emits a diagonal, else 0
        if (y == dom.armTop() && x <= dom.A + dom.B && x >= 1) return dom.A + dom.B - x + 1;
        return 0;
    }
    int diagAtHigh(int x, int y) const {  // m if (x,y) receives a diagonal, else 0
        if (x == dom.armLeft() && y > dom.armTop() && y <= dom.armTop() + dom.diagCount())
            return y - dom.armTop();
        return 0;
    }

    ArrowConfig config(int x, int y) const {
        ArrowConfig c;
        c.i1 = v.get(x, y - 1);
        c.j2 = h.get(x, y);
        int mh = diagAtHigh(x, y);
        c.j1 = mh ? d[mh - 1] : h.get(x - 1, y);
        int ml = diagAtLow(x, y);
        c.i2 = ml ? d[ml - 1] : v.get(x, y);
        return c;
    }

    int diagUseCount() const {
        int n = 0;
        for (uint8_t b : d) n += b;
        return n;
    }

    // --- path tracing ------------------------------------------------------

    // Walks the occupied edges from entrance u; at doubly-occupied vertices the
    // non-crossing resolution applies: south-in pairs with east-out, west-in
    // (or diagonal-in) with north-out (or diagonal-out).
    PathCurve tracePath(Pt u) const {
        PathCurve p;
        p.pts.push_back(u);
        Pt cur;
        bool fromWest;
        if (u.x == 0) {
            if (!h.get(0, u.y)) throw std::runtime_error("entrance stub not occupied");
            cur = {1, u.y};
            fromWest = true;
        } else {
            throw std::runtime_error("unsupported entrance");
        }
        for (;;) {
            p.pts.push_back(cur);
            if (!dom.contains(cur)) break;  // stepped onto an exit site
            int ml = diagAtLow(cur.x, cur.y);
            bool outN = ml ? d[ml - 1] : static_cast<bool>(v.get(cur.x, cur.y));
            bool outE = h.get(cur.x, cur.y);
            if (!outN && !outE) throw std::runtime_error("path dead-ends");
            bool north = fromWest ? outN : !outE;
            if (north) {
                if (ml && d[ml - 1]) {
                    Pt hi = dom.diagHigh(ml);
                    for (int t = 1; t < ml; ++t) p.pts.push_back({cur.x + t, cur.y + t});
                    p.diag = ml;
                    cur = hi;
                    fromWest = true;  // diagonal enters the horizontal-in slot
                } else {
                    cur = {cur.x, cur.y + 1};
                    fromWest = false;
                }
            } else {
                cur = {cur.x + 1, cur.y};
                fromWest = true;
            }
        }
        return p;
    }

    std::vector<PathCurve> tracePaths() const {
        std::vector<PathCurve> ps;
        ps.reserve(bnd.u.size());
        for (const Pt& u : bnd.u) ps.push_back(tracePath(u));
        return ps;
    }

    PathCurve rightmostPath() const { return tracePath(bnd.u.front()); }

    // --- statistics ---------------------------------------------------------

    // K: the x at which the rightmost path steps from height 1 to height 2.
    int exitK() const { return crossingX(rightmostPath(), 1); }
    // Phi: the x at which the rightmost path steps from height 0 to height 1
    // (augmented domains); on a plain domain this is K.
    int phi() const { return dom.augmented ? crossingX(rightmostPath(), 0) : exitK(); }

    static int crossingX(const PathCurve& p, int yFrom) {
        for (size_t i = 0; i + 1 < p.pts.size(); ++i)
            if (p.pts[i].y == yFrom && p.pts[i + 1].y == yFrom + 1 &&
                p.pts[i + 1].x == p.pts[i].x)
                return p.pts[i].x;
        throw std::runtime_error("no vertical crossing at requested height");
    }

    // Frozen region: vertex v is frozen when an entire quadrant of v carries
    // the deterministic configuration pattern forced by the boundary on that
    // side. In the directed-path representation these patterns are:
    //   SE(v): empty, (0,0;0,0)
    //   SW(v): horizontal through-flow, (0,1;0,1)
    //   NE(v): vertical through-flow with horizontal pass-through
    //          (i1 = i2 = 1, j1 = j2); the exiting bundle crosses this wedge
    //          eastwards without turning
    //   NW(v): no turning at all (i1 = j1, i2 = j2): every vertex is either a
    //          full crossing or empty
    // Computed with four corner-to-corner sweeps.
    Grid<uint8_t> frozenRegion() const {
        int W = dom.width(), y0 = dom.yMin(), y1 = dom.yMax();
        auto sweep = [&](auto pat, bool xUp, bool yUp) {
            Grid<uint8_t> g(0, y0 - 1, W + 2, y1 - y0 + 3);
            for (auto& t : g.data) t = 1;
            int xs = xUp ? W : 1, xe = xUp ? 0 : W + 1, dx = xUp ? -1 : 1;
            int ys = yUp ? y1 : y0, ye = yUp ? y0 - 1 : y1 + 1, dy = yUp ? -1 : 1;
            for (int y = ys; y != ye; y += dy)
                for (int x = xs; x != xe; x += dx) {
                    bool here = !dom.contains(x, y) || pat(config(x, y));
                    g.at(x, y) = here && g.at(x + (xUp ? 1 : -1), y) &&
                                 g.at(x, y + (yUp ? 1 : -1));
                }
            return g;
        };
        Grid<uint8_t> ne = sweep(
            [](ArrowConfig c) { return c.i1 == 1 && c.i2 == 1 && c.j1 == c.j2; },
            true, true);
        Grid<uint8_t> nw = sweep(
            [](ArrowConfig c) { return c.i1 == c.j1 && c.i2 == c.j2; }, false, true);
        Grid<uint8_t> se =
            sweep([](ArrowConfig c) { return c.is(0, 0, 0, 0); }, true, false);
        Grid<uint8_t> sw =
            sweep([](ArrowConfig c) { return c.is(0, 1, 0, 1); }, false, false);
        Grid<uint8_t> out(1, y0, W, y1 - y0 + 1);
        for (int x = 1; x <= W; ++x)
            for (int y = y0; y <= y1; ++y)
                if (dom.contains(x, y))
                    out.at(x, y) =
                        ne.at(x, y) || nw.at(x, y) || se.at(x, y) || sw.at(x, y);
        return out;
    }

    std::string serialize() const;

    friend bool operator==(const Ensemble& a, const Ensemble& b) {
        return a.dom == b.dom && a.h == b.h && a.v == b.v && a.d == b.d;
    }
};

inline Order compare(const Ensemble& P, const Ensemble& Q) {
    if (P.pathCount() != Q.pathCount())
        throw std::invalid_argument("compare: path counts differ");
    auto a = P.tracePaths(), b = Q.tracePaths();
    bool le = true, ge = true, eq = true;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].pts != b[i].pts) eq = false;
        if (!pathLE(a[i], b[i])) le = false;
        if (!pathLE(b[i], a[i])) ge = false;
    }
    if (eq) return Order::Equal;
    if (le) return Order::Less;
    if (ge) return Order::Greater;
    return Order::Incomparable;
}

// --- validation -------------------------------------------------------------

inline ValidationReport validate(const Ensemble& e) {
    ValidationReport rep;
    const Domain& d = e.dom;
    int W = d.width();

    auto stub = [&](Pt a, Pt b) {  // is a->b a boundary stub declared in bnd?
        for (const Pt& u : e.bnd.u)
            if (u == a && d.contains(b)) return true;
        for (const Pt& w : e.bnd.w)
            if (w == b && d.contains(a)) return true;
        return false;
    };
    for (int y = e.h.y0; y < e.h.y0 + e.h.ny; ++y)
        for (int x = 0; x <= W; ++x)
            if (e.h.at(x, y) && !d.hasH(x, y) && !stub({x, y}, {x + 1, y}))
                rep.fail("occupied horizontal edge off-domain at (" + std::to_string(x) +
                         "," + std::to_string(y) + ")");
    for (int y = e.v.y0; y < e.v.y0 + e.v.ny; ++y)
        for (int x = 1; x <= W; ++x)
            if (e.v.at(x, y) && !d.hasV(x, y) && !stub({x, y}, {x, y + 1}))
                rep.fail("occupied vertical edge off-domain at (" + std::to_string(x) +
                         "," + std::to_string(y) + ")");

    for (int x = 1; x <= W; ++x)
        for (int y = d.yMin(); y <= d.yMax(); ++y)
            if (d.contains(x, y) && !e.config(x, y).balanced())
                rep.fail("unbalanced configuration at (" + std::to_string(x) + "," +
                         std::to_string(y) + ")");

    if (e.diagUseCount() != e.bnd.r)
        rep.fail("diagonal count " + std::to_string(e.diagUseCount()) + " != r = " +
                 std::to_string(e.bnd.r));
    if (!rep.ok) return rep;

    std::vector<PathCurve> paths;
    try {
        paths = e.tracePaths();
    } catch (const std::exception& ex) {
        rep.fail(std::string("trace failed: ") + ex.what());
        return rep;
    }
    long long used = 0;
    for (size_t i = 0; i < paths.size(); ++i) {
        if (paths[i].pts.back() != e.bnd.w[i])
            rep.fail("path " + std::to_string(i + 1) + " exits at wrong site");
        used += static_cast<long long>(paths[i].pts.size()) - 1;
        if (paths[i].diag) used -= paths[i].diag - 1;  // interpolation points
        if (i + 1 < paths.size() && !pathLE(paths[i + 1], paths[i]))
            rep.fail("paths " + std::to_string(i + 2) + " and " + std::to_string(i + 1) +
                     " violate the southeast order");
    }
    long long occ = 0;
    for (uint8_t b : e.h.data) occ += b;
    for (uint8_t b : e.v.data) occ += b;
    for (uint8_t b : e.d) occ += b;
    if (occ != used) rep.fail("occupied edges not covered by the traced paths");
    return rep;
}

// --- serialization ----------------------------------------------------------
// Header "A B C Psi r k", then the hEdges, vEdges and dEdges grids as
// row-major 0/1 strings (rows in increasing y), blank-line separated.

inline std::string Ensemble::serialize() const {
    std::ostringstream os;
    os << dom.A << ' ' << dom.B << ' ' << dom.C << ' ' << dom.Psi << ' ' << bnd.r << ' '
       << pathCount() << '\n';
    for (int y = h.y0; y < h.y0 + h.ny; ++y) {
        for (int x = h.x0; x < h.x0 + h.nx; ++x) os << (h.at(x, y) ? '1' : '0');
        os << '\n';
    }
    os << '\n';
    for (int y = v.y0; y < v.y0 + v.ny; ++y) {
        for (int x = v.x0; x < v.x0 + v.nx; ++x) os << (v.at(x, y) ? '1' : '0');
        os << '\n';
    }
    os << '\n';
    for (uint8_t b : d) os << (b ? '1' : '0');
    os << '\n';
    return os.str();
}

inline Ensemble deserializeEnsemble(std::istream& is) {
    int A, B, C, Psi, r, k;
    if (!(is >> A >> B >> C >> Psi >> r >> k))
        throw std::runtime_error("bad ensemble header");
    std::string line;
    std::getline(is, line);
    Domain dm = Psi > 0 ? Domain(A, B, C, Psi) : Domain(A, B, C);
    Ensemble e(dm);
    if (e.bnd.r != r || e.pathCount() != k)
        throw std::runtime_error("ensemble header does not match domain-wall data");
    auto readGrid = [&](Grid<uint8_t>& g) {
        for (int y = g.y0; y < g.y0 + g.ny; ++y) {
            if (!std::getline(is, line) || static_cast<int>(line.size()) != g.nx)
                throw std::runtime_error("bad grid row");
            for (int x = 0; x < g.nx; ++x) g.at(g.x0 + x, y) = line[x] == '1';
        }
        std::getline(is, line);  // blank separator
    };
    readGrid(e.h);
    readGrid(e.v);
    if (!std::getline(is, line) || static_cast<int>(line.size()) != static_cast<int>(e.d.size()))
        throw std::runtime_error("bad diagonal row");
    for (size_t i = 0; i < e.d.size(); ++i) e.d[i] = line[i] == '1';
    return e;
}

inline Ensemble deserializeEnsemble(const std::string& s) {
    std::istringstream is(s);
    return deserializeEnsemble(is);
}

// Build an ensemble from explicit path vertex sequences (diagonal jumps given
// as single steps from diagLow to diagHigh; no interpolation points).
inline Ensemble ensembleFromPaths(const Domain& dm, const BoundaryData& b,
                                  const std::vector<std::vector<Pt>>& paths) {
    Ensemble e(dm, b);
    for (const auto& pts : paths) {
        for (size_t i = 0; i + 1 < pts.size(); ++i) {
            Pt p = pts[i], q = pts[i + 1];
            if (q.y == p.y && q.x == p.x + 1)
                e.h.at(p.x, p.y) = 1;
            else if (q.x == p.x && q.y == p.y + 1)
                e.v.at(p.x, p.y) = 1;
            else {
                int m = q.y - p.y;
                if (!(dm.diagLow(m) == p && dm.diagHigh(m) == q))
                    throw std::invalid_argument("not an edge of the domain");
                e.d[m - 1] = 1;
            }
        }
    }
    return e;
}

}  // namespace sixv
