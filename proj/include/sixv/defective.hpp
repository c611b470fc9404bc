#pragma once

#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ensemble.hpp"
#include "geometry.hpp"

namespace sixv {

// Defective six-vertex ensemble on a plain three-bundle domain, with
// domain-wall boundary data: A+C paths enter at (0, m), B+C paths exit at
// (A+B+m, 2A+B+C+1). Arrow configurations are inconsistent across each
// diagonal edge: exactly one of dLow[m] (arrow emitted at diagLow, ending at
// the defect line) and dHigh[m] (arrow entering diagHigh from the defect
// line) is set.
struct DefEnsemble {
    Domain dom;
    Grid<uint8_t> h, v;
    std::vector<uint8_t> dLow, dHigh;

    explicit DefEnsemble(const Domain& dm)
        : dom(dm),
          h(0, dm.yMin(), dm.width() + 1, dm.yMax() - dm.yMin() + 1),
          v(1, dm.yMin() - 1, dm.width(), dm.yMax() - dm.yMin() + 2),
          dLow(static_cast<size_t>(dm.diagCount()), 0),
          dHigh(static_cast<size_t>(dm.diagCount()), 0) {}

    ArrowConfig config(int x, int y) const {
        ArrowConfig c;
        c.i1 = v.get(x, y - 1);
        c.j2 = h.get(x, y);
        int m = (y == dom.armTop() && x >= 1 && x <= dom.A + dom.B)
                    ? dom.A + dom.B - x + 1
                    : 0;
        c.i2 = m ? dLow[m - 1] : v.get(x, y);
        int mh = (x == dom.armLeft() && y > dom.armTop() &&
                  y <= dom.armTop() + dom.diagCount())
                     ? y - dom.armTop()
                     : 0;
        c.j1 = mh ? dHigh[mh - 1] : h.get(x - 1, y);
        return c;
    }
};

inline ValidationReport validateDefective(const DefEnsemble& e) {
    ValidationReport rep;
    const Domain& d = e.dom;
    int W = d.width(), Y = d.yMax();
    for (int m = 1; m <= d.diagCount(); ++m)
        if (e.dLow[m - 1] == e.dHigh[m - 1])
            rep.fail("diagonal " + std::to_string(m) + " is consistent");
    for (int x = 1; x <= W; ++x)
        for (int y = 1; y <= Y; ++y)
            if (d.contains(x, y) && !e.config(x, y).balanced())
                rep.fail("unbalanced configuration at (" + std::to_string(x) + "," +
                         std::to_string(y) + ")");
    for (int y = 1; y <= Y; ++y) {
        if (d.contains(1, y) && e.h.get(0, y) != (y <= d.A + d.C ? 1 : 0))
            rep.fail("west stub mismatch at row " + std::to_string(y));
        if (d.contains(W, y) && e.h.get(W, y))
            rep.fail("unexpected east arrow at row " + std::to_string(y));
    }
    for (int x = 1; x <= W; ++x) {
        if (d.contains(x, Y) && e.v.get(x, Y) != (x > d.A + d.B ? 1 : 0))
            rep.fail("north stub mismatch at column " + std::to_string(x));
        if (d.contains(x, 1) && e.v.get(x, 0))
            rep.fail("unexpected south arrow at column " + std::to_string(x));
    }
    for (int x = 1; x <= W; ++x)
        for (int y = 1; y <= Y; ++y) {
            if (e.h.get(x, y) && !(d.hasH(x, y) || x == 0 || x == W))
                rep.fail("horizontal arrow off-domain");
            if (e.v.get(x, y) && !d.hasV(x, y) && y != Y && y != 0)
                rep.fail("vertical arrow off-domain");
        }
    return rep;
}

inline std::string serializeDefective(const DefEnsemble& e) {
    std::string s;
    s.reserve(e.h.data.size() + e.v.data.size() + e.dLow.size() + e.dHigh.size());
    for (auto b : e.h.data) s.push_back(char('0' + b));
    for (auto b : e.v.data) s.push_back(char('0' + b));
    for (auto b : e.dLow) s.push_back(char('0' + b));
    for (auto b : e.dHigh) s.push_back(char('0' + b));
    return s;
}

namespace detail {

// Edge slots a walk may traverse: interior edges plus the exit stubs (east
// for horizontal, north for vertical).
inline bool walkableH(const Domain& d, int x, int y) {
    return d.hasH(x, y) || (x == d.width() && d.contains(d.width(), y));
}
inline bool walkableV(const Domain& d, int x, int y) {
    return d.hasV(x, y) || (y == d.yMax() && d.contains(x, d.yMax()));
}

}  // namespace detail

// The canonical map from defective to restricted ensembles. Each diagonal
// slot launches a walk from diagHigh(m), entering as if from the west:
//  - a dHigh slot heads a path of E itself (it entered at the defect line);
//    the walk follows occupied edges and removes them. It must exit north.
//  - a dLow slot heads a path of the complement of E (the dual of the path
//    that ends at the defect line); the walk follows empty edges and fills
//    them in. It must exit east, producing the diagonal path of P.
// Saturated vertices are resolved without crossings: a walk arriving from
// the west leaves north when it can; arriving from the south it leaves east.
// Walks are kept edge-disjoint by shared claims and always read the original
// (pristine) ensemble, not the partially edited one.
//
// Every valid defective ensemble converts (this is checked exhaustively in
// the tests), but the map is not injective: two defective ensembles that
// differ only by a crossing-versus-osculating resolution at one saturated
// vertex have the same image. Consequently toDefective below is a section
// of this map, not a two-sided inverse.
inline Ensemble fromDefective(const DefEnsemble& de) {
    const Domain& d = de.dom;
    Ensemble p(d, domainWallBoundary(d));
    p.h = de.h;
    p.v = de.v;
    std::set<std::pair<int, int>> usedH, usedV;
    for (int m = 1; m <= d.diagCount(); ++m) {
        bool add = !de.dHigh[m - 1];
        bool wantEast = add;
        p.d[m - 1] = add ? 1 : 0;
        Pt cur = d.diagHigh(m);
        bool fromWest = true;
        int guard = 4 * (d.width() + 2) * (d.yMax() + 2);
        while (d.contains(cur)) {
            if (--guard < 0)
                throw std::runtime_error("defective conversion: walk does not terminate");
            bool oE = detail::walkableH(d, cur.x, cur.y) && !usedH.count({cur.x, cur.y}) &&
                      (static_cast<bool>(de.h.get(cur.x, cur.y)) != add);
            bool oN = detail::walkableV(d, cur.x, cur.y) && !usedV.count({cur.x, cur.y}) &&
                      (static_cast<bool>(de.v.get(cur.x, cur.y)) != add);
            if (!oN && !oE)
                throw std::runtime_error("defective conversion: walk dead-ends");
            bool north = fromWest ? oN : !oE;
            Pt nxt = north ? Pt{cur.x, cur.y + 1} : Pt{cur.x + 1, cur.y};
            if (!d.contains(nxt) && north == wantEast)
                throw std::runtime_error("defective conversion: walk exits on the wrong side");
            if (north) {
                usedV.insert({cur.x, cur.y});
                p.v.at(cur.x, cur.y) = add ? 1 : 0;
            } else {
                usedH.insert({cur.x, cur.y});
                p.h.at(cur.x, cur.y) = add ? 1 : 0;
            }
            cur = nxt;
            fromWest = !north;
        }
    }
    return p;
}

namespace detail {

// Depth-first search over path surgeries on a restricted ensemble P: on each
// used diagonal the diagonal path's tail is cut (following occupied edges,
// exiting east); on each unused diagonal a defect-started path is added
// (following empty edges, exiting north). Each complete set of edge-disjoint
// walks yields one candidate defective ensemble; candidates are emitted in
// canonical preference order (west-in prefers north, south-in prefers east).
struct SurgerySearch {
    const Domain& d;
    const Grid<uint8_t>& H;
    const Grid<uint8_t>& V;
    struct Plan {
        int m;
        bool add, wantEast;
    };
    std::vector<Plan> plans;
    std::set<std::pair<int, int>> usedH, usedV;
    std::vector<Pt> cutH, cutV, addH, addV;
    std::function<bool()> onSolution;

    bool run(size_t i) {
        if (i == plans.size()) return onSolution();
        return go(i, d.diagHigh(plans[i].m), !plans[i].add, 0);
    }
    bool go(size_t i, Pt cur, bool fromWest, int depth) {
        if (!d.contains(cur)) return run(i + 1);
        if (depth > 4 * (d.width() + 2) * (d.yMax() + 2)) return false;
        const Plan& pl = plans[i];
        bool oE = walkableH(d, cur.x, cur.y) && !usedH.count({cur.x, cur.y}) &&
                  (static_cast<bool>(H.get(cur.x, cur.y)) != pl.add);
        bool oN = walkableV(d, cur.x, cur.y) && !usedV.count({cur.x, cur.y}) &&
                  (static_cast<bool>(V.get(cur.x, cur.y)) != pl.add);
        auto tryMove = [&](bool north) -> bool {
            Pt nxt = north ? Pt{cur.x, cur.y + 1} : Pt{cur.x + 1, cur.y};
            if (!d.contains(nxt) && north == pl.wantEast) return false;
            auto& used = north ? usedV : usedH;
            auto& rec = north ? (pl.add ? addV : cutV) : (pl.add ? addH : cutH);
            used.insert({cur.x, cur.y});
            rec.push_back(cur);
            if (go(i, nxt, !north, depth + 1)) return true;
            rec.pop_back();
            used.erase({cur.x, cur.y});
            return false;
        };
        if (fromWest) {
            if (oN && tryMove(true)) return true;
            if (oE && tryMove(false)) return true;
        } else {
            if (oE && tryMove(false)) return true;
            if (oN && tryMove(true)) return true;
        }
        return false;
    }
};

}  // namespace detail

// Section of fromDefective: finds a defective ensemble E with
// fromDefective(E) == p, preferring the canonical surgery. Returns false if
// p has no preimage (the canonical map is not onto for larger instances; see
// the library tests for the exact counts).
inline bool toDefective(const Ensemble& p, DefEnsemble& out) {
    const Domain& d = p.dom;
    DefEnsemble base(d);
    base.h = p.h;
    base.v = p.v;
    detail::SurgerySearch s{d, p.h, p.v, {}};
    for (int m = 1; m <= d.diagCount(); ++m) {
        if (p.d[m - 1]) {
            s.plans.push_back({m, false, true});  // cut the diagonal path's tail
            base.dLow[m - 1] = 1;
        } else {
            s.plans.push_back({m, true, false});  // add a defect-started path
            base.dHigh[m - 1] = 1;
        }
    }
    const std::string want = p.serialize();
    bool found = false;
    s.onSolution = [&]() -> bool {
        DefEnsemble cand = base;
        for (auto q : s.cutH) cand.h.at(q.x, q.y) = 0;
        for (auto q : s.cutV) cand.v.at(q.x, q.y) = 0;
        for (auto q : s.addH) cand.h.at(q.x, q.y) = 1;
        for (auto q : s.addV) cand.v.at(q.x, q.y) = 1;
        if (!validateDefective(cand).ok) return false;
        try {
            if (fromDefective(cand).serialize() != want) return false;
        } catch (const std::runtime_error&) {
            return false;
        }
        out = cand;
        found = true;
        return true;
    };
    s.run(0);
    return found;
}

inline DefEnsemble toDefectiveOrThrow(const Ensemble& p) {
    DefEnsemble de(p.dom);
    if (!toDefective(p, de))
        throw std::runtime_error("ensemble has no defective preimage");
    return de;
}

// Rotation of a defective ensemble from T_{A,B,C} onto T_{B,C,A}. The north-
// east arm rectangle is first rotated onto the top of the west columns (with
// all its bits complemented), fusing the old defect halves back into plain
// edges along the seam; the resulting intermediate region S is then rotated
// clockwise as a whole onto T_{B,C,A}, complementing the vertical arrows
// that land in the new arm columns. The torn seam verticals become the new
// defect line. This map is a bijection between the defective families of
// T_{A,B,C} and T_{B,C,A} (checked exhaustively in the tests).
inline DefEnsemble rotateDefective(const DefEnsemble& e) {
    const Domain& d = e.dom;
    const int A = d.A, B = d.B, C = d.C;
    if (A < 1) throw std::runtime_error("rotation target requires a positive bundle");
    const int K = A + B + 2 * C + 1;
    Domain nd(B, C, A);
    DefEnsemble out(nd);
    const int NW = nd.width(), NY = nd.yMax();

    // Bits of the intermediate region S: the strip keeps its own bits, the
    // tall columns hold the complemented, quarter-turned arm rectangle.
    auto Sh = [&](int x, int y) -> int {
        if (y <= A + C) return e.h.get(x, y);
        return !e.v.get(y + B - C, 2 * A + B + C - x);
    };
    auto Sv = [&](int x, int y) -> int {
        if (y < A + C) return e.v.get(x, y);
        if (y == A + C) {
            if (x >= 1 && x <= A + B) return e.dLow[A + B - x];  // fused defect halves
            return e.v.get(x, A + C);  // seam verticals, torn below
        }
        return !e.h.get(y + B - C, 2 * A + B + C + 1 - x);
    };
    auto legalH = [&](int x, int y) {
        return nd.hasH(x, y) || (x == 0 && nd.contains(1, y)) ||
               (x == NW && nd.contains(NW, y));
    };
    auto legalV = [&](int x, int y) {
        return nd.hasV(x, y) || (y == NY && nd.contains(x, NY));
    };

    for (int u = 0; u <= NW; ++u)
        for (int v = nd.yMin(); v <= NY; ++v)
            if (legalH(u, v)) out.h.at(u, v) = Sv(v, K - u - 1);
    for (int u = 1; u <= NW; ++u)
        for (int v = nd.yMin(); v <= NY; ++v) {
            if (!legalV(u, v)) continue;
            int b = Sh(v, K - u);
            if (u >= B + C + 1) b = !b;  // arm columns of the target
            out.v.at(u, v) = b;
        }
    for (int m = 1; m <= B + C; ++m) {
        int b = e.v.get(A + B + m, A + C);
        out.dLow[m - 1] = !b;
        out.dHigh[m - 1] = b;
    }
    // The diagLow slots are held in dLow, not in the vertical grid; clear the
    // grid positions the loop above may have touched.
    for (int m = 1; m <= B + C; ++m) out.v.at(B + C + 1 - m, A + B) = 0;
    return out;
}

// Composite rotation on restricted ensembles. Partial: fails (by throwing)
// exactly when toDefective has no preimage. Unlike the defective-level
// rotation this composite is not a bijection and does not preserve family
// cardinality, because the defective <-> restricted correspondence is
// many-to-one.
inline Ensemble rotateEnsemble(const Ensemble& p) {
    return fromDefective(rotateDefective(toDefectiveOrThrow(p)));
}

// Exhaustive enumeration of defective domain-wall ensembles (test oracle;
// exponential, only for small domains). Routes the A+C entering paths and
// the B+C defect-started paths over edge-disjoint tracks: dLow slots absorb
// one entering path each, every other path exits through a north stub.
struct DefectiveEnumResult {
    long long count = 0;
    std::vector<DefEnsemble> ensembles;
};

inline DefectiveEnumResult enumerateDefectives(const Domain& d, bool store = false,
                                               long long cap = 100000000) {
    DefectiveEnumResult res;
    Grid<uint8_t> H(0, d.yMin(), d.width() + 1, d.yMax() - d.yMin() + 1);
    Grid<uint8_t> V(1, d.yMin() - 1, d.width(), d.yMax() - d.yMin() + 2);
    std::vector<uint8_t> dLow(d.diagCount(), 0), dHigh(d.diagCount(), 0);
    std::set<std::string> seen;
    const int W = d.width(), Y = d.yMax();
    const int D = d.diagCount(), nWest = d.A + d.C;

    auto dlegalH = [&](int x, int y) {
        return d.hasH(x, y) || x == 0 || (x == W && d.contains(W, y));
    };
    auto dlegalV = [&](int x, int y) { return d.hasV(x, y) || (y == Y && d.contains(x, Y)); };

    // starts[i].second: -slot means the path ends at diagLow(slot); 0 means it
    // exits through a north stub.
    std::vector<std::pair<Pt, int>> starts;

    auto emit = [&]() {
        DefEnsemble e(d);
        e.h = H;
        e.v = V;
        e.dLow = dLow;
        e.dHigh = dHigh;
        if (!validateDefective(e).ok) return;
        if (!seen.insert(serializeDefective(e)).second) return;
        if (++res.count > cap) throw std::runtime_error("defective enumeration cap exceeded");
        if (store) res.ensembles.push_back(e);
    };

    std::function<void(size_t, Pt)> route;
    auto advance = [&](size_t i) {
        size_t j = i + 1;
        if (j == starts.size()) {
            emit();
            return;
        }
        Pt s = starts[j].first;
        if (static_cast<int>(j) < nWest) {  // entering paths consume a west stub
            H.at(0, s.y) = 1;
            route(j, s);
            H.at(0, s.y) = 0;
        } else {
            route(j, s);
        }
    };
    route = [&](size_t i, Pt cur) {
        int id = starts[i].second;
        if (id == 0 && d.contains(cur) && cur.y == Y && !V.at(cur.x, cur.y)) {
            V.at(cur.x, cur.y) = 1;
            advance(i);
            V.at(cur.x, cur.y) = 0;
        }
        if (id < 0) {
            Pt end = d.diagLow(-id);
            if (cur.x == end.x && cur.y == end.y) {
                advance(i);
                return;  // a defect-ending path stops at its slot
            }
        }
        if (d.contains(Pt{cur.x, cur.y + 1}) && dlegalV(cur.x, cur.y) && !V.at(cur.x, cur.y)) {
            V.at(cur.x, cur.y) = 1;
            route(i, {cur.x, cur.y + 1});
            V.at(cur.x, cur.y) = 0;
        }
        if (d.contains(Pt{cur.x + 1, cur.y}) && dlegalH(cur.x, cur.y) && !H.at(cur.x, cur.y)) {
            H.at(cur.x, cur.y) = 1;
            route(i, {cur.x + 1, cur.y});
            H.at(cur.x, cur.y) = 0;
        }
    };

    std::vector<int> slots;
    std::vector<int> pick;
    std::function<void(size_t, unsigned)> choose = [&](size_t k, unsigned usedMask) {
        if (k == slots.size()) {
            starts.clear();
            for (int i = 0; i < nWest; ++i) {
                int sl = 0;
                for (size_t t = 0; t < slots.size(); ++t)
                    if (pick[t] == i) sl = slots[t];
                starts.push_back({Pt{1, i + 1}, sl ? -sl : 0});
            }
            for (int m = 1; m <= D; ++m)
                if (dHigh[m - 1]) starts.push_back({d.diagHigh(m), 0});
            if (starts.empty()) {
                emit();
                return;
            }
            Pt s = starts[0].first;
            H.at(0, s.y) = 1;
            route(0, s);
            H.at(0, s.y) = 0;
            return;
        }
        for (int i = 0; i < nWest; ++i)
            if (!(usedMask >> i & 1)) {
                pick[k] = i;
                choose(k + 1, usedMask | (1u << i));
            }
    };

    for (unsigned mask = 0; mask < (1u << D); ++mask) {
        if (__builtin_popcount(mask) != d.A) continue;
        for (int m = 1; m <= D; ++m) {
            dLow[m - 1] = (mask >> (m - 1)) & 1;
            dHigh[m - 1] = !dLow[m - 1];
        }
        slots.clear();
        for (int m = 1; m <= D; ++m)
            if (dLow[m - 1]) slots.push_back(m);
        pick.assign(slots.size(), 0);
        choose(0, 0);
    }
    return res;
}

}  // namespace sixv
