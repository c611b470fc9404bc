#pragma once
// Glauber dynamics on restricted path ensembles, monotone coupled chains, and
// exact uniform sampling via monotone coupling-from-the-past.
//
// The chain picks a uniformly random quadrilateral face and a uniformly random
// direction at each event (the jump chain of two unit-rate exponential clocks
// per face).  An up-switch replaces the bottom+right boundary of a face by its
// left+top boundary, moving one path weakly northwest; a down-switch is the
// inverse.  The triangular face never carries a clock, so the number of paths
// crossing the defect line is conserved.

#include <sixv/ensemble.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <vector>

namespace sixv {

// --- deterministic clock stream ----------------------------------------------

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct ClockEvent {
    size_t face;  // index into the quadrilateral face list
    bool up;      // true = upwards switch (toward NW), false = downwards
};

// Stateless stream: event(i) depends only on (seed, i), so a suffix of the
// stream can be replayed exactly (required by coupling-from-the-past).
struct ClockStream {
    uint64_t seed = 0;

    explicit ClockStream(uint64_t s = 0) : seed(s) {}

    ClockEvent at(uint64_t index, size_t nFaces) const {
        uint64_t r = splitmix64(seed ^ splitmix64(index));
        return {static_cast<size_t>((r >> 1) % nFaces), (r & 1) != 0};
    }
};

// Quadrilateral faces of the domain, in a fixed deterministic order.  The
// triangular face is excluded: it is never assigned a clock.
inline std::vector<Face> clockFaces(const Domain& d) {
    std::vector<Face> out;
    for (const Face& f : interiorFaces(d))
        if (f.kind != Face::Triangle) out.push_back(f);
    return out;
}

// --- switching operations -----------------------------------------------------

// Apply the switching operation in the given direction to one face.  Returns
// true if the arrow pattern matched and the edges were flipped, false if the
// move was a no-op (pattern absent, or face not contained in this domain --
// the latter occurs when a shared clock is drawn over a larger domain's faces
// during a coupled run).
inline bool switchFace(Ensemble& e, const Face& f, bool up) {
    const Domain& d = e.dom;
    if (f.kind == Face::Triangle)
        throw std::invalid_argument("switchFace: triangular face carries no clock");

    if (f.kind == Face::Square) {
        int x = f.sw.x, y = f.sw.y;
        if (!d.contains(x, y) || !d.contains(x + 1, y) || !d.contains(x, y + 1) ||
            !d.contains(x + 1, y + 1))
            return false;
        uint8_t& bottom = e.h.at(x, y);
        uint8_t& right = e.v.at(x + 1, y);
        uint8_t& left = e.v.at(x, y);
        uint8_t& top = e.h.at(x, y + 1);
        if (up) {
            if (!(bottom && right && !left && !top)) return false;
        } else {
            if (!(left && top && !bottom && !right)) return false;
        }
        bottom ^= 1;
        right ^= 1;
        left ^= 1;
        top ^= 1;
        return true;
    }

    // Trapezoid between diagonals m and m+1.  The two routes joining the SW
    // corner (A+B-m, A+C) to the NE corner (A+B+1, A+C+m+1) are: the long way
    // east + diagonal m + north, or directly along diagonal m+1.  Up switches
    // long -> short (the path loses its easternmost excursion).
    int m = f.m;
    if (m < 1 || m + 1 > d.diagCount()) return false;
    uint8_t& he = e.h.at(d.A + d.B - m, d.armTop());
    uint8_t& lo = e.d[static_cast<size_t>(m) - 1];
    uint8_t& ve = e.v.at(d.armLeft(), d.armTop() + m);
    uint8_t& hi = e.d[static_cast<size_t>(m)];
    if (up) {
        if (!(he && lo && ve && !hi)) return false;
    } else {
        if (!(hi && !he && !lo && !ve)) return false;
    }
    he ^= 1;
    lo ^= 1;
    ve ^= 1;
    hi ^= 1;
    return true;
}

// --- single-chain dynamics ----------------------------------------------------

struct ChainState {
    Ensemble ens;
    uint64_t step = 0;  // number of events consumed so far
};

// Apply nEvents clock events to the chain, reading the stream starting at the
// chain's current step counter.  Faces are drawn from `faces` (normally
// clockFaces(ens.dom)).
inline void run(ChainState& st, uint64_t nEvents, const ClockStream& clock,
                const std::vector<Face>& faces) {
    for (uint64_t i = 0; i < nEvents; ++i) {
        ClockEvent ev = clock.at(st.step++, faces.size());
        switchFace(st.ens, faces[ev.face], ev.up);
    }
}

inline void run(ChainState& st, uint64_t nEvents, const ClockStream& clock) {
    run(st, nEvents, clock, clockFaces(st.ens.dom));
}

// Default burn-in and sample spacing for approximate (Glauber) sampling.
inline uint64_t defaultBurnIn(size_t nFaces) {
    if (nFaces < 2) return 0;
    double f = static_cast<double>(nFaces);
    return static_cast<uint64_t>(std::ceil(20.0 * f * std::log(f)));
}
inline uint64_t defaultSpacing(size_t nFaces) { return nFaces ? nFaces : 1; }

// --- coupled chains -----------------------------------------------------------

struct MonotonicityViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Run two chains under one shared clock stream, checking an order predicate
// after every event.  The face list may come from either domain (use the
// larger one when the chains live on nested domains); a face absent from a
// chain's domain is a no-op for that chain.  Throws MonotonicityViolation the
// first time the predicate fails.
inline void coupledRun(ChainState& low, ChainState& high, uint64_t nEvents,
                       const ClockStream& clock, const std::vector<Face>& faces,
                       const std::function<bool(const Ensemble&, const Ensemble&)>& ordered) {
    if (low.step != high.step)
        throw std::invalid_argument("coupledRun: chains out of sync");
    for (uint64_t i = 0; i < nEvents; ++i) {
        ClockEvent ev = clock.at(low.step, faces.size());
        ++low.step;
        ++high.step;
        switchFace(low.ens, faces[ev.face], ev.up);
        switchFace(high.ens, faces[ev.face], ev.up);
        if (!ordered(low.ens, high.ens))
            throw MonotonicityViolation("order violated after event " +
                                        std::to_string(low.step));
    }
}

// Convenience overload for same-domain chains ordered by the ensemble partial
// order (low <= high).
inline void coupledRun(ChainState& low, ChainState& high, uint64_t nEvents,
                       const ClockStream& clock) {
    auto le = [](const Ensemble& a, const Ensemble& b) {
        Order o = compare(a, b);
        return o == Order::Less || o == Order::Equal;
    };
    coupledRun(low, high, nEvents, clock, clockFaces(low.ens.dom), le);
}

// --- extremal ensembles -------------------------------------------------------

enum class Side { Min, Max };

struct InfeasibleBoundary : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// Route one path from its entrance to its exit through unclaimed edges by
// depth-first search with a direction preference (north-first builds the
// NW-most route, east-first the SE-most).  `diag` is the 1-based index of the
// diagonal this path must use (0 = must avoid all diagonals).  Failed vertices
// are memoised, so the search is linear in the domain size.
struct PathRouter {
    const Domain& d;
    Grid<uint8_t>& usedH;   // claimed horizontal edges
    Grid<uint8_t>& usedV;   // claimed vertical edges
    std::vector<uint8_t>& usedD;
    Pt exit;
    int diag = 0;
    bool northFirst = true;
    std::set<std::pair<Pt, bool>> dead;  // (vertex, crossed-defect-line flag)

    PathRouter(const Domain& dom, Grid<uint8_t>& uh, Grid<uint8_t>& uv,
               std::vector<uint8_t>& ud)
        : d(dom), usedH(uh), usedV(uv), usedD(ud) {}

    bool go(Pt p, bool crossed) {
        if (p == exit) return true;
        if (dead.count({p, crossed})) return false;
        // A path bound for diagonal m cannot recover once it has passed east
        // of the diagonal's lower endpoint or north of the defect line.
        if (diag && !crossed) {
            Pt lo = d.diagLow(diag);
            if (p.x > lo.x || p.y > lo.y) return false;
        }
        auto tryMove = [&](Pt q, uint8_t& claim, bool cr) {
            if (claim) return false;
            if (!(d.contains(q) || q == exit)) return false;
            claim = 1;
            if (go(q, cr)) return true;
            claim = 0;
            return false;
        };
        auto north = [&] {
            // Exit stubs leave the domain, but their edges are stored in the
            // grids; everything else must be a domain edge.
            Pt q{p.x, p.y + 1};
            return (d.hasV(p.x, p.y) || q == exit) && tryMove(q, e_v(p.x, p.y), crossed);
        };
        auto east = [&] {
            Pt q{p.x + 1, p.y};
            return (d.hasH(p.x, p.y) || q == exit) && tryMove(q, e_h(p.x, p.y), crossed);
        };
        auto takeDiag = [&] {
            if (!diag || crossed || p != d.diagLow(diag)) return false;
            return tryMove(d.diagHigh(diag), usedD[static_cast<size_t>(diag) - 1], true);
        };
        bool ok = northFirst ? (north() || takeDiag() || east())
                             : (east() || takeDiag() || north());
        if (!ok) dead.insert({p, crossed});
        return ok;
    }

    uint8_t& e_v(int x, int y) { return usedV.at(x, y); }
    uint8_t& e_h(int x, int y) { return usedH.at(x, y); }
};

}  // namespace detail

// Greedy extremal element of the family fixed by (domain, boundary): every
// path is pushed maximally northwest (Min) or southeast (Max) subject to
// non-crossing, the boundary data, and the r-restriction.  The greedy route is
// then polished by switching to a fixpoint, which guarantees local extremality;
// global extremality is certified empirically against exhaustive enumeration
// on small instances (see tests).
inline Ensemble extremalEnsemble(const Domain& d, const BoundaryData& bnd, Side side) {
    const int P = static_cast<int>(bnd.u.size());
    Ensemble e(d, bnd);

    // The r paths crossing the defect line are the last r (northwest-most)
    // ones; the k-th of them (from the bottom) takes diagonal k for the SE
    // extreme and diagonal B+k for the NW extreme.
    auto diagOf = [&](int i) {  // i = 1-based path index
        int fromTop = P - i;    // 0 for the NW-most path
        if (fromTop >= bnd.r) return 0;
        int k = bnd.r - fromTop;  // 1..r counted from the bottom user
        return side == Side::Max ? k : d.B + k;
    };

    // Route the anchor path first: the NW-most one for Min, SE-most for Max.
    std::vector<int> order(static_cast<size_t>(P));
    for (int i = 0; i < P; ++i)
        order[static_cast<size_t>(i)] = (side == Side::Min) ? P - i : i + 1;

    for (int idx : order) {
        detail::PathRouter r(d, e.h, e.v, e.d);
        r.exit = bnd.w[static_cast<size_t>(idx) - 1];
        r.diag = diagOf(idx);
        r.northFirst = (side == Side::Min);
        Pt u = bnd.u[static_cast<size_t>(idx) - 1];
        // Claim the western entrance stub and start at the first domain vertex.
        e.h.at(u.x, u.y) = 1;
        if (!r.go({u.x + 1, u.y}, false))
            throw InfeasibleBoundary("extremalEnsemble: no admissible route for path " +
                                     std::to_string(idx));
    }

    // Polish: apply up-switches (Min) or down-switches (Max) until none fires.
    std::vector<Face> faces = clockFaces(d);
    bool moved = true;
    while (moved) {
        moved = false;
        for (const Face& f : faces)
            if (switchFace(e, f, side == Side::Min)) moved = true;
    }

    ValidationReport rep = validate(e);
    if (!rep.ok)
        throw InfeasibleBoundary("extremalEnsemble: greedy construction invalid: " +
                                 rep.issues.front());
    return e;
}

// --- coupling from the past ---------------------------------------------------

// Exact uniform sample via the Propp--Wilson monotone sandwich.  Runs the
// extremal chains from time -T for T = 1, 2, 4, ... with the clock suffix
// reused across restarts, until they coalesce at time 0.  Throws
// BudgetExceeded if the total number of applied events would pass the budget;
// a partial sample is never returned.
inline Ensemble cftpSample(const Domain& d, const BoundaryData& bnd, uint64_t seed,
                           uint64_t budget = uint64_t{1} << 30,
                           uint64_t* eventsUsed = nullptr) {
    Ensemble lo0 = extremalEnsemble(d, bnd, Side::Min);
    Ensemble hi0 = extremalEnsemble(d, bnd, Side::Max);
    std::vector<Face> faces = clockFaces(d);
    ClockStream clock(seed);
    uint64_t total = 0;
    if (lo0 == hi0) {
        if (eventsUsed) *eventsUsed = 0;
        return lo0;
    }
    for (uint64_t T = 1;; T *= 2) {
        if (total + 2 * T > budget)
            throw BudgetExceeded("cftpSample: coalescence not reached within budget");
        Ensemble lo = lo0, hi = hi0;
        // Event at backward time -t is clock.at(t); apply t = T down to 1.
        for (uint64_t t = T; t >= 1; --t) {
            ClockEvent ev = clock.at(t, faces.size());
            switchFace(lo, faces[ev.face], ev.up);
            switchFace(hi, faces[ev.face], ev.up);
        }
        total += 2 * T;
        if (lo == hi) {
            if (eventsUsed) *eventsUsed = total;
            return lo;
        }
    }
}

}  // namespace sixv
