#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "ensemble.hpp"
#include "geometry.hpp"

namespace sixv {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

struct EnumOptions {
    long long cap = 10'000'000;  // hard ceiling on the number of ensembles
    bool store = false;          // keep the materialized ensembles
};

struct EnumResult {
    BigInt count = 0;
    std::map<int, long long> kHist;    // K statistic -> count
    std::map<int, long long> phiHist;  // Phi statistic (augmented domains)
    std::vector<Ensemble> ensembles;   // populated when store = true
};

namespace detail {

struct Enumerator {
    const Domain& dom;
    const BoundaryData& bnd;
    const EnumOptions& opt;
    EnumResult res;
    std::function<void(const std::vector<std::vector<Pt>>&)> cb;

    Grid<uint8_t> h, v;
    std::vector<uint8_t> d;
    std::vector<std::vector<Pt>> paths;  // raw vertex sequences, no interpolation
    // minimal x of the previously placed (more southeasterly) path per height
    std::vector<int> prevMinX;
    int diagsUsed = 0;

    explicit Enumerator(const Domain& dm, const BoundaryData& b, const EnumOptions& o)
        : dom(dm),
          bnd(b),
          opt(o),
          h(0, dm.yMin(), dm.width() + 1, dm.yMax() - dm.yMin() + 1),
          v(1, dm.yMin() - 1, dm.width(), dm.yMax() - dm.yMin() + 2),
          d(static_cast<size_t>(dm.diagCount()), 0),
          prevMinX(static_cast<size_t>(dm.yMax() - dm.yMin() + 3), 1 << 30) {}

    int& minX(int y) { return prevMinX[static_cast<size_t>(y - dom.yMin() + 1)]; }

    bool fits(int x, int y) {  // slice order against the previous path
        size_t i = static_cast<size_t>(y - dom.yMin() + 1);
        return i >= prevMinX.size() || x <= prevMinX[i];
    }

    void complete() {
        if (res.count >= opt.cap) throw BudgetExceeded("enumeration cap exceeded");
        res.count += 1;
        PathCurve p1;
        p1.pts = paths.front();
        res.kHist[Ensemble::crossingX(p1, 1)] += 1;
        if (dom.augmented) res.phiHist[Ensemble::crossingX(p1, 0)] += 1;
        if (opt.store || cb) {
            // drop the interpolated diagonal points kept for order checking
            std::vector<std::vector<Pt>> stripped(paths.size());
            for (size_t j = 0; j < paths.size(); ++j)
                for (const Pt& q : paths[j])
                    if (!(q.x >= 1 && q.x <= dom.A + dom.B && q.y > dom.armTop()))
                        stripped[j].push_back(q);
            if (opt.store)
                res.ensembles.push_back(ensembleFromPaths(dom, bnd, stripped));
            if (cb) cb(stripped);
        }
    }

    void placePath(size_t i) {
        paths.emplace_back();
        paths.back().push_back(bnd.u[i]);
        if (h.get(0, bnd.u[i].y)) throw std::logic_error("entrance reused");
        h.at(0, bnd.u[i].y) = 1;
        extend(i, {1, bnd.u[i].y}, true);
        h.at(0, bnd.u[i].y) = 0;
        paths.pop_back();
    }

    // p is the vertex just stepped onto; it may be off-domain (the exit site).
    void extend(size_t i, Pt p, bool usedEntrance) {
        (void)usedEntrance;
        if (!fits(p.x, p.y)) return;
        paths.back().push_back(p);
        if (!dom.contains(p)) {
            if (p == bnd.w[i]) finishPath(i);
        } else {
            int remaining = static_cast<int>(bnd.u.size() - i - 1);
            // east
            if (h.get(p.x, p.y) == 0 &&
                (dom.hasH(p.x, p.y) || Pt{p.x + 1, p.y} == bnd.w[i])) {
                h.at(p.x, p.y) = 1;
                extend(i, {p.x + 1, p.y}, false);
                h.at(p.x, p.y) = 0;
            }
            // north
            if (v.get(p.x, p.y) == 0 &&
                (dom.hasV(p.x, p.y) || Pt{p.x, p.y + 1} == bnd.w[i])) {
                v.at(p.x, p.y) = 1;
                extend(i, {p.x, p.y + 1}, false);
                v.at(p.x, p.y) = 0;
            }
            // diagonal
            int m = (p.y == dom.armTop() && p.x >= 1 && p.x <= dom.A + dom.B)
                        ? dom.A + dom.B - p.x + 1
                        : 0;
            if (m && !d[m - 1] && diagsUsed < bnd.r && noDiagYet() &&
                diagsUsed + 1 + remaining >= bnd.r && fitsDiag(m)) {
                d[m - 1] = 1;
                ++diagsUsed;
                Pt hi = dom.diagHigh(m);
                for (int t = 1; t < m; ++t)
                    paths.back().push_back({p.x + t, p.y + t});
                extend(i, hi, false);
                for (int t = 1; t < m; ++t) paths.back().pop_back();
                --diagsUsed;
                d[m - 1] = 0;
            }
        }
        paths.back().pop_back();
    }

    bool noDiagYet() {  // a monotone path can cross at most one diagonal anyway
        for (const Pt& q : paths.back())
            if (q.y > dom.armTop()) return false;
        return true;
    }

    bool fitsDiag(int m) {  // interpolated points must respect the slice order
        Pt lo = dom.diagLow(m);
        for (int t = 1; t <= m; ++t)
            if (!fits(lo.x + t, lo.y + t)) return false;
        return true;
    }

    void finishPath(size_t i) {
        int remaining = static_cast<int>(bnd.u.size()) - static_cast<int>(i) - 1;
        if (diagsUsed > bnd.r || diagsUsed + remaining < bnd.r) return;
        if (i + 1 == bnd.u.size()) {
            complete();
            return;
        }
        std::vector<int> saved = prevMinX;
        for (auto& t : prevMinX) t = 1 << 30;
        for (size_t j = 0; j + 1 < paths.back().size(); ++j) {
            const Pt& q = paths.back()[j];  // exclude the off-domain exit site
            int& m = minX(q.y);
            m = std::min(m, q.x);
        }
        placePath(i + 1);
        prevMinX = std::move(saved);
    }
};

}  // namespace detail

// Exhaustive enumeration of the restricted directed path ensembles on dm with
// the given boundary data, rightmost path outward, with slice-order pruning.
inline EnumResult enumerateEnsembles(
    const Domain& dm, const BoundaryData& bnd, const EnumOptions& opt = {},
    std::function<void(const std::vector<std::vector<Pt>>&)> cb = nullptr) {
    detail::Enumerator en(dm, bnd, opt);
    en.cb = std::move(cb);
    en.placePath(0);
    return en.res;
}

inline EnumResult enumerateEnsembles(const Domain& dm, const EnumOptions& opt = {}) {
    return enumerateEnsembles(dm, domainWallBoundary(dm), opt);
}

// Exact pmf of the K statistic from an enumeration.
inline std::map<int, BigRat> exactKPmf(const EnumResult& r) {
    std::map<int, BigRat> pmf;
    for (const auto& [k, n] : r.kHist) pmf[k] = BigRat(n) / BigRat(r.count);
    return pmf;
}

// Empirical K histogram over sampled ensembles.
inline std::map<int, long long> empiricalRefined(const std::vector<Ensemble>& samples) {
    std::map<int, long long> hist;
    for (const Ensemble& e : samples) hist[e.exitK()] += 1;
    return hist;
}

inline double totalVariation(const std::map<int, BigRat>& exact,
                             const std::map<int, long long>& emp, long long n) {
    double tv = 0;
    std::map<int, double> p;
    for (const auto& [k, q] : exact) p[k] = static_cast<double>(q);
    for (const auto& [k, c] : emp) p[k] -= static_cast<double>(c) / static_cast<double>(n);
    for (const auto& [k, dlt] : p) tv += std::abs(dlt);
    return tv / 2;
}

}  // namespace sixv
