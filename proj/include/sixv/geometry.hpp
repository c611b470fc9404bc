#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sixv {

// Thrown when an operation would exceed its configured work budget
// (enumeration caps, coupling-from-the-past event budgets, and similar).
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Pt {
    int x = 0;
    int y = 0;
    friend bool operator==(Pt a, Pt b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(Pt a, Pt b) { return !(a == b); }
    friend bool operator<(Pt a, Pt b) {  // lexicographic, for ordered containers
        return a.y != b.y ? a.y < b.y : a.x < b.x;
    }
};

enum class Quadrant { NE, NW, SE, SW };

// Closed quadrant relative to v.
inline bool inQuadrant(Quadrant q, Pt v, Pt w) {
    switch (q) {
        case Quadrant::NE: return w.x >= v.x && w.y >= v.y;
        case Quadrant::NW: return w.x <= v.x && w.y >= v.y;
        case Quadrant::SE: return w.x >= v.x && w.y <= v.y;
        case Quadrant::SW: return w.x <= v.x && w.y <= v.y;
    }
    return false;
}

// Three-bundle domain T_{A,B,C}, optionally augmented below by a depth-Psi
// strip plus an extra east column. Vertices live on the integer lattice.
//
// Plain domain:
//   ([1, A+2B+C] x [1, A+C])  union  ([A+B+1, A+2B+C] x [1, 2A+B+C])
// m-th diagonal edge (m in [1, A+B]) joins (A+B-m+1, A+C) to (A+B+1, A+C+m).
//
// Augmented domain (Psi >= 1): the plain domain, plus
//   [1, A+2B+C+1] x [-Psi, 0]  and  {A+2B+C+1} x [1, 2A+B+C].
struct Domain {
    int A = 0, B = 0, C = 0;
    int Psi = 0;
    bool augmented = false;

    Domain() = default;
    Domain(int a, int b, int c) : A(a), B(b), C(c) { check(); }
    Domain(int a, int b, int c, int psi) : A(a), B(b), C(c), Psi(psi) {
        augmented = psi > 0;  // Psi = 0 collapses to the plain domain
        if (psi < 0) throw std::invalid_argument("Psi must be >= 0");
        check();
    }

    void check() const {
        if (C < 1) throw std::invalid_argument("C must be >= 1");
        if (A < 0 || B < 0) throw std::invalid_argument("A, B must be >= 0");
    }

    int width() const { return A + 2 * B + C + (augmented ? 1 : 0); }
    int yMin() const { return augmented ? -Psi : 1; }
    int yMax() const { return 2 * A + B + C; }
    int armTop() const { return A + C; }       // top row of the wide lower arm
    int armLeft() const { return A + B + 1; }  // leftmost column of the upper arm

    bool contains(int x, int y) const {
        int W0 = A + 2 * B + C;
        if (x >= 1 && x <= W0 && y >= 1 && y <= A + C) return true;
        if (x >= armLeft() && x <= W0 && y >= 1 && y <= yMax()) return true;
        if (augmented) {
            if (x >= 1 && x <= W0 + 1 && y >= -Psi && y <= 0) return true;
            if (x == W0 + 1 && y >= 1 && y <= yMax()) return true;
        }
        return false;
    }
    bool contains(Pt p) const { return contains(p.x, p.y); }

    long long vertexCount() const {
        long long n = 0;
        for (int x = 1; x <= width(); ++x)
            for (int y = yMin(); y <= yMax(); ++y)
                if (contains(x, y)) ++n;
        return n;
    }

    int diagCount() const { return A + B; }
    Pt diagLow(int m) const { return {A + B - m + 1, A + C}; }   // emits the arrow
    Pt diagHigh(int m) const { return {A + B + 1, A + C + m}; }  // receives it
    bool hasTriangle() const { return A + B >= 1; }

    // Straight lattice edges (both endpoints in the domain).
    bool hasH(int x, int y) const { return contains(x, y) && contains(x + 1, y); }
    bool hasV(int x, int y) const { return contains(x, y) && contains(x, y + 1); }

    friend bool operator==(const Domain& a, const Domain& b) {
        return a.A == b.A && a.B == b.B && a.C == b.C && a.Psi == b.Psi &&
               a.augmented == b.augmented;
    }
};

// Interior faces of the planar graph: unit squares, the trapezoids bounded by
// consecutive diagonal edges, and one triangle (never switched by dynamics).
struct Face {
    enum Kind : uint8_t { Square, Trapezoid, Triangle } kind = Square;
    // Square: sw = SW corner (x, y).  Trapezoid: m = lower diagonal index.
    Pt sw{};
    int m = 0;
};

inline std::vector<Face> interiorFaces(const Domain& d) {
    std::vector<Face> fs;
    for (int x = 1; x < d.width(); ++x)
        for (int y = d.yMin(); y < d.yMax(); ++y)
            if (d.contains(x, y) && d.contains(x + 1, y) && d.contains(x, y + 1) &&
                d.contains(x + 1, y + 1))
                fs.push_back({Face::Square, {x, y}, 0});
    for (int m = 1; m < d.diagCount(); ++m) fs.push_back({Face::Trapezoid, {}, m});
    if (d.hasTriangle()) fs.push_back({Face::Triangle, {}, 0});
    return fs;
}

inline long long edgeCount(const Domain& d) {
    long long n = d.diagCount();
    for (int x = 1; x <= d.width(); ++x)
        for (int y = d.yMin(); y <= d.yMax(); ++y) {
            if (d.hasH(x, y)) ++n;
            if (d.hasV(x, y)) ++n;
        }
    return n;
}

// V - E + F = 2 with the unbounded face included.
inline bool eulerOk(const Domain& d) {
    long long F = static_cast<long long>(interiorFaces(d).size()) + 1;
    return d.vertexCount() - edgeCount(d) + F == 2;
}

inline std::string descriptorJson(const Domain& d) {
    return "{\"A\": " + std::to_string(d.A) + ", \"B\": " + std::to_string(d.B) +
           ", \"C\": " + std::to_string(d.C) + ", \"Psi\": " + std::to_string(d.Psi) +
           "}";
}

}  // namespace sixv
