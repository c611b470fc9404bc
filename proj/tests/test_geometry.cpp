#include <catch2/catch_amalgamated.hpp>
#include <sixv/geometry.hpp>

using namespace sixv;

TEST_CASE("domain shape and containment") {
    Domain d(1, 2, 3);  // A=1 B=2 C=3
    CHECK(d.width() == 8);
    CHECK(d.yMax() == 7);
    CHECK(d.armTop() == 4);
    CHECK(d.armLeft() == 4);

    // lower block [1,8] x [1,4]
    CHECK(d.contains(1, 1));
    CHECK(d.contains(8, 4));
    CHECK_FALSE(d.contains(0, 1));
    CHECK_FALSE(d.contains(9, 1));
    // upper arm [4,8] x [5,7]
    CHECK(d.contains(4, 7));
    CHECK(d.contains(8, 5));
    CHECK_FALSE(d.contains(3, 5));
    CHECK_FALSE(d.contains(4, 8));
}

TEST_CASE("diagonal endpoints") {
    Domain d(1, 2, 3);
    CHECK(d.diagCount() == 3);
    CHECK(d.diagLow(1) == Pt{3, 4});
    CHECK(d.diagHigh(1) == Pt{4, 5});
    CHECK(d.diagLow(3) == Pt{1, 4});
    CHECK(d.diagHigh(3) == Pt{4, 7});
    // every diagonal joins two domain vertices
    for (int m = 1; m <= d.diagCount(); ++m) {
        CHECK(d.contains(d.diagLow(m)));
        CHECK(d.contains(d.diagHigh(m)));
    }
}

TEST_CASE("degenerate domains") {
    Domain sq(0, 0, 4);  // plain square, no arm, no diagonals
    CHECK(sq.width() == 4);
    CHECK(sq.yMax() == 4);
    CHECK(sq.diagCount() == 0);
    CHECK_FALSE(sq.hasTriangle());
    CHECK(sq.vertexCount() == 16);

    CHECK_THROWS_AS(Domain(1, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(Domain(-1, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(Domain(1, 1, 1, -1), std::invalid_argument);
}

TEST_CASE("augmented domain adds strip and east column") {
    Domain d(1, 1, 2, 2);
    CHECK(d.augmented);
    CHECK(d.width() == 6);  // W0=5 plus the extra column
    CHECK(d.yMin() == -2);
    CHECK(d.contains(6, 0));
    CHECK(d.contains(6, 5));   // extra column reaches the top
    CHECK(d.contains(1, -2));  // strip bottom
    CHECK_FALSE(d.contains(1, 5));

    // Psi = 0 collapses to the plain domain
    Domain d0(1, 1, 2, 0);
    CHECK_FALSE(d0.augmented);
    CHECK(d0 == Domain(1, 1, 2));
}

TEST_CASE("quadrant predicate") {
    Pt v{3, 3};
    CHECK(inQuadrant(Quadrant::NE, v, {3, 3}));  // closed quadrants
    CHECK(inQuadrant(Quadrant::NE, v, {5, 4}));
    CHECK(inQuadrant(Quadrant::NW, v, {1, 7}));
    CHECK(inQuadrant(Quadrant::SE, v, {9, 0}));
    CHECK(inQuadrant(Quadrant::SW, v, {0, 0}));
    CHECK_FALSE(inQuadrant(Quadrant::NE, v, {2, 5}));
    CHECK_FALSE(inQuadrant(Quadrant::SW, v, {4, 2}));
}

TEST_CASE("faces and Euler characteristic") {
    for (Domain d : {Domain(1, 2, 3), Domain(0, 0, 4), Domain(2, 1, 1), Domain(1, 1, 1, 2)}) {
        auto fs = interiorFaces(d);
        long long sq = 0, tz = 0, tri = 0;
        for (const Face& f : fs) {
            if (f.kind == Face::Square) ++sq;
            if (f.kind == Face::Trapezoid) ++tz;
            if (f.kind == Face::Triangle) ++tri;
        }
        CHECK(tz == std::max(0, d.diagCount() - 1));
        CHECK(tri == (d.hasTriangle() ? 1 : 0));
        CHECK(eulerOk(d));
    }
}
