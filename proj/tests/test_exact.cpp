#include <catch2/catch_amalgamated.hpp>
#include <sixv/exact.hpp>

using namespace sixv;

TEST_CASE("square-domain counts match the alternating-sign-matrix sequence") {
    long long want[] = {1, 2, 7, 42, 429};
    for (int C = 1; C <= 5; ++C) {
        auto r = enumerateEnsembles(Domain(0, 0, C));
        CHECK(r.count == want[C - 1]);
    }
}

TEST_CASE("three-bundle family counts") {
    CHECK(enumerateEnsembles(Domain(1, 1, 1)).count == 12);
    CHECK(enumerateEnsembles(Domain(2, 1, 1)).count == 98);
    CHECK(enumerateEnsembles(Domain(1, 1, 2)).count == 98);
    CHECK(enumerateEnsembles(Domain(1, 2, 1)).count == 104);
    CHECK(enumerateEnsembles(Domain(1, 0, 2)).count == 7);
}

TEST_CASE("augmented family counts") {
    CHECK(enumerateEnsembles(Domain(1, 1, 1, 1)).count == 310);
    CHECK(enumerateEnsembles(Domain(1, 1, 1, 2)).count == 706);
    CHECK(enumerateEnsembles(Domain(1, 1, 1, 3)).count == 1361);
}

TEST_CASE("exit histograms and exact pmf") {
    auto r = enumerateEnsembles(Domain(1, 1, 1));
    std::map<int, long long> want{{1, 2}, {2, 4}, {3, 4}, {4, 2}};
    CHECK(r.kHist == want);

    auto pmf = exactKPmf(r);
    BigRat s = 0;
    for (auto& [k, p] : pmf) s += p;
    CHECK(s == 1);
    CHECK(pmf[1] == BigRat(1, 6));
}

TEST_CASE("stored ensembles are valid and distinct") {
    EnumOptions eo;
    eo.store = true;
    auto r = enumerateEnsembles(Domain(1, 1, 1), eo);
    REQUIRE(r.ensembles.size() == 12);
    for (size_t i = 0; i < r.ensembles.size(); ++i) {
        CHECK(validate(r.ensembles[i]).ok);
        for (size_t j = i + 1; j < r.ensembles.size(); ++j)
            CHECK_FALSE(r.ensembles[i] == r.ensembles[j]);
    }
}

TEST_CASE("enumeration cap throws") {
    EnumOptions eo;
    eo.cap = 10;
    CHECK_THROWS(enumerateEnsembles(Domain(0, 0, 5), eo));
}
