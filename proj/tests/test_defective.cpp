#include <catch2/catch_amalgamated.hpp>
#include <set>
#include <sixv/defective.hpp>
#include <sixv/exact.hpp>

using namespace sixv;

TEST_CASE("defective family counts are permutation-symmetric") {
    CHECK(enumerateDefectives(Domain(1, 0, 1)).count == 2);
    CHECK(enumerateDefectives(Domain(0, 1, 1)).count == 2);
    CHECK(enumerateDefectives(Domain(1, 1, 1)).count == 14);
    CHECK(enumerateDefectives(Domain(2, 1, 1)).count == 126);
    CHECK(enumerateDefectives(Domain(1, 2, 1)).count == 126);
    CHECK(enumerateDefectives(Domain(1, 1, 2)).count == 126);
}

TEST_CASE("every defective ensemble converts to a valid path ensemble") {
    for (Domain d : {Domain(1, 1, 1), Domain(1, 2, 1), Domain(2, 1, 1)}) {
        auto der = enumerateDefectives(d, true);
        std::set<std::string> images;
        for (const auto& de : der.ensembles) {
            Ensemble p = fromDefective(de);
            CHECK(validate(p).ok);
            images.insert(p.serialize());
        }
        auto fam = enumerateEnsembles(d);
        // documented facts: the map is onto for (1,1,1) but not injective;
        // for B = 2 it is not onto either (90 of 104 ensembles are hit)
        long long wantImage = (d.B == 2) ? 90 : fam.count.convert_to<long long>();
        CHECK(static_cast<long long>(images.size()) == wantImage);
    }
}

TEST_CASE("toDefective is a section of fromDefective where a preimage exists") {
    Domain d(1, 1, 1);
    EnumOptions eo;
    eo.store = true;
    auto fam = enumerateEnsembles(d, eo);
    for (const auto& p : fam.ensembles) {
        DefEnsemble de(d);
        REQUIRE(toDefective(p, de));  // onto for this family
        CHECK(validateDefective(de).ok);
        CHECK(fromDefective(de).serialize() == p.serialize());
    }
}

TEST_CASE("rotation is a bijection between defective families") {
    Domain d(1, 1, 1);
    auto der = enumerateDefectives(d, true);
    std::set<std::string> images;
    for (const auto& de : der.ensembles) {
        DefEnsemble r = rotateDefective(de);
        CHECK(validateDefective(r).ok);
        CHECK(r.dom == Domain(1, 1, 1));  // rotation target T_{B,C,A}
        images.insert(serializeDefective(r));
    }
    CHECK(static_cast<long long>(images.size()) == der.count);
}

TEST_CASE("rotation target family of an asymmetric instance") {
    Domain d(1, 0, 2);  // rotates onto T_{0,2,1}
    auto der = enumerateDefectives(d, true);
    std::set<std::string> images;
    for (const auto& de : der.ensembles) {
        DefEnsemble r = rotateDefective(de);
        CHECK(validateDefective(r).ok);
        CHECK(r.dom == Domain(0, 2, 1));
        images.insert(serializeDefective(r));
    }
    CHECK(static_cast<long long>(images.size()) == der.count);
    CHECK(der.count == enumerateDefectives(Domain(0, 2, 1)).count);
}
