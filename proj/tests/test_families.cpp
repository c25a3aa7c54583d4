#include "doctest.h"

#include "sigspec/codespace.hpp"
#include "sigspec/families.hpp"
#include "sigspec/symmetry.hpp"

using namespace sigspec;

TEST_SUITE_BEGIN("families");

TEST_CASE("catalog enumerates the expected entries") {
    const auto& cat = family_catalog();
    CHECK(cat.size() >= 16);
    const FamilyCatalogEntry& c522 = catalog_entry("c522");
    REQUIRE(c522.params.size() == 1);
    CHECK(c522.params[0].hi == doctest::Approx((std::sqrt(6.0) - 1.0) / 5.0).epsilon(1e-14));
    CHECK(catalog_entry("mix52").family.size() == 55);
    CHECK_THROWS_AS(catalog_entry("nope"), std::invalid_argument);
}

TEST_CASE("oracle grid: measured lambda* matches the closed form") {
    for (const FamilyCatalogEntry& entry : family_catalog()) {
        for (const FamilyParams& p : entry.grid(20)) {
            CAPTURE(entry.id);
            CodeFrame frame = entry.build(p);
            DetectionReport rep = validate(frame, entry.family, 1e-10);
            CHECK(rep.accepted);
            CHECK(rep.kl_residual <= 1e-10);
            const double want = entry.predicted_lambda(p);
            CHECK(std::abs(rep.sig.lambda_star - want) <= 1e-9);
        }
    }
}

TEST_CASE("symmetry tags") {
    for (const FamilyCatalogEntry& entry : family_catalog()) {
        if (entry.symmetry == SymmetryTag::none) continue;
        const FamilyParams mid = entry.grid(3).size() > 1 ? entry.grid(3)[1] : FamilyParams{};
        CodeFrame frame = entry.build(mid);
        if (entry.symmetry == SymmetryTag::cyclic)
            CHECK(symmetry_residual(frame, cyclic_group_generators(entry.n)) <= 1e-18);
        else if (entry.symmetry == SymmetryTag::permutation)
            CHECK(symmetry_residual(frame, permutation_group_generators(entry.n)) <= 1e-18);
        else if (entry.symmetry == SymmetryTag::noncyclic)
            CHECK(symmetry_residual(frame, cyclic_group_generators(entry.n)) > 1e-6);
    }
}

TEST_CASE("family endpoints land on the named stabilizers") {
    struct Pair {
        const char* family;
        FamilyParams params;
        const char* stab;
    };
    const std::vector<Pair> pairs = {
        {"n3_E1", {{"theta", 0.0}}, "s1_min"},
        {"n3_E1", {{"theta", M_PI / 2}}, "s1_max"},
        {"n3_E2", {{"u", 0.0}, {"v", 0.0}}, "s2_min"},
        {"n3_E2", {{"u", 1.0}, {"v", 1.0}}, "s2_max"},
        {"n3_E3", {{"t", 0.0}}, "s3_min"},
        {"n3_E3", {{"t", 1.0}}, "s3_max"},
    };
    for (const Pair& p : pairs) {
        CodeFrame fam = build_family_frame(p.family, p.params);
        CodeFrame stab = build_family_frame(p.stab, {});
        CAPTURE(p.family);
        CHECK(projector_distance(fam, stab) <= 1e-9);
    }
}

TEST_CASE("disconnected codes carry the stated signature vectors") {
    ErrorFamily tuple = disconnected_tuple();
    SignatureVector s1 = signature(build_family_frame("n3_disc_1", {}), tuple);
    CHECK(s1.lambdas[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s1.lambdas[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s1.lambdas[2] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s1.lambdas[3] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s1.lambdas[4] == doctest::Approx(0.0).epsilon(1e-12));

    SignatureVector s0 = signature(build_family_frame("n3_disc_0", {}), tuple);
    for (double v : s0.lambdas) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("out-of-domain parameters are rejected") {
    CHECK_THROWS_AS(build_family_frame("pi52_asym", {{"c0sq", 0.1}}), std::domain_error);
    CHECK_NOTHROW(build_family_frame("pi52_asym", {{"c0sq", 0.3}}));
    CHECK_THROWS_AS(build_family_frame("c522", {{"t", 0.4}}), std::domain_error);
    CHECK_THROWS_AS(predicted_lambda("asym52_cyc", {{"a0sq", 0.5}}), std::domain_error);
    CHECK_THROWS_AS(build_family_frame("n3_E1", {}), std::domain_error);
}

TEST_CASE("named predicted values") {
    CHECK(predicted_lambda("n3_E1", {{"theta", M_PI / 2}}) == doctest::Approx(1.0));
    CHECK(predicted_lambda("mix52", {{"x", 1.0}}) ==
          doctest::Approx(std::sqrt(1.25)).epsilon(1e-14));
    CHECK(predicted_lambda("pi52_asym", {{"c0sq", 3.0 / 8.0}}) ==
          doctest::Approx(std::sqrt(2.5)).epsilon(1e-14));
    CHECK(predicted_lambda("asym52_noncyc", {{"t", 0.0}}) ==
          doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    // the GHZ point of the E2 family
    CodeFrame ghz = build_family_frame("n3_E2", {{"u", 1.0}, {"v", 1.0}});
    SignatureVector sv = signature(ghz, three_qubit_family(2));
    CHECK(sv.lambda_star == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
}

TEST_SUITE_END();
