#include "doctest.h"

#include "sigspec/codespace.hpp"
#include "sigspec/families.hpp"
#include "sigspec/numerics.hpp"
#include "sigspec/rng.hpp"

#include "oracles.hpp"

using namespace sigspec;

TEST_SUITE_BEGIN("codespace");

namespace {

CodeFrame basis_frame(int n, const std::vector<int>& indices) {
    std::vector<std::vector<cxd>> cols;
    for (int idx : indices) {
        std::vector<cxd> c(std::size_t{1} << n, cxd{});
        c[idx] = 1.0;
        cols.push_back(std::move(c));
    }
    return frame_from_columns(n, cols);
}

}  // namespace

TEST_CASE("compression matrices on parity frames") {
    CodeFrame even = basis_frame(2, {0b00, 0b11});
    ComplexMatrix mzz = compression_matrix(even, parse_pauli("ZZ"));
    CHECK((mzz - ComplexMatrix::identity(2)).frobenius_norm() < 1e-14);
    CHECK(compression_matrix(even, parse_pauli("IX")).frobenius_norm() < 1e-14);

    CodeFrame anchored = basis_frame(2, {0b01, 0b11});
    ComplexMatrix mz = compression_matrix(anchored, parse_pauli("IZ"));
    ComplexMatrix minus = ComplexMatrix::identity(2);
    minus *= cxd(-1.0, 0.0);
    CHECK((mz - minus).frobenius_norm() < 1e-14);
}

TEST_CASE("kl_residual matches direct evaluation") {
    // stabilizer frame of <Y1, Y2Y3> detects {X_i, Z_i}
    CodeFrame s1min = stabilizer_projector(3, {parse_pauli("YII"), parse_pauli("IYY")});
    ErrorFamily e1 = three_qubit_family(1);
    CHECK(kl_residual(s1min, e1) < 1e-20);

    // a single-column frame always compresses scalars
    CodeFrame single = basis_frame(3, {0b000});
    CHECK(kl_residual(single, family_from_labels({"XII"})) < 1e-20);

    // span{|000>,|001>} against {Z_3}: diag(1,-1), kbar 0 -> residual 2
    CodeFrame pair = basis_frame(3, {0b000, 0b001});
    CHECK(kl_residual(pair, family_from_labels({"IIZ"})) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("kl_residual zero iff every compression is scalar") {
    Rng rng(606);
    for (int trial = 0; trial < 12; ++trial) {
        ErrorFamily fam = sample_tuple(3, 4, rng.next_u64());
        CodeFrame frame = basis_frame(3, {0b000, 0b011});
        const double res = kl_residual(frame, fam);
        const double dense = oracles::dense_kl_defect(frame, fam);
        if (res < 1e-12) CHECK(dense <= 1e-6 * std::sqrt(2.0));
        if (dense <= 1e-9) CHECK(res < 1e-12);
    }
}

TEST_CASE("signature values and invariances") {
    CodeFrame even = basis_frame(2, {0b00, 0b11});
    SignatureVector sv = signature(even, family_from_labels({"ZZ", "IX", "IY"}));
    CHECK(sv.lambdas[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sv.lambdas[1] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(sv.lambda_star == doctest::Approx(1.0).epsilon(1e-14));

    // GHZ frame against the two-body asymmetric pattern: lambda* = sqrt(3)
    CodeFrame ghz = basis_frame(3, {0b000, 0b111});
    ErrorFamily asym3 = family_from_labels(
        {"XII", "IXI", "IIX", "YII", "IYI", "IIY", "ZZI", "ZIZ", "IZZ"});
    SignatureVector sghz = signature(ghz, asym3);
    CHECK(sghz.lambda_star == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));

    // permutation invariance of the norm
    ErrorFamily permuted = family_from_labels(
        {"IZZ", "ZIZ", "ZZI", "IIY", "IYI", "YII", "IIX", "IXI", "XII"});
    CHECK(signature(ghz, permuted).lambda_star ==
          doctest::Approx(sghz.lambda_star).epsilon(1e-14));

    // sign flips leave the norm unchanged and flip the coordinate
    ErrorFamily flipped = family_from_labels(
        {"XII", "IXI", "IIX", "YII", "IYI", "IIY", "-ZZI", "ZIZ", "IZZ"});
    SignatureVector sflip = signature(ghz, flipped);
    CHECK(sflip.lambdas[6] == doctest::Approx(-sghz.lambdas[6]).epsilon(1e-14));
    CHECK(sflip.lambda_star == doctest::Approx(sghz.lambda_star).epsilon(1e-12));
}

TEST_CASE("validate thresholds") {
    CodeFrame even = basis_frame(2, {0b00, 0b11});
    ErrorFamily fam = family_from_labels({"ZZ", "IX", "IY"});
    DetectionReport ok = validate(even, fam, 1e-10);
    CHECK(ok.accepted);
    CHECK(ok.kl_residual < 1e-20);

    // perturbed frame: small but detectable residual is rejected at 1e-10
    CodeFrame bent = even;
    bent.psi(1, 0) = 1e-3;
    bent.psi = polar_orthonormalize(bent.psi);
    DetectionReport bad = validate(bent, fam, 1e-10);
    CHECK_FALSE(bad.accepted);
    CHECK(bad.kl_residual > 1e-10);

    CHECK_THROWS_AS(validate(even, fam, 0.0), std::invalid_argument);
}

TEST_CASE("stabilizer projectors") {
    CodeFrame zz = stabilizer_projector(3, {parse_pauli("ZZI"), parse_pauli("IZZ")});
    CHECK(zz.K() == 2);
    CodeFrame ghz = basis_frame(3, {0b000, 0b111});
    CHECK(projector_distance(zz, ghz) < 1e-10);

    CodeFrame four = stabilizer_projector(4, {parse_pauli("XXXX"), parse_pauli("ZZZZ")});
    CHECK(four.K() == 4);
    SignatureVector sv = signature(four, weight_bounded_family(4, 2));
    CHECK(sv.lambda_star < 1e-10);

    CodeFrame full = stabilizer_projector(2, {});
    CHECK(full.K() == 4);

    CHECK_THROWS_AS(stabilizer_projector(2, {parse_pauli("XI"), parse_pauli("ZI")}),
                    std::invalid_argument);
    CHECK_THROWS_AS(stabilizer_projector(2, {parse_pauli("XX"), parse_pauli("-XX")}),
                    std::invalid_argument);
}

TEST_CASE("stabilizer signature norms are integers squared") {
    for (const char* id : {"s1_min", "s1_max", "s2_min", "s2_max", "s3_min", "s3_max", "s4"}) {
        const FamilyCatalogEntry& entry = catalog_entry(id);
        CodeFrame frame = entry.build({});
        SignatureVector sv = signature(frame, entry.family);
        const double sq = sv.lambda_star * sv.lambda_star;
        CHECK(std::abs(sq - std::round(sq)) < 1e-9);
    }
}

TEST_SUITE_END();
