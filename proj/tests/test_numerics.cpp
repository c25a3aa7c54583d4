#include "doctest.h"

#include "sigspec/numerics.hpp"
#include "sigspec/pauli.hpp"
#include "sigspec/rng.hpp"
#include "sigspec/symmetry.hpp"

#include "oracles.hpp"

using namespace sigspec;

TEST_SUITE_BEGIN("numerics");

namespace {

ComplexMatrix random_hermitian(int n, Rng& rng) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = rng.next_normal();
        for (int j = i + 1; j < n; ++j) {
            m(i, j) = cxd(rng.next_normal(), rng.next_normal());
            m(j, i) = std::conj(m(i, j));
        }
    }
    return m;
}

ComplexMatrix random_full_rank(int rows, int cols, Rng& rng) {
    ComplexMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = cxd(rng.next_normal(), rng.next_normal());
    return m;
}

double reconstruction_error(const ComplexMatrix& m, const HermitianEig& eig) {
    const int n = m.rows();
    ComplexMatrix lam(n, n);
    for (int i = 0; i < n; ++i) lam(i, i) = eig.values[i];
    return (m - eig.vectors * lam * eig.vectors.adjoint()).frobenius_norm();
}

}  // namespace

TEST_CASE("diagonal input is returned sorted") {
    ComplexMatrix m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    HermitianEig eig = hermitian_eig(m);
    CHECK(eig.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(eig.values[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("restrictions of two-qubit operators to the symmetric sector") {
    SectorBasis h0 = cyclic_sector_basis(2, 0);
    ComplexMatrix xr = restricted_operator(parse_pauli("IX"), h0);
    HermitianEig eig = hermitian_eig(xr);
    CHECK(eig.values[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(eig.values[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(eig.values[2] == doctest::Approx(1.0).epsilon(1e-12));

    ComplexMatrix zzr = restricted_operator(parse_pauli("ZZ"), h0);
    HermitianEig ezz = hermitian_eig(zzr);
    CHECK(ezz.values[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(ezz.values[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ezz.values[2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("agrees with characteristic-polynomial roots on 2x2 and 3x3") {
    Rng rng(1001);
    for (int trial = 0; trial < 200; ++trial) {
        ComplexMatrix m2 = random_hermitian(2, rng);
        HermitianEig e2 = hermitian_eig(m2);
        auto roots2 = oracles::herm2_eigenvalues(m2);
        CHECK(std::abs(e2.values[0] - roots2[0]) < 1e-10);
        CHECK(std::abs(e2.values[1] - roots2[1]) < 1e-10);

        ComplexMatrix m3 = random_hermitian(3, rng);
        HermitianEig e3 = hermitian_eig(m3);
        auto roots3 = oracles::herm3_eigenvalues(m3);
        for (int i = 0; i < 3; ++i) CHECK(std::abs(e3.values[i] - roots3[i]) < 1e-10);
    }
}

TEST_CASE("reconstruction and orthonormality invariants") {
    Rng rng(2002);
    for (int n : {4, 8, 16, 32}) {
        ComplexMatrix m = random_hermitian(n, rng);
        HermitianEig eig = hermitian_eig(m);
        CHECK(reconstruction_error(m, eig) <= 1e-10 * std::max(1.0, m.frobenius_norm()));
        ComplexMatrix g = adjoint_times(eig.vectors, eig.vectors);
        for (int i = 0; i < n; ++i) g(i, i) -= 1.0;
        CHECK(g.frobenius_norm() < 1e-12);
        for (int i = 0; i + 1 < n; ++i) CHECK(eig.values[i] <= eig.values[i + 1]);
    }
}

TEST_CASE("involutory Hermitian inputs have eigenvalues +-1") {
    Rng rng(3003);
    for (int trial = 0; trial < 10; ++trial) {
        ErrorFamily fam = sample_tuple(3, 4, rng.next_u64());
        for (const PauliOperator& op : fam.members) {
            HermitianEig eig = hermitian_eig(dense_matrix(op));
            for (double v : eig.values)
                CHECK(std::min(std::abs(v - 1.0), std::abs(v + 1.0)) < 1e-10);
        }
    }
}

TEST_CASE("rejects bad eigensolver inputs") {
    ComplexMatrix rect(2, 3);
    CHECK_THROWS_AS(hermitian_eig(rect), std::invalid_argument);
    ComplexMatrix skew(2, 2);
    skew(0, 1) = cxd(1.0, 0.0);
    skew(1, 0) = cxd(2.0, 0.0);
    CHECK_THROWS_AS(hermitian_eig(skew), std::invalid_argument);
}

TEST_CASE("inv_sqrt_psd basics") {
    ComplexMatrix eye = ComplexMatrix::identity(3);
    CHECK((inv_sqrt_psd(eye) - eye).frobenius_norm() < 1e-12);

    ComplexMatrix d(2, 2);
    d(0, 0) = 4.0;
    d(1, 1) = 1.0;
    ComplexMatrix r = inv_sqrt_psd(d);
    CHECK(r(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r(1, 1).real() == doctest::Approx(1.0).epsilon(1e-12));

    Rng rng(4004);
    ComplexMatrix a = random_full_rank(6, 6, rng);
    ComplexMatrix psd = adjoint_times(a, a);
    for (int i = 0; i < 6; ++i) psd(i, i) += 0.5;
    ComplexMatrix rr = inv_sqrt_psd(psd);
    ComplexMatrix probe = rr * psd * rr;
    for (int i = 0; i < 6; ++i) probe(i, i) -= 1.0;
    CHECK(probe.frobenius_norm() < 1e-10);

    ComplexMatrix sing(2, 2);
    sing(0, 0) = 1.0;
    CHECK_THROWS_AS(inv_sqrt_psd(sing), std::invalid_argument);
}

TEST_CASE("polar orthonormalization") {
    Rng rng(5005);
    ComplexMatrix theta = random_full_rank(32, 2, rng);
    ComplexMatrix psi = polar_orthonormalize(theta);
    ComplexMatrix g = adjoint_times(psi, psi);
    for (int i = 0; i < 2; ++i) g(i, i) -= 1.0;
    CHECK(g.frobenius_norm() < 1e-10);

    // fixed point and positive-scale invariance
    ComplexMatrix again = polar_orthonormalize(psi);
    CHECK((again - psi).frobenius_norm() < 1e-10);
    ComplexMatrix scaled = theta;
    scaled *= cxd(3.0, 0.0);
    CHECK((polar_orthonormalize(scaled) - psi).frobenius_norm() < 1e-10);

    // right-unitary equivariance: polar(theta U) = polar(theta) U
    ComplexMatrix u(2, 2);
    const double c = std::cos(0.7), s = std::sin(0.7);
    u(0, 0) = c;
    u(0, 1) = cxd(0, 1) * s;
    u(1, 0) = cxd(0, 1) * s;
    u(1, 1) = c;
    CHECK((polar_orthonormalize(theta * u) - psi * u).frobenius_norm() < 1e-10);

    ComplexMatrix deficient(4, 2);
    deficient(0, 0) = 1.0;
    deficient(0, 1) = 1.0;
    CHECK_THROWS_AS(polar_orthonormalize(deficient), std::invalid_argument);
}

TEST_SUITE_END();
