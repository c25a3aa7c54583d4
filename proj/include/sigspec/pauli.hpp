#pragma once

#include "sigspec/complex_matrix.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sigspec {

// Hermitian n-qubit Pauli string in symplectic bit form. Site i corresponds
// to bit (n-1-i) of the masks, so site 1 is the leftmost letter of the label
// and the most significant bit of a computational basis index. A site with
// both x and z bits set carries Y. Only real signs are representable, so
// every value is Hermitian by construction.
struct PauliOperator {
    int n = 0;
    std::uint64_t x_bits = 0;
    std::uint64_t z_bits = 0;
    int sign = +1;

    int weight() const;
    bool is_identity() const { return (x_bits | z_bits) == 0; }
    std::string label() const;

    friend bool operator==(const PauliOperator&, const PauliOperator&) = default;
};

// Parse "[IXYZ]{n}" with an optional leading '-'.
PauliOperator parse_pauli(std::string_view label);
PauliOperator parse_pauli(std::string_view letters, int sign);

// Single-site factors placed at 1-based site index.
PauliOperator pauli_x(int n, int site);
PauliOperator pauli_y(int n, int site);
PauliOperator pauli_z(int n, int site);

bool commutes(const PauliOperator& a, const PauliOperator& b);

// Product a*b. Throws if the result carries an imaginary phase (such products
// are not Hermitian and are outside the represented set).
PauliOperator pauli_product(const PauliOperator& a, const PauliOperator& b);

inline constexpr int kDenseQubitCap = 12;

ComplexMatrix dense_matrix(const PauliOperator& op);

// out += op * in for `cols` column vectors of length 2^n stored row-major
// with stride `stride`.
void apply_pauli_add(const PauliOperator& op, const cxd* in, cxd* out, int cols, int stride);

// Expectation-style contraction <a|op|b> for column j of a and column k of b.
cxd pauli_sandwich(const PauliOperator& op, const ComplexMatrix& a, int j,
                   const ComplexMatrix& b, int k);

// Ordered tuple of distinct non-identity Hermitian Paulis; used both as the
// detectable set and as the signature tuple.
struct ErrorFamily {
    int n = 0;
    std::vector<PauliOperator> members;
    std::string label;

    int size() const { return static_cast<int>(members.size()); }
};

// All non-identity Paulis of weight <= d-1, canonical order.
ErrorFamily weight_bounded_family(int n, int d);
// Single-site X,Y,Z plus Z-type correlators up to body order r.
ErrorFamily asym_family(int n, int r);
// Single-site X,Y,Z plus two-body XX, ZZ, XZ, ZX.
ErrorFamily mix_family(int n);
ErrorFamily explicit_family(int n, std::vector<PauliOperator> members, std::string label);
ErrorFamily family_from_labels(const std::vector<std::string>& labels, std::string name = {});

// m distinct non-identity strings with sign +1, uniform without replacement,
// reproducible from seed.
ErrorFamily sample_tuple(int n, int m, std::uint64_t seed);

}  // namespace sigspec
