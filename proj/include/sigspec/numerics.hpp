#pragma once

#include "sigspec/complex_matrix.hpp"

#include <vector>

namespace sigspec {

// Eigendecomposition of a Hermitian matrix: M = V diag(values) V^dag with
// values ascending and V unitary.
struct HermitianEig {
    std::vector<double> values;
    ComplexMatrix vectors;
};

inline constexpr int kEigMaxDim = 64;
inline constexpr double kEigHermTol = 1e-12;
inline constexpr double kPsdFloor = 1e-12;

// Cyclic Jacobi sweeps; deterministic rotation order, 100-sweep cap,
// off-diagonal threshold 1e-13 * ||M||_F.
HermitianEig hermitian_eig(const ComplexMatrix& m);

// M^{-1/2} for Hermitian positive definite M (eigenvalues >= kPsdFloor).
ComplexMatrix inv_sqrt_psd(const ComplexMatrix& m);

// Polar map theta -> theta (theta^dag theta)^{-1/2}. Requires full column
// rank (sigma_min >= 1e-8).
ComplexMatrix polar_orthonormalize(const ComplexMatrix& theta);

}  // namespace sigspec
