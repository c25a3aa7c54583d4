#pragma once

#include "sigspec/complex_matrix.hpp"
#include "sigspec/pauli.hpp"

#include <vector>

namespace sigspec {

// Rank-K code subspace represented by a D x K column-orthonormal frame Psi,
// D = 2^n. The projector is P = Psi Psi^dag.
struct CodeFrame {
    int n = 0;
    ComplexMatrix psi;

    int dim() const { return psi.rows(); }
    int K() const { return psi.cols(); }
    ComplexMatrix projector() const;
    double orthonormality_defect() const;  // ||Psi^dag Psi - I||_F
};

CodeFrame frame_from_columns(int n, const std::vector<std::vector<cxd>>& columns);

// Subspace distance ||P_a - P_b||_F.
double projector_distance(const CodeFrame& a, const CodeFrame& b);

// M_F = Psi^dag F Psi.
ComplexMatrix compression_matrix(const CodeFrame& frame, const PauliOperator& op);

// Scalar compression coefficient tr(M_F)/K (real part; the imaginary part of
// the trace vanishes for Hermitian F).
double compression_coefficient(const CodeFrame& frame, const PauliOperator& op);

// Sum over the family of ||M_F - kbar_F I||_F^2; zero iff the frame detects
// every member.
double kl_residual(const CodeFrame& frame, const ErrorFamily& family);

struct SignatureVector {
    std::vector<double> lambdas;
    double lambda_star = 0.0;
};

SignatureVector signature(const CodeFrame& frame, const ErrorFamily& tuple);

struct DetectionReport {
    bool accepted = false;
    double kl_residual = 0.0;
    double orthonormality = 0.0;
    SignatureVector sig;
};

inline constexpr double kDefaultEpsKl = 1e-10;
inline constexpr double kFrameOrthTol = 1e-9;

DetectionReport validate(const CodeFrame& frame, const ErrorFamily& family,
                         double eps_kl = kDefaultEpsKl);
DetectionReport validate(const CodeFrame& frame, const ErrorFamily& family,
                         const ErrorFamily& tuple, double eps_kl = kDefaultEpsKl);

// Frame spanning the common +1 eigenspace of a commuting Pauli set whose
// generated group excludes -I; rank 2^n / |group|.
CodeFrame stabilizer_projector(int n, const std::vector<PauliOperator>& generators);

}  // namespace sigspec
