#pragma once

// Test-only reference computations, kept independent of the library's own
// algorithms: closed-form eigenvalue roots, dense commutators, and direct
// Knill-Laflamme evaluation on dense projectors.

#include "sigspec/codespace.hpp"
#include "sigspec/complex_matrix.hpp"
#include "sigspec/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracles {

using sigspec::ComplexMatrix;
using sigspec::cxd;

// Eigenvalues of a 2x2 Hermitian matrix from the characteristic polynomial.
inline std::vector<double> herm2_eigenvalues(const ComplexMatrix& m) {
    const double a = m(0, 0).real(), d = m(1, 1).real();
    const double off = std::abs(m(0, 1));
    const double tr = a + d;
    const double disc = std::sqrt((a - d) * (a - d) / 4.0 + off * off);
    return {tr / 2.0 - disc, tr / 2.0 + disc};
}

// Eigenvalues of a 3x3 Hermitian matrix via the trigonometric solution of the
// depressed characteristic cubic.
inline std::vector<double> herm3_eigenvalues(const ComplexMatrix& m) {
    const double q = (m(0, 0).real() + m(1, 1).real() + m(2, 2).real()) / 3.0;
    ComplexMatrix b = m;
    for (int i = 0; i < 3; ++i) b(i, i) -= q;
    double p2 = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) p2 += std::norm(b(i, j));
    const double p = std::sqrt(p2 / 6.0);
    if (p < 1e-300) return {q, q, q};
    ComplexMatrix c = b;
    c *= cxd(1.0 / p, 0.0);
    // det of the scaled matrix
    const cxd det = c(0, 0) * (c(1, 1) * c(2, 2) - c(1, 2) * c(2, 1)) -
                    c(0, 1) * (c(1, 0) * c(2, 2) - c(1, 2) * c(2, 0)) +
                    c(0, 2) * (c(1, 0) * c(2, 1) - c(1, 1) * c(2, 0));
    double r = det.real() / 2.0;
    r = std::clamp(r, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    std::vector<double> ev = {q + 2 * p * std::cos(phi),
                              q + 2 * p * std::cos(phi + 2.0 * M_PI / 3.0),
                              q + 2 * p * std::cos(phi + 4.0 * M_PI / 3.0)};
    std::sort(ev.begin(), ev.end());
    return ev;
}

// Frobenius norm of the dense commutator [A, B].
inline double commutator_norm(const sigspec::PauliOperator& a, const sigspec::PauliOperator& b) {
    const ComplexMatrix da = sigspec::dense_matrix(a);
    const ComplexMatrix db = sigspec::dense_matrix(b);
    return (da * db - db * da).frobenius_norm();
}

// Direct dense evaluation of the detection conditions: max over the family of
// ||P F P - kappa P||_F with P = Psi Psi^dag.
inline double dense_kl_defect(const sigspec::CodeFrame& frame, const sigspec::ErrorFamily& fam) {
    const ComplexMatrix p = frame.projector();
    double worst = 0.0;
    for (const auto& op : fam.members) {
        const ComplexMatrix f = sigspec::dense_matrix(op);
        const ComplexMatrix pfp = p * f * p;
        const double kappa = (p * f).trace().real() / frame.K();
        ComplexMatrix diff = pfp;
        ComplexMatrix kp = p;
        kp *= cxd(kappa, 0.0);
        diff -= kp;
        worst = std::max(worst, diff.frobenius_norm());
    }
    return worst;
}

}  // namespace oracles
