#include "sigspec/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sigspec {

namespace {

double offdiag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace

HermitianEig hermitian_eig(const ComplexMatrix& m) {
    const int n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("hermitian_eig: matrix not square");
    if (n > kEigMaxDim) throw std::invalid_argument("hermitian_eig: dimension exceeds cap");
    const double scale = m.frobenius_norm();
    if (hermiticity_defect(m) > kEigHermTol * std::max(1.0, scale))
        throw std::invalid_argument("hermitian_eig: matrix not Hermitian within tolerance");

    ComplexMatrix a = m;
    // symmetrize exactly so rotations see a Hermitian matrix
    for (int i = 0; i < n; ++i) {
        a(i, i) = cxd(a(i, i).real(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            const cxd v = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = v;
            a(j, i) = std::conj(v);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double thresh = 1e-13 * std::max(scale, 1e-300);
    const int max_sweeps = 100;
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (offdiag_norm(a) <= thresh) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cxd apq = a(p, q);
                const double absapq = std::abs(apq);
                if (absapq <= 1e-300) continue;
                const cxd phase = apq / absapq;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * absapq);
                const double t = (tau >= 0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // U = [[c, s*phase], [-s*conj(phase), c]] zeroes the (p,q)
                // entry of U^dag A U; apply as A <- (A U), then A <- U^dag A.
                const cxd sp = s * phase;
                const cxd spc = s * std::conj(phase);
                for (int k = 0; k < n; ++k) {
                    const cxd akp = a(k, p);
                    const cxd akq = a(k, q);
                    a(k, p) = c * akp - spc * akq;
                    a(k, q) = sp * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const cxd apk = a(p, k);
                    const cxd aqk = a(q, k);
                    a(p, k) = c * apk - sp * aqk;
                    a(q, k) = spc * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const cxd vkp = v(k, p);
                    const cxd vkq = v(k, q);
                    v(k, p) = c * vkp - spc * vkq;
                    v(k, q) = sp * vkp + c * vkq;
                }
            }
        }
    }
    if (offdiag_norm(a) > std::max(thresh, 1e-11 * std::max(scale, 1.0)))
        throw std::runtime_error("hermitian_eig: no convergence within sweep cap");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    HermitianEig out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]).real();
        for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

ComplexMatrix inv_sqrt_psd(const ComplexMatrix& m) {
    HermitianEig eig = hermitian_eig(m);
    for (double w : eig.values)
        if (w < kPsdFloor)
            throw std::invalid_argument("inv_sqrt_psd: near-singular input");
    const int n = m.rows();
    ComplexMatrix r(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            cxd s = 0.0;
            for (int k = 0; k < n; ++k)
                s += eig.vectors(i, k) * std::conj(eig.vectors(j, k)) /
                     std::sqrt(eig.values[k]);
            r(i, j) = s;
        }
    }
    return r;
}

ComplexMatrix polar_orthonormalize(const ComplexMatrix& theta) {
    ComplexMatrix s = adjoint_times(theta, theta);
    HermitianEig eig = hermitian_eig(s);
    if (eig.values.front() < 1e-16)
        throw std::invalid_argument("polar_orthonormalize: rank-deficient input");
    const int k = s.rows();
    ComplexMatrix r(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            cxd acc = 0.0;
            for (int t = 0; t < k; ++t)
                acc += eig.vectors(i, t) * std::conj(eig.vectors(j, t)) /
                       std::sqrt(eig.values[t]);
            r(i, j) = acc;
        }
    return theta * r;
}

}  // namespace sigspec
