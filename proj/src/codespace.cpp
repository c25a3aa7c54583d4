#include "sigspec/codespace.hpp"

#include "sigspec/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace sigspec {

ComplexMatrix CodeFrame::projector() const {
    ComplexMatrix p(dim(), dim());
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j) {
            cxd s = 0.0;
            for (int k = 0; k < K(); ++k) s += psi(i, k) * std::conj(psi(j, k));
            p(i, j) = s;
        }
    return p;
}

double CodeFrame::orthonormality_defect() const {
    ComplexMatrix g = adjoint_times(psi, psi);
    for (int i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
    return g.frobenius_norm();
}

CodeFrame frame_from_columns(int n, const std::vector<std::vector<cxd>>& columns) {
    const int dim = 1 << n;
    CodeFrame f;
    f.n = n;
    f.psi = ComplexMatrix(dim, static_cast<int>(columns.size()));
    for (int j = 0; j < static_cast<int>(columns.size()); ++j) {
        if (static_cast<int>(columns[j].size()) != dim)
            throw std::invalid_argument("frame_from_columns: wrong column length");
        for (int i = 0; i < dim; ++i) f.psi(i, j) = columns[j][i];
    }
    return f;
}

double projector_distance(const CodeFrame& a, const CodeFrame& b) {
    return (a.projector() - b.projector()).frobenius_norm();
}

ComplexMatrix compression_matrix(const CodeFrame& frame, const PauliOperator& op) {
    if (op.n != frame.n)
        throw std::invalid_argument("compression_matrix: mismatched qubit counts");
    const int k = frame.K();
    ComplexMatrix m(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m(i, j) = pauli_sandwich(op, frame.psi, i, frame.psi, j);
    return m;
}

double compression_coefficient(const CodeFrame& frame, const PauliOperator& op) {
    return (compression_matrix(frame, op).trace() / static_cast<double>(frame.K())).real();
}

double kl_residual(const CodeFrame& frame, const ErrorFamily& family) {
    if (family.n != frame.n)
        throw std::invalid_argument("kl_residual: mismatched qubit counts");
    const int k = frame.K();
    double total = 0.0;
    for (const PauliOperator& op : family.members) {
        ComplexMatrix m = compression_matrix(frame, op);
        const double kbar = m.trace().real() / k;
        for (int i = 0; i < k; ++i) m(i, i) -= kbar;
        const double f = m.frobenius_norm();
        total += f * f;
    }
    return total;
}

SignatureVector signature(const CodeFrame& frame, const ErrorFamily& tuple) {
    SignatureVector sig;
    sig.lambdas.reserve(tuple.members.size());
    const double k = frame.K();
    double sq = 0.0;
    for (const PauliOperator& op : tuple.members) {
        cxd tr = 0.0;
        for (int i = 0; i < frame.K(); ++i)
            tr += pauli_sandwich(op, frame.psi, i, frame.psi, i);
        const cxd lam = tr / k;
        if (std::abs(lam.imag()) > 1e-10)
            throw std::runtime_error("signature: non-real expectation for Hermitian Pauli");
        sig.lambdas.push_back(lam.real());
        sq += lam.real() * lam.real();
    }
    sig.lambda_star = std::sqrt(sq);
    return sig;
}

DetectionReport validate(const CodeFrame& frame, const ErrorFamily& family, double eps_kl) {
    return validate(frame, family, family, eps_kl);
}

DetectionReport validate(const CodeFrame& frame, const ErrorFamily& family,
                         const ErrorFamily& tuple, double eps_kl) {
    if (eps_kl <= 0) throw std::invalid_argument("validate: eps_kl must be positive");
    DetectionReport rep;
    rep.orthonormality = frame.orthonormality_defect();
    rep.kl_residual = kl_residual(frame, family);
    rep.sig = signature(frame, tuple);
    rep.accepted = rep.kl_residual <= eps_kl && rep.orthonormality <= kFrameOrthTol;
    return rep;
}

CodeFrame stabilizer_projector(int n, const std::vector<PauliOperator>& generators) {
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (generators[i].n != n)
            throw std::invalid_argument("stabilizer_projector: mismatched qubit counts");
        for (std::size_t j = i + 1; j < generators.size(); ++j)
            if (!commutes(generators[i], generators[j]))
                throw std::invalid_argument("stabilizer_projector: generators must commute");
    }
    // enumerate the generated group
    std::vector<PauliOperator> group{PauliOperator{n, 0, 0, +1}};
    for (const PauliOperator& g : generators) {
        const std::size_t sz = group.size();
        for (std::size_t i = 0; i < sz; ++i) {
            PauliOperator prod = pauli_product(group[i], g);
            bool fresh = true;
            for (const PauliOperator& h : group) {
                if (h.x_bits == prod.x_bits && h.z_bits == prod.z_bits) {
                    if (h.sign != prod.sign)
                        throw std::invalid_argument("stabilizer_projector: group contains -I");
                    fresh = false;
                    break;
                }
            }
            if (fresh) group.push_back(prod);
        }
    }
    const int dim = 1 << n;
    ComplexMatrix avg(dim, dim);
    for (const PauliOperator& g : group) avg += dense_matrix(g);
    avg *= cxd(1.0 / static_cast<double>(group.size()), 0.0);

    HermitianEig eig = hermitian_eig(avg);
    int rank = 0;
    for (double w : eig.values)
        if (w > 0.5) ++rank;
    CodeFrame frame;
    frame.n = n;
    frame.psi = ComplexMatrix(dim, rank);
    int at = 0;
    for (int j = 0; j < dim; ++j) {
        if (eig.values[j] > 0.5) {
            for (int i = 0; i < dim; ++i) frame.psi(i, at) = eig.vectors(i, j);
            ++at;
        }
    }
    return frame;
}

}  // namespace sigspec
