#include "sigspec/complex_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace sigspec {

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

ComplexMatrix ComplexMatrix::conj() const {
    ComplexMatrix r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(i, j) = std::conj((*this)(i, j));
    return r;
}

cxd ComplexMatrix::trace() const {
    cxd t = 0.0;
    const int n = rows_ < cols_ ? rows_ : cols_;
    for (int i = 0; i < n; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cxd& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double s = 0.0;
    for (const cxd& v : data_) s = std::max(s, std::abs(v));
    return s;
}

ComplexMatrix ComplexMatrix::block(int row0, int col0, int nrows, int ncols) const {
    ComplexMatrix r(nrows, ncols);
    for (int i = 0; i < nrows; ++i)
        for (int j = 0; j < ncols; ++j) r(i, j) = (*this)(row0 + i, col0 + j);
    return r;
}

void ComplexMatrix::set_block(int row0, int col0, const ComplexMatrix& b) {
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) (*this)(row0 + i, col0 + j) = b(i, j);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cxd s) {
    for (cxd& v : data_) v *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
    ComplexMatrix r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const cxd aik = a(i, k);
            if (aik == cxd{}) continue;
            const cxd* brow = b.row(k);
            cxd* rrow = r.row(i);
            for (int j = 0; j < b.cols(); ++j) rrow[j] += aik * brow[j];
        }
    }
    return r;
}

ComplexMatrix adjoint_times(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("adjoint_times: shape mismatch");
    ComplexMatrix r(a.cols(), b.cols());
    for (int k = 0; k < a.rows(); ++k) {
        const cxd* arow = a.row(k);
        const cxd* brow = b.row(k);
        for (int i = 0; i < a.cols(); ++i) {
            const cxd c = std::conj(arow[i]);
            if (c == cxd{}) continue;
            cxd* rrow = r.row(i);
            for (int j = 0; j < b.cols(); ++j) rrow[j] += c * brow[j];
        }
    }
    return r;
}

double hermiticity_defect(const ComplexMatrix& m) {
    double s = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) s += std::norm(m(i, j) - std::conj(m(j, i)));
    return std::sqrt(s);
}

ComplexMatrix hcat(const std::vector<ComplexMatrix>& parts) {
    if (parts.empty()) return {};
    int cols = 0;
    for (const auto& p : parts) cols += p.cols();
    ComplexMatrix r(parts.front().rows(), cols);
    int at = 0;
    for (const auto& p : parts) {
        r.set_block(0, at, p);
        at += p.cols();
    }
    return r;
}

}  // namespace sigspec
