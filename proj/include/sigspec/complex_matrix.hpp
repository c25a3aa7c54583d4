#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace sigspec {

using cxd = std::complex<double>;

// Dense row-major complex matrix sized for the small Hilbert spaces used
// throughout (D <= 64 for the eigensolver, D = 2^n <= 4096 for Pauli
// materialization).
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

    static ComplexMatrix identity(int n);
    static ComplexMatrix zero(int rows, int cols) { return ComplexMatrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cxd& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const cxd& operator()(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }

    cxd* data() { return data_.data(); }
    const cxd* data() const { return data_.data(); }

    // Pointer to the start of row i.
    cxd* row(int i) { return data_.data() + static_cast<std::size_t>(i) * cols_; }
    const cxd* row(int i) const { return data_.data() + static_cast<std::size_t>(i) * cols_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conj() const;

    cxd trace() const;
    double frobenius_norm() const;
    double max_abs() const;

    ComplexMatrix block(int row0, int col0, int nrows, int ncols) const;
    void set_block(int row0, int col0, const ComplexMatrix& b);
    ComplexMatrix column(int j) const { return block(0, j, rows_, 1); }

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cxd s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(cxd s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cxd> data_;
};

// A^dag * B without forming the adjoint.
ComplexMatrix adjoint_times(const ComplexMatrix& a, const ComplexMatrix& b);

// Hermiticity defect ||M - M^dag||_F.
double hermiticity_defect(const ComplexMatrix& m);

// Concatenate matrices with equal row counts side by side.
ComplexMatrix hcat(const std::vector<ComplexMatrix>& parts);

}  // namespace sigspec
