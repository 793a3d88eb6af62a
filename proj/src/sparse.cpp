#include "nlschwarz/sparse.hpp"

#include <cmath>
#include <fstream>
#include <unordered_map>

namespace nlschwarz {

SparseMatrix::SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0)
        throw std::invalid_argument("SparseMatrix: negative dimension");
}

void SparseMatrix::add(int row, int col, double value) {
    if (finalized_)
        throw std::logic_error("SparseMatrix::add after finalize");
    if (row < 0 || row >= rows_ || col < 0 || col >= cols_)
        throw std::out_of_range("SparseMatrix::add: index out of range");
    if (!std::isfinite(value))
        throw std::invalid_argument("SparseMatrix::add: non-finite value");
    pending_.emplace_back(row, col, value);
}

void SparseMatrix::finalize() {
    if (finalized_)
        throw std::logic_error("SparseMatrix::finalize called twice");
    mat_.resize(rows_, cols_);
    mat_.setFromTriplets(pending_.begin(), pending_.end());
    mat_.makeCompressed();
    pending_.clear();
    pending_.shrink_to_fit();
    finalized_ = true;
}

void SparseMatrix::require_finalized(const char* op) const {
    if (!finalized_)
        throw std::logic_error(std::string("SparseMatrix::") + op +
                               " before finalize");
}

int SparseMatrix::nonzeros() const {
    require_finalized("nonzeros");
    return static_cast<int>(mat_.nonZeros());
}

double SparseMatrix::coeff(int row, int col) const {
    require_finalized("coeff");
    return mat_.coeff(row, col);
}

Vector SparseMatrix::multiply(const Vector& x) const {
    require_finalized("multiply");
    if (x.size() != cols_)
        throw std::invalid_argument("SparseMatrix::multiply: size mismatch");
    return mat_ * x;
}

Vector SparseMatrix::multiply_transpose(const Vector& x) const {
    require_finalized("multiply_transpose");
    if (x.size() != rows_)
        throw std::invalid_argument(
            "SparseMatrix::multiply_transpose: size mismatch");
    return mat_.transpose() * x;
}

SparseMatrix SparseMatrix::extract(const std::vector<int>& rows,
                                   const std::vector<int>& cols) const {
    require_finalized("extract");
    std::vector<int> row_pos(rows_, -1);
    for (size_t i = 0; i < rows.size(); ++i) {
        int r = rows[i];
        if (r < 0 || r >= rows_)
            throw std::out_of_range("SparseMatrix::extract: row out of range");
        row_pos[r] = static_cast<int>(i);
    }
    SparseMatrix out(static_cast<int>(rows.size()),
                     static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) {
        int c = cols[j];
        if (c < 0 || c >= cols_)
            throw std::out_of_range("SparseMatrix::extract: col out of range");
        for (Eigen::SparseMatrix<double>::InnerIterator it(mat_, c); it; ++it) {
            int rp = row_pos[it.row()];
            if (rp >= 0) out.add(rp, static_cast<int>(j), it.value());
        }
    }
    out.finalize();
    return out;
}

const Eigen::SparseMatrix<double>& SparseMatrix::raw() const {
    require_finalized("raw");
    return mat_;
}

void SparseMatrix::write_matrix_market(const std::string& path) const {
    require_finalized("write_matrix_market");
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << "%%MatrixMarket matrix coordinate real general\n";
    f << rows_ << " " << cols_ << " " << mat_.nonZeros() << "\n";
    f.precision(17);
    for (int c = 0; c < mat_.outerSize(); ++c)
        for (Eigen::SparseMatrix<double>::InnerIterator it(mat_, c); it; ++it)
            f << it.row() + 1 << " " << it.col() + 1 << " " << it.value()
              << "\n";
}

LUFactorization::LUFactorization(const SparseMatrix& A) : rows_(A.rows()) {
    if (A.rows() != A.cols())
        throw std::invalid_argument("LUFactorization: matrix not square");
    const auto& m = A.raw();

    // Locate empty rows/columns up front; SparseLU's own diagnostics do not
    // say which unknown is the problem.
    std::vector<char> row_used(A.rows(), 0);
    for (int c = 0; c < m.outerSize(); ++c) {
        bool col_used = false;
        for (Eigen::SparseMatrix<double>::InnerIterator it(m, c); it; ++it) {
            if (it.value() != 0.0) {
                row_used[it.row()] = 1;
                col_used = true;
            }
        }
        if (!col_used)
            throw SingularMatrixError(
                "LUFactorization: column " + std::to_string(c) + " is empty",
                c);
    }
    for (int r = 0; r < A.rows(); ++r)
        if (!row_used[r])
            throw SingularMatrixError(
                "LUFactorization: row " + std::to_string(r) + " is empty", r);

    lu_ = std::make_shared<Eigen::SparseLU<Eigen::SparseMatrix<double>>>();
    lu_->compute(m);
    if (lu_->info() != Eigen::Success)
        throw SingularMatrixError("LUFactorization: " +
                                  lu_->lastErrorMessage());
}

Vector LUFactorization::solve(const Vector& b) const {
    if (b.size() != rows_)
        throw std::invalid_argument("LUFactorization::solve: size mismatch");
    Vector x = lu_->solve(b);
    if (!x.allFinite())
        throw SingularMatrixError("LUFactorization::solve: non-finite result");
    return x;
}

}  // namespace nlschwarz
