#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlschwarz {

using Vector = Eigen::VectorXd;

class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError(const std::string& what, int row = -1)
        : std::runtime_error(what), row_(row) {}
    // Offending row if it could be identified, otherwise -1.
    int row() const { return row_; }

private:
    int row_;
};

// Append-then-finalize sparse matrix. Entries accumulate as triplets and
// duplicates are summed on finalize(); all queries require a finalized matrix.
class SparseMatrix {
public:
    SparseMatrix() : rows_(0), cols_(0) {}
    SparseMatrix(int rows, int cols);

    void add(int row, int col, double value);
    void finalize();
    bool finalized() const { return finalized_; }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int nonzeros() const;

    double coeff(int row, int col) const;
    Vector multiply(const Vector& x) const;
    Vector multiply_transpose(const Vector& x) const;

    // Submatrix with the given rows/columns, in the given order.
    SparseMatrix extract(const std::vector<int>& rows,
                         const std::vector<int>& cols) const;

    const Eigen::SparseMatrix<double>& raw() const;

    void write_matrix_market(const std::string& path) const;

private:
    void require_finalized(const char* op) const;

    int rows_, cols_;
    bool finalized_ = false;
    std::vector<Eigen::Triplet<double>> pending_;
    Eigen::SparseMatrix<double> mat_;  // column-major CSC
};

class LUFactorization {
public:
    // Throws SingularMatrixError when the matrix is structurally or
    // numerically singular; empty rows/columns are reported by index.
    explicit LUFactorization(const SparseMatrix& A);

    Vector solve(const Vector& b) const;
    int rows() const { return rows_; }

private:
    int rows_;
    std::shared_ptr<Eigen::SparseLU<Eigen::SparseMatrix<double>>> lu_;
};

}  // namespace nlschwarz
