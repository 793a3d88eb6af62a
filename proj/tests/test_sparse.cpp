#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "nlschwarz/gmres.hpp"
#include "nlschwarz/sparse.hpp"
#include "test_support.hpp"

using nlschwarz::LUFactorization;
using nlschwarz::SingularMatrixError;
using nlschwarz::SparseMatrix;
using nlschwarz::Vector;

static SparseMatrix from_dense(const Eigen::MatrixXd& A) {
    SparseMatrix S(static_cast<int>(A.rows()), static_cast<int>(A.cols()));
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            if (A(i, j) != 0.0) S.add(i, j, A(i, j));
    S.finalize();
    return S;
}

TEST_CASE("duplicate entries are summed on finalize") {
    SparseMatrix A(2, 2);
    A.add(0, 0, 1.0);
    A.add(0, 0, 2.5);
    A.add(1, 1, -1.0);
    A.finalize();
    CHECK(A.coeff(0, 0) == doctest::Approx(3.5));
    CHECK(A.coeff(1, 1) == doctest::Approx(-1.0));
    CHECK(A.coeff(0, 1) == 0.0);
}

TEST_CASE("add rejects out-of-range and non-finite input") {
    SparseMatrix A(2, 2);
    CHECK_THROWS_AS(A.add(2, 0, 1.0), std::out_of_range);
    CHECK_THROWS_AS(A.add(0, -1, 1.0), std::out_of_range);
    CHECK_THROWS_AS(A.add(0, 0, std::nan("")), std::invalid_argument);
    A.add(0, 0, 1.0);
    A.finalize();
    CHECK_THROWS_AS(A.add(1, 1, 1.0), std::logic_error);
}

TEST_CASE("queries before finalize are rejected") {
    SparseMatrix A(2, 2);
    A.add(0, 0, 1.0);
    CHECK_THROWS_AS(A.coeff(0, 0), std::logic_error);
    CHECK_THROWS_AS(A.multiply(Vector::Zero(2)), std::logic_error);
}

TEST_CASE("multiply matches dense product") {
    Eigen::MatrixXd D(3, 4);
    D << 1, 0, 2, 0, 0, -3, 0, 4, 5, 0, 0, 6;
    SparseMatrix A = from_dense(D);
    Vector x = testsupport::random_vector(4, 11);
    Vector y = A.multiply(x);
    CHECK((y - D * x).norm() == doctest::Approx(0.0).epsilon(1e-14));
    Vector z = A.multiply_transpose(testsupport::random_vector(3, 12));
    CHECK(z.size() == 4);
}

TEST_CASE("extract keeps values and respects index order") {
    Eigen::MatrixXd D(4, 4);
    D.setZero();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) D(i, j) = 10.0 * i + j + 1.0;
    SparseMatrix A = from_dense(D);
    SparseMatrix B = A.extract({3, 1}, {0, 2});
    CHECK(B.rows() == 2);
    CHECK(B.cols() == 2);
    CHECK(B.coeff(0, 0) == doctest::Approx(D(3, 0)));
    CHECK(B.coeff(0, 1) == doctest::Approx(D(3, 2)));
    CHECK(B.coeff(1, 0) == doctest::Approx(D(1, 0)));
    CHECK(B.coeff(1, 1) == doctest::Approx(D(1, 2)));
}

TEST_CASE("matrix market export round-trips through a reader") {
    SparseMatrix A(2, 3);
    A.add(0, 1, 2.25);
    A.add(1, 2, -0.5);
    A.finalize();
    std::string path = "mm_test_out.mtx";
    A.write_matrix_market(path);
    std::ifstream f(path);
    std::string header;
    std::getline(f, header);
    CHECK(header == "%%MatrixMarket matrix coordinate real general");
    int r, c, nnz;
    f >> r >> c >> nnz;
    CHECK(r == 2);
    CHECK(c == 3);
    CHECK(nnz == 2);
    double sum = 0.0;
    for (int k = 0; k < nnz; ++k) {
        int i, j;
        double v;
        f >> i >> j >> v;
        CHECK(i >= 1);
        CHECK(j >= 1);
        sum += v;
    }
    CHECK(sum == doctest::Approx(1.75));
    std::remove(path.c_str());
}

TEST_CASE("LU solves identity exactly") {
    Eigen::MatrixXd I = Eigen::MatrixXd::Identity(5, 5);
    LUFactorization lu(from_dense(I));
    Vector b = testsupport::random_vector(5, 3);
    CHECK((lu.solve(b) - b).norm() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("LU handles a matrix that needs pivoting") {
    Eigen::MatrixXd D(2, 2);
    D << 0, 1, 1, 0;
    LUFactorization lu(from_dense(D));
    Vector b(2);
    b << 3.0, 7.0;
    Vector x = lu.solve(b);
    CHECK(x(0) == doctest::Approx(7.0));
    CHECK(x(1) == doctest::Approx(3.0));
}

TEST_CASE("LU agrees with Gaussian elimination oracle") {
    const int n = 50;
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::MatrixXd D(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) D(i, j) = dist(rng);
    D += n * Eigen::MatrixXd::Identity(n, n);  // keep it well conditioned
    Vector b = testsupport::random_vector(n, 5);
    Vector x = LUFactorization(from_dense(D)).solve(b);
    Vector y = testsupport::dense_solve_ge(D, b);
    CHECK((x - y).norm() / y.norm() <= 1e-10);
}

TEST_CASE("LU reports the empty row of a singular matrix") {
    SparseMatrix A(3, 3);
    A.add(0, 0, 1.0);
    A.add(2, 2, 1.0);
    A.add(0, 1, 1.0);  // column 1 nonempty, row 1 empty
    A.finalize();
    bool threw = false;
    try {
        LUFactorization lu(A);
    } catch (const SingularMatrixError& e) {
        threw = true;
        CHECK(e.row() == 1);
    }
    CHECK(threw);
}

TEST_CASE("LU rejects a numerically singular matrix") {
    Eigen::MatrixXd D(2, 2);
    D << 1, 2, 2, 4;
    CHECK_THROWS_AS(LUFactorization lu(from_dense(D)), SingularMatrixError);
}

static nlschwarz::LinearOperator op_of(const Eigen::MatrixXd& D) {
    return [D](const Vector& v) -> Vector { return D * v; };
}

TEST_CASE("gmres solves the identity in one iteration") {
    Eigen::MatrixXd I = Eigen::MatrixXd::Identity(6, 6);
    Vector b = testsupport::random_vector(6, 21);
    Vector x = Vector::Zero(6);
    auto rep = nlschwarz::gmres(op_of(I), b, x, 1e-12, 10);
    CHECK(rep.converged);
    CHECK(rep.iterations == 1);
    CHECK((x - b).norm() <= 1e-12);
}

TEST_CASE("gmres needs at most k iterations for k distinct eigenvalues") {
    Eigen::MatrixXd D = Eigen::Vector3d(1.0, 2.0, 3.0).asDiagonal();
    Vector b(3);
    b << 1.0, 1.0, 1.0;
    Vector x = Vector::Zero(3);
    auto rep = nlschwarz::gmres(op_of(D), b, x, 1e-12, 10);
    CHECK(rep.converged);
    CHECK(rep.iterations <= 3);
    CHECK((D * x - b).norm() <= 1e-10);
}

TEST_CASE("gmres matches a dense solve on a random system") {
    const int n = 100;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::MatrixXd D(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) D(i, j) = dist(rng);
    D += n * Eigen::MatrixXd::Identity(n, n);
    Vector b = testsupport::random_vector(n, 8);
    Vector x = Vector::Zero(n);
    auto rep = nlschwarz::gmres(op_of(D), b, x, 1e-8, 200);
    CHECK(rep.converged);
    Vector y = testsupport::dense_solve_ge(D, b);
    CHECK((x - y).norm() / y.norm() <= 1e-6);
}

TEST_CASE("gmres residual history never increases") {
    const int n = 40;
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::MatrixXd D(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) D(i, j) = dist(rng);
    D += 5.0 * Eigen::MatrixXd::Identity(n, n);
    Vector b = testsupport::random_vector(n, 14);
    Vector x = Vector::Zero(n);
    auto rep = nlschwarz::gmres(op_of(D), b, x, 1e-10, n);
    for (size_t i = 1; i < rep.residual_history.size(); ++i)
        CHECK(rep.residual_history[i] <=
              rep.residual_history[i - 1] * (1.0 + 1e-12));
}

TEST_CASE("gmres drives residual to roundoff within n iterations") {
    const int n = 25;
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::MatrixXd D(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) D(i, j) = dist(rng);
    D += 2.0 * n * Eigen::MatrixXd::Identity(n, n);
    Vector b = testsupport::random_vector(n, 32);
    Vector x = Vector::Zero(n);
    auto rep = nlschwarz::gmres(op_of(D), b, x, 1e-13, n);
    CHECK(rep.relative_residual <= 1e-10);
}

TEST_CASE("gmres honours a nonzero initial guess") {
    Eigen::MatrixXd D(2, 2);
    D << 2, 0, 0, 3;
    Vector b(2);
    b << 2.0, 6.0;
    Vector x(2);
    x << 1.0, 2.0;  // already the solution
    auto rep = nlschwarz::gmres(op_of(D), b, x, 1e-10, 10);
    CHECK(rep.converged);
    CHECK(rep.iterations == 0);
}

TEST_CASE("gmres reports rather than exceeds the iteration cap") {
    const int n = 30;
    std::mt19937 rng(44);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::MatrixXd D(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) D(i, j) = dist(rng);
    D += 3.0 * Eigen::MatrixXd::Identity(n, n);
    Vector b = testsupport::random_vector(n, 45);
    Vector x = Vector::Zero(n);
    auto rep = nlschwarz::gmres(op_of(D), b, x, 1e-16, 5);
    CHECK_FALSE(rep.converged);
    CHECK(rep.iterations == 5);
    CHECK(rep.residual_history.size() == 6);
}

TEST_CASE("gmres with zero right-hand side returns zero") {
    Eigen::MatrixXd D = Eigen::MatrixXd::Identity(4, 4);
    Vector b = Vector::Zero(4);
    Vector x = testsupport::random_vector(4, 50);
    auto rep = nlschwarz::gmres(op_of(D), b, x, 1e-10, 10);
    CHECK(rep.converged);
    CHECK(x.norm() == 0.0);
}
