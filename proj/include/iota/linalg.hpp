#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "iota/errors.hpp"

namespace iota {

using Vector = std::vector<double>;

// Dense row-major real matrix. Small economies only; no sparse storage.
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(const Vector& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transposed() const;
    Vector apply(const Vector& v) const;           // M v
    Vector apply_transposed(const Vector& v) const; // M' v
    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix scaled(double s) const;

    Vector row_sums() const;
    Vector col_sums() const;
    double max_abs() const;
    bool all_nonnegative() const;
    bool all_finite() const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

struct EigenResult {
    double lambda = 0.0;
    Vector right;
    Vector left;
    std::size_t iterations = 0;
    double residual = 0.0;
};

inline constexpr double kDefaultEigenTol = 1e-12;
inline constexpr std::size_t kDefaultEigenMaxIter = 100000;

// Frobenius eigenvalue and positive right/left eigenvectors of a nonnegative
// square matrix. Iteration runs on the primitivity shift (M + I)/2 so that
// periodic matrices converge; lambda is reported for the original M.
// Eigenvectors are scaled so their largest entry equals 1.
EigenResult frobenius_eigen(const Matrix& m,
                            double tol = kDefaultEigenTol,
                            std::size_t max_iter = kDefaultEigenMaxIter);

// Dominant real eigenvalue by plain power iteration; entries of m may be of
// any sign (used for the Pasinetti matrix). Fails if the dominant eigenvalue
// is complex.
struct DominantEigen {
    double lambda = 0.0;
    Vector vec;
    std::size_t iterations = 0;
    double residual = 0.0;
};
DominantEigen dominant_eigen(const Matrix& m,
                             double tol = kDefaultEigenTol,
                             std::size_t max_iter = kDefaultEigenMaxIter);

// LU solve with partial pivoting. Pivot magnitudes below
// 1e-12 x (largest initial entry) trip SingularMatrix.
Vector solve_linear(const Matrix& m, const Vector& b);
Matrix invert(const Matrix& m);

// Determinant; returns 0 on exactly singular input instead of throwing.
double determinant(const Matrix& m);

// Determinants of the top-left k x k blocks, k = 1..n (Hawkins-Simon input).
Vector leading_principal_minors(const Matrix& m);

// True iff the digraph with edge i->j whenever m(i,j) > 0 is strongly
// connected. A 1x1 matrix counts as irreducible only with a positive entry.
bool is_irreducible(const Matrix& m);

// Vector helpers.
double infinity_norm(const Vector& v);
double dot(const Vector& a, const Vector& b);
Vector subtract(const Vector& a, const Vector& b);
Vector scale(const Vector& v, double s);

} // namespace iota
