#include "iota/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

namespace iota {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (rows == 0 || cols == 0)
        throw DimensionMismatch("matrix dimensions must be at least 1x1");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : Matrix(rows.size(), rows.size() ? rows.begin()->size() : 0) {
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != cols_)
            throw DimensionMismatch("ragged initializer rows");
        std::size_t j = 0;
        for (double v : row)
            (*this)(i, j++) = v;
        ++i;
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(const Vector& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        m(i, i) = d[i];
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

Vector Matrix::apply(const Vector& v) const {
    if (v.size() != cols_)
        throw DimensionMismatch("matrix-vector dimension mismatch");
    Vector out(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < cols_; ++j)
            acc += (*this)(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

Vector Matrix::apply_transposed(const Vector& v) const {
    if (v.size() != rows_)
        throw DimensionMismatch("matrix-vector dimension mismatch");
    Vector out(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out[j] += (*this)(i, j) * v[i];
    return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw DimensionMismatch("matrix product dimension mismatch");
    Matrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const double a = (*this)(i, k);
            if (a == 0.0)
                continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                out(i, j) += a * rhs(k, j);
        }
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw DimensionMismatch("matrix sum dimension mismatch");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] += rhs.data_[i];
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw DimensionMismatch("matrix difference dimension mismatch");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] -= rhs.data_[i];
    return out;
}

Matrix Matrix::scaled(double s) const {
    Matrix out = *this;
    for (double& v : out.data_)
        v *= s;
    return out;
}

Vector Matrix::row_sums() const {
    Vector out(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out[i] += (*this)(i, j);
    return out;
}

Vector Matrix::col_sums() const {
    Vector out(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out[j] += (*this)(i, j);
    return out;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double v : data_)
        m = std::max(m, std::fabs(v));
    return m;
}

bool Matrix::all_nonnegative() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return v >= 0.0; });
}

bool Matrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

double infinity_norm(const Vector& v) {
    double m = 0.0;
    for (double x : v)
        m = std::max(m, std::fabs(x));
    return m;
}

double dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("dot product dimension mismatch");
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

Vector subtract(const Vector& a, const Vector& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("vector difference dimension mismatch");
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] - b[i];
    return out;
}

Vector scale(const Vector& v, double s) {
    Vector out(v);
    for (double& x : out)
        x *= s;
    return out;
}

namespace {

constexpr double kPivotRatio = 1e-12;

struct LuFactors {
    Matrix lu;
    std::vector<std::size_t> perm;
    int sign = 1;
};

LuFactors lu_decompose(const Matrix& m) {
    if (!m.square())
        throw NonSquare("LU decomposition requires a square matrix");
    const std::size_t n = m.rows();
    LuFactors f{m, std::vector<std::size_t>(n), 1};
    std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
    const double threshold = kPivotRatio * m.max_abs();
    if (m.max_abs() == 0.0)
        throw SingularMatrix("zero matrix is singular");

    Matrix& a = f.lu;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(a(i, k)) > std::fabs(a(p, k)))
                p = i;
        if (std::fabs(a(p, k)) <= threshold)
            throw SingularMatrix("pivot below singularity threshold");
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(p, j), a(k, j));
            std::swap(f.perm[p], f.perm[k]);
            f.sign = -f.sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double factor = a(i, k) / a(k, k);
            a(i, k) = factor;
            if (factor == 0.0)
                continue;
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) -= factor * a(k, j);
        }
    }
    return f;
}

Vector lu_solve(const LuFactors& f, const Vector& b) {
    const std::size_t n = f.lu.rows();
    if (b.size() != n)
        throw DimensionMismatch("right-hand side dimension mismatch");
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = b[f.perm[i]];
        for (std::size_t j = 0; j < i; ++j)
            acc -= f.lu(i, j) * y[j];
        y[i] = acc;
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double acc = y[ii];
        for (std::size_t j = ii + 1; j < n; ++j)
            acc -= f.lu(ii, j) * y[j];
        y[ii] = acc / f.lu(ii, ii);
    }
    return y;
}

} // namespace

Vector solve_linear(const Matrix& m, const Vector& b) {
    return lu_solve(lu_decompose(m), b);
}

Matrix invert(const Matrix& m) {
    const LuFactors f = lu_decompose(m);
    const std::size_t n = m.rows();
    Matrix inv(n, n);
    Vector e(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = 1.0;
        const Vector col = lu_solve(f, e);
        e[j] = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            inv(i, j) = col[i];
    }
    return inv;
}

double determinant(const Matrix& m) {
    if (!m.square())
        throw NonSquare("determinant requires a square matrix");
    Matrix a = m;
    const std::size_t n = a.rows();
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(a(i, k)) > std::fabs(a(p, k)))
                p = i;
        if (a(p, k) == 0.0)
            return 0.0;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(p, j), a(k, j));
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double factor = a(i, k) / a(k, k);
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) -= factor * a(k, j);
        }
    }
    return det;
}

Vector leading_principal_minors(const Matrix& m) {
    if (!m.square())
        throw NonSquare("leading principal minors require a square matrix");
    const std::size_t n = m.rows();
    Vector minors(n);
    for (std::size_t k = 1; k <= n; ++k) {
        Matrix block(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                block(i, j) = m(i, j);
        minors[k - 1] = determinant(block);
    }
    return minors;
}

namespace {

// BFS reachability over the positivity pattern.
std::vector<char> reachable(const Matrix& m, std::size_t start, bool reverse) {
    const std::size_t n = m.rows();
    std::vector<char> seen(n, 0);
    std::queue<std::size_t> frontier;
    seen[start] = 1;
    frontier.push(start);
    while (!frontier.empty()) {
        const std::size_t u = frontier.front();
        frontier.pop();
        for (std::size_t v = 0; v < n; ++v) {
            const double entry = reverse ? m(v, u) : m(u, v);
            if (entry > 0.0 && !seen[v]) {
                seen[v] = 1;
                frontier.push(v);
            }
        }
    }
    return seen;
}

} // namespace

bool is_irreducible(const Matrix& m) {
    if (!m.square())
        throw NonSquare("irreducibility requires a square matrix");
    if (!m.all_nonnegative())
        throw NegativeEntry("irreducibility test requires nonnegative entries");
    const std::size_t n = m.rows();
    if (n == 1)
        return m(0, 0) > 0.0;
    const auto fwd = reachable(m, 0, false);
    const auto bwd = reachable(m, 0, true);
    for (std::size_t i = 0; i < n; ++i)
        if (!fwd[i] || !bwd[i])
            return false;
    return true;
}

namespace {

struct PowerResult {
    double lambda = 0.0;
    Vector vec;
    std::size_t iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

// Power iteration on (M + I)/2; returns the eigenvalue of the original M.
PowerResult shifted_power(const Matrix& m, double tol, std::size_t max_iter) {
    const std::size_t n = m.rows();
    PowerResult r;
    Vector x(n, 1.0);
    for (std::size_t iter = 1; iter <= max_iter; ++iter) {
        Vector y = m.apply(x);
        for (std::size_t i = 0; i < n; ++i)
            y[i] = 0.5 * (y[i] + x[i]);
        const double norm = *std::max_element(y.begin(), y.end());
        const double lambda = 2.0 * norm / infinity_norm(x) - 1.0;
        for (std::size_t i = 0; i < n; ++i)
            x[i] = y[i] / norm;
        // Residual against the original matrix, x scaled to max entry 1.
        Vector mx = m.apply(x);
        double resid = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            resid = std::max(resid, std::fabs(mx[i] - lambda * x[i]));
        r.lambda = lambda;
        r.iterations = iter;
        r.residual = resid;
        if (resid <= tol) {
            r.converged = true;
            break;
        }
    }
    const double norm = *std::max_element(x.begin(), x.end());
    for (double& v : x)
        v = std::max(v / norm, 0.0);
    r.vec = std::move(x);
    return r;
}

} // namespace

EigenResult frobenius_eigen(const Matrix& m, double tol, std::size_t max_iter) {
    if (!m.square())
        throw NonSquare("Frobenius eigenvalue requires a square matrix");
    if (!m.all_nonnegative())
        throw NegativeEntry("Frobenius eigenvalue requires nonnegative entries");
    if (!(tol > 0.0))
        throw ValidationError("tolerance must be positive");

    const PowerResult right = shifted_power(m, tol, max_iter);
    if (!right.converged)
        throw NonConvergence("power iteration did not converge", right.iterations);
    const PowerResult left = shifted_power(m.transposed(), tol, max_iter);
    if (!left.converged)
        throw NonConvergence("transposed power iteration did not converge", left.iterations);

    EigenResult r;
    r.lambda = right.lambda;
    r.right = right.vec;
    r.left = left.vec;
    r.iterations = std::max(right.iterations, left.iterations);
    r.residual = std::max(right.residual, left.residual);
    return r;
}

DominantEigen dominant_eigen(const Matrix& m, double tol, std::size_t max_iter) {
    if (!m.square())
        throw NonSquare("dominant eigenvalue requires a square matrix");
    const std::size_t n = m.rows();
    DominantEigen r;
    Vector x(n, 1.0);
    for (std::size_t iter = 1; iter <= max_iter; ++iter) {
        Vector y = m.apply(x);
        const double lambda = dot(x, y) / dot(x, x);
        std::size_t pivot = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::fabs(y[i]) > std::fabs(y[pivot]))
                pivot = i;
        if (y[pivot] == 0.0) { // x landed in the null space
            r.lambda = 0.0;
            r.vec = x;
            r.iterations = iter;
            r.residual = 0.0;
            return r;
        }
        const double norm = y[pivot];
        for (std::size_t i = 0; i < n; ++i)
            x[i] = y[i] / norm;
        Vector mx = m.apply(x);
        double resid = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            resid = std::max(resid, std::fabs(mx[i] - lambda * x[i]));
        r.lambda = lambda;
        r.iterations = iter;
        r.residual = resid;
        if (resid <= tol * std::max(1.0, std::fabs(lambda))) {
            r.vec = std::move(x);
            return r;
        }
    }
    throw NonConvergence("dominant eigenvalue iteration did not converge", max_iter);
}

} // namespace iota
