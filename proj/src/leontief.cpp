#include "iota/leontief.hpp"

#include <cmath>

namespace iota {

namespace {

// Shared viability gate: nonnegative, square, Frobenius eigenvalue below 1.
double require_productive(const Matrix& a) {
    if (!a.square())
        throw NonSquare("technology matrix must be square");
    if (!a.all_nonnegative())
        throw NegativeEntry("technology matrix must be nonnegative");
    const double lambda = frobenius_eigen(a).lambda;
    if (lambda >= 1.0 - kProductiveMargin)
        throw NotProductive("economy is not productive (Frobenius eigenvalue " +
                                std::to_string(lambda) + " >= 1)",
                            lambda);
    return lambda;
}

} // namespace

LeontiefInverse leontief_inverse(const Matrix& a) {
    LeontiefInverse out;
    out.lambda = require_productive(a);
    out.total_requirements = invert(Matrix::identity(a.rows()) - a);
    return out;
}

Vector quantity_model(const Matrix& a, const Vector& f) {
    require_productive(a);
    if (f.size() != a.rows())
        throw DimensionMismatch("final demand length does not match technology matrix");
    return solve_linear(Matrix::identity(a.rows()) - a, f);
}

Vector price_model(const Matrix& a, const Vector& value_added_per_unit) {
    require_productive(a);
    if (value_added_per_unit.size() != a.rows())
        throw DimensionMismatch("value added length does not match technology matrix");
    // Solve against the transpose rather than transposing a precomputed inverse.
    return solve_linear((Matrix::identity(a.rows()) - a).transposed(),
                        value_added_per_unit);
}

HawkinsSimonResult hawkins_simon_check(const Matrix& a) {
    if (!a.square())
        throw NonSquare("technology matrix must be square");
    if (!a.all_nonnegative())
        throw NegativeEntry("technology matrix must be nonnegative");
    HawkinsSimonResult r;
    r.minors = leading_principal_minors(Matrix::identity(a.rows()) - a);
    r.productive = true;
    for (double m : r.minors)
        if (!(m > 0.0))
            r.productive = false;
    return r;
}

ProductivenessReport productiveness_from_eigenvalue(double lambda, std::size_t sectors,
                                                    Closure construction) {
    if (!(lambda > 0.0))
        throw ValidationError("productiveness requires a positive eigenvalue");
    ProductivenessReport r;
    r.lambda = lambda;
    r.productiveness = 1.0 / lambda - 1.0;
    r.sectors = sectors;
    r.construction = construction;
    return r;
}

ProductivenessReport productiveness(const Matrix& a, Closure construction) {
    const double lambda = frobenius_eigen(a).lambda;
    return productiveness_from_eigenvalue(lambda, a.rows(), construction);
}

Vector impact_analysis(const Matrix& a, const Vector& delta_f) {
    require_productive(a);
    if (delta_f.size() != a.rows())
        throw DimensionMismatch("demand change length does not match technology matrix");
    return solve_linear(Matrix::identity(a.rows()) - a, delta_f);
}

} // namespace iota
