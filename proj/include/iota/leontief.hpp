#pragma once

#include "iota/iot_table.hpp"
#include "iota/linalg.hpp"

namespace iota {

struct LeontiefInverse {
    Matrix total_requirements; // (I - A)^-1
    double lambda = 0.0;       // Frobenius eigenvalue of A
    LeontiefInverse() : total_requirements(1, 1) {}
};

struct ProductivenessReport {
    double lambda = 0.0;
    double productiveness = 0.0; // R = 1/lambda - 1
    std::size_t sectors = 0;
    Closure construction = Closure::Open;
};

struct HawkinsSimonResult {
    bool productive = false;
    Vector minors; // leading principal minors of (I - A)
};

inline constexpr double kProductiveMargin = 1e-12;

// (I - A)^-1 for a productive nonnegative A; NotProductive when the
// Frobenius eigenvalue reaches 1.
LeontiefInverse leontief_inverse(const Matrix& a);

// Solves (I - A) x = f.
Vector quantity_model(const Matrix& a, const Vector& f);

// Solves p = A'p + v_c, i.e. (I - A') p = v_c.
Vector price_model(const Matrix& a, const Vector& value_added_per_unit);

HawkinsSimonResult hawkins_simon_check(const Matrix& a);

ProductivenessReport productiveness_from_eigenvalue(double lambda, std::size_t sectors,
                                                    Closure construction);
ProductivenessReport productiveness(const Matrix& a, Closure construction = Closure::Open);

// Delta x = (I - A)^-1 delta f; negative entries model demand contraction.
Vector impact_analysis(const Matrix& a, const Vector& delta_f);

} // namespace iota
