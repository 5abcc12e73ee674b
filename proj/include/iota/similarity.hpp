#pragma once

#include <string>
#include <vector>

#include "iota/linalg.hpp"

namespace iota {

// The Stochastic Similarity Table of an interindustrial economy: four domains
// (value, price, quantity, object), each with its vector, flow matrix, and
// state matrix, all tied together by the stochastic production matrix D.
struct GdpTable {
    Vector value;    // x = p q
    Vector price;    // p
    Vector quantity; // q
    Vector object;   // e (all ones)

    Matrix value_flow;    // Z = p S
    Matrix price_flow;    // T = p D
    Matrix quantity_flow; // S
    Matrix distribution;  // D = q^-1 S (flow and state matrix of the object domain)

    Matrix value_state;    // A = x D x^-1
    Matrix price_state;    // B = p D p^-1
    Matrix quantity_state; // C = q D q^-1

    GdpTable()
        : value_flow(1, 1), price_flow(1, 1), quantity_flow(1, 1), distribution(1, 1),
          value_state(1, 1), price_state(1, 1), quantity_state(1, 1) {}
};

struct RelationCheck {
    std::string name;
    double deviation = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::vector<RelationCheck> relations;
    double tol = 0.0;
    bool all_pass = false;
};

inline constexpr double kInterindustrialTol = 1e-6;

// Builds the table from physical flows S, outputs q, and prices p. The
// interindustrial condition Se = q must hold within tol.
GdpTable build_gdp_table(const Matrix& physical_flows, const Vector& quantities,
                         const Vector& prices, double tol = kInterindustrialTol);

// Checks the 4 row-sum relations, 4 eigenvector relations, 3 similarity
// identities, and the spectral identity (all Frobenius eigenvalues equal 1).
VerificationReport verify_gdp_table(const GdpTable& g, double tol);

// A = p C p^-1: conjugation carries the physical technology matrix into the
// monetary one, preserving the spectrum.
Matrix monetary_physical_bridge(const Matrix& physical_tech, const Vector& prices);

} // namespace iota
