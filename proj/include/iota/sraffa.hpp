#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "iota/leontief.hpp"
#include "iota/linalg.hpp"

namespace iota {

// A physical production system: input flows S (commodity i used by industry j),
// outputs q, direct labor L, and optionally a joint-production output matrix F.
struct PhysicalSystem {
    std::vector<std::string> commodities;
    Matrix inputs; // S
    Vector outputs; // q
    Vector labor;   // L
    std::optional<Matrix> joint_outputs; // F, when industries produce jointly

    PhysicalSystem() : inputs(1, 1) {}
    std::size_t size() const { return commodities.size(); }
    bool is_joint() const { return joint_outputs.has_value(); }
};

struct Numeraire {
    enum class Kind { Commodity, NetProduct, Standard };
    Kind kind = Kind::Commodity;
    std::size_t commodity = 0; // for Kind::Commodity

    std::string describe(const PhysicalSystem& ps) const;
};

struct SraffaSolution {
    Vector prices;
    double profit_rate = 0.0;
    double wage = 0.0;
    std::string numeraire;
    std::vector<std::string> warnings;
};

struct VariableRatesSolution {
    Vector prices;
    Vector profit_rates;
    Vector wage_rates;
    std::string numeraire;
    std::vector<std::string> warnings;
};

struct StandardSystem {
    Vector multipliers;          // industry scalings, total labor normalized to 1
    double max_rate = 0.0;       // standard ratio R
    Vector standard_net_product; // composition of the standard commodity
};

struct BasicsPartition {
    std::vector<std::size_t> basics;
    std::vector<std::size_t> non_basics;
};

struct FrontierPoint {
    double profit_rate = 0.0;
    double wage = 0.0;
    Vector prices;
};

// Physical-system CSV: `commodities` header, n rows of S with trailing q and L
// columns, optionally a `joint_outputs` marker followed by n rows of F.
PhysicalSystem parse_physical(std::istream& source);
void write_physical(const PhysicalSystem& ps, std::ostream& out);

// C = S q^-1 (single-product systems).
Matrix physical_tech_matrix(const PhysicalSystem& ps);

// Prices of a self-replacing economy: S'p = q p, first commodity's price = 1.
SraffaSolution subsistence_prices(const PhysicalSystem& ps);

// R = 1/lambda_C - 1.
ProductivenessReport max_profit_rate(const PhysicalSystem& ps);

// Solves (1+r) S'p + wL = q p for (p, w) at a given r, or (p, r) at a given w.
SraffaSolution surplus_solve_rate(const PhysicalSystem& ps, double profit_rate,
                                  const Numeraire& numeraire);
SraffaSolution surplus_solve_wage(const PhysicalSystem& ps, double wage,
                                  const Numeraire& numeraire);

// Samples the frontier at r = 0, R/(samples-1), ..., R.
std::vector<FrontierPoint> wage_profit_frontier(const PhysicalSystem& ps,
                                                std::size_t samples,
                                                const Numeraire& numeraire);

StandardSystem standard_system(const PhysicalSystem& ps);

// Commodity i is basic iff it reaches every commodity in the input-use graph.
BasicsPartition classify_basics(const PhysicalSystem& ps);

// C_T = S F^-1 (may contain negative entries).
Matrix joint_tech_matrix(const PhysicalSystem& ps);

// H = (F' - S')^-1 S'; its dominant eigenvalue is 1/R.
Matrix pasinetti_matrix(const PhysicalSystem& ps);

// Joint-production price solves: (1+r) S'p + wL = F'p.
SraffaSolution joint_surplus_solve_rate(const PhysicalSystem& ps, double profit_rate,
                                        const Numeraire& numeraire);
SraffaSolution joint_surplus_solve_wage(const PhysicalSystem& ps, double wage,
                                        const Numeraire& numeraire);

// Per-sector rates: (I + diag(r)) S'p + diag(w) L = q p (or F'p). The given
// wage profile is scaled by a solved factor so the numeraire can hold; with a
// zero wage profile the system must be singular to admit nonzero prices.
VariableRatesSolution variable_rates_solve(const PhysicalSystem& ps,
                                           const Vector& profit_rates,
                                           const Vector& wage_rates,
                                           const Numeraire& numeraire);

} // namespace iota
