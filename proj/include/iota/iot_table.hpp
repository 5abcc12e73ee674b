#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "iota/linalg.hpp"

namespace iota {

inline constexpr double kDefaultBalanceTol = 1e-6;

// A monetary input-output table: inter-industry flows Z, final demand f,
// value added v, total output x, one row/column per sector.
struct MonetaryTable {
    std::vector<std::string> sectors;
    Matrix inter_industry; // Z
    Vector final_demand;   // f
    Vector value_added;    // v
    Vector total_output;   // x

    MonetaryTable() : inter_industry(1, 1) {}
    std::size_t size() const { return sectors.size(); }
};

struct AggregationMap {
    std::vector<std::size_t> assignment; // one group index per source sector
    std::vector<std::string> group_names;
};

struct SurplusReport {
    double gdp = 0.0;     // Y = sum of value added
    double capital = 0.0; // K = sum of all inter-industry flows
    double ratio = 0.0;   // Y / K
};

// Open: coefficients from intermediate flows Z only. Closed: a household
// sector is appended first (row = v, column = f, output = sum f).
enum class Closure { Open, Closed };

// Parses the IOT-CSV format (see README) and validates the accounting
// balances at the given relative tolerance.
MonetaryTable parse_iot(std::istream& source, double tol = kDefaultBalanceTol);

// Companion writer; output re-parses to the identical table.
void write_iot(const MonetaryTable& t, std::ostream& out);

void validate_table(const MonetaryTable& t, double tol = kDefaultBalanceTol);

// A = Z x^-1 (technical coefficients).
Matrix technical_coefficients(const MonetaryTable& t, Closure closure = Closure::Open);

// D = x^-1 Z (row-stochastic when final demand is zero).
Matrix distribution_matrix(const MonetaryTable& t);

MonetaryTable aggregate(const MonetaryTable& t, const AggregationMap& map,
                        double tol = kDefaultBalanceTol);

SurplusReport surplus_ratio(const MonetaryTable& t);

// Map file: one `source_sector,group_name` line per sector.
AggregationMap parse_aggregation_map(std::istream& source,
                                     const std::vector<std::string>& sectors);

} // namespace iota
