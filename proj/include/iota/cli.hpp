#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "iota/sraffa.hpp"

namespace iota {

// Exit codes: 0 success, 1 input/validation error, 2 numerical failure,
// 64 usage error.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, const char* const* argv);

// Plot data for the wage-profit trade-off: header `r,w,p_1,...,p_n`,
// one row per sample, 12 significant digits.
void emit_frontier_csv(const std::vector<FrontierPoint>& samples, std::ostream& out);

} // namespace iota
