#include "iota/iot_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace iota {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ','))
        fields.push_back(trim(field));
    // a trailing comma contributes an empty final field
    while (!fields.empty() && fields.back().empty())
        fields.pop_back();
    return fields;
}

double parse_number(const std::string& token, std::size_t line_no) {
    const char* begin = token.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(value))
        throw ParseError("not a finite number: '" + token + "'", line_no);
    return value;
}

bool close_rel(double a, double b, double tol) {
    return std::fabs(a - b) <= tol * std::max({std::fabs(a), std::fabs(b), 1.0});
}

// Reads the next meaningful line; comments ('#') and blanks are skipped.
bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        line = t;
        return true;
    }
    return false;
}

} // namespace

MonetaryTable parse_iot(std::istream& source, double tol) {
    std::string line;
    std::size_t line_no = 0;

    if (!next_line(source, line, line_no))
        throw ParseError("empty input", line_no);
    auto header = split_csv(line);
    if (header.size() < 2 || header[0] != "sectors")
        throw ParseError("expected 'sectors,<name1>,...' header", line_no);

    MonetaryTable t;
    t.sectors.assign(header.begin() + 1, header.end());
    const std::size_t n = t.sectors.size();
    t.inter_industry = Matrix(n, n);
    t.final_demand.assign(n, 0.0);
    t.value_added.assign(n, 0.0);

    for (std::size_t i = 0; i < n; ++i) {
        if (!next_line(source, line, line_no))
            throw ParseError("missing row for sector '" + t.sectors[i] + "'", line_no);
        auto fields = split_csv(line);
        if (fields.size() != n + 2)
            throw DimensionMismatch("row for sector '" + t.sectors[i] + "' needs " +
                                    std::to_string(n) + " flows plus final demand");
        if (fields[0] != t.sectors[i])
            throw ParseError("row label '" + fields[0] + "' does not match sector '" +
                                 t.sectors[i] + "'",
                             line_no);
        for (std::size_t j = 0; j < n; ++j) {
            const double z = parse_number(fields[j + 1], line_no);
            if (z < 0.0)
                throw NegativeFlow("negative inter-industry flow at (" + t.sectors[i] +
                                   "," + t.sectors[j] + ")");
            t.inter_industry(i, j) = z;
        }
        t.final_demand[i] = parse_number(fields[n + 1], line_no);
    }

    if (!next_line(source, line, line_no))
        throw ParseError("missing value_added row", line_no);
    auto va = split_csv(line);
    if (va.empty() || va[0] != "value_added")
        throw ParseError("expected value_added row", line_no);
    if (va.size() != n + 1)
        throw DimensionMismatch("value_added row needs one entry per sector");
    for (std::size_t j = 0; j < n; ++j)
        t.value_added[j] = parse_number(va[j + 1], line_no);

    // Derived output; a declared total_output row wins when it agrees.
    Vector derived = t.inter_industry.row_sums();
    for (std::size_t i = 0; i < n; ++i)
        derived[i] += t.final_demand[i];

    if (next_line(source, line, line_no)) {
        auto to = split_csv(line);
        if (to.empty() || to[0] != "total_output")
            throw ParseError("expected total_output row or end of file", line_no);
        if (to.size() != n + 1)
            throw DimensionMismatch("total_output row needs one entry per sector");
        t.total_output.assign(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            t.total_output[j] = parse_number(to[j + 1], line_no);
            if (!close_rel(t.total_output[j], derived[j], tol))
                throw BalanceViolation(
                    "declared output for sector '" + t.sectors[j] +
                    "' disagrees with row sum plus final demand beyond tolerance");
        }
    } else {
        t.total_output = derived;
    }

    validate_table(t, tol);
    return t;
}

void write_iot(const MonetaryTable& t, std::ostream& out) {
    const std::size_t n = t.size();
    char buf[64];
    auto num = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    out << "sectors";
    for (const auto& s : t.sectors)
        out << ',' << s;
    out << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        out << t.sectors[i];
        for (std::size_t j = 0; j < n; ++j)
            out << ',' << num(t.inter_industry(i, j));
        out << ',' << num(t.final_demand[i]) << '\n';
    }
    out << "value_added";
    for (std::size_t j = 0; j < n; ++j)
        out << ',' << num(t.value_added[j]);
    out << ",\n";
    out << "total_output";
    for (std::size_t j = 0; j < n; ++j)
        out << ',' << num(t.total_output[j]);
    out << ",\n";
}

void validate_table(const MonetaryTable& t, double tol) {
    const std::size_t n = t.size();
    if (n == 0)
        throw ValidationError("table has no sectors");
    if (t.inter_industry.rows() != n || t.inter_industry.cols() != n ||
        t.final_demand.size() != n || t.value_added.size() != n ||
        t.total_output.size() != n)
        throw DimensionMismatch("table fields have inconsistent dimensions");
    if (!t.inter_industry.all_nonnegative())
        throw NegativeFlow("inter-industry flows must be nonnegative");
    if (!t.inter_industry.all_finite())
        throw ValidationError("non-finite inter-industry flow");

    const Vector row = t.inter_industry.row_sums();
    const Vector col = t.inter_industry.col_sums();
    for (std::size_t i = 0; i < n; ++i) {
        if (!(t.total_output[i] > 0.0))
            throw ValidationError("total output must be positive for sector '" +
                                  t.sectors[i] + "'");
        if (!close_rel(t.total_output[i], row[i] + t.final_demand[i], tol))
            throw BalanceViolation("row balance violated for sector '" + t.sectors[i] + "'");
        if (!close_rel(t.total_output[i], col[i] + t.value_added[i], tol))
            throw BalanceViolation("column balance violated for sector '" + t.sectors[i] + "'");
    }
    const double sum_f = std::accumulate(t.final_demand.begin(), t.final_demand.end(), 0.0);
    const double sum_v = std::accumulate(t.value_added.begin(), t.value_added.end(), 0.0);
    if (!close_rel(sum_f, sum_v, tol))
        throw BalanceViolation("total final demand does not equal total value added");
}

Matrix technical_coefficients(const MonetaryTable& t, Closure closure) {
    const std::size_t n = t.size();
    for (std::size_t j = 0; j < n; ++j)
        if (t.total_output[j] == 0.0)
            throw ZeroOutput("zero output for sector '" + t.sectors[j] + "'");

    if (closure == Closure::Open) {
        Matrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                a(i, j) = t.inter_industry(i, j) / t.total_output[j];
        return a;
    }

    // Closed: append a household sector with row = v, column = f, output = sum f.
    const double household_output =
        std::accumulate(t.final_demand.begin(), t.final_demand.end(), 0.0);
    if (household_output == 0.0)
        throw ZeroOutput("closed construction needs nonzero total final demand");
    Matrix a(n + 1, n + 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = t.inter_industry(i, j) / t.total_output[j];
    for (std::size_t i = 0; i < n; ++i)
        a(i, n) = t.final_demand[i] / household_output;
    for (std::size_t j = 0; j < n; ++j)
        a(n, j) = t.value_added[j] / t.total_output[j];
    return a;
}

Matrix distribution_matrix(const MonetaryTable& t) {
    const std::size_t n = t.size();
    Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (t.total_output[i] == 0.0)
            throw ZeroOutput("zero output for sector '" + t.sectors[i] + "'");
        for (std::size_t j = 0; j < n; ++j)
            d(i, j) = t.inter_industry(i, j) / t.total_output[i];
    }
    return d;
}

MonetaryTable aggregate(const MonetaryTable& t, const AggregationMap& map, double tol) {
    const std::size_t n = t.size();
    const std::size_t g = map.group_names.size();
    if (map.assignment.size() != n)
        throw DimensionMismatch("aggregation map must cover every sector");
    std::vector<std::size_t> members(g, 0);
    for (std::size_t idx : map.assignment) {
        if (idx >= g)
            throw ValidationError("aggregation map references unknown group");
        ++members[idx];
    }
    for (std::size_t a = 0; a < g; ++a)
        if (members[a] == 0)
            throw EmptyGroup("aggregation group '" + map.group_names[a] + "' is empty");

    MonetaryTable out;
    out.sectors = map.group_names;
    out.inter_industry = Matrix(g, g);
    out.final_demand.assign(g, 0.0);
    out.value_added.assign(g, 0.0);
    out.total_output.assign(g, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t a = map.assignment[i];
        out.final_demand[a] += t.final_demand[i];
        out.value_added[a] += t.value_added[i];
        out.total_output[a] += t.total_output[i];
        for (std::size_t j = 0; j < n; ++j)
            out.inter_industry(a, map.assignment[j]) += t.inter_industry(i, j);
    }
    validate_table(out, tol);
    return out;
}

SurplusReport surplus_ratio(const MonetaryTable& t) {
    SurplusReport r;
    r.gdp = std::accumulate(t.value_added.begin(), t.value_added.end(), 0.0);
    const Vector rows = t.inter_industry.row_sums();
    r.capital = std::accumulate(rows.begin(), rows.end(), 0.0);
    if (r.capital == 0.0)
        throw ZeroCapital("no circulating capital: all inter-industry flows are zero");
    r.ratio = r.gdp / r.capital;
    return r;
}

AggregationMap parse_aggregation_map(std::istream& source,
                                     const std::vector<std::string>& sectors) {
    AggregationMap map;
    map.assignment.assign(sectors.size(), 0);
    std::vector<char> assigned(sectors.size(), 0);
    std::map<std::string, std::size_t> group_index;

    std::string line;
    std::size_t line_no = 0;
    while (next_line(source, line, line_no)) {
        auto fields = split_csv(line);
        if (fields.size() != 2)
            throw ParseError("expected 'source_sector,group_name'", line_no);
        const auto it = std::find(sectors.begin(), sectors.end(), fields[0]);
        if (it == sectors.end())
            throw ParseError("unknown sector '" + fields[0] + "'", line_no);
        const std::size_t s = static_cast<std::size_t>(it - sectors.begin());
        if (assigned[s])
            throw ParseError("sector '" + fields[0] + "' assigned twice", line_no);
        auto [git, inserted] = group_index.try_emplace(fields[1], map.group_names.size());
        if (inserted)
            map.group_names.push_back(fields[1]);
        map.assignment[s] = git->second;
        assigned[s] = 1;
    }
    for (std::size_t s = 0; s < sectors.size(); ++s)
        if (!assigned[s])
            throw ValidationError("sector '" + sectors[s] + "' missing from aggregation map");
    return map;
}

} // namespace iota
