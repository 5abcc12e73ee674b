#include "iota/sraffa.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace iota {

namespace {

constexpr double kSelfReplacingTol = 1e-9;
constexpr double kJointBalanceTol = 1e-6;
constexpr double kRateBisectionTol = 1e-10;

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

void require_single_product(const PhysicalSystem& ps, const char* op) {
    if (ps.is_joint())
        throw ValidationError(std::string(op) + " requires a single-product system");
}

void require_joint(const PhysicalSystem& ps, const char* op) {
    if (!ps.is_joint())
        throw ValidationError(std::string(op) + " requires a joint-production system");
}

// Transposed output operator: diag(q) for single production, F' otherwise.
Matrix output_transposed(const PhysicalSystem& ps) {
    if (ps.is_joint())
        return ps.joint_outputs->transposed();
    return Matrix::diagonal(ps.outputs);
}

Vector numeraire_vector(const PhysicalSystem& ps, const Numeraire& num) {
    const std::size_t n = ps.size();
    switch (num.kind) {
    case Numeraire::Kind::Commodity: {
        if (num.commodity >= n)
            throw ValidationError("numeraire commodity index out of range");
        Vector c(n, 0.0);
        c[num.commodity] = 1.0;
        return c;
    }
    case Numeraire::Kind::NetProduct: {
        const Vector gross = ps.is_joint() ? ps.joint_outputs->row_sums() : ps.outputs;
        Vector d = subtract(gross, ps.inputs.row_sums());
        if (infinity_norm(d) == 0.0)
            throw ValidationError("net-product numeraire undefined: net product is zero");
        return d;
    }
    case Numeraire::Kind::Standard:
        if (ps.is_joint())
            throw ValidationError("standard-commodity numeraire undefined for joint production");
        return standard_system(ps).standard_net_product;
    }
    throw ValidationError("unknown numeraire");
}

// Scales p so the numeraire value c'p equals 1.
void normalize_prices(Vector& p, const Vector& c) {
    const double value = dot(c, p);
    if (std::fabs(value) < 1e-300)
        throw SingularSystem("numeraire value vanishes on the solved prices");
    for (double& x : p)
        x /= value;
}

struct BorderedSolution {
    Vector prices;
    double scalar = 0.0; // the wage (or wage-scale) unknown
};

// Solves the (n+1)-system: M p - w * column = 0, c'p = 1.
BorderedSolution bordered_solve(const Matrix& m, const Vector& column, const Vector& c) {
    const std::size_t n = m.rows();
    Matrix big(n + 1, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            big(i, j) = m(i, j);
        big(i, n) = -column[i];
        big(n, i) = c[i];
    }
    Vector rhs(n + 1, 0.0);
    rhs[n] = 1.0;
    Vector sol;
    try {
        sol = solve_linear(big, rhs);
    } catch (const SingularMatrix& e) {
        throw SingularSystem(std::string("price system is singular: ") + e.what());
    }
    BorderedSolution out;
    out.prices.assign(sol.begin(), sol.begin() + static_cast<std::ptrdiff_t>(n));
    out.scalar = sol[n];
    return out;
}

void warn_if_reducible(const Matrix& c, std::vector<std::string>& warnings) {
    if (!is_irreducible(c))
        warnings.push_back("reducible system: positivity and uniqueness of prices "
                           "are not guaranteed");
}

} // namespace

std::string Numeraire::describe(const PhysicalSystem& ps) const {
    switch (kind) {
    case Kind::Commodity:
        return "commodity:" + (commodity < ps.commodities.size()
                                   ? ps.commodities[commodity]
                                   : std::to_string(commodity));
    case Kind::NetProduct:
        return "net-product";
    case Kind::Standard:
        return "standard-commodity";
    }
    return "?";
}

PhysicalSystem parse_physical(std::istream& source) {
    std::string line;
    std::size_t line_no = 0;
    if (!next_line(source, line, line_no))
        throw ParseError("empty input", line_no);
    auto header = split_csv(line);
    if (header.size() < 2 || header[0] != "commodities")
        throw ParseError("expected 'commodities,<name1>,...' header", line_no);

    PhysicalSystem ps;
    ps.commodities.assign(header.begin() + 1, header.end());
    const std::size_t n = ps.commodities.size();
    ps.inputs = Matrix(n, n);
    ps.outputs.assign(n, 0.0);
    ps.labor.assign(n, 0.0);

    for (std::size_t i = 0; i < n; ++i) {
        if (!next_line(source, line, line_no))
            throw ParseError("missing row for commodity '" + ps.commodities[i] + "'", line_no);
        auto fields = split_csv(line);
        if (fields.size() != n + 3)
            throw DimensionMismatch("row for commodity '" + ps.commodities[i] +
                                    "' needs " + std::to_string(n) +
                                    " input flows plus output and labor");
        if (fields[0] != ps.commodities[i])
            throw ParseError("row label '" + fields[0] + "' does not match commodity '" +
                                 ps.commodities[i] + "'",
                             line_no);
        for (std::size_t j = 0; j < n; ++j) {
            const double s = parse_number(fields[j + 1], line_no);
            if (s < 0.0)
                throw NegativeFlow("negative input flow at (" + ps.commodities[i] + "," +
                                   ps.commodities[j] + ")");
            ps.inputs(i, j) = s;
        }
        ps.outputs[i] = parse_number(fields[n + 1], line_no);
        ps.labor[i] = parse_number(fields[n + 2], line_no);
        if (!(ps.outputs[i] > 0.0))
            throw ValidationError("output must be positive for commodity '" +
                                  ps.commodities[i] + "'");
        if (ps.labor[i] < 0.0)
            throw ValidationError("labor must be nonnegative for commodity '" +
                                  ps.commodities[i] + "'");
    }

    if (next_line(source, line, line_no)) {
        if (split_csv(line) != std::vector<std::string>{"joint_outputs"})
            throw ParseError("expected 'joint_outputs' marker or end of file", line_no);
        Matrix f(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!next_line(source, line, line_no))
                throw ParseError("missing joint-output row for commodity '" +
                                     ps.commodities[i] + "'",
                                 line_no);
            auto fields = split_csv(line);
            if (fields.size() != n + 1 || fields[0] != ps.commodities[i])
                throw ParseError("joint-output row must be '" + ps.commodities[i] +
                                     ",f_1,...,f_n'",
                                 line_no);
            for (std::size_t j = 0; j < n; ++j) {
                const double v = parse_number(fields[j + 1], line_no);
                if (v < 0.0)
                    throw NegativeFlow("negative joint output at (" + ps.commodities[i] +
                                       "," + ps.commodities[j] + ")");
                f(i, j) = v;
            }
        }
        // row sums of F must reproduce q
        const Vector fe = f.row_sums();
        for (std::size_t i = 0; i < n; ++i)
            if (std::fabs(fe[i] - ps.outputs[i]) >
                kJointBalanceTol * std::max(1.0, std::fabs(ps.outputs[i])))
                throw ValidationError("joint outputs of commodity '" + ps.commodities[i] +
                                      "' do not sum to its declared total output");
        ps.joint_outputs = std::move(f);
    }
    return ps;
}

void write_physical(const PhysicalSystem& ps, std::ostream& out) {
    const std::size_t n = ps.size();
    char buf[64];
    auto num = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    out << "commodities";
    for (const auto& c : ps.commodities)
        out << ',' << c;
    out << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        out << ps.commodities[i];
        for (std::size_t j = 0; j < n; ++j)
            out << ',' << num(ps.inputs(i, j));
        out << ',' << num(ps.outputs[i]) << ',' << num(ps.labor[i]) << '\n';
    }
    if (ps.is_joint()) {
        out << "joint_outputs\n";
        for (std::size_t i = 0; i < n; ++i) {
            out << ps.commodities[i];
            for (std::size_t j = 0; j < n; ++j)
                out << ',' << num((*ps.joint_outputs)(i, j));
            out << '\n';
        }
    }
}

Matrix physical_tech_matrix(const PhysicalSystem& ps) {
    require_single_product(ps, "physical technology matrix");
    const std::size_t n = ps.size();
    Matrix c(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        if (ps.outputs[j] == 0.0)
            throw ZeroOutput("zero output for commodity '" + ps.commodities[j] + "'");
        for (std::size_t i = 0; i < n; ++i)
            c(i, j) = ps.inputs(i, j) / ps.outputs[j];
    }
    return c;
}

SraffaSolution subsistence_prices(const PhysicalSystem& ps) {
    require_single_product(ps, "subsistence prices");
    const Vector used = ps.inputs.row_sums();
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const double gap = std::fabs(used[i] - ps.outputs[i]);
        if (gap > kSelfReplacingTol * std::max(1.0, std::fabs(ps.outputs[i])))
            throw NotSelfReplacing("commodity '" + ps.commodities[i] +
                                   "' is not self-replacing (gap " + std::to_string(gap) + ")");
    }
    const Matrix c = physical_tech_matrix(ps);
    SraffaSolution sol;
    warn_if_reducible(c, sol.warnings);
    sol.prices = frobenius_eigen(c).left;
    if (!(sol.prices[0] > 0.0))
        throw NumericalError("first commodity's price vanished; cannot normalize");
    const double scale = sol.prices[0];
    for (double& p : sol.prices)
        p /= scale;
    sol.profit_rate = 0.0;
    sol.wage = 0.0;
    Numeraire num;
    sol.numeraire = num.describe(ps);
    return sol;
}

ProductivenessReport max_profit_rate(const PhysicalSystem& ps) {
    const Matrix c = physical_tech_matrix(ps);
    return productiveness_from_eigenvalue(frobenius_eigen(c).lambda, ps.size(),
                                          Closure::Open);
}

SraffaSolution surplus_solve_rate(const PhysicalSystem& ps, double profit_rate,
                                  const Numeraire& numeraire) {
    require_single_product(ps, "surplus price solve");
    if (profit_rate < 0.0)
        throw InfeasibleRate("profit rate must be nonnegative");
    const Matrix c = physical_tech_matrix(ps);
    const double big_r = max_profit_rate(ps).productiveness;
    const double margin = 1e-9 * (1.0 + big_r);
    if (profit_rate > big_r + margin)
        throw InfeasibleRate("profit rate " + std::to_string(profit_rate) +
                             " exceeds the maximum rate " + std::to_string(big_r));
    const Vector cvec = numeraire_vector(ps, numeraire);

    SraffaSolution sol;
    warn_if_reducible(c, sol.warnings);
    sol.numeraire = numeraire.describe(ps);
    sol.profit_rate = profit_rate;

    const bool at_max = profit_rate >= big_r - margin;
    if (at_max) {
        // Wage term vanishes; prices are the left Frobenius eigenvector of C.
        sol.prices = frobenius_eigen(c).left;
        normalize_prices(sol.prices, cvec);
        sol.wage = 0.0;
        return sol;
    }
    if (infinity_norm(ps.labor) == 0.0)
        throw NoLabor("labor is zero: the wage cannot be determined below the maximum rate");

    const Matrix m = Matrix::diagonal(ps.outputs) -
                     ps.inputs.transposed().scaled(1.0 + profit_rate);
    const BorderedSolution b = bordered_solve(m, ps.labor, cvec);
    sol.prices = b.prices;
    sol.wage = b.scalar;
    return sol;
}

SraffaSolution surplus_solve_wage(const PhysicalSystem& ps, double wage,
                                  const Numeraire& numeraire) {
    require_single_product(ps, "surplus price solve");
    if (wage < 0.0)
        throw ValidationError("wage must be nonnegative");
    const double big_r = max_profit_rate(ps).productiveness;
    if (infinity_norm(ps.labor) == 0.0) {
        if (wage == 0.0)
            return surplus_solve_rate(ps, big_r, numeraire);
        throw NoLabor("labor is zero: no positive wage is payable");
    }
    const double w_max = surplus_solve_rate(ps, 0.0, numeraire).wage;
    if (wage > w_max * (1.0 + 1e-9))
        throw InfeasibleRate("wage " + std::to_string(wage) +
                             " exceeds the maximum wage " + std::to_string(w_max));

    // w(r) is monotone decreasing on [0, R]; bisect.
    double lo = 0.0, hi = big_r;
    while (hi - lo > kRateBisectionTol * std::max(1.0, big_r)) {
        const double mid = 0.5 * (lo + hi);
        const double w_mid = surplus_solve_rate(ps, mid, numeraire).wage;
        if (w_mid > wage)
            lo = mid;
        else
            hi = mid;
    }
    return surplus_solve_rate(ps, 0.5 * (lo + hi), numeraire);
}

std::vector<FrontierPoint> wage_profit_frontier(const PhysicalSystem& ps,
                                                std::size_t samples,
                                                const Numeraire& numeraire) {
    require_single_product(ps, "wage-profit frontier");
    if (samples < 2)
        throw ValidationError("frontier needs at least 2 samples");
    const double big_r = max_profit_rate(ps).productiveness;
    std::vector<FrontierPoint> points;
    points.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double r = big_r * static_cast<double>(i) / static_cast<double>(samples - 1);
        const SraffaSolution sol = surplus_solve_rate(ps, r, numeraire);
        points.push_back({sol.profit_rate, sol.wage, sol.prices});
    }
    return points;
}

StandardSystem standard_system(const PhysicalSystem& ps) {
    require_single_product(ps, "standard system");
    const std::size_t n = ps.size();
    const Matrix c = physical_tech_matrix(ps);
    const BasicsPartition parts = classify_basics(ps);
    if (parts.basics.empty())
        throw ReducibleSystem("no basic commodities: the standard system is undefined");

    Vector eigvec(n, 0.0);
    double lambda = 0.0;
    if (parts.basics.size() == n) {
        if (!is_irreducible(c))
            throw ReducibleSystem("basic subsystem is not irreducible");
        const EigenResult eig = frobenius_eigen(c);
        lambda = eig.lambda;
        eigvec = eig.right;
    } else {
        const std::size_t nb = parts.basics.size();
        Matrix cb(nb, nb);
        for (std::size_t a = 0; a < nb; ++a)
            for (std::size_t b = 0; b < nb; ++b)
                cb(a, b) = c(parts.basics[a], parts.basics[b]);
        if (!is_irreducible(cb))
            throw ReducibleSystem("basic subsystem is not irreducible");
        const EigenResult eig = frobenius_eigen(cb);
        lambda = eig.lambda;
        for (std::size_t a = 0; a < nb; ++a)
            eigvec[parts.basics[a]] = eig.right[a];
    }

    StandardSystem out;
    out.max_rate = 1.0 / lambda - 1.0;
    out.multipliers.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        out.multipliers[i] = eigvec[i] / ps.outputs[i];
    const double total_labor = dot(out.multipliers, ps.labor);
    const double norm = total_labor > 0.0
                            ? total_labor
                            : *std::max_element(out.multipliers.begin(), out.multipliers.end());
    for (double& m : out.multipliers)
        m /= norm;

    Vector scaled_outputs(n);
    for (std::size_t i = 0; i < n; ++i)
        scaled_outputs[i] = out.multipliers[i] * ps.outputs[i];
    out.standard_net_product = subtract(scaled_outputs, ps.inputs.apply(out.multipliers));
    return out;
}

BasicsPartition classify_basics(const PhysicalSystem& ps) {
    require_single_product(ps, "basics classification");
    const std::size_t n = ps.size();
    const Matrix& s = ps.inputs;

    // Kosaraju: components come out in reverse-topological discovery order,
    // so ascending component ids are a topological order of the condensation.
    std::vector<std::size_t> order;
    order.reserve(n);
    std::vector<char> seen(n, 0);
    auto dfs1 = [&](auto&& self, std::size_t u) -> void {
        seen[u] = 1;
        for (std::size_t v = 0; v < n; ++v)
            if (s(u, v) > 0.0 && !seen[v])
                self(self, v);
        order.push_back(u);
    };
    for (std::size_t u = 0; u < n; ++u)
        if (!seen[u])
            dfs1(dfs1, u);

    std::vector<std::size_t> comp(n, n);
    std::size_t ncomp = 0;
    auto dfs2 = [&](auto&& self, std::size_t u, std::size_t id) -> void {
        comp[u] = id;
        for (std::size_t v = 0; v < n; ++v)
            if (s(v, u) > 0.0 && comp[v] == n)
                self(self, v, id);
    };
    for (std::size_t k = n; k-- > 0;)
        if (comp[order[k]] == n)
            dfs2(dfs2, order[k], ncomp++);

    std::vector<std::size_t> comp_size(ncomp, 0);
    for (std::size_t u = 0; u < n; ++u)
        ++comp_size[comp[u]];

    // Transitive closure over the condensation, in reverse topological order.
    std::vector<std::vector<char>> reach(ncomp, std::vector<char>(ncomp, 0));
    for (std::size_t cid = ncomp; cid-- > 0;) {
        reach[cid][cid] = 1;
        for (std::size_t u = 0; u < n; ++u) {
            if (comp[u] != cid)
                continue;
            for (std::size_t v = 0; v < n; ++v) {
                if (s(u, v) > 0.0 && comp[v] != cid)
                    for (std::size_t d = 0; d < ncomp; ++d)
                        reach[cid][d] |= reach[comp[v]][d];
            }
        }
    }

    BasicsPartition parts;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t ci = comp[i];
        bool basic = true;
        for (std::size_t j = 0; j < n && basic; ++j) {
            if (j == i) {
                // reaching itself needs a genuine cycle or self-use
                basic = comp_size[ci] > 1 || s(i, i) > 0.0;
            } else {
                basic = reach[ci][comp[j]] != 0;
            }
        }
        (basic ? parts.basics : parts.non_basics).push_back(i);
    }
    return parts;
}

Matrix joint_tech_matrix(const PhysicalSystem& ps) {
    require_joint(ps, "joint technology matrix");
    try {
        return ps.inputs * invert(*ps.joint_outputs);
    } catch (const SingularMatrix& e) {
        throw SingularOutputMatrix(std::string("output matrix F is singular: ") + e.what());
    }
}

Matrix pasinetti_matrix(const PhysicalSystem& ps) {
    require_joint(ps, "Pasinetti matrix");
    const Matrix st = ps.inputs.transposed();
    const Matrix net = ps.joint_outputs->transposed() - st;
    try {
        return invert(net) * st;
    } catch (const SingularMatrix& e) {
        throw SingularNetOutput(std::string("F' - S' is singular (zero net product "
                                            "direction): ") +
                                e.what());
    }
}

SraffaSolution joint_surplus_solve_rate(const PhysicalSystem& ps, double profit_rate,
                                        const Numeraire& numeraire) {
    require_joint(ps, "joint price solve");
    if (profit_rate < 0.0)
        throw InfeasibleRate("profit rate must be nonnegative");
    const Vector cvec = numeraire_vector(ps, numeraire);
    const Matrix m = ps.joint_outputs->transposed() -
                     ps.inputs.transposed().scaled(1.0 + profit_rate);
    const BorderedSolution b = bordered_solve(m, ps.labor, cvec);
    SraffaSolution sol;
    sol.prices = b.prices;
    sol.wage = b.scalar;
    sol.profit_rate = profit_rate;
    sol.numeraire = numeraire.describe(ps);
    return sol;
}

SraffaSolution joint_surplus_solve_wage(const PhysicalSystem& ps, double wage,
                                        const Numeraire& numeraire) {
    require_joint(ps, "joint price solve");
    if (wage < 0.0)
        throw ValidationError("wage must be nonnegative");

    // Upper bracket from the Pasinetti matrix when it yields a positive
    // dominant eigenvalue; otherwise scan outward for a sign change.
    double hi = -1.0;
    try {
        const double lam = dominant_eigen(pasinetti_matrix(ps)).lambda;
        if (lam > 0.0)
            hi = 1.0 / lam;
    } catch (const Error&) {
    }
    auto wage_at = [&](double r) { return joint_surplus_solve_rate(ps, r, numeraire).wage; };
    const double w0 = wage_at(0.0);
    if (w0 < wage)
        throw InfeasibleRate("wage exceeds the wage at a zero profit rate");
    if (hi < 0.0) {
        double probe = 1.0;
        while (probe <= 1024.0 && wage_at(probe) > wage)
            probe *= 2.0;
        if (probe > 1024.0)
            throw NonConvergence("no profit rate bracket found for the given wage", 0);
        hi = probe;
    }
    double lo = 0.0;
    while (hi - lo > kRateBisectionTol * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        if (wage_at(mid) > wage)
            lo = mid;
        else
            hi = mid;
    }
    return joint_surplus_solve_rate(ps, 0.5 * (lo + hi), numeraire);
}

VariableRatesSolution variable_rates_solve(const PhysicalSystem& ps,
                                           const Vector& profit_rates,
                                           const Vector& wage_rates,
                                           const Numeraire& numeraire) {
    const std::size_t n = ps.size();
    if (profit_rates.size() != n || wage_rates.size() != n)
        throw DimensionMismatch("per-sector rate vectors must match the system size");
    const Vector cvec = numeraire_vector(ps, numeraire);
    const Matrix ot = output_transposed(ps);

    // Equation k (industry k): sum_i O'(k,i) p_i = (1+r_k) sum_i S(i,k) p_i + w_k L_k
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            m(k, i) = ot(k, i) - (1.0 + profit_rates[k]) * ps.inputs(i, k);
    Vector wage_profile(n);
    for (std::size_t k = 0; k < n; ++k)
        wage_profile[k] = wage_rates[k] * ps.labor[k];

    VariableRatesSolution sol;
    sol.profit_rates = profit_rates;
    sol.numeraire = numeraire.describe(ps);

    if (infinity_norm(wage_profile) > 0.0) {
        // Unknown scale on the wage profile lets the numeraire hold exactly.
        const BorderedSolution b = bordered_solve(m, wage_profile, cvec);
        sol.prices = b.prices;
        sol.wage_rates = scale(wage_rates, b.scalar);
        if (std::fabs(b.scalar - 1.0) > 1e-9)
            sol.warnings.push_back("wage profile rescaled by " + std::to_string(b.scalar) +
                                   " to satisfy the numeraire");
        return sol;
    }

    // Homogeneous case: nonzero prices exist only if the system is singular.
    const BorderedSolution b = bordered_solve(m, Vector(n, 1.0), cvec);
    const double resid = infinity_norm(m.apply(b.prices));
    const double floor = 1e-8 * std::max(1.0, m.max_abs() * infinity_norm(b.prices));
    if (resid > floor)
        throw SingularSystem("no nonzero price vector exists at the given rates "
                             "(the homogeneous system is nonsingular)");
    sol.prices = b.prices;
    sol.wage_rates.assign(n, 0.0);
    return sol;
}

} // namespace iota
