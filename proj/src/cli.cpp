#include "iota/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "iota/iot_table.hpp"
#include "iota/leontief.hpp"
#include "iota/report.hpp"
#include "iota/similarity.hpp"

namespace iota {

namespace {

constexpr double kGdpVerifyTol = 1e-9;

nlohmann::json to_json(const Vector& v) {
    return nlohmann::json(v);
}

nlohmann::json to_json(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

// Shared per-subcommand settings.
struct Common {
    std::string json_path;
    double tol = std::nan(""); // unset sentinel
};

double resolve_tol(const Common& c, double fallback) {
    if (!std::isnan(c.tol))
        return c.tol;
    if (const char* env = std::getenv("IOTA_TOLERANCE")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && *end == '\0' && v > 0.0)
            return v;
    }
    return fallback;
}

void emit_report(const AnalysisReport& report, const Common& common) {
    std::cout << report.render_text();
    if (!common.json_path.empty())
        atomic_write_file(common.json_path, report.to_json().dump(2) + "\n");
}

MonetaryTable load_table(const std::string& path, double tol) {
    std::ifstream in(path);
    if (!in)
        throw IoFailure("cannot open input file '" + path + "'");
    return parse_iot(in, tol);
}

PhysicalSystem load_physical(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoFailure("cannot open input file '" + path + "'");
    return parse_physical(in);
}

Vector load_vector(const std::string& path, std::size_t expected) {
    std::ifstream in(path);
    if (!in)
        throw IoFailure("cannot open input file '" + path + "'");
    Vector out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto begin = line.find_first_not_of(" \t\r\n");
        if (begin == std::string::npos || line[begin] == '#')
            continue;
        char* end = nullptr;
        const double v = std::strtod(line.c_str() + begin, &end);
        if (end == line.c_str() + begin)
            throw ParseError("not a number: '" + line + "'", line_no);
        out.push_back(v);
    }
    if (out.size() != expected)
        throw DimensionMismatch("expected " + std::to_string(expected) +
                                " values in '" + path + "', found " +
                                std::to_string(out.size()));
    return out;
}

Numeraire parse_numeraire(const std::string& spec, const PhysicalSystem& ps) {
    Numeraire num;
    if (spec.empty() || spec == "commodity")
        return num;
    if (spec == "net") {
        num.kind = Numeraire::Kind::NetProduct;
        return num;
    }
    if (spec == "standard") {
        num.kind = Numeraire::Kind::Standard;
        return num;
    }
    const std::string prefix = "commodity:";
    if (spec.rfind(prefix, 0) == 0) {
        const std::string name = spec.substr(prefix.size());
        for (std::size_t i = 0; i < ps.commodities.size(); ++i)
            if (ps.commodities[i] == name) {
                num.commodity = i;
                return num;
            }
        throw ValidationError("unknown numeraire commodity '" + name + "'");
    }
    throw ValidationError("numeraire must be commodity:<name>, net, or standard");
}

nlohmann::json solution_json(const SraffaSolution& sol) {
    return {{"prices", to_json(sol.prices)},
            {"r", sol.profit_rate},
            {"w", sol.wage},
            {"numeraire", sol.numeraire}};
}

const char* closure_name(Closure c) {
    return c == Closure::Open ? "open" : "closed";
}

struct CliState {
    // one Common per leaf subcommand, stable addresses
    std::vector<std::unique_ptr<Common>> commons;

    Common& add_common(CLI::App* cmd) {
        commons.push_back(std::make_unique<Common>());
        Common& c = *commons.back();
        cmd->add_option("--json", c.json_path, "write the JSON report to this path");
        cmd->add_option("--tol", c.tol, "validation tolerance override");
        return c;
    }
};

} // namespace

void emit_frontier_csv(const std::vector<FrontierPoint>& samples, std::ostream& out) {
    if (samples.empty())
        throw ValidationError("frontier has no samples");
    out << "r,w";
    for (std::size_t i = 1; i <= samples.front().prices.size(); ++i)
        out << ",p_" << i;
    out << '\n';
    for (const auto& pt : samples) {
        out << format_number(pt.profit_rate) << ',' << format_number(pt.wage);
        for (double p : pt.prices)
            out << ',' << format_number(p);
        out << '\n';
    }
    if (!out)
        throw IoFailure("frontier CSV write failed");
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("iota");
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Leontief / Sraffa input-output analysis toolkit"};
    app.require_subcommand(1);
    CliState state;

    // ---- validate ----
    auto* c_validate = app.add_subcommand("validate", "parse and balance-check an IOT");
    auto path_validate = std::make_shared<std::string>();
    c_validate->add_option("table", *path_validate, "IOT-CSV file")->required();
    Common& com_validate = state.add_common(c_validate);
    c_validate->callback([&com_validate, path_validate] {
        const double tol = resolve_tol(com_validate, kDefaultBalanceTol);
        const MonetaryTable t = load_table(*path_validate, tol);
        AnalysisReport r;
        r.kind = "validate";
        r.inputs["table"] = describe_input_file(*path_validate);
        double sum_f = 0.0, sum_v = 0.0, sum_x = 0.0, sum_z = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            sum_f += t.final_demand[i];
            sum_v += t.value_added[i];
            sum_x += t.total_output[i];
        }
        for (double s : t.inter_industry.row_sums())
            sum_z += s;
        r.results = {{"sectors", t.size()},
                     {"balanced", true},
                     {"tolerance", tol},
                     {"total_output", sum_x},
                     {"total_intermediate", sum_z},
                     {"total_final_demand", sum_f},
                     {"total_value_added", sum_v}};
        emit_report(r, com_validate);
    });

    // ---- coefficients ----
    auto* c_coeff = app.add_subcommand("coefficients", "technical coefficients A = Z x^-1");
    auto path_coeff = std::make_shared<std::string>();
    auto closure_coeff = std::make_shared<std::string>("open");
    c_coeff->add_option("table", *path_coeff, "IOT-CSV file")->required();
    c_coeff->add_option("--closure", *closure_coeff, "open|closed")
        ->check(CLI::IsMember({"open", "closed"}));
    Common& com_coeff = state.add_common(c_coeff);
    c_coeff->callback([&com_coeff, path_coeff, closure_coeff] {
        const double tol = resolve_tol(com_coeff, kDefaultBalanceTol);
        const MonetaryTable t = load_table(*path_coeff, tol);
        const Closure closure = *closure_coeff == "closed" ? Closure::Closed : Closure::Open;
        const Matrix a = technical_coefficients(t, closure);
        AnalysisReport r;
        r.kind = "coefficients";
        r.inputs["table"] = describe_input_file(*path_coeff);
        r.results = {{"construction", closure_name(closure)},
                     {"A", to_json(a)},
                     {"column_sums", to_json(a.col_sums())}};
        emit_report(r, com_coeff);
    });

    // ---- distribution ----
    auto* c_dist = app.add_subcommand("distribution", "stochastic matrix D = x^-1 Z");
    auto path_dist = std::make_shared<std::string>();
    c_dist->add_option("table", *path_dist, "IOT-CSV file")->required();
    Common& com_dist = state.add_common(c_dist);
    c_dist->callback([&com_dist, path_dist] {
        const double tol = resolve_tol(com_dist, kDefaultBalanceTol);
        const MonetaryTable t = load_table(*path_dist, tol);
        const Matrix d = distribution_matrix(t);
        AnalysisReport r;
        r.kind = "distribution";
        r.inputs["table"] = describe_input_file(*path_dist);
        r.results = {{"D", to_json(d)}, {"row_sums", to_json(d.row_sums())}};
        emit_report(r, com_dist);
    });

    // ---- leontief ----
    auto* c_leontief = app.add_subcommand("leontief", "Leontief quantity/price models");
    c_leontief->require_subcommand(1);

    auto* c_lq = c_leontief->add_subcommand("quantity", "x = (I-A)^-1 f");
    auto path_lq = std::make_shared<std::string>();
    auto demand_lq = std::make_shared<std::string>();
    c_lq->add_option("table", *path_lq, "IOT-CSV file")->required();
    c_lq->add_option("--demand", *demand_lq, "final demand vector file (one value per line)");
    Common& com_lq = state.add_common(c_lq);
    c_lq->callback([&com_lq, path_lq, demand_lq] {
        const double tol = resolve_tol(com_lq, kDefaultBalanceTol);
        const MonetaryTable t = load_table(*path_lq, tol);
        const Matrix a = technical_coefficients(t);
        const Vector f = demand_lq->empty() ? t.final_demand
                                            : load_vector(*demand_lq, t.size());
        const Vector x = quantity_model(a, f);
        AnalysisReport r;
        r.kind = "leontief-quantity";
        r.inputs["table"] = describe_input_file(*path_lq);
        if (!demand_lq->empty())
            r.inputs["demand"] = describe_input_file(*demand_lq);
        r.results = {{"demand", to_json(f)}, {"output", to_json(x)}};
        emit_report(r, com_lq);
    });

    auto* c_lp = c_leontief->add_subcommand("price", "p = (I-A')^-1 v_c");
    auto path_lp = std::make_shared<std::string>();
    auto va_lp = std::make_shared<std::string>();
    c_lp->add_option("table", *path_lp, "IOT-CSV file")->required();
    c_lp->add_option("--value-added", *va_lp,
                     "value added per unit of output (one value per line)");
    Common& com_lp = state.add_common(c_lp);
    c_lp->callback([&com_lp, path_lp, va_lp] {
        const double tol = resolve_tol(com_lp, kDefaultBalanceTol);
        const MonetaryTable t = load_table(*path_lp, tol);
        const Matrix a = technical_coefficients(t);
        Vector vc;
        if (va_lp->empty()) {
            vc.resize(t.size());
            for (std::size_t j = 0; j < t.size(); ++j)
                vc[j] = t.value_added[j] / t.total_output[j];
        } else {
            vc = load_vector(*va_lp, t.size());
        }
        const Vector p = price_model(a, vc);
        AnalysisReport r;
        r.kind = "leontief-price";
        r.inputs["table"] = describe_input_file(*path_lp);
        if (!va_lp->empty())
            r.inputs["value_added"] = describe_input_file(*va_lp);
        r.results = {{"value_added_per_unit", to_json(vc)}, {"prices", to_json(p)}};
        emit_report(r, com_lp);
    });

    auto* c_li = c_leontief->add_subcommand("inverse", "total requirements (I-A)^-1");
    auto path_li = std::make_shared<std::string>();
    c_li->add_option("table", *path_li, "IOT-CSV file")->required();
    Common& com_li = state.add_common(c_li);
    c_li->callback([&com_li, path_li] {
        const double tol = resolve_tol(com_li, kDefaultBalanceTol);
        const MonetaryTable t = load_table(*path_li, tol);
        const LeontiefInverse inv = leontief_inverse(technical_coefficients(t));
        AnalysisReport r;
        r.kind = "leontief-inverse";
        r.inputs["table"] = describe_input_file(*path_li);
        r.results = {{"lambda", inv.lambda}, {"L", to_json(inv.total_requirements)}};
        emit_report(r, com_li);
    });

    // ---- productiveness ----
    auto* c_prod = app.add_subcommand("productiveness", "R = 1/lambda_A - 1");
    auto path_prod = std::make_shared<std::string>();
    auto closure_prod = std::make_shared<std::string>("open");
    c_prod->add_option("table", *path_prod, "IOT-CSV file")->required();
    c_prod->add_option("--closure", *closure_prod, "open|closed")
        ->check(CLI::IsMember({"open", "closed"}));
    Common& com_prod = state.add_common(c_prod);
    c_prod->callback([&com_prod, path_prod, closure_prod] {
        const double tol = resolve_tol(com_prod, kDefaultBalanceTol);
        const MonetaryTable t = load_table(*path_prod, tol);
        const Closure closure = *closure_prod == "closed" ? Closure::Closed : Closure::Open;
        const ProductivenessReport p =
            productiveness(technical_coefficients(t, closure), closure);
        AnalysisReport r;
        r.kind = "productiveness";
        r.inputs["table"] = describe_input_file(*path_prod);
        r.results = {{"lambda", p.lambda},
                     {"R", p.productiveness},
                     {"sectors", p.sectors},
                     {"construction", closure_name(p.construction)}};
        emit_report(r, com_prod);
    });

    // ---- surplus-ratio ----
    auto* c_sr = app.add_subcommand("surplus-ratio", "Y/K from an IOT");
    auto path_sr = std::make_shared<std::string>();
    c_sr->add_option("table", *path_sr, "IOT-CSV file")->required();
    Common& com_sr = state.add_common(c_sr);
    c_sr->callback([&com_sr, path_sr] {
        const double tol = resolve_tol(com_sr, kDefaultBalanceTol);
        const MonetaryTable t = load_table(*path_sr, tol);
        const SurplusReport s = surplus_ratio(t);
        AnalysisReport r;
        r.kind = "surplus-ratio";
        r.inputs["table"] = describe_input_file(*path_sr);
        r.results = {{"Y", s.gdp}, {"K", s.capital}, {"ratio", s.ratio}};
        emit_report(r, com_sr);
    });

    // ---- aggregate ----
    auto* c_agg = app.add_subcommand("aggregate", "merge sectors by a grouping map");
    auto path_agg = std::make_shared<std::string>();
    auto map_agg = std::make_shared<std::string>();
    auto out_agg = std::make_shared<std::string>();
    c_agg->add_option("table", *path_agg, "IOT-CSV file")->required();
    c_agg->add_option("--map", *map_agg, "aggregation map CSV (source_sector,group_name)")
        ->required();
    c_agg->add_option("--out", *out_agg, "write the aggregated IOT-CSV here");
    Common& com_agg = state.add_common(c_agg);
    c_agg->callback([&com_agg, path_agg, map_agg, out_agg] {
        const double tol = resolve_tol(com_agg, kDefaultBalanceTol);
        const MonetaryTable t = load_table(*path_agg, tol);
        std::ifstream mapin(*map_agg);
        if (!mapin)
            throw IoFailure("cannot open map file '" + *map_agg + "'");
        const AggregationMap map = parse_aggregation_map(mapin, t.sectors);
        const MonetaryTable agg = aggregate(t, map, tol);
        AnalysisReport r;
        r.kind = "aggregate";
        r.inputs["table"] = describe_input_file(*path_agg);
        r.inputs["map"] = describe_input_file(*map_agg);
        r.results = {{"groups", agg.sectors},
                     {"Z", to_json(agg.inter_industry)},
                     {"final_demand", to_json(agg.final_demand)},
                     {"value_added", to_json(agg.value_added)},
                     {"total_output", to_json(agg.total_output)}};
        emit_report(r, com_agg);
        if (!out_agg->empty()) {
            std::ostringstream body;
            write_iot(agg, body);
            atomic_write_file(*out_agg, body.str());
        }
    });

    // ---- sraffa ----
    auto* c_sraffa = app.add_subcommand("sraffa", "physical production-price analyses");
    c_sraffa->require_subcommand(1);

    auto* c_sub = c_sraffa->add_subcommand("subsistence", "self-replacing prices");
    auto path_sub = std::make_shared<std::string>();
    c_sub->add_option("system", *path_sub, "physical-system CSV")->required();
    Common& com_sub = state.add_common(c_sub);
    c_sub->callback([&com_sub, path_sub] {
        const PhysicalSystem ps = load_physical(*path_sub);
        const SraffaSolution sol = subsistence_prices(ps);
        AnalysisReport r;
        r.kind = "sraffa-subsistence";
        r.inputs["system"] = describe_input_file(*path_sub);
        r.results = solution_json(sol);
        r.results["lambda"] = frobenius_eigen(physical_tech_matrix(ps)).lambda;
        r.warnings = sol.warnings;
        emit_report(r, com_sub);
    });

    auto* c_solve = c_sraffa->add_subcommand("solve", "prices at a given r or w");
    auto path_solve = std::make_shared<std::string>();
    auto num_solve = std::make_shared<std::string>();
    auto rate_solve = std::make_shared<double>(std::nan(""));
    auto wage_solve = std::make_shared<double>(std::nan(""));
    c_solve->add_option("system", *path_solve, "physical-system CSV")->required();
    auto* opt_rate = c_solve->add_option("--rate", *rate_solve, "uniform profit rate");
    auto* opt_wage = c_solve->add_option("--wage", *wage_solve, "uniform wage rate");
    opt_rate->excludes(opt_wage);
    c_solve->add_option("--numeraire", *num_solve, "commodity:<name>|net|standard");
    Common& com_solve = state.add_common(c_solve);
    c_solve->callback([&com_solve, path_solve, num_solve, rate_solve, wage_solve] {
        const PhysicalSystem ps = load_physical(*path_solve);
        const Numeraire num = parse_numeraire(*num_solve, ps);
        if (std::isnan(*rate_solve) == std::isnan(*wage_solve))
            throw ValidationError("exactly one of --rate or --wage is required");
        const SraffaSolution sol = std::isnan(*wage_solve)
                                       ? surplus_solve_rate(ps, *rate_solve, num)
                                       : surplus_solve_wage(ps, *wage_solve, num);
        AnalysisReport r;
        r.kind = "sraffa-solve";
        r.inputs["system"] = describe_input_file(*path_solve);
        r.results = solution_json(sol);
        r.warnings = sol.warnings;
        emit_report(r, com_solve);
    });

    auto* c_front = c_sraffa->add_subcommand("frontier", "sampled wage-profit frontier");
    auto path_front = std::make_shared<std::string>();
    auto num_front = std::make_shared<std::string>();
    auto samples_front = std::make_shared<std::size_t>(11);
    auto csv_front = std::make_shared<std::string>();
    c_front->add_option("system", *path_front, "physical-system CSV")->required();
    c_front->add_option("--samples", *samples_front, "number of r samples (>= 2)");
    c_front->add_option("--numeraire", *num_front, "commodity:<name>|net|standard");
    c_front->add_option("--csv", *csv_front, "write r,w,p samples to this CSV");
    Common& com_front = state.add_common(c_front);
    c_front->callback([&com_front, path_front, num_front, samples_front, csv_front] {
        const PhysicalSystem ps = load_physical(*path_front);
        const Numeraire num = parse_numeraire(*num_front, ps);
        const auto points = wage_profit_frontier(ps, *samples_front, num);
        AnalysisReport r;
        r.kind = "sraffa-frontier";
        r.inputs["system"] = describe_input_file(*path_front);
        nlohmann::json samples = nlohmann::json::array();
        for (const auto& pt : points)
            samples.push_back({{"r", pt.profit_rate},
                               {"w", pt.wage},
                               {"prices", to_json(pt.prices)}});
        r.results = {{"R", max_profit_rate(ps).productiveness},
                     {"numeraire", num.describe(ps)},
                     {"samples", samples}};
        emit_report(r, com_front);
        if (!csv_front->empty()) {
            std::ostringstream body;
            emit_frontier_csv(points, body);
            atomic_write_file(*csv_front, body.str());
        }
    });

    auto* c_std = c_sraffa->add_subcommand("standard", "standard system and ratio R");
    auto path_std = std::make_shared<std::string>();
    c_std->add_option("system", *path_std, "physical-system CSV")->required();
    Common& com_std = state.add_common(c_std);
    c_std->callback([&com_std, path_std] {
        const PhysicalSystem ps = load_physical(*path_std);
        const StandardSystem s = standard_system(ps);
        AnalysisReport r;
        r.kind = "sraffa-standard";
        r.inputs["system"] = describe_input_file(*path_std);
        r.results = {{"multipliers", to_json(s.multipliers)},
                     {"R", s.max_rate},
                     {"standard_net_product", to_json(s.standard_net_product)},
                     {"multiplier_normalization", "total labor = 1"}};
        emit_report(r, com_std);
    });

    auto* c_basics = c_sraffa->add_subcommand("basics", "basic/non-basic classification");
    auto path_basics = std::make_shared<std::string>();
    c_basics->add_option("system", *path_basics, "physical-system CSV")->required();
    Common& com_basics = state.add_common(c_basics);
    c_basics->callback([&com_basics, path_basics] {
        const PhysicalSystem ps = load_physical(*path_basics);
        const BasicsPartition parts = classify_basics(ps);
        AnalysisReport r;
        r.kind = "sraffa-basics";
        r.inputs["system"] = describe_input_file(*path_basics);
        std::vector<std::string> basics, non_basics;
        for (std::size_t i : parts.basics)
            basics.push_back(ps.commodities[i]);
        for (std::size_t i : parts.non_basics)
            non_basics.push_back(ps.commodities[i]);
        r.results = {{"basics", basics}, {"non_basics", non_basics}};
        emit_report(r, com_basics);
    });

    // ---- joint ----
    auto* c_joint = app.add_subcommand("joint", "joint-production analyses");
    c_joint->require_subcommand(1);

    auto* c_jsolve = c_joint->add_subcommand("solve", "joint prices at a given r or w");
    auto path_jsolve = std::make_shared<std::string>();
    auto num_jsolve = std::make_shared<std::string>();
    auto rate_jsolve = std::make_shared<double>(std::nan(""));
    auto wage_jsolve = std::make_shared<double>(std::nan(""));
    c_jsolve->add_option("system", *path_jsolve, "physical-system CSV with joint_outputs")
        ->required();
    auto* jopt_rate = c_jsolve->add_option("--rate", *rate_jsolve, "uniform profit rate");
    auto* jopt_wage = c_jsolve->add_option("--wage", *wage_jsolve, "uniform wage rate");
    jopt_rate->excludes(jopt_wage);
    c_jsolve->add_option("--numeraire", *num_jsolve, "commodity:<name>|net");
    Common& com_jsolve = state.add_common(c_jsolve);
    c_jsolve->callback([&com_jsolve, path_jsolve, num_jsolve, rate_jsolve, wage_jsolve] {
        const PhysicalSystem ps = load_physical(*path_jsolve);
        const Numeraire num = parse_numeraire(*num_jsolve, ps);
        if (std::isnan(*rate_jsolve) == std::isnan(*wage_jsolve))
            throw ValidationError("exactly one of --rate or --wage is required");
        const SraffaSolution sol = std::isnan(*wage_jsolve)
                                       ? joint_surplus_solve_rate(ps, *rate_jsolve, num)
                                       : joint_surplus_solve_wage(ps, *wage_jsolve, num);
        AnalysisReport r;
        r.kind = "joint-solve";
        r.inputs["system"] = describe_input_file(*path_jsolve);
        r.results = solution_json(sol);
        r.warnings = sol.warnings;
        emit_report(r, com_jsolve);
    });

    auto* c_pas = c_joint->add_subcommand("pasinetti", "H = (F'-S')^-1 S'");
    auto path_pas = std::make_shared<std::string>();
    c_pas->add_option("system", *path_pas, "physical-system CSV with joint_outputs")
        ->required();
    Common& com_pas = state.add_common(c_pas);
    c_pas->callback([&com_pas, path_pas] {
        const PhysicalSystem ps = load_physical(*path_pas);
        const Matrix h = pasinetti_matrix(ps);
        const DominantEigen eig = dominant_eigen(h);
        AnalysisReport r;
        r.kind = "joint-pasinetti";
        r.inputs["system"] = describe_input_file(*path_pas);
        r.results = {{"H", to_json(h)},
                     {"dominant_eigenvalue", eig.lambda},
                     {"implied_max_rate", eig.lambda != 0.0 ? 1.0 / eig.lambda : 0.0}};
        emit_report(r, com_pas);
    });

    // ---- gdp-table ----
    auto* c_gdp = app.add_subcommand("gdp-table", "stochastic similarity table");
    auto path_gdp = std::make_shared<std::string>();
    auto prices_gdp = std::make_shared<std::string>();
    c_gdp->add_option("system", *path_gdp, "physical-system CSV (interindustrial: Se = q)")
        ->required();
    c_gdp->add_option("--prices", *prices_gdp,
                      "price vector file; defaults to unit prices");
    Common& com_gdp = state.add_common(c_gdp);
    c_gdp->callback([&com_gdp, path_gdp, prices_gdp] {
        const double tol = resolve_tol(com_gdp, kInterindustrialTol);
        const PhysicalSystem ps = load_physical(*path_gdp);
        AnalysisReport r;
        r.kind = "gdp-table";
        r.inputs["system"] = describe_input_file(*path_gdp);
        Vector prices;
        if (prices_gdp->empty()) {
            prices.assign(ps.size(), 1.0);
            r.warnings.push_back("no observed prices: unit-price convention p = e applied");
        } else {
            prices = load_vector(*prices_gdp, ps.size());
            r.inputs["prices"] = describe_input_file(*prices_gdp);
        }
        const GdpTable g = build_gdp_table(ps.inputs, ps.outputs, prices, tol);
        const VerificationReport v = verify_gdp_table(g, kGdpVerifyTol);
        nlohmann::json relations = nlohmann::json::array();
        for (const auto& rel : v.relations)
            relations.push_back(
                {{"name", rel.name}, {"deviation", rel.deviation}, {"pass", rel.pass}});
        r.results = {{"x", to_json(g.value)},
                     {"p", to_json(g.price)},
                     {"q", to_json(g.quantity)},
                     {"D", to_json(g.distribution)},
                     {"relations", relations},
                     {"all_pass", v.all_pass},
                     {"verification_tol", v.tol}};
        emit_report(r, com_gdp);
    });

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 64;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

} // namespace iota
