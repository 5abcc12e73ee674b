#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "iota/cli.hpp"
#include "iota/report.hpp"

using namespace iota;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    std::streambuf* old_out = std::cout.rdbuf(out.rdbuf());
    std::streambuf* old_err = std::cerr.rdbuf(err.rdbuf());
    CliRun r;
    r.code = run_cli(args);
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string fixture(const char* name) {
    return std::string(IOTA_FIXTURES_DIR "/") + name;
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "iota_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
}

nlohmann::json json_report(const fs::path& p) {
    return nlohmann::json::parse(slurp(p));
}

} // namespace

TEST_CASE("validate subcommand") {
    const CliRun r = run({"validate", fixture("two_sector.iot.csv")});
    CHECK(r.code == 0);
    CHECK(r.out.find("kind = validate") != std::string::npos);
    CHECK(r.out.find("total_output = 300") != std::string::npos);
}

TEST_CASE("usage and input errors map to the documented exit codes") {
    CHECK(run({}).code == 64);
    CHECK(run({"no-such-command"}).code == 64);
    CHECK(run({"validate"}).code == 64); // missing required argument
    const CliRun missing = run({"validate", "/nonexistent/table.csv"});
    CHECK(missing.code == 1);
    CHECK(missing.err.find("error:") != std::string::npos);
}

TEST_CASE("numerical failures exit with code 2") {
    // the monetized subsistence table has lambda_A = 1: not productive
    const CliRun r = run({"leontief", "inverse", fixture("wheatiron_monetized.iot.csv")});
    CHECK(r.code == 2);
    CHECK(r.err.find("not productive") != std::string::npos);
}

TEST_CASE("coefficients reports A and the closure used") {
    const fs::path out = scratch_dir() / "coeff.json";
    const CliRun r =
        run({"coefficients", fixture("two_sector.iot.csv"), "--json", out.string()});
    CHECK(r.code == 0);
    const nlohmann::json j = json_report(out);
    CHECK(j["kind"] == "coefficients");
    CHECK(j["results"]["construction"] == "open");
    CHECK(j["results"]["A"][0][0].get<double>() == doctest::Approx(0.1));
    CHECK(j["results"]["A"][1][0].get<double>() == doctest::Approx(0.3));
    CHECK(j["inputs"]["table"].contains("fnv1a64"));

    const CliRun closed = run({"coefficients", fixture("two_sector.iot.csv"),
                               "--closure", "closed"});
    CHECK(closed.code == 0);
    CHECK(closed.out.find("construction = \"closed\"") != std::string::npos);
}

TEST_CASE("leontief quantity on a productive table") {
    const fs::path out = scratch_dir() / "quantity.json";
    const CliRun r = run({"leontief", "quantity", fixture("two_sector.iot.csv"),
                          "--json", out.string()});
    CHECK(r.code == 0);
    const nlohmann::json j = json_report(out);
    // solving with the table's own final demand reproduces total output
    CHECK(j["results"]["output"][0].get<double>() == doctest::Approx(100.0));
    CHECK(j["results"]["output"][1].get<double>() == doctest::Approx(200.0));
}

TEST_CASE("productiveness and surplus-ratio") {
    const fs::path out = scratch_dir() / "prod.json";
    CHECK(run({"productiveness", fixture("two_sector.iot.csv"), "--json", out.string()})
              .code == 0);
    const nlohmann::json j = json_report(out);
    const double lambda = j["results"]["lambda"].get<double>();
    CHECK(j["results"]["R"].get<double>() == doctest::Approx(1.0 / lambda - 1.0));

    const fs::path sr = scratch_dir() / "sr.json";
    CHECK(run({"surplus-ratio", fixture("two_sector.iot.csv"), "--json", sr.string()})
              .code == 0);
    const nlohmann::json s = json_report(sr);
    CHECK(s["results"]["Y"].get<double>() == 200.0);
    CHECK(s["results"]["K"].get<double>() == 100.0);
    CHECK(s["results"]["ratio"].get<double>() == 2.0);
}

TEST_CASE("aggregate to one sector and re-analyze") {
    const fs::path agg = scratch_dir() / "aggregated.iot.csv";
    const CliRun r = run({"aggregate", fixture("two_sector.iot.csv"), "--map",
                          fixture("two_to_one.map.csv"), "--out", agg.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("Z[0] = [100]") != std::string::npos);

    const fs::path prod = scratch_dir() / "agg_prod.json";
    CHECK(run({"productiveness", agg.string(), "--json", prod.string()}).code == 0);
    const nlohmann::json j = json_report(prod);
    CHECK(j["results"]["lambda"].get<double>() == doctest::Approx(100.0 / 300.0).epsilon(1e-15));
}

TEST_CASE("sraffa subcommands") {
    SUBCASE("subsistence prices") {
        const fs::path out = scratch_dir() / "sub.json";
        CHECK(run({"sraffa", "subsistence", fixture("wheatiron_subsistence.phys.csv"),
                   "--json", out.string()})
                  .code == 0);
        const nlohmann::json j = json_report(out);
        CHECK(j["results"]["prices"][0].get<double>() == doctest::Approx(1.0));
        CHECK(j["results"]["prices"][1].get<double>() == doctest::Approx(10.0).epsilon(1e-9));
        CHECK(j["results"]["lambda"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("solve needs exactly one of --rate/--wage") {
        CHECK(run({"sraffa", "solve", fixture("wheatiron_surplus.phys.csv")}).code == 1);
        CHECK(run({"sraffa", "solve", fixture("wheatiron_surplus.phys.csv"), "--rate",
                   "0.1", "--wage", "1"})
                  .code == 64);
    }
    SUBCASE("solve at the maximum rate") {
        const fs::path out = scratch_dir() / "solve.json";
        CHECK(run({"sraffa", "solve", fixture("wheatiron_surplus.phys.csv"), "--rate",
                   "0.25", "--json", out.string()})
                  .code == 0);
        const nlohmann::json j = json_report(out);
        CHECK(j["results"]["w"].get<double>() == 0.0);
        CHECK(j["results"]["prices"][1].get<double>() == doctest::Approx(15.0).epsilon(1e-9));
        CHECK(j["results"]["numeraire"] == "commodity:wheat");
    }
    SUBCASE("solve with a named numeraire commodity") {
        const fs::path out = scratch_dir() / "solve_iron.json";
        CHECK(run({"sraffa", "solve", fixture("wheatiron_surplus.phys.csv"), "--rate",
                   "0.25", "--numeraire", "commodity:iron", "--json", out.string()})
                  .code == 0);
        const nlohmann::json j = json_report(out);
        CHECK(j["results"]["prices"][1].get<double>() == doctest::Approx(1.0));
        CHECK(run({"sraffa", "solve", fixture("wheatiron_surplus.phys.csv"), "--rate",
                   "0.1", "--numeraire", "commodity:gold"})
                  .code == 1);
    }
    SUBCASE("infeasible rate exits 1") {
        CHECK(run({"sraffa", "solve", fixture("wheatiron_surplus.phys.csv"), "--rate",
                   "0.5"})
                  .code == 1);
    }
    SUBCASE("standard system") {
        const fs::path out = scratch_dir() / "std.json";
        CHECK(run({"sraffa", "standard", fixture("wheatiron_surplus.phys.csv"),
                   "--json", out.string()})
                  .code == 0);
        const nlohmann::json j = json_report(out);
        CHECK(j["results"]["R"].get<double>() == doctest::Approx(0.25).epsilon(1e-9));
        CHECK(j["results"]["multipliers"][0].get<double>() == doctest::Approx(0.4).epsilon(1e-9));
    }
    SUBCASE("basics") {
        const CliRun r = run({"sraffa", "basics", fixture("wheatiron_surplus.phys.csv")});
        CHECK(r.code == 0);
        CHECK(r.out.find("basics = [\"wheat\", \"iron\"]") != std::string::npos);
        CHECK(r.out.find("non_basics = []") != std::string::npos);
    }
}

TEST_CASE("frontier CSV output") {
    const fs::path csv = scratch_dir() / "frontier.csv";
    const CliRun r = run({"sraffa", "frontier", fixture("wheatiron_surplus.phys.csv"),
                          "--samples", "11", "--numeraire", "standard", "--csv",
                          csv.string()});
    CHECK(r.code == 0);

    std::ifstream in(csv);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "r,w,p_1,p_2");
    double big_r = 0.25, worst = 0.0;
    std::size_t rows = 0;
    std::string line;
    double first_r = -1.0, last_r = -1.0, last_w = -1.0;
    while (std::getline(in, line)) {
        double rr, ww;
        char comma;
        std::istringstream row(line);
        row >> rr >> comma >> ww;
        if (rows == 0)
            first_r = rr;
        last_r = rr;
        last_w = ww;
        worst = std::max(worst, std::fabs(rr - big_r * (1.0 - ww)));
        ++rows;
    }
    CHECK(rows == 11);
    CHECK(first_r == 0.0);
    CHECK(last_r == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(last_w == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(worst <= 1e-8); // r = R(1 - w) under the standard numeraire
}

TEST_CASE("emit_frontier_csv round-trips values") {
    std::vector<FrontierPoint> pts{{0.0, 0.875, {1.0, 17.291666666666668}},
                                   {0.25, 0.0, {1.0, 15.0}}};
    std::ostringstream out;
    emit_frontier_csv(pts, out);
    std::istringstream back(out.str());
    std::string header;
    std::getline(back, header);
    CHECK(header == "r,w,p_1,p_2");
    std::size_t i = 0;
    std::string line;
    while (std::getline(back, line)) {
        std::istringstream row(line);
        double rr, ww, p1, p2;
        char c;
        row >> rr >> c >> ww >> c >> p1 >> c >> p2;
        CHECK(std::fabs(rr - pts[i].profit_rate) <= 1e-10);
        CHECK(std::fabs(ww - pts[i].wage) <= 1e-10);
        CHECK(std::fabs(p2 - pts[i].prices[1]) <= 1e-10);
        ++i;
    }
    CHECK(i == 2);
}

TEST_CASE("joint subcommands") {
    const fs::path out = scratch_dir() / "pasinetti.json";
    CHECK(run({"joint", "pasinetti", fixture("wheatiron_joint.phys.csv"), "--json",
               out.string()})
              .code == 0);
    const nlohmann::json j = json_report(out);
    CHECK(j["results"]["dominant_eigenvalue"].get<double>() == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(j["results"]["implied_max_rate"].get<double>() == doctest::Approx(0.25).epsilon(1e-8));

    const fs::path solved = scratch_dir() / "joint_solve.json";
    CHECK(run({"joint", "solve", fixture("wheatiron_joint.phys.csv"), "--rate", "0.25",
               "--json", solved.string()})
              .code == 0);
    const nlohmann::json js = json_report(solved);
    CHECK(js["results"]["prices"][1].get<double>() == doctest::Approx(15.0).epsilon(1e-8));
    CHECK(std::fabs(js["results"]["w"].get<double>()) <= 1e-8);
}

TEST_CASE("gdp-table subcommand") {
    const fs::path prices = scratch_dir() / "prices.txt";
    {
        std::ofstream out(prices);
        out << "1\n10\n";
    }
    const fs::path rep = scratch_dir() / "gdp.json";
    CHECK(run({"gdp-table", fixture("wheatiron_subsistence.phys.csv"), "--prices",
               prices.string(), "--json", rep.string()})
              .code == 0);
    const nlohmann::json j = json_report(rep);
    CHECK(j["results"]["all_pass"] == true);
    CHECK(j["results"]["relations"].size() == 12);
    CHECK(j["results"]["x"][0].get<double>() == doctest::Approx(400.0));
    CHECK(j["warnings"].empty());

    // without observed prices the unit-price convention is declared
    const CliRun unit = run({"gdp-table", fixture("wheatiron_subsistence.phys.csv")});
    CHECK(unit.code == 0);
    CHECK(unit.out.find("unit-price convention") != std::string::npos);

    // a surplus system is not interindustrial
    CHECK(run({"gdp-table", fixture("wheatiron_surplus.phys.csv")}).code == 1);
}

TEST_CASE("tolerance precedence: flag over environment over default") {
    const fs::path table = scratch_dir() / "slightly_off.iot.csv";
    {
        std::ofstream out(table);
        out << "sectors,a\na,0,100\nvalue_added,100,\ntotal_output,100.000001,\n";
    }
    CHECK(run({"validate", table.string()}).code == 0); // within the 1e-6 default

    setenv("IOTA_TOLERANCE", "1e-12", 1);
    CHECK(run({"validate", table.string()}).code == 1); // env tightens it
    CHECK(run({"validate", table.string(), "--tol", "1e-3"}).code == 0); // flag wins
    unsetenv("IOTA_TOLERANCE");
}

TEST_CASE("JSON reports are deterministic and round-trip") {
    const fs::path a = scratch_dir() / "det_a.json";
    const fs::path b = scratch_dir() / "det_b.json";
    const std::vector<std::vector<std::string>> invocations{
        {"validate", fixture("two_sector.iot.csv")},
        {"coefficients", fixture("two_sector.iot.csv")},
        {"distribution", fixture("two_sector.iot.csv")},
        {"leontief", "inverse", fixture("two_sector.iot.csv")},
        {"productiveness", fixture("two_sector.iot.csv")},
        {"surplus-ratio", fixture("two_sector.iot.csv")},
        {"sraffa", "subsistence", fixture("wheatiron_subsistence.phys.csv")},
        {"sraffa", "solve", fixture("wheatiron_surplus.phys.csv"), "--rate", "0.1"},
        {"sraffa", "frontier", fixture("wheatiron_surplus.phys.csv"), "--samples", "5"},
        {"sraffa", "standard", fixture("wheatiron_surplus.phys.csv")},
        {"sraffa", "basics", fixture("wheatiron_surplus.phys.csv")},
        {"joint", "pasinetti", fixture("wheatiron_joint.phys.csv")},
        {"gdp-table", fixture("wheatiron_subsistence.phys.csv")},
    };
    for (const auto& base : invocations) {
        auto with_json = base;
        with_json.push_back("--json");
        with_json.push_back(a.string());
        CHECK(run(with_json).code == 0);
        with_json.back() = b.string();
        CHECK(run(with_json).code == 0);
        INFO(base.front());
        CHECK(slurp(a) == slurp(b));

        // the written report parses back into an identical structure
        const nlohmann::json j = json_report(a);
        const AnalysisReport rep = AnalysisReport::from_json(j);
        CHECK(rep.to_json() == j);
    }
}

TEST_CASE("failed runs leave no partial JSON file") {
    const fs::path out = scratch_dir() / "never_written.json";
    std::error_code ec;
    fs::remove(out, ec);
    CHECK(run({"leontief", "inverse", fixture("wheatiron_monetized.iot.csv"), "--json",
               out.string()})
              .code == 2);
    CHECK_FALSE(fs::exists(out));
}
