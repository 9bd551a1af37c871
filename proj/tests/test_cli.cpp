#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "../tools/record.hpp"
#include "mobcone/cone.hpp"
#include "mobcone/counterex.hpp"
#include "mobcone/radial.hpp"

using mobcone_cli::OutputRecord;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(MOBCONE_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

std::string find_value(const OutputRecord& rec,
                       const std::vector<std::pair<std::string, std::string>>& pairs,
                       const std::string& key) {
    (void)rec;
    for (const auto& [k, v] : pairs)
        if (k == key) return v;
    FAIL("missing key: " << key);
    return {};
}

double find_double(const OutputRecord& rec,
                   const std::vector<std::pair<std::string, std::string>>& pairs,
                   const std::string& key) {
    std::string s = find_value(rec, pairs, key);
    if (s == "inf") return std::numeric_limits<double>::infinity();
    return std::stod(s);
}

}  // namespace

TEST_CASE("record round-trips through its parser") {
    OutputRecord rec;
    rec.command = "cone info";
    rec.version = "mobcone test";
    rec.add_param("family", "gamma-k");
    rec.add_param("n", 4);
    rec.add_result("mu_plus", 1.0 / 3.0);
    rec.add_result("mu_minus", std::numeric_limits<double>::infinity());
    rec.add_diagnostic("note", "free text with spaces");
    OutputRecord::Table t;
    t.name = "samples";
    t.columns = {"r", "v"};
    t.rows = {{1.0, -0.12345678901234567}, {2.5, 17.0}};
    rec.tables.push_back(t);

    OutputRecord back = OutputRecord::parse(rec.to_text());
    CHECK(back.command == rec.command);
    CHECK(back.version == rec.version);
    CHECK(back.params == rec.params);
    CHECK(back.results == rec.results);
    CHECK(back.diagnostics == rec.diagnostics);
    REQUIRE(back.tables.size() == 1);
    CHECK(back.tables[0].columns == t.columns);
    CHECK(back.tables[0].rows == t.rows);
    CHECK(back.to_text() == rec.to_text());

    CHECK_THROWS(OutputRecord::parse("not a record"));
    CHECK_THROWS(OutputRecord::parse("record mobcone/1\ncommand: x\n"));
}

TEST_CASE("cone info matches the direct library route") {
    RunResult r = run_cli("cone info --family gamma-k --k 2 --n 4");
    REQUIRE(r.exit_code == 0);
    OutputRecord rec = OutputRecord::parse(r.out);
    CHECK(find_double(rec, rec.results, "mu_plus") == doctest::Approx(1.0));
    CHECK(std::isinf(find_double(rec, rec.results, "mu_minus")));
    CHECK(find_value(rec, rec.results, "neg_lambda_star") == "boundary");

    mobcone::LambdaStarClass direct = mobcone::lambda_star_class(mobcone::ConeSpec::gamma_k(4, 2));
    CHECK(find_double(rec, rec.results, "mu_plus") == direct.mu_plus);
    CHECK(find_double(rec, rec.diagnostics, "neg_lambda_star_margin") == direct.neg_star.margin);
}

TEST_CASE("radial dirichlet emits the pinned log profile, identical to the library") {
    RunResult r = run_cli("radial dirichlet --a 1 --b 2.718281828 --alpha 0 --beta -1 "
                          "--cone gamma-1 --n 2 --samples 9");
    REQUIRE(r.exit_code == 0);
    OutputRecord rec = OutputRecord::parse(r.out);
    CHECK(find_value(rec, rec.results, "solvable") == "yes");
    CHECK(find_value(rec, rec.results, "regularity") == "smooth");

    mobcone::SolveReport direct = mobcone::solve_dirichlet(mobcone::ConeSpec::gamma_k(2, 1),
                                                           {1.0, 2.718281828, 0.0, -1.0});
    REQUIRE(rec.tables.size() == 1);
    for (const auto& row : rec.tables[0].rows) {
        double r_val = row[0], v = row[1];
        CHECK(v == direct.profile->v(r_val));           // bitwise: the same code path
        CHECK(std::fabs(v + std::log(r_val)) <= 1e-9);  // and the pinned -log r shape
    }
}

TEST_CASE("ode run reports drift, verdicts, and the trajectory table") {
    RunResult r = run_cli("ode run --gamma 1 --v0 0 --w0 0 --window 50 --max-rows 40");
    REQUIRE(r.exit_code == 0);
    OutputRecord rec = OutputRecord::parse(r.out);
    CHECK(find_value(rec, rec.results, "predicted") == "global");
    CHECK(find_value(rec, rec.results, "observed") == "global-on-window");
    CHECK(find_value(rec, rec.results, "agreement") == "yes");
    CHECK(find_double(rec, rec.results, "first_integral_drift") <= 1e-6);
    REQUIRE(rec.tables.size() == 1);
    CHECK(rec.tables[0].rows.size() == 40);
    for (const auto& row : rec.tables[0].rows) {
        double phi = row[1], w = row[2];
        CHECK(std::fabs(phi * phi + w * w - 1.0) <= 1e-6);
    }
}

TEST_CASE("counterexample blowup over the CLI") {
    RunResult r = run_cli("counterexample blowup --kind neg-sigma-half --n 4 --j 10");
    REQUIRE(r.exit_code == 0);
    OutputRecord rec = OutputRecord::parse(r.out);
    CHECK(find_double(rec, rec.results, "limit_constant") == doctest::Approx(24.0));
    CHECK(find_double(rec, rec.results, "max_identity_residual") <= 1e-8);
    CHECK(find_double(rec, rec.results, "min_grad_inner") >= 10.0);
    CHECK(find_value(rec, rec.results, "in_cone") == "yes");
}

TEST_CASE("symfun check over the CLI") {
    RunResult r = run_cli("symfun check --family sigma-k-root --k 2 --n 3 --samples 150");
    REQUIRE(r.exit_code == 0);
    OutputRecord rec = OutputRecord::parse(r.out);
    CHECK(find_value(rec, rec.results, "all_pass") == "yes");
    CHECK(find_value(rec, rec.results, "check.positivity") == "pass");

    RunResult g = run_cli("symfun check --gauge-from circular:0.3 --n 3 --samples 120");
    REQUIRE(g.exit_code == 0);
    OutputRecord grec = OutputRecord::parse(g.out);
    CHECK(find_value(grec, grec.results, "check.boundary-vanishing") == "pass");
}

TEST_CASE("verify bubble over the CLI and the pinned deviation") {
    RunResult r = run_cli("verify bubble --n 3 --a 1 --b 1");
    REQUIRE(r.exit_code == 0);
    OutputRecord rec = OutputRecord::parse(r.out);
    CHECK(find_double(rec, rec.results, "target") == doctest::Approx(2.0));
    CHECK(find_double(rec, rec.results, "max_deviation_analytic") <= 1e-9);
    CHECK(find_double(rec, rec.results, "max_deviation_fd") <= 1e-5);
}

TEST_CASE("ricci constants over the CLI") {
    RunResult r = run_cli("ricci constants --example weitzenbock --n 4 --p 2");
    REQUIRE(r.exit_code == 0);
    OutputRecord rec = OutputRecord::parse(r.out);
    CHECK(find_value(rec, rec.results, "pass") == "yes");
    CHECK(find_double(rec, rec.results, "value") == doctest::Approx(1.0));
    CHECK(find_double(rec, rec.diagnostics, "dictionary_roundtrip_max_err") <= 1e-12);
}

TEST_CASE("exit statuses: usage 2, numerical-domain failures distinct from parses") {
    CHECK(run_cli("cone info --family gamma-k --k 9 --n 4").exit_code == 2);
    CHECK(run_cli("cone info --no-such-flag 1").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
    CHECK(run_cli("ode run --gamma 1 --window -5").exit_code == 2);
}

TEST_CASE("csv output carries the same table") {
    RunResult r = run_cli("--csv ode run --gamma 1 --v0 0 --w0 0 --window 10 --max-rows 5");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("key,value") == 0);
    CHECK(r.out.find("# table trajectory") != std::string::npos);
    CHECK(r.out.find("t,phi,w,I") != std::string::npos);
}

TEST_CASE("--out writes the record to a file") {
    std::string path = "cli_out_test.record";
    RunResult r = run_cli("--out " + path + " cone info --family gamma-k --k 1 --n 3");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    OutputRecord rec = OutputRecord::parse(ss.str());
    CHECK(rec.command == "cone info");
    std::remove(path.c_str());
}

TEST_CASE("tolerance profile override through the environment") {
    std::string cmd = std::string("MOBCONE_TOLERANCES='boundary_tol=1e-4' ") + MOBCONE_CLI_PATH +
                      " cone info --family gamma-k --k 1 --n 3 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::string out;
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
    REQUIRE(WEXITSTATUS(pclose(pipe)) == 0);
    CHECK(OutputRecord::parse(out).command == "cone info");

    std::string bad = std::string("MOBCONE_TOLERANCES='nope=1' ") + MOBCONE_CLI_PATH +
                      " cone info 2>/dev/null";
    FILE* pipe2 = popen(bad.c_str(), "r");
    REQUIRE(pipe2 != nullptr);
    while (std::fread(buf.data(), 1, buf.size(), pipe2)) {
    }
    CHECK(WEXITSTATUS(pclose(pipe2)) == 2);
}
