#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tetra/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
    json j;
};

Run run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = tetra::cli::run(args, out, err);
    Run r{code, out.str(), err.str(), json()};
    if (!r.out.empty() && r.out.front() == '{') r.j = json::parse(r.out);
    return r;
}

}  // namespace

TEST_CASE("member: interior point, exit 0, schema fields present") {
    const Run r = run_cli({"--no-timestamp", "member", "--x1", "0", "--x2", "0", "--x3", "0"});
    CHECK(r.code == 0);
    CHECK(r.j["schema"] == "tetra/1");
    CHECK(r.j["command"] == "member");
    CHECK(r.j["result"]["status"] == "interior");
    CHECK(r.j["result"]["margin"].get<double>() > 0.99);
    CHECK_FALSE(r.j.contains("timestamp"));
}

TEST_CASE("member: outside point and complex literals") {
    const Run r = run_cli({"--no-timestamp", "member", "--x1", "0.9", "--x2", "0.9", "--x3", "0"});
    CHECK(r.code == 0);
    CHECK(r.j["result"]["status"] == "outside");

    const Run b = run_cli({"--no-timestamp", "member", "--x1", "0.1+0.2i", "--x2", "-0.1i",
                           "--x3", "0.05"});
    CHECK(b.code == 0);
    CHECK(b.j["result"]["status"] == "interior");
}

TEST_CASE("malformed input exits 2 with a diagnostic") {
    const Run r = run_cli({"member", "--x1", "zebra", "--x2", "0", "--x3", "0"});
    CHECK(r.code == 2);
    CHECK(!r.err.empty());
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"no-such-command"}).code == 2);
}

TEST_CASE("help exits 0") {
    const Run r = run_cli({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("member") != std::string::npos);
}

TEST_CASE("radius reports the inscribed polydisk radius") {
    const Run r = run_cli({"--no-timestamp", "radius", "--tol", "1e-5"});
    CHECK(r.code == 0);
    CHECK(std::abs(r.j["result"]["radius"].get<double>() - 1.0 / 3.0) <= 1e-5);
}

TEST_CASE("eval computes value and gradient") {
    const Run r = run_cli({"--no-timestamp", "eval", "--poly", "1,1,0=1;0,0,2=1", "--x1", "0.5",
                           "--x2", "0.2", "--x3", "0.1"});
    CHECK(r.code == 0);
    CHECK(r.j["result"]["value"][0].get<double>() == doctest::Approx(0.11).epsilon(1e-12));
    CHECK(r.j["result"]["value"][1].get<double>() == doctest::Approx(0.0));
    CHECK(r.j["result"]["gradient"][0][0].get<double>() == doctest::Approx(0.2));
    CHECK(r.j["result"]["gradient"][2][0].get<double>() == doctest::Approx(0.2));
}

TEST_CASE("supnorm of z3 is 1") {
    const Run r = run_cli({"--no-timestamp", "supnorm", "--poly", "0,0,1=1", "--nsamples", "200"});
    CHECK(r.code == 0);
    CHECK(r.j["result"]["sup_lower_estimate"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("knese: clean pass exits 0, uncertified bound exits 2") {
    const Run ok = run_cli({"--no-timestamp", "knese", "--poly", "1,0,0=0.5;0,1,0=0.5",
                            "--nsamples", "500"});
    CHECK(ok.code == 0);
    CHECK(ok.j["result"]["violation"] == false);
    CHECK(ok.j["result"]["max_violation"].get<double>() <= 1e-9);

    const Run bad = run_cli({"knese", "--poly", "1,0,0=2"});
    CHECK(bad.code == 2);
}

TEST_CASE("certify: certified exits 0, rejected exits 1") {
    const Run ok = run_cli({"--no-timestamp", "certify", "--l1", "0.2", "--l2", "0.1", "--l3",
                            "0.15"});
    CHECK(ok.code == 0);
    CHECK(ok.j["result"]["schwarz_path"]["verdict"] == "certified");

    const Run bad = run_cli({"--no-timestamp", "certify", "--l1", "0.4", "--l2", "0.1", "--l3",
                             "0.15"});
    CHECK(bad.code == 1);
    CHECK(bad.j["result"]["schwarz_path"]["verdict"] == "not-certified");
}

TEST_CASE("certify --sampling runs the spot-check") {
    const Run r = run_cli({"--no-timestamp", "--seed", "3", "certify", "--l1", "0.2", "--l2",
                           "0.1", "--l3", "0.15", "--sampling", "--npolys", "20", "--nsamples",
                           "150"});
    CHECK(r.code == 0);
    CHECK(r.j["result"]["sampling"]["verdict"] == "statistical-pass");
    CHECK(r.j["result"]["sampling"]["details"]["max_ratio"].get<double>() <= 1.05);
}

TEST_CASE("fundamental and commutator report the reference family values") {
    const Run f = run_cli({"--no-timestamp", "fundamental", "--l1", "0.2", "--l2", "0.1", "--l3",
                           "0.15"});
    CHECK(f.code == 0);
    CHECK(f.j["result"]["f1"][0][1][0].get<double>() == doctest::Approx(0.20228872).epsilon(1e-6));
    CHECK(f.j["result"]["solve_residual"].get<double>() <= 1e-12);

    const Run c = run_cli({"--no-timestamp", "commutator", "--l1", "0.2", "--l2", "0.1", "--l3",
                           "0.15"});
    CHECK(c.code == 0);
    const double n = c.j["result"]["commutator_norm"].get<double>();
    CHECK(n == doctest::Approx(0.0046563).epsilon(1e-4));
    CHECK(c.j["result"]["closed_form_norm"].get<double>() == doctest::Approx(n).epsilon(1e-12));
}

TEST_CASE("verify-dilation reports small residuals for the commuting case") {
    const Run r = run_cli({"--no-timestamp", "verify-dilation", "--l1", "0.1", "--l2", "0.1",
                           "--l3", "0.15"});
    CHECK(r.code == 0);
    CHECK(r.j["result"]["coinvariance"].get<double>() <= 1e-12);
    CHECK(r.j["result"]["commutation_interior"].get<double>() <= 1e-10);
}

TEST_CASE("counterexample: reference lambda exits 0, inadmissible lambda exits 2") {
    const Run ok = run_cli({"--no-timestamp", "counterexample", "--l1", "0.2", "--l2", "0.1",
                            "--l3", "0.15"});
    CHECK(ok.code == 0);
    CHECK(ok.j["result"]["commutator_norm"].get<double>() ==
          doctest::Approx(0.0046563).epsilon(1e-4));
    CHECK(ok.j["result"]["explicit_dilation_constructed"] == false);
    CHECK(ok.err.find("[F1, F2]") != std::string::npos);

    CHECK(run_cli({"counterexample", "--l1", "0.2", "--l2", "0.2", "--l3", "0.15"}).code == 2);
}

TEST_CASE("batch produces the requested number of certified records") {
    const Run r = run_cli({"--no-timestamp", "--seed", "9", "batch", "--count", "3"});
    CHECK(r.code == 0);
    REQUIRE(r.j["result"]["records"].size() == 3);
    for (const auto& rec : r.j["result"]["records"]) {
        CHECK(rec["verdict"] == "certified");
        CHECK(rec["commutator_norm"].get<double>() > 0.0);
    }
}

TEST_CASE("fixed seed and --no-timestamp give byte-identical output") {
    const std::vector<std::string> args{"--no-timestamp", "--seed", "7", "boundary-sample",
                                        "--n", "25"};
    const Run a = run_cli(args), b = run_cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const Run c = run_cli({"--no-timestamp", "--seed", "8", "boundary-sample", "--n", "25"});
    CHECK(a.out != c.out);
}

TEST_CASE("--out writes the report to a file") {
    const std::string path = "cli_test_report.json";
    const Run r = run_cli({"--no-timestamp", "--out", path, "radius", "--tol", "1e-4"});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    REQUIRE(f.good());
    json j;
    f >> j;
    CHECK(std::abs(j["result"]["radius"].get<double>() - 1.0 / 3.0) <= 1e-4);
    f.close();
    std::remove(path.c_str());
}
