#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "catenoid/cli.hpp"

using namespace catenoid;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli: normalize") {
    CliResult r = run({"normalize", "W*U"});
    CHECK(r.code == 0);
    CHECK(r.out == "U*W + hbar*W\n");

    CliResult js = run({"normalize", "W*U", "--format", "structured"});
    auto doc = nlohmann::json::parse(js.out);
    CHECK(doc["schema"] == 1);
    CHECK(doc["command"] == "normalize");
    CHECK(doc["inputs"]["expr"] == "W*U");
    CHECK(doc["result"] == "U*W + hbar*W");
}

TEST_CASE("cli: mul, star, derive") {
    CHECK(run({"mul", "R*W", "R*W"}).out == "q^2*R^2*W^2\n");
    CHECK(run({"star", "R*W"}).out == "q^-2*R*W^-1\n");
    CHECK(run({"derive", "--op", "dv", "W"}).out == "i*W\n");
    CHECK(run({"derive", "--op", "d", "W^-1"}).out == "-1/2*W^-1\n");
}

TEST_CASE("cli: diamond-check") {
    CliResult r = run({"diamond-check"});
    CHECK(r.code == 0);
    CHECK(r.out.find("ambiguities: 20, all resolvable") != std::string::npos);

    // global flags are accepted on either side of the subcommand
    CliResult js = run({"diamond-check", "--format", "structured"});
    auto doc = nlohmann::json::parse(js.out);
    CHECK(doc["schema"] == 1);
    CHECK(doc["result"]["count"] == 20);
    CHECK(doc["result"]["all_resolvable"] == true);
    CHECK(doc["result"]["overlaps"].size() == 20);
}

TEST_CASE("cli: harmonic-check") {
    CliResult r = run({"harmonic-check"});
    CHECK(r.code == 0);
    CHECK(r.out.find("Delta(X^1) = 0: PASS") != std::string::npos);
    CHECK(r.out.find("Delta(X^2) = 0: PASS") != std::string::npos);
    CHECK(r.out.find("Delta(X^3) = 0: PASS") != std::string::npos);
}

TEST_CASE("cli: total-curvature is -4 pi") {
    CliResult r = run({"--format", "structured", "total-curvature", "--metric",
                       "conformal-catenoid", "--hbar", "0.5"});
    CHECK(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    double v = doc["result"].get<double>();
    CHECK(std::abs(v + 4.0 * std::numbers::pi) < 1e-6);
    CHECK(doc.contains("quadrature"));
}

TEST_CASE("cli: integrate tau0") {
    CliResult r = run({"--format", "structured", "integrate", "tau0", "inv(1+U^2)",
                       "--hbar", "0"});
    CHECK(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(std::abs(doc["result"]["re"].get<double>() -
                   2.0 * std::numbers::pi * std::numbers::pi) < 1e-6);
    CHECK(doc["quadrature"]["tail_substituted"] == true);
}

TEST_CASE("cli: phi-eval") {
    CliResult r = run({"--format", "structured", "phi-eval", "--u", "1", "R"});
    auto doc = nlohmann::json::parse(r.out);
    CHECK(std::abs(doc["result"]["re"].get<double>() - std::exp(1.0)) < 1e-12);
}

TEST_CASE("cli: curvature-report with a grid") {
    CliResult r = run({"--format", "structured", "curvature-report", "--metric",
                       "conformal-catenoid", "--grid", "0:1:0.5", "--hbar", "0"});
    CHECK(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["result"].contains("gaussian"));
    auto phi0 = doc["result"]["gaussian"]["phi"][0];
    CHECK(std::abs(phi0["value"]["re"].get<double>() - (-0.5)) < 1e-9);

    // non-conformal metric: no gaussian entry
    CliResult ind = run({"--format", "structured", "curvature-report"});
    auto ind_doc = nlohmann::json::parse(ind.out);
    CHECK_FALSE(ind_doc["result"].contains("gaussian"));
}

TEST_CASE("cli: bimodule-verify") {
    CliResult r = run({"--format", "structured", "bimodule-verify", "--hbar", "1",
                       "--hbarp", "2", "--eps", "1", "--r", "1", "--rp", "2"});
    CHECK(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["result"]["max_residual"].get<double>() < 1e-10);
    CHECK(std::abs(doc["result"]["measured_curvature"]["im"].get<double>() + 0.5) < 1e-9);
    CHECK(doc["residuals"].size() == 49);
}

TEST_CASE("cli: laplacian") {
    // Delta(U) = 0 under any metric; Delta(U^2) = (S^-1 + T^-1)/2
    CHECK(run({"laplacian", "U"}).out == "0\n");
    CliResult r = run({"laplacian", "--metric", "conformal-catenoid", "U^2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("R^2") != std::string::npos);  // S appears in a denominator
}

TEST_CASE("cli: integrate tauh") {
    CliResult r = run({"--format", "structured", "integrate", "tauh",
                       "inv(1+U^2) * inv((R^2 + 2 + R^-2)/4)", "--metric",
                       "conformal-catenoid", "--hbar", "1"});
    CHECK(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    // weights cancel: 4 pi Int (1+u^2)^-1 = 4 pi^2
    CHECK(std::abs(doc["result"]["re"].get<double>() -
                   4.0 * std::numbers::pi * std::numbers::pi) < 1e-6);
}

TEST_CASE("cli: bimodule-verify with explicit parameters") {
    CliResult r = run({"--format", "structured", "bimodule-verify", "--hbar", "1",
                       "--hbarp", "2", "--left", "-2", "1", "1", "1", "--right", "-2", "2",
                       "1", "2"});
    CHECK(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["result"]["max_residual"].get<double>() < 1e-10);
}

TEST_CASE("cli: exit codes") {
    // parse error in the expression grammar
    CliResult parse_fail = run({"normalize", "U +"});
    CHECK(parse_fail.code == 2);
    CHECK(parse_fail.err.find("SyntaxError") != std::string::npos);
    CHECK(parse_fail.err.find("offset 3") != std::string::npos);

    // domain errors
    CHECK(run({"integrate", "tau0", "R"}).code == 1);
    CHECK(run({"mul", "inv(U)", "W"}).code == 1);
    CHECK(run({"bimodule-verify", "--hbar", "1", "--hbarp", "1"}).code == 1);

    // command-line usage errors
    CHECK(run({"no-such-command"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"derive", "--op", "dz", "W"}).code == 2);
    CHECK(run({"integrate", "inv(1+U^2)"}).code == 2);

    // phi is only defined on W-degree-zero elements
    CHECK(run({"phi-eval", "--u", "1", "R*W"}).code == 1);
}
