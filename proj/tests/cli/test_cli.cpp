#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

using Json = nlohmann::json;

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("eurkit_cli_" + name)).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Run run(const std::string& args, const std::string& env = "") {
    const std::string err_path = temp_path("stderr.txt");
    const std::string cmd = env + " " + EURKIT_CLI + " " + args + " 2>" + err_path;
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err_path);
    return r;
}

}  // namespace

TEST_CASE("box momentum entropy") {
    const auto r = run("entropy --state named:box,a=1 --kind shannon --bin-k 6.2831853 --side momentum");
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(std::abs(j["value"].get<double>() - 0.530) < 1e-3);
}

TEST_CASE("uniform entropy is ln 8") {
    const auto r = run("entropy --state named:uniform8 --kind shannon");
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out)["value"].get<double>() == doctest::Approx(std::log(8.0)).epsilon(1e-11));
}

TEST_CASE("Renyi entropy of a state file") {
    const auto path = temp_path("uniform4.json");
    REQUIRE(run("state --state named:uniform4 --output " + path).code == 0);
    const auto r = run("entropy --state " + path + " --kind renyi --alpha 2");
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out)["value"].get<double>() == doctest::Approx(std::log(4.0)).epsilon(1e-11));
}

TEST_CASE("box worked sum via check") {
    const auto r = run("check --state named:box,a=1 --relation shannon-binned --bin-x 1 --bin-k 6.283185307179586");
    CHECK(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(std::abs(j["margin"].get<double>() - 0.916) < 1e-3);
    CHECK(j["satisfied"] == true);
}

TEST_CASE("Gaussian refined Heisenberg") {
    const auto r = run("check --state named:gaussian --relation refined-heisenberg");
    CHECK(r.code == 0);
    CHECK(std::abs(Json::parse(r.out)["margin"].get<double>()) < 1e-5);
}

TEST_CASE("corrupted state file exits 1 and names the invariant") {
    const auto path = temp_path("corrupt.json");
    std::ofstream(path) << R"({"type": "finite", "re": [0.5, 0.5], "im": [0, 0]})";
    const auto r = run("check --state " + path + " --relation maassen-uffink");
    CHECK(r.code == 1);
    CHECK(r.err.find("NotNormalized") != std::string::npos);
    CHECK(r.out.empty());
}

TEST_CASE("zero tolerance turns discretization noise into a reported violation") {
    // A wide Gaussian on 256 points loses ~1e-9 of entropy to the grid edges.
    const auto r = run("check --state named:gaussian,sigma=3,n=256 --relation shannon-continuous --tol 0");
    CHECK(r.code == 2);
    CHECK(Json::parse(r.out)["satisfied"] == false);
}

TEST_CASE("usage errors exit 1") {
    CHECK(run("").code == 1);
    CHECK(run("check --relation deutsch").code == 1);
    CHECK(run("check --state named:uniform4 --relation nope").code == 1);
    CHECK(run("bound --relation renyi-binned --alpha 2 --beta 2").code == 1);
    CHECK(run("stress --relation deutsch --trials 3", "EURKIT_SEED=abc").code == 1);
}

TEST_CASE("stress maassen-uffink") {
    const auto r = run("stress --relation maassen-uffink --dim 4 --trials 1000 --seed 42");
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["violations"] == 0);
    CHECK(j["trials"] == 1000);
}

TEST_CASE("seed falls back to the environment") {
    const auto a = run("stress --relation deutsch --trials 20", "EURKIT_SEED=9");
    const auto b = run("stress --relation deutsch --trials 20 --seed 9");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("saturation suite") {
    const auto r = run("suite --format csv");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("relation,params,lhs,rhs,margin,satisfied\n", 0) == 0);
    CHECK(r.out.find(",false\n") == std::string::npos);
}

TEST_CASE("probe output is byte-identical for a seed") {
    const std::string args = "probe --relation shannon-binned --family gaussian --seed 1 --restarts 2 --max-evals 60";
    const auto a = run(args);
    const auto b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(Json::parse(a.out)["gap"].get<double>() > 0.0);
}

TEST_CASE("bound and plot data") {
    const auto plot = temp_path("plot.csv");
    const auto r = run("bound --relation shannon-binned --bin-x 1 --plot-data " + plot);
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out)["rhs"].get<double>() == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-11));
    const auto text = slurp(plot);
    CHECK(text.rfind("parameter,value\n", 0) == 0);
    const auto again = temp_path("plot2.csv");
    run("bound --relation shannon-binned --bin-x 1 --plot-data " + again);
    CHECK(slurp(again) == text);
}

TEST_CASE("csv output and file output") {
    const auto out = temp_path("report.csv");
    const auto r = run("check --state named:dft-vector,dim=5,index=1 --relation maassen-uffink --format csv --output " + out);
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    const auto text = slurp(out);
    CHECK(text.find("maassen-uffink,basis=dft,1.60943791243,1.60943791243,") != std::string::npos);
}

TEST_CASE("example densities through the CLI") {
    const auto a = run("entropy --state named:example2,case=A --kind shannon --bin-x 0.25");
    const auto b = run("entropy --state named:example2,case=B --kind shannon --bin-x 0.25");
    CHECK(Json::parse(a.out)["value"].get<double>() == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-11));
    CHECK(Json::parse(b.out)["value"].get<double>() == doctest::Approx(std::log(2.0)).epsilon(1e-11));
    CHECK(run("check --state named:example1 --relation shannon-binned").code == 1);
}

TEST_CASE("relations listing") {
    const auto r = run("relations");
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out).size() == 18);
}
