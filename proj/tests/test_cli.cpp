#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "specbound/io.hpp"
#include "test_util.hpp"

using namespace specbound;
using namespace specbound::testing;

namespace {

struct RunResult {
    int exit_code;
    std::string json_text;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Runs the CLI with output routed to temp files; returns exit code and the
// JSON report written via --json.
RunResult run_cli(const std::string& args, bool with_json = true) {
    // temp name derived from the arguments, so identical invocations echo
    // identical --json paths into their reports
    const std::string json_path =
        "/tmp/specbound_cli_" + std::to_string(std::hash<std::string>{}(args)) +
        ".json";
    std::string cmd = std::string(SPECBOUND_CLI_PATH) + " " + args;
    if (with_json) cmd += " --json " + json_path;
    cmd += " > /dev/null 2>/dev/null";
    const int raw = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WEXITSTATUS(raw);
    if (with_json) {
        result.json_text = slurp(json_path);
        std::remove(json_path.c_str());
    }
    return result;
}

std::string write_temp_matrix(const ComplexMatrix& m, const std::string& name) {
    const std::string path = "/tmp/" + name;
    write_matrix_file(path, m);
    return path;
}

}  // namespace

TEST_CASE("cli gauge on the identity") {
    ComplexMatrix id = ComplexMatrix::Identity(3, 3);
    const std::string path = write_temp_matrix(id, "cli_id3.mtx");
    const RunResult res = run_cli("gauge -m " + path + " -w explicit:1,1,1");
    REQUIRE(res.exit_code == 0);
    const auto j = nlohmann::json::parse(res.json_text);
    CHECK(j["results"]["gauge"] == 1.0);
    CHECK(j["tool"] == "specbound");
    std::remove(path.c_str());
}

TEST_CASE("cli gauge reports an infinite gauge with a warning") {
    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d(0, 0) = 1.0;
    d(1, 1) = 0.5;
    d(2, 2) = 0.25;
    const std::string path = write_temp_matrix(d, "cli_diag.mtx");
    const RunResult res = run_cli("gauge -m " + path + " -w explicit:1,0.5");
    REQUIRE(res.exit_code == 0);
    const auto j = nlohmann::json::parse(res.json_text);
    CHECK(j["results"]["gauge"] == "inf");
    bool mentions_inf = false;
    for (const auto& w : j["warnings"])
        if (w.get<std::string>().find("infinite") != std::string::npos)
            mentions_inf = true;
    CHECK(mentions_inf);
    std::remove(path.c_str());
}

TEST_CASE("cli gauge matches the direct singular-value maximum") {
    const ComplexMatrix n1 = nonunique_schur_n1();
    const std::string path = write_temp_matrix(n1, "cli_n1.mtx");
    const RunResult res = run_cli("gauge -m " + path + " -w sl:p=4");
    REQUIRE(res.exit_code == 0);
    const auto j = nlohmann::json::parse(res.json_text);
    double expect = 0.0;
    const auto s = singular_values(n1).values;
    for (std::size_t k = 0; k < s.size(); ++k)
        expect = std::max(expect, s[k] * std::pow(double(k + 1), 0.25));
    CHECK(j["results"]["gauge"].get<double>() ==
          doctest::Approx(expect).epsilon(1e-12));
    std::remove(path.c_str());
}

TEST_CASE("cli distance of a matrix with itself") {
    Rng rng(151);
    const ComplexMatrix a = ginibre(4, 4, rng);
    const std::string path = write_temp_matrix(a, "cli_a.mtx");
    const RunResult res =
        run_cli("distance -A " + path + " -B " + path + " -w sl:p=1 --verify");
    REQUIRE(res.exit_code == 0);
    const auto j = nlohmann::json::parse(res.json_text);
    CHECK(j["results"]["certificate"]["value"] == 0.0);
    CHECK(j["results"]["certificate"]["observed"] == 0.0);
    std::remove(path.c_str());
}

TEST_CASE("cli reports are byte-identical across runs") {
    Rng rng(157);
    const ComplexMatrix a = ginibre(5, 5, rng);
    const ComplexMatrix b = a + 0.01 * ginibre(5, 5, rng);
    const std::string pa = write_temp_matrix(a, "cli_det_a.mtx");
    const std::string pb = write_temp_matrix(b, "cli_det_b.mtx");
    const std::string args =
        "distance -A " + pa + " -B " + pb + " -w sl:p=1 --verify --seed 42";
    const RunResult r1 = run_cli(args);
    const RunResult r2 = run_cli(args);
    REQUIRE(r1.exit_code == 0);
    CHECK(r1.json_text == r2.json_text);
    CHECK(!r1.json_text.empty());
    std::remove(pa.c_str());
    std::remove(pb.c_str());
}

TEST_CASE("cli verify adds observations without changing bounds") {
    Rng rng(163);
    const ComplexMatrix a = ginibre(4, 4, rng);
    const ComplexMatrix b = a + 0.05 * ginibre(4, 4, rng);
    const std::string pa = write_temp_matrix(a, "cli_v_a.mtx");
    const std::string pb = write_temp_matrix(b, "cli_v_b.mtx");
    const std::string base = "distance -A " + pa + " -B " + pb + " -w sl:p=1";
    const auto plain = nlohmann::json::parse(run_cli(base).json_text);
    const auto verified = nlohmann::json::parse(run_cli(base + " --verify").json_text);
    CHECK(plain["results"]["certificate"]["value"] ==
          verified["results"]["certificate"]["value"]);
    CHECK(!plain["results"]["certificate"].contains("observed"));
    REQUIRE(verified["results"]["certificate"].contains("observed"));
    CHECK(verified["results"]["certificate"]["observed"].get<double>() <=
          verified["results"]["certificate"]["value"].get<double>() + 1e-12);
    std::remove(pa.c_str());
    std::remove(pb.c_str());
}

TEST_CASE("cli resolvent with oracle check") {
    Rng rng(167);
    ComplexMatrix a = ginibre(5, 5, rng);
    a /= w_gauge(a, WeightSpec::schatten_lorentz(1.0));
    const std::string path = write_temp_matrix(a, "cli_res.mtx");
    const RunResult res = run_cli("resolvent -m " + path +
                                  " -w sl:p=1 -z \"3.0,3.0;-2.5,1.5\" --verify");
    REQUIRE(res.exit_code == 0);
    const auto j = nlohmann::json::parse(res.json_text);
    REQUIRE(j["results"]["points"].size() == 2);
    for (const auto& row : j["results"]["points"]) {
        CHECK(row["observed_norm"].get<double>() <=
              row["bound"].get<double>() * (1.0 + 1e-10));
    }
    std::remove(path.c_str());
}

TEST_CASE("cli pseudo emits grid csv and disks") {
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(1, 1) = 1.0;
    const std::string path = write_temp_matrix(d, "cli_pseudo.mtx");
    const std::string csv = "/tmp/cli_pseudo_grid.csv";
    const RunResult res =
        run_cli("pseudo -m " + path +
                " -w sl:p=1 --eps 0.2 --region -1,2,-1,1 --resolution 21 --csv " + csv);
    REQUIRE(res.exit_code == 0);
    const auto j = nlohmann::json::parse(res.json_text);
    // normal matrix: disks collapse
    CHECK(j["results"]["disks"]["inner_radius"] == 0.2);
    CHECK(j["results"]["disks"]["outer_radius"] == 0.2);
    CHECK(j["results"]["disks"]["centers"].size() == 2);
    std::ifstream grid_file(csv);
    REQUIRE(grid_file.good());
    std::string header;
    std::getline(grid_file, header);
    CHECK(header == "re,im,s_min,member");
    std::remove(path.c_str());
    std::remove(csv.c_str());
}

TEST_CASE("cli truncate verifies the enclosure") {
    Rng rng(173);
    ComplexMatrix tri = ComplexMatrix::Zero(20, 20);
    for (Eigen::Index i = 0; i < 20; ++i) {
        tri(i, i) = Complex(1.0 / static_cast<double>(i + 1), 0.0);
        for (Eigen::Index j = i + 1; j < 20; ++j)
            tri(i, j) = 0.05 * random_complex(rng) / static_cast<double>(j + 1);
    }
    const std::string path = write_temp_matrix(tri, "cli_trunc.mtx");
    const RunResult res = run_cli("truncate -m " + path + " -k 10 -w sl:p=1 --verify");
    REQUIRE(res.exit_code == 0);
    const auto j = nlohmann::json::parse(res.json_text);
    CHECK(j["results"]["observed_within_radius"] == true);
    CHECK(j["results"]["observed_hausdorff_vs_centers"].get<double>() <=
          j["results"]["enclosure_radius"].get<double>() + 1e-12);
    std::remove(path.c_str());
}

TEST_CASE("cli asym grid") {
    const RunResult res =
        run_cli("asym --family sl --p 1 -r 10,100 --dostanic-c 2.0");
    REQUIRE(res.exit_code == 0);
    const auto j = nlohmann::json::parse(res.json_text);
    REQUIRE(j["results"]["grid"].size() == 2);
    const double kE = std::exp(1.0);
    CHECK(j["results"]["grid"][0]["predict_log_F"].get<double>() ==
          doctest::Approx(80.0 * kE));
}

TEST_CASE("cli exit codes by error class") {
    // parse: missing file
    CHECK(run_cli("gauge -m /tmp/missing_specbound_file.mtx -w sl:p=1", false)
              .exit_code == 2);
    // parse: bad weight string
    ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    const std::string path = write_temp_matrix(id, "cli_exit.mtx");
    CHECK(run_cli("gauge -m " + path + " -w wat:p=1", false).exit_code == 2);
    // math domain: resolvent point on the spectrum
    CHECK(run_cli("resolvent -m " + path + " -w sl:p=1 -z 1.0,0.0", false).exit_code ==
          3);
    // math domain: degenerate pseudospectrum region
    CHECK(run_cli("pseudo -m " + path + " -w sl:p=1 --eps 0.1 --region 1,-1,0,1",
                  false)
              .exit_code == 3);
    // convergence: starved series budget on a non-normal matrix
    ComplexMatrix jordan = ComplexMatrix::Zero(2, 2);
    jordan(0, 1) = 1.0;
    const std::string jpath = write_temp_matrix(jordan, "cli_exit_jordan.mtx");
    CHECK(run_cli("resolvent -m " + jpath + " -w sl:p=2 -z 0.5,0.0 --max-terms 3",
                  false)
              .exit_code == 4);
    std::remove(path.c_str());
    std::remove(jpath.c_str());
}
