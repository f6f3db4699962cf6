#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"

#include "sshc/cli.hpp"
#include "sshc/model.hpp"

using namespace sshc;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

// Run the installed binary with stdout captured to a scratch file. Stderr is
// left alone so failures show up in the test log.
RunResult run_binary(const std::string& args) {
    static int counter = 0;
    const std::string path = "cli_probe_" + std::to_string(counter++) + ".out";
    const std::string cmd = std::string(SSHC_BINARY) + " " + args + " > " + path;
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream f(path, std::ios::binary);
    std::ostringstream buf;
    buf << f.rdbuf();
    r.output = buf.str();
    std::remove(path.c_str());
    return r;
}

std::vector<std::string> data_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (!line.empty() && line[0] != '#') out.push_back(line);
    }
    return out;
}

}  // namespace

TEST_CASE("angle literals parse as radians or pi multiples") {
    CHECK(cli::parse_angle("0.4pi") == doctest::Approx(0.4 * M_PI).epsilon(1e-15));
    CHECK(cli::parse_angle("pi") == M_PI);
    CHECK(cli::parse_angle("-pi") == -M_PI);
    CHECK(cli::parse_angle("-0.25pi") == doctest::Approx(-0.25 * M_PI).epsilon(1e-15));
    CHECK(cli::parse_angle("1.5707") == 1.5707);
    CHECK(cli::parse_angle("0") == 0.0);
    CHECK(cli::parse_angle(" 0.5 pi ") == doctest::Approx(0.5 * M_PI).epsilon(1e-15));

    CHECK_THROWS_AS(cli::parse_angle(""), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_angle("bogus"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_angle("0.4tau"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_angle("pi0.4"), std::invalid_argument);
}

TEST_CASE("onsite specifiers parse to kind and strength") {
    CHECK(cli::parse_onsite("none").kind == OnSiteKind::none);

    const auto u = cli::parse_onsite("uniform:0.5");
    CHECK(u.kind == OnSiteKind::uniform_loss);
    CHECK(u.strength == 0.5);

    const auto s = cli::parse_onsite("staggered:1.25");
    CHECK(s.kind == OnSiteKind::staggered_gain_loss);
    CHECK(s.strength == 1.25);

    const auto e = cli::parse_onsite("endpoints:2");
    CHECK(e.kind == OnSiteKind::endpoints_only);
    CHECK(e.strength == 2.0);

    CHECK_THROWS_AS(cli::parse_onsite("uniform"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_onsite("uniform:abc"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_onsite("gain:1"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_onsite(""), std::invalid_argument);
}

TEST_CASE("integer lists expand commas and inclusive ranges") {
    CHECK(cli::parse_int_list("7") == std::vector<std::size_t>{7});
    CHECK(cli::parse_int_list("10,12,20:24") ==
          std::vector<std::size_t>{10, 12, 20, 21, 22, 23, 24});
    CHECK(cli::parse_int_list("3:3") == std::vector<std::size_t>{3});

    CHECK_THROWS_AS(cli::parse_int_list(""), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_int_list("5:2"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_int_list("1,,3"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_int_list("a:b"), std::invalid_argument);
}

TEST_CASE("exit codes: 0 success, 1 usage, 2 numerical") {
    CHECK(run_binary("--help").exit_code == 0);
    CHECK(run_binary("dispersion --n 4 --kpoints 3").exit_code == 0);

    CHECK(run_binary("dispersion --no-such-flag 2>/dev/null").exit_code == 1);
    CHECK(run_binary("2>/dev/null").exit_code == 1);  // missing subcommand
    CHECK(run_binary("dispersion --phi 2pi 2>/dev/null").exit_code == 1);
    CHECK(run_binary("dispersion --phi junk 2>/dev/null").exit_code == 1);
    CHECK(run_binary("dynamics --init 99 --n 4 2>/dev/null").exit_code == 1);

    // On-site potentials break translation invariance, so the phase map is a
    // domain failure rather than a flag mistake.
    CHECK(run_binary("phase-diagram --onsite uniform:0.5 --phi-points 2 "
                     "--gamma2-points 2 2>/dev/null")
              .exit_code == 2);
}

TEST_CASE("csv output carries resolved config and expected columns") {
    const auto r = run_binary("dispersion --n 4 --kpoints 5 --phi 0.3pi");
    REQUIRE(r.exit_code == 0);

    CHECK(r.output.find("# command = dispersion\n") != std::string::npos);
    CHECK(r.output.find("# n = 4\n") != std::string::npos);
    CHECK(r.output.find("# version = ") != std::string::npos);
    // phi resolved to radians, not echoed as the literal
    CHECK(r.output.find("# phi = 0.9424777960769379\n") != std::string::npos);

    const auto rows = data_lines(r.output);
    REQUIRE(rows.size() == 6);  // column row + 5 grid points
    CHECK(rows[0] == "k,re_E_plus,im_E_plus,re_E_minus,im_E_minus");
}

TEST_CASE("repeated runs are byte-identical") {
    const std::string args = "oscillation --n 12 --phi-points 9";
    const auto a = run_binary(args);
    const auto b = run_binary(args);
    REQUIRE(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(!a.output.empty());
}

TEST_CASE("config file fills values and flags override it") {
    const std::string cfg_path = "cli_probe_config.ini";
    {
        std::ofstream cfg(cfg_path);
        cfg << "n = 6\n";
        cfg << "phi = 0.25pi\n";
        cfg << "kpoints = 3\n";
    }
    const auto r = run_binary("dispersion --config " + cfg_path + " --kpoints 2");
    std::remove(cfg_path.c_str());
    REQUIRE(r.exit_code == 0);

    CHECK(r.output.find("# n = 6\n") != std::string::npos);
    CHECK(r.output.find("# phi = 0.7853981633974483\n") != std::string::npos);
    CHECK(r.output.find("# kpoints = 2\n") != std::string::npos);  // flag wins
    CHECK(data_lines(r.output).size() == 3);  // header + 2 k-points
}

TEST_CASE("json output parses and mirrors the csv data") {
    const auto r = run_binary("spectrum --n 3 --phi-points 2 --phi-start 0.2pi "
                              "--phi-stop 0.3pi --format json");
    REQUIRE(r.exit_code == 0);

    const auto j = nlohmann::json::parse(r.output);
    REQUIRE(j.contains("config"));
    REQUIRE(j.contains("columns"));
    REQUIRE(j.contains("rows"));
    CHECK(j["config"]["command"] == "spectrum");
    CHECK(j["config"]["n"] == "3");
    CHECK(j["columns"].size() == 5);
    CHECK(j["rows"].size() == 12);  // 2 phi values x 6 eigenvalues
    // every spectrum row: [double, int, double, double, int]
    for (const auto& row : j["rows"]) {
        REQUIRE(row.size() == 5);
        CHECK(row[0].is_number());
        CHECK(row[1].is_number_integer());
        CHECK(row[4].is_number_integer());
    }
}

TEST_CASE("output lands in --out file instead of stdout") {
    const std::string out_path = "cli_probe_outfile.csv";
    const auto r = run_binary("dispersion --n 4 --kpoints 3 --out " + out_path);
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.empty());

    std::ifstream f(out_path);
    REQUIRE(f.good());
    std::ostringstream buf;
    buf << f.rdbuf();
    std::remove(out_path.c_str());
    CHECK(buf.str().find("# command = dispersion\n") != std::string::npos);
    CHECK(data_lines(buf.str()).size() == 4);
}

TEST_CASE("selftest passes on its default seed") {
    const auto r = run_binary("selftest");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("fail") == std::string::npos);
    CHECK(r.output.find("eig-relative-residual,pass") != std::string::npos);
}

TEST_CASE("phase-diagram marks boundary rows in the winding column") {
    const auto r = run_binary("phase-diagram --gamma1 0 --phi-points 3 "
                              "--gamma2-points 3");
    REQUIRE(r.exit_code == 0);
    const auto rows = data_lines(r.output);
    REQUIRE(rows.size() == 10);  // header + 3x3 grid
    CHECK(rows[0] == "phi,gamma2,lhs,rhs,phase,winding");

    // phi = pi/2, gamma2 = 0 sits on the closed-form boundary; phi = 0 rows
    // are deep in the nontrivial region and phi = pi rows in the trivial one.
    CHECK(rows[4].find("boundary,boundary") != std::string::npos);
    CHECK(rows[1].find("topological,1") != std::string::npos);
    CHECK(rows[8].find("trivial,0") != std::string::npos);
}
