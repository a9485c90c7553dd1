// SPDX-License-Identifier: Apache-2.0
//
// bdris - dual-polarized beyond-diagonal RIS simulation toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

// End-to-end checks of the command-line tool: output contracts, exit codes,
// and byte-level determinism. The binary path is injected at compile time.

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

using Catch::Approx;
namespace fs = std::filesystem;

namespace {

const fs::path &scratch_dir()
{
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("bdris_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path &path)
{
    std::ifstream file(path, std::ios::binary);
    std::ostringstream out;
    out << file.rdbuf();
    return out.str();
}

struct CliResult
{
    int status = -1;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::string &args)
{
    static int counter = 0;
    const fs::path out_path = scratch_dir() / ("stdout_" + std::to_string(counter) + ".txt");
    const fs::path err_path = scratch_dir() / ("stderr_" + std::to_string(counter) + ".txt");
    ++counter;

    const std::string cmd = std::string(BDRIS_CLI_PATH) + " " + args + " > " + out_path.string() +
                            " 2> " + err_path.string();
    const int raw = std::system(cmd.c_str());
    REQUIRE(raw != -1);
    CliResult result;
    result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    return result;
}

std::vector<std::string> split_lines(const std::string &text)
{
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        lines.push_back(line);
    return lines;
}

bool contains_line(const std::string &text, const std::string &line)
{
    for (const std::string &candidate : split_lines(text))
        if (candidate == line)
            return true;
    return false;
}

// Value of the last CSV column of the first line starting with `prefix`.
double last_field(const std::string &text, const std::string &prefix)
{
    for (const std::string &line : split_lines(text))
        if (line.rfind(prefix, 0) == 0)
            return std::stod(line.substr(line.rfind(',') + 1));
    FAIL("no line starting with '" << prefix << "'");
    return 0.0;
}

} // namespace

TEST_CASE("sweep-gain emits the four scenario curves")
{
    const CliResult result = run_cli("sweep-gain");
    REQUIRE(result.status == 0);
    const std::vector<std::string> lines = split_lines(result.out);
    REQUIRE(lines.size() == 85); // header + 21 grid points x 4 scenarios
    CHECK(lines[0] == "relation,fading,chi,gain");
    CHECK(contains_line(result.out, "opposite,los,0.1,3.025"));
    CHECK(contains_line(result.out, "opposite,rayleigh,0,inf"));
    CHECK(contains_line(result.out, "opposite,los,0,inf"));
    CHECK(contains_line(result.out, "same,los,0.5,1"));
    CHECK(last_field(result.out, "same,rayleigh,1,") ==
          Approx(16.0 / (M_PI * M_PI)).epsilon(1e-9));
}

TEST_CASE("sweep-gain JSON uses string sentinels for infinities")
{
    const CliResult result = run_cli("sweep-gain --chi 0 --format json");
    REQUIRE(result.status == 0);
    const nlohmann::json records = nlohmann::json::parse(result.out);
    REQUIRE(records.size() == 4);
    CHECK(records[0]["relation"] == "same");
    CHECK(records[0]["fading"] == "rayleigh");
    CHECK(records[0]["gain"].get<double>() == Approx(16.0 / (M_PI * M_PI)).epsilon(1e-12));
    CHECK(records[1]["relation"] == "opposite");
    CHECK(records[1]["gain"] == "inf");
    CHECK(records[3]["fading"] == "los");
    CHECK(records[3]["gain"] == "inf");
}

TEST_CASE("sweep-gain --empirical appends Monte Carlo columns")
{
    const CliResult result = run_cli("sweep-gain --chi 0.3 --empirical --n 8 --trials 400 --seed 9");
    REQUIRE(result.status == 0);
    const std::vector<std::string> lines = split_lines(result.out);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "relation,fading,chi,gain,n,trials,seed,gain_empirical,gain_empirical_stderr");
    // Finite-N same-polarization Rayleigh ratio sits well below the
    // asymptotic 16/pi^2 scaled value but is clearly above 1.
    std::istringstream row(lines[1]);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ','))
        fields.push_back(field);
    REQUIRE(fields.size() == 9);
    const double ratio = std::stod(fields[7]);
    const double ratio_se = std::stod(fields[8]);
    CHECK(ratio > 1.2);
    CHECK(ratio < 4.0);
    CHECK(ratio_se > 0.0);
}

TEST_CASE("pareto emits the power-versus-complexity frontier")
{
    const CliResult result = run_cli("pareto");
    REQUIRE(result.status == 0);
    const std::vector<std::string> lines = split_lines(result.out);
    REQUIRE(lines.size() == 133); // header + 4 chi values x 33 pairings
    CHECK(lines[0] == "chi,n_pairs,complexity,power");
    CHECK(lines[1] == "0,0,64,0");
    CHECK(contains_line(result.out, "0,32,96,1024"));
    CHECK(contains_line(result.out, "0.1,0,64,409.6"));
    CHECK(contains_line(result.out, "0.1,32,96,1239.04"));
    CHECK(contains_line(result.out, "1,0,64,4096"));
    CHECK(contains_line(result.out, "1,32,96,4096"));
}

TEST_CASE("pareto JSON records")
{
    const CliResult result = run_cli("pareto --n 4 --chi 0 --format json");
    REQUIRE(result.status == 0);
    const nlohmann::json records = nlohmann::json::parse(result.out);
    REQUIRE(records.size() == 3);
    for (size_t i = 0; i < records.size(); ++i)
    {
        CHECK(records[i]["n_pairs"] == static_cast<int>(i));
        CHECK(records[i]["complexity"] == 4 + static_cast<int>(i));
    }
    CHECK(records[0]["power"].get<double>() == 0.0);
    CHECK(records[1]["power"].get<double>() == 1.0);
    CHECK(records[2]["power"].get<double>() == 4.0);
}

TEST_CASE("verify-scaling reports one verdict per law cell")
{
    const std::string common = "verify-scaling --n 4 --chi 0,1 --trials 4000 --tol 0.08 --seed 3";

    const CliResult csv = run_cli(common);
    REQUIRE(csv.status == 0);
    const std::vector<std::string> lines = split_lines(csv.out);
    REQUIRE(lines.size() == 21); // header + 4 uni + 8 same + 8 opposite cells
    CHECK(lines[0] == "relation,fading,arch,n,chi,trials,seed,mean,stderr,target,verdict");
    for (size_t i = 1; i < lines.size(); ++i)
    {
        CHECK(lines[i].substr(lines[i].rfind(',') + 1) == "pass");
        CHECK(lines[i].find("fail") == std::string::npos);
    }

    const CliResult json = run_cli(common + " --format json");
    REQUIRE(json.status == 0);
    const nlohmann::json records = nlohmann::json::parse(json.out);
    REQUIRE(records.size() == 20);
    for (const auto &record : records)
    {
        CHECK(record["report"]["verdict"] == "pass");
        CHECK(record["report"]["target"].is_number());
        CHECK(record["report"]["trials"].is_number_integer());
    }
}

TEST_CASE("verify-scaling flags a corrupted law")
{
    const CliResult result =
        run_cli("verify-scaling --n 4 --chi 1 --trials 5000 --seed 1 --corrupt-law");
    CHECK(result.status == 1);
    CHECK(result.out.find("fail") != std::string::npos);
}

TEST_CASE("usage errors exit with status 2")
{
    CHECK(run_cli("sweep-gain --no-such-flag").status == 2);
    CHECK(run_cli("sweep-gain --chi 1.5").status == 2);
    CHECK(run_cli("verify-scaling --n 5 --trials 10").status == 2);
    CHECK(run_cli("pareto --n 7").status == 2);
    CHECK(run_cli("frobnicate").status == 2);
    CHECK(run_cli("").status == 2); // a subcommand is required
    CHECK(run_cli("synth --n 4 --arch single --format csv").status == 2);
    CHECK(run_cli("synth --n 4 --arch '1,3;2'").status == 2);     // incomplete partition
    CHECK(run_cli("synth --n 4 --arch '1,x;2,3,4'").status == 2); // unparseable index
    CHECK(run_cli("synth --n 4 --arch single --fading rayleigh --zero-phase").status == 2);
    CHECK(run_cli("oracle-check --n 12").status == 2);
    CHECK(run_cli("oracle-check --format csv").status == 2);
}

TEST_CASE("--help exits cleanly")
{
    const CliResult result = run_cli("--help");
    CHECK(result.status == 0);
    CHECK(result.out.find("sweep-gain") != std::string::npos);
    CHECK(result.out.find("oracle-check") != std::string::npos);
}

TEST_CASE("unwritable output path exits with status 1")
{
    const fs::path target = scratch_dir() / "no_such_subdir" / "out.csv";
    const CliResult result = run_cli("pareto --out " + target.string());
    CHECK(result.status == 1);
    CHECK(result.err.find("cannot open") != std::string::npos);
}

TEST_CASE("synth on a mixed-polarization pairing reaches its bound")
{
    const CliResult result = run_cli("synth --n 4 --chi 0.5 --arch '1,3;2,4' --zero-phase");
    REQUIRE(result.status == 0);
    const nlohmann::json j = nlohmann::json::parse(result.out);
    CHECK(j["n"] == 4);
    CHECK(j["groups"] == nlohmann::json({{1, 3}, {2, 4}}));
    REQUIRE(j["re"].size() == 16);
    REQUIRE(j["im"].size() == 16);
    CHECK(j["achieved_power"].get<double>() == Approx(9.0).epsilon(1e-9));
    CHECK(j["bound_power"].get<double>() == Approx(9.0).epsilon(1e-9));
    CHECK(j["symmetry_residual"].get<double>() <= 1e-10);
    CHECK(j["unitarity_residual"].get<double>() <= 1e-10);
    CHECK(j["block_residual"].get<double>() <= 1e-10);
}

TEST_CASE("synth with aligned phases and no cross-polarization loss is the identity")
{
    const CliResult result =
        run_cli("synth --n 2 --relation same --chi 1 --fading los --zero-phase --arch single");
    REQUIRE(result.status == 0);
    const nlohmann::json j = nlohmann::json::parse(result.out);
    CHECK(j["groups"] == nlohmann::json({{1}, {2}}));
    const std::vector<double> re = j["re"].get<std::vector<double>>();
    const std::vector<double> im = j["im"].get<std::vector<double>>();
    REQUIRE(re.size() == 4);
    const std::vector<double> expected_re{1.0, 0.0, 0.0, 1.0};
    for (size_t i = 0; i < 4; ++i)
    {
        CHECK(re[i] == Approx(expected_re[i]).margin(1e-12));
        CHECK(im[i] == Approx(0.0).margin(1e-12));
    }
    CHECK(j["achieved_power"].get<double>() == Approx(4.0).epsilon(1e-12));
    CHECK(j["bound_power"].get<double>() == Approx(4.0).epsilon(1e-12));
}

TEST_CASE("oracle-check validates the closed-form frontier")
{
    const CliResult result = run_cli("oracle-check --n 4 --chi 0.5");
    REQUIRE(result.status == 0);
    const nlohmann::json records = nlohmann::json::parse(result.out);
    REQUIRE(records.size() == 3);

    CHECK(records[0]["n_pairs"] == 0);
    CHECK(records[0]["partitions"] == 1);
    CHECK(records[0]["structure_ok"].is_null());
    CHECK(records[0]["verdict"] == "pass");

    CHECK(records[1]["n_pairs"] == 1);
    CHECK(records[1]["partitions"] == 7);
    CHECK(records[1]["structure_ok"] == true);
    const double expected = std::pow(1.5 + 2.0 * std::sqrt(0.5), 2);
    CHECK(records[1]["oracle_power"].get<double>() == Approx(expected).epsilon(1e-9));
    CHECK(records[1]["formula_power"].get<double>() == Approx(expected).epsilon(1e-9));

    CHECK(records[2]["n_pairs"] == 2);
    CHECK(records[2]["partitions"] == 10);
    CHECK(records[2]["formula_power"].get<double>() == Approx(9.0).epsilon(1e-12));
    CHECK(records[2]["verdict"] == "pass");
}

TEST_CASE("identical invocations produce identical bytes")
{
    const fs::path a = scratch_dir() / "det_a";
    const fs::path b = scratch_dir() / "det_b";

    const std::vector<std::string> commands{
        "verify-scaling --n 4 --chi 0.5 --trials 2000 --seed 7 --format json",
        "synth --n 6 --chi 0.4 --arch group2 --seed 12",
        "sweep-gain --chi 0.3 --empirical --n 8 --trials 400 --seed 9 --format json",
        "oracle-check --n 4 --chi 0.3",
    };
    for (const std::string &command : commands)
    {
        INFO(command);
        REQUIRE(run_cli(command + " --out " + a.string()).status == 0);
        REQUIRE(run_cli(command + " --out " + b.string()).status == 0);
        const std::string bytes_a = slurp(a);
        const std::string bytes_b = slurp(b);
        REQUIRE_FALSE(bytes_a.empty());
        CHECK(bytes_a == bytes_b);
    }
}
