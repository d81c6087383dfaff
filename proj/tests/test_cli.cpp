// Copyright (c) 2026 the pidec developers.
// SPDX-License-Identifier: Apache-2.0

// End-to-end tests of the command-line binary: exit codes, CSV layout,
// determinism and the control round trip. CLI_PATH and CONFIG_PATH are
// injected by the build.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(CLI_PATH) + " " + args;
    const int raw = std::system(cmd.c_str());
    if (raw == -1) return -1;
    if (WIFEXITED(raw)) return WEXITSTATUS(raw);
    return -2;
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir =
        fs::temp_directory_path() / ("pidec_cli_" + tag + "_" + std::to_string(getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE_MESSAGE(in.good(), "missing file ", p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
    REQUIRE(out.good());
}

}  // namespace

TEST_CASE("bad invocations exit with the configuration code") {
    CHECK(run("") == 1);                       // missing subcommand
    CHECK(run("frobnicate") == 1);             // unknown subcommand
    CHECK(run("--help") == 0);                 // help is a success
    CHECK(run("forward --config /nonexistent/path.json") == 1);
    CHECK(run("control --method nonsense --n-cells 8 --n-steps 4") == 1);
}

TEST_CASE("forward run writes the state and final-state tables") {
    const fs::path dir = fresh_dir("forward");
    REQUIRE(run("forward --config " + std::string(CONFIG_PATH) + " --out " +
                dir.string()) == 0);

    const auto state_lines = lines_of(slurp(dir / "state.csv"));
    REQUIRE(!state_lines.empty());
    CHECK(state_lines[0] == "t,x,y");
    // 41 levels x 63 interior nodes
    CHECK(state_lines.size() == 1 + 41 * 63);

    const auto final_lines = lines_of(slurp(dir / "final_state.csv"));
    CHECK(final_lines[0] == "x,y_final,target");
    REQUIRE(final_lines.size() == 1 + 63);
    const auto first_row = split_csv(final_lines[1]);
    REQUIRE(first_row.size() == 3);
    CHECK(std::stod(first_row[0]) == doctest::Approx(1.0 / 64).epsilon(1e-12));
    fs::remove_all(dir);
}

TEST_CASE("repeated runs are byte-identical") {
    const fs::path dir1 = fresh_dir("det1");
    const fs::path dir2 = fresh_dir("det2");
    const std::string base = "control --n-cells 24 --n-steps 12 --epsilon 1e-5 --out ";
    REQUIRE(run(base + dir1.string()) == 0);
    REQUIRE(run(base + dir2.string()) == 0);
    for (const char* name : {"control.csv", "surface.csv", "final_state.csv",
                             "summary.csv"}) {
        CHECK(slurp(dir1 / name) == slurp(dir2 / name));
    }
    fs::remove_all(dir1);
    fs::remove_all(dir2);
}

TEST_CASE("control run reports a small relative miss in its summary") {
    const fs::path dir = fresh_dir("penalty");
    REQUIRE(run("control --n-cells 32 --n-steps 20 --epsilon 1e-6 --out " +
                dir.string()) == 0);

    const auto summary = lines_of(slurp(dir / "summary.csv"));
    REQUIRE(summary.size() == 2);
    CHECK(summary[0] ==
          "method,miss,relative_miss,cost,penalty,j_epsilon,e_delta,iterations,converged");
    const auto row = split_csv(summary[1]);
    REQUIRE(row.size() == 9);
    CHECK(row[0] == "penalty");
    CHECK(std::stod(row[2]) < 0.05);  // relative_miss
    CHECK(row[8] == "1");             // converged

    const auto control_lines = lines_of(slurp(dir / "control.csv"));
    CHECK(control_lines[0] == "t,x,u");
    CHECK(control_lines.size() == 1 + 20 * 31);
    fs::remove_all(dir);
}

TEST_CASE("resolvent method flows through the same pipeline") {
    const fs::path dir = fresh_dir("resolvent");
    REQUIRE(run("control --method resolvent --n-cells 24 --n-steps 12 "
                "--delta 1e-4 --out " +
                dir.string()) == 0);
    const auto summary = lines_of(slurp(dir / "summary.csv"));
    REQUIRE(summary.size() == 2);
    const auto row = split_csv(summary[1]);
    CHECK(row[0] == "resolvent");
    CHECK(row[8] == "1");
    fs::remove_all(dir);
}

TEST_CASE("a computed control file round-trips through the forward command") {
    // precision 17 makes the CSV text a lossless encoding of the doubles,
    // so the replayed forward solve is bit-identical
    const fs::path dir = fresh_dir("roundtrip");
    const std::string solve_cfg = "{\n"
                                  "  \"problem\": {\"n_cells\": 16, \"n_steps\": 10},\n"
                                  "  \"solver\": {\"epsilon\": 1e-5},\n"
                                  "  \"output\": {\"precision\": 17}\n}\n";
    write_file(dir / "solve.json", solve_cfg);
    REQUIRE(run("control --config " + (dir / "solve.json").string() + " --out " +
                dir.string()) == 0);

    const std::string cfg = "{\n"
                            "  \"problem\": {\"n_cells\": 16, \"n_steps\": 10},\n"
                            "  \"control\": {\"file\": \"" +
                            (dir / "control.csv").string() + "\"},\n"
                            "  \"output\": {\"precision\": 17}\n}\n";
    write_file(dir / "replay.json", cfg);

    const fs::path replay_dir = dir / "replay";
    REQUIRE(run("forward --config " + (dir / "replay.json").string() + " --out " +
                replay_dir.string()) == 0);

    // the forward pass under the saved control reproduces the solver's
    // final state exactly, including its text formatting
    CHECK(slurp(replay_dir / "final_state.csv") == slurp(dir / "final_state.csv"));
    fs::remove_all(dir);
}

TEST_CASE("solver non-convergence is a distinct exit code with diagnostics") {
    // a multi-mode target keeps one CG iteration from converging
    const fs::path dir = fresh_dir("noconv");
    const std::string cfg = "{\n"
                            "  \"problem\": {\"n_cells\": 24, \"n_steps\": 12,\n"
                            "                 \"target\": {\"name\": \"parabola\"}},\n"
                            "  \"solver\": {\"method\": \"penalty\", \"epsilon\": 1e-6,\n"
                            "               \"cg_tol\": 1e-14, \"cg_max_iters\": 1}\n}\n";
    write_file(dir / "cfg.json", cfg);
    CHECK(run("control --config " + (dir / "cfg.json").string() + " --out " +
              dir.string() + " 2>/dev/null") == 2);

    // diagnostics are still written
    const auto summary = lines_of(slurp(dir / "summary.csv"));
    REQUIRE(summary.size() == 2);
    CHECK(split_csv(summary[1])[8] == "0");  // converged column
    fs::remove_all(dir);
}

TEST_CASE("config errors in named functions are rejected") {
    const fs::path dir = fresh_dir("badcfg");
    write_file(dir / "bad.json",
               "{ \"problem\": { \"initial\": { \"name\": \"no-such-shape\" } } }");
    CHECK(run("forward --config " + (dir / "bad.json").string() + " --out " +
              dir.string() + " 2>/dev/null") == 1);
    write_file(dir / "broken.json", "{ not json");
    CHECK(run("forward --config " + (dir / "broken.json").string() + " --out " +
              dir.string() + " 2>/dev/null") == 1);
    fs::remove_all(dir);
}

TEST_CASE("sweep command writes the table with verdict columns") {
    const fs::path dir = fresh_dir("sweep");
    const std::string cfg = "{\n"
                            "  \"problem\": {\"n_cells\": 24, \"n_steps\": 12},\n"
                            "  \"sweep\": {\"kind\": \"epsilon\", \"values\": [1e-2, 1e-3, 1e-4]}\n}\n";
    write_file(dir / "cfg.json", cfg);
    REQUIRE(run("sweep --config " + (dir / "cfg.json").string() + " --out " +
                dir.string()) == 0);

    const auto lines = lines_of(slurp(dir / "sweep_epsilon.csv"));
    REQUIRE(lines.size() == 4);
    const auto header = split_csv(lines[0]);
    REQUIRE(header.size() == 13);
    CHECK(header[0] == "epsilon");
    CHECK(header[12] == "bound_ok");
    for (size_t r = 1; r < lines.size(); ++r) {
        const auto row = split_csv(lines[r]);
        CHECK(row[8] == "1");   // converged
        CHECK(row[12] == "1");  // bound_ok
    }
    fs::remove_all(dir);
}

TEST_CASE("galerkin sweep via config") {
    const fs::path dir = fresh_dir("galerkin");
    const std::string cfg =
        "{\n"
        "  \"problem\": {\"n_cells\": 16, \"n_steps\": 12,\n"
        "                 \"target\": {\"name\": \"cubic-bump\"}},\n"
        "  \"sweep\": {\"kind\": \"galerkin\", \"epsilon\": 1e-4,\n"
        "              \"levels\": [{\"modes\": 1, \"slabs\": 12},\n"
        "                           {\"modes\": 4, \"slabs\": 12},\n"
        "                           {\"modes\": 15, \"slabs\": 12}]}\n}\n";
    write_file(dir / "cfg.json", cfg);
    REQUIRE(run("sweep --config " + (dir / "cfg.json").string() + " --out " +
                dir.string()) == 0);
    const auto lines = lines_of(slurp(dir / "sweep_galerkin.csv"));
    REQUIRE(lines.size() == 4);
    const auto header = split_csv(lines[0]);
    CHECK(header.back() == "distance_decreasing");
    CHECK(split_csv(lines[3]).back() == "1");
    fs::remove_all(dir);
}

TEST_CASE("convergence command writes both ladders") {
    const fs::path dir = fresh_dir("conv");
    const std::string cfg =
        "{\n"
        "  \"convergence\": {\"spatial_cells\": [8, 16], \"n_steps_base\": 10,\n"
        "                     \"temporal_n_cells\": 32, \"temporal_steps\": [5, 10]}\n}\n";
    write_file(dir / "cfg.json", cfg);
    REQUIRE(run("convergence --config " + (dir / "cfg.json").string() + " --out " +
                dir.string()) == 0);

    const auto spatial = lines_of(slurp(dir / "convergence_spatial.csv"));
    REQUIRE(spatial.size() == 3);
    CHECK(split_csv(spatial[0])[0] == "n_cells");
    const auto temporal = lines_of(slurp(dir / "convergence_temporal.csv"));
    REQUIRE(temporal.size() == 3);
    fs::remove_all(dir);
}

TEST_CASE("reproduce runs the whole benchmark pipeline") {
    const fs::path dir = fresh_dir("reproduce");
    REQUIRE(run("reproduce --n-cells 24 --n-steps 12 --out " + dir.string()) == 0);
    for (const char* name :
         {"forward_exact/state.csv", "forward_exact/final_state.csv",
          "forward_uncontrolled/state.csv", "penalty/summary.csv",
          "penalty/control.csv", "resolvent/summary.csv",
          "sweeps/sweep_epsilon.csv", "sweeps/sweep_delta.csv"}) {
        CHECK_MESSAGE(fs::exists(dir / name), "missing ", name);
    }
    fs::remove_all(dir);
}

TEST_CASE("random fourier data is reproducible under a fixed seed") {
    const fs::path dir1 = fresh_dir("seed1");
    const fs::path dir2 = fresh_dir("seed2");
    const fs::path dir3 = fresh_dir("seed3");
    const std::string cfg = "{ \"problem\": { \"n_cells\": 16, \"n_steps\": 8,\n"
                            "    \"initial\": {\"name\": \"random-fourier\"} },\n"
                            "  \"control\": {\"name\": \"zero\"} }";
    const fs::path cfg_path = dir1 / "cfg.json";
    write_file(cfg_path, cfg);

    const std::string base = "forward --config " + cfg_path.string();
    REQUIRE(run(base + " --seed 7 --out " + dir1.string()) == 0);
    REQUIRE(run(base + " --seed 7 --out " + dir2.string()) == 0);
    REQUIRE(run(base + " --seed 8 --out " + dir3.string()) == 0);
    CHECK(slurp(dir1 / "state.csv") == slurp(dir2 / "state.csv"));
    CHECK(slurp(dir1 / "state.csv") != slurp(dir3 / "state.csv"));
    fs::remove_all(dir1);
    fs::remove_all(dir2);
    fs::remove_all(dir3);
}
