// Copyright (c) 2026 the pidec developers.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end for the pidec library. Talks to the solver
// exclusively through the C API in pidec.h; everything here is
// configuration, dispatch and CSV emission.
//
// Exit codes: 0 success, 1 configuration error, 2 solver non-convergence,
// 3 I/O error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pidec.h"

namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;
constexpr double kPiSquared = kPi * kPi;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNoConvergence = 2;
constexpr int kExitIo = 3;

struct CliError {
    int code;
    std::string message;
};

[[noreturn]] void die(int code, const std::string& message) {
    throw CliError{code, message};
}

[[noreturn]] void die_api(const std::string& where, pidec_status status) {
    const int code =
        status == PIDEC_ERR_NO_CONVERGENCE ? kExitNoConvergence : kExitConfig;
    die(code, where + ": " + pidec_last_error());
}

// ---- RAII wrappers over the C handles ---------------------------------

struct ProblemDeleter {
    void operator()(pidec_problem* p) const { pidec_problem_destroy(p); }
};
struct TrajectoryDeleter {
    void operator()(pidec_trajectory* t) const { pidec_trajectory_destroy(t); }
};
struct ResultDeleter {
    void operator()(pidec_result* r) const { pidec_result_destroy(r); }
};
struct TableDeleter {
    void operator()(pidec_table* t) const { pidec_table_destroy(t); }
};

using ProblemPtr = std::unique_ptr<pidec_problem, ProblemDeleter>;
using TrajectoryPtr = std::unique_ptr<pidec_trajectory, TrajectoryDeleter>;
using ResultPtr = std::unique_ptr<pidec_result, ResultDeleter>;
using TablePtr = std::unique_ptr<pidec_table, TableDeleter>;

// ---- configuration ------------------------------------------------------

struct Config {
    int n_cells = 64;
    int n_steps = 40;
    double final_time = 1.0;
    std::string kernel_kind = "exponential";
    double kernel_rate = kPiSquared;
    std::string kernel_form = "mass";
    json initial = json{{"name", "sine"}};
    json target = json{{"name", "heat-decay-sine"}};
    json window;  // null: control acts everywhere

    std::string method = "penalty";
    double epsilon = 1e-6;
    double delta = 1e-4;
    double cg_tol = 1e-12;
    int cg_max_iters = 200;
    double fp_tol = 1e-10;
    int max_fp_iters = 50;

    json control = json{{"name", "benchmark-exact"}};
    json sweep;

    std::vector<int> spatial_cells = {16, 32, 64, 128};
    int n_steps_base = 40;
    int temporal_n_cells = 128;
    std::vector<int> temporal_steps = {10, 20, 40, 80};

    std::string out_dir = "out";
    int precision = 12;
    unsigned int seed = 12345;
};

template <typename T>
void read_into(const json& obj, const char* key, T& value) {
    if (obj.contains(key)) {
        try {
            value = obj.at(key).get<T>();
        } catch (const json::exception& e) {
            die(kExitConfig, std::string("config field '") + key + "': " + e.what());
        }
    }
}

void load_config_file(const std::string& path, Config& cfg) {
    std::ifstream in(path);
    if (!in) die(kExitConfig, "cannot open config file: " + path);
    json root;
    try {
        in >> root;
    } catch (const json::exception& e) {
        die(kExitConfig, "config parse error in " + path + ": " + e.what());
    }

    if (root.contains("problem")) {
        const json& p = root["problem"];
        read_into(p, "n_cells", cfg.n_cells);
        read_into(p, "n_steps", cfg.n_steps);
        read_into(p, "final_time", cfg.final_time);
        if (p.contains("kernel")) {
            const json& k = p["kernel"];
            read_into(k, "kind", cfg.kernel_kind);
            read_into(k, "rate", cfg.kernel_rate);
            read_into(k, "form", cfg.kernel_form);
        }
        if (p.contains("initial")) cfg.initial = p["initial"];
        if (p.contains("target")) cfg.target = p["target"];
        if (p.contains("window")) cfg.window = p["window"];
    }
    if (root.contains("solver")) {
        const json& s = root["solver"];
        read_into(s, "method", cfg.method);
        read_into(s, "epsilon", cfg.epsilon);
        read_into(s, "delta", cfg.delta);
        read_into(s, "cg_tol", cfg.cg_tol);
        read_into(s, "cg_max_iters", cfg.cg_max_iters);
        read_into(s, "fp_tol", cfg.fp_tol);
        read_into(s, "max_fp_iters", cfg.max_fp_iters);
    }
    if (root.contains("control")) cfg.control = root["control"];
    if (root.contains("sweep")) cfg.sweep = root["sweep"];
    if (root.contains("convergence")) {
        const json& c = root["convergence"];
        read_into(c, "spatial_cells", cfg.spatial_cells);
        read_into(c, "n_steps_base", cfg.n_steps_base);
        read_into(c, "temporal_n_cells", cfg.temporal_n_cells);
        read_into(c, "temporal_steps", cfg.temporal_steps);
    }
    if (root.contains("output")) {
        const json& o = root["output"];
        read_into(o, "directory", cfg.out_dir);
        read_into(o, "precision", cfg.precision);
        read_into(o, "seed", cfg.seed);
    }
}

// ---- named analytic functions ------------------------------------------

std::function<double(double)> make_space_function(const json& spec, const Config& cfg) {
    if (spec.is_null()) die(kExitConfig, "missing function spec");
    if (spec.contains("samples")) {
        std::vector<double> samples;
        try {
            samples = spec.at("samples").get<std::vector<double>>();
        } catch (const json::exception& e) {
            die(kExitConfig, std::string("bad samples array: ") + e.what());
        }
        const int n_dof = cfg.n_cells - 1;
        if (static_cast<int>(samples.size()) != n_dof) {
            die(kExitConfig, "samples array must hold n_cells-1 values");
        }
        const int n_cells = cfg.n_cells;
        // piecewise-linear interpolant through the interior nodal values,
        // zero at both boundary nodes
        return [samples, n_cells](double x) {
            const double pos = x * n_cells;
            const int cell = std::min(std::max(static_cast<int>(pos), 0), n_cells - 1);
            const double local = pos - cell;
            const double left = cell >= 1 ? samples[cell - 1] : 0.0;
            const double right = cell + 1 <= n_cells - 1 ? samples[cell] : 0.0;
            return (1.0 - local) * left + local * right;
        };
    }

    std::string name;
    read_into(spec, "name", name);
    if (name == "zero") return [](double) { return 0.0; };
    if (name == "sine") return [](double x) { return std::sin(kPi * x); };
    if (name == "sine2") return [](double x) { return std::sin(2.0 * kPi * x); };
    if (name == "heat-decay-sine") {
        return [](double x) { return std::exp(-kPiSquared) * std::sin(kPi * x); };
    }
    if (name == "parabola") return [](double x) { return x * (1.0 - x); };
    if (name == "cubic-bump") return [](double x) { return x * (1.0 - x) * (1.0 - x); };
    if (name == "random-fourier") {
        std::mt19937 rng(cfg.seed);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        std::vector<double> coeff(8);
        for (size_t j = 0; j < coeff.size(); ++j) coeff[j] = unit(rng) / (j + 1.0);
        return [coeff](double x) {
            double v = 0.0;
            for (size_t j = 0; j < coeff.size(); ++j) {
                v += coeff[j] * std::sin((j + 1.0) * kPi * x);
            }
            return v;
        };
    }
    die(kExitConfig, "unknown function name: '" + name + "'");
}

double space_trampoline(double x, void* user) {
    return (*static_cast<const std::function<double(double)>*>(user))(x);
}

std::vector<double> make_window_weights(const Config& cfg) {
    if (cfg.window.is_null()) return {};
    std::string kind;
    read_into(cfg.window, "kind", kind);
    if (kind.empty() || kind == "all") return {};
    if (kind != "interval") die(kExitConfig, "unknown window kind: '" + kind + "'");
    double from = 0.0, to = 1.0;
    read_into(cfg.window, "from", from);
    read_into(cfg.window, "to", to);
    std::vector<double> weights(cfg.n_cells - 1, 0.0);
    for (int i = 1; i < cfg.n_cells; ++i) {
        const double x = static_cast<double>(i) / cfg.n_cells;
        if (x >= from && x <= to) weights[i - 1] = 1.0;
    }
    return weights;
}

ProblemPtr make_problem(const Config& cfg) {
    pidec_kernel_kind kind = PIDEC_KERNEL_NONE;
    if (cfg.kernel_kind == "exponential") {
        kind = PIDEC_KERNEL_EXPONENTIAL;
    } else if (cfg.kernel_kind != "none") {
        die(kExitConfig, "unknown kernel kind: '" + cfg.kernel_kind + "'");
    }
    pidec_kernel_form form = PIDEC_FORM_MASS;
    if (cfg.kernel_form == "stiffness") {
        form = PIDEC_FORM_STIFFNESS;
    } else if (cfg.kernel_form != "mass") {
        die(kExitConfig, "unknown kernel form: '" + cfg.kernel_form + "'");
    }

    std::function<double(double)> initial = make_space_function(cfg.initial, cfg);
    std::function<double(double)> target = make_space_function(cfg.target, cfg);
    const std::vector<double> window = make_window_weights(cfg);

    pidec_problem* raw = nullptr;
    const pidec_status status = pidec_problem_create(
        cfg.n_cells, cfg.n_steps, cfg.final_time, kind, form, cfg.kernel_rate, nullptr,
        nullptr, space_trampoline, &initial, space_trampoline, &target,
        window.empty() ? nullptr : window.data(), &raw);
    if (status != PIDEC_OK) die_api("problem setup", status);
    return ProblemPtr(raw);
}

// ---- CSV emission --------------------------------------------------------

std::string format_value(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

/// Writes rows to path atomically (temp file + rename).
void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) die(kExitIo, "cannot create directory " + path.parent_path().string());

    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) die(kExitIo, "cannot open " + tmp.string() + " for writing");
        for (size_t c = 0; c < header.size(); ++c) {
            out << header[c] << (c + 1 < header.size() ? "," : "\n");
        }
        for (const auto& row : rows) {
            for (size_t c = 0; c < row.size(); ++c) {
                out << row[c] << (c + 1 < row.size() ? "," : "\n");
            }
        }
        if (!out) die(kExitIo, "write failed on " + tmp.string());
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) die(kExitIo, "cannot move " + tmp.string() + " into place");
}

struct ProblemGeometry {
    int n_dof;
    int n_steps;
    double dt;
    std::vector<double> nodes;
    std::vector<double> target;
};

ProblemGeometry geometry(const pidec_problem* p) {
    ProblemGeometry g;
    g.n_dof = pidec_problem_n_dof(p);
    g.n_steps = pidec_problem_n_steps(p);
    g.dt = pidec_problem_dt(p);
    g.nodes.resize(g.n_dof);
    g.target.resize(g.n_dof);
    pidec_problem_nodes(p, g.nodes.data());
    pidec_problem_target(p, g.target.data());
    return g;
}

/// Long-format (t, x, value) dump of trajectory levels [first_level, N].
void write_trajectory_csv(const std::filesystem::path& path, const ProblemGeometry& g,
                          const pidec_trajectory* t, int first_level,
                          const char* value_name, int precision) {
    std::vector<std::vector<std::string>> rows;
    std::vector<double> level(g.n_dof);
    rows.reserve(static_cast<size_t>(g.n_steps + 1 - first_level) * g.n_dof);
    for (int n = first_level; n <= g.n_steps; ++n) {
        if (pidec_trajectory_get(t, n, level.data()) != PIDEC_OK) {
            die(kExitConfig, std::string("trajectory read: ") + pidec_last_error());
        }
        const double tn = n * g.dt;
        for (int i = 0; i < g.n_dof; ++i) {
            rows.push_back({format_value(tn, precision), format_value(g.nodes[i], precision),
                            format_value(level[i], precision)});
        }
    }
    write_csv(path, {"t", "x", value_name}, rows);
}

void write_final_state_csv(const std::filesystem::path& path, const ProblemGeometry& g,
                           const std::vector<double>& final_state, int precision) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(g.n_dof);
    for (int i = 0; i < g.n_dof; ++i) {
        rows.push_back({format_value(g.nodes[i], precision),
                        format_value(final_state[i], precision),
                        format_value(g.target[i], precision)});
    }
    write_csv(path, {"x", "y_final", "target"}, rows);
}

void write_table_csv(const std::filesystem::path& path, const pidec_table* table,
                     int precision,
                     const std::vector<std::string>& extra_names = {},
                     const std::vector<std::vector<std::string>>& extra_cols = {}) {
    const int n_rows = pidec_table_rows(table);
    const int n_cols = pidec_table_cols(table);
    std::vector<std::string> header;
    for (int c = 0; c < n_cols; ++c) header.push_back(pidec_table_column_name(table, c));
    header.insert(header.end(), extra_names.begin(), extra_names.end());

    std::vector<std::vector<std::string>> rows;
    rows.reserve(n_rows);
    for (int r = 0; r < n_rows; ++r) {
        std::vector<std::string> row;
        for (int c = 0; c < n_cols; ++c) {
            row.push_back(format_value(pidec_table_value(table, r, c), precision));
        }
        for (const auto& col : extra_cols) row.push_back(col[r]);
        rows.push_back(std::move(row));
    }
    write_csv(path, header, rows);
}

int table_column(const pidec_table* table, const std::string& name) {
    for (int c = 0; c < pidec_table_cols(table); ++c) {
        if (name == pidec_table_column_name(table, c)) return c;
    }
    die(kExitConfig, "internal: missing table column " + name);
}

// ---- control sources -----------------------------------------------------

TrajectoryPtr read_control_csv(const pidec_problem* p, const std::string& path) {
    const ProblemGeometry g = geometry(p);
    std::ifstream in(path);
    if (!in) die(kExitConfig, "cannot open control file: " + path);

    std::string line;
    if (!std::getline(in, line)) die(kExitConfig, "empty control file: " + path);

    pidec_trajectory* raw = nullptr;
    if (pidec_trajectory_create(p, &raw) != PIDEC_OK) {
        die(kExitConfig, std::string("trajectory allocation: ") + pidec_last_error());
    }
    TrajectoryPtr control(raw);

    std::vector<std::vector<double>> levels(g.n_steps + 1,
                                            std::vector<double>(g.n_dof, 0.0));
    std::vector<std::vector<bool>> seen(g.n_steps + 1, std::vector<bool>(g.n_dof, false));
    size_t filled = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double t = 0.0, x = 0.0, u = 0.0;
        std::istringstream ss(line);
        char c1 = 0, c2 = 0;
        if (!(ss >> t >> c1 >> x >> c2 >> u) || c1 != ',' || c2 != ',') {
            die(kExitConfig, "malformed row in " + path + ": " + line);
        }
        const int level = static_cast<int>(std::lround(t / g.dt));
        const int node = static_cast<int>(std::lround(x * (g.n_dof + 1))) - 1;
        if (level < 1 || level > g.n_steps || std::abs(t - level * g.dt) > 1e-9 ||
            node < 0 || node >= g.n_dof || std::abs(x - g.nodes[node]) > 1e-9) {
            die(kExitConfig, "control row off the problem grid in " + path + ": " + line);
        }
        if (seen[level][node]) die(kExitConfig, "duplicate control row in " + path);
        seen[level][node] = true;
        levels[level][node] = u;
        ++filled;
    }
    if (filled != static_cast<size_t>(g.n_steps) * g.n_dof) {
        die(kExitConfig, "control file does not cover every (t, x) grid point: " + path);
    }
    for (int n = 1; n <= g.n_steps; ++n) {
        pidec_trajectory_set(control.get(), n, levels[n].data());
    }
    return control;
}

TrajectoryPtr make_control(const pidec_problem* p, const json& spec) {
    if (spec.contains("file")) {
        return read_control_csv(p, spec.at("file").get<std::string>());
    }
    std::string name = "zero";
    read_into(spec, "name", name);
    if (name == "zero" || name == "none") {
        pidec_trajectory* raw = nullptr;
        if (pidec_trajectory_create(p, &raw) != PIDEC_OK) {
            die(kExitConfig, std::string("trajectory allocation: ") + pidec_last_error());
        }
        return TrajectoryPtr(raw);
    }
    if (name == "benchmark-exact") {
        pidec_trajectory* raw = nullptr;
        if (pidec_benchmark_exact_control(p, &raw) != PIDEC_OK) {
            die(kExitConfig, std::string("exact control: ") + pidec_last_error());
        }
        return TrajectoryPtr(raw);
    }
    die(kExitConfig, "unknown control spec: '" + name + "'");
}

// ---- subcommands -----------------------------------------------------------

void run_forward(const Config& cfg) {
    const ProblemPtr problem = make_problem(cfg);
    const ProblemGeometry g = geometry(problem.get());
    const TrajectoryPtr control = make_control(problem.get(), cfg.control);

    pidec_trajectory* raw_state = nullptr;
    const pidec_status status =
        pidec_solve_forward(problem.get(), control.get(), nullptr, &raw_state);
    if (status != PIDEC_OK) die_api("forward solve", status);
    const TrajectoryPtr state(raw_state);

    std::vector<double> final_state(g.n_dof);
    pidec_trajectory_get(state.get(), g.n_steps, final_state.data());

    const std::filesystem::path out(cfg.out_dir);
    write_trajectory_csv(out / "state.csv", g, state.get(), 0, "y", cfg.precision);
    write_final_state_csv(out / "final_state.csv", g, final_state, cfg.precision);
}

void run_control(const Config& cfg) {
    const ProblemPtr problem = make_problem(cfg);
    const ProblemGeometry g = geometry(problem.get());

    pidec_result* raw = nullptr;
    pidec_status status;
    if (cfg.method == "penalty") {
        status = pidec_solve_penalty(problem.get(), cfg.epsilon, cfg.cg_tol,
                                     cfg.cg_max_iters, &raw);
    } else if (cfg.method == "resolvent") {
        status = pidec_solve_resolvent(problem.get(), cfg.delta, cfg.fp_tol,
                                       cfg.max_fp_iters, cfg.cg_tol, cfg.cg_max_iters,
                                       &raw);
    } else {
        die(kExitConfig, "unknown method: '" + cfg.method + "' (penalty or resolvent)");
    }
    if (status != PIDEC_OK && status != PIDEC_ERR_NO_CONVERGENCE) {
        die_api("control solve", status);
    }
    const ResultPtr result(raw);

    pidec_trajectory* raw_control = nullptr;
    pidec_trajectory* raw_state = nullptr;
    pidec_result_control(result.get(), &raw_control);
    pidec_result_state(result.get(), &raw_state);
    const TrajectoryPtr control(raw_control);
    const TrajectoryPtr state(raw_state);
    std::vector<double> final_state(g.n_dof);
    pidec_result_final_state(result.get(), final_state.data());

    const std::filesystem::path out(cfg.out_dir);
    write_trajectory_csv(out / "control.csv", g, control.get(), 1, "u", cfg.precision);
    write_trajectory_csv(out / "surface.csv", g, state.get(), 0, "y", cfg.precision);
    write_final_state_csv(out / "final_state.csv", g, final_state, cfg.precision);

    const auto value = [&](double v) { return format_value(v, cfg.precision); };
    write_csv(out / "summary.csv",
              {"method", "miss", "relative_miss", "cost", "penalty", "j_epsilon",
               "e_delta", "iterations", "converged"},
              {{cfg.method, value(pidec_result_miss(result.get())),
                value(pidec_result_relative_miss(result.get())),
                value(pidec_result_cost(result.get())),
                value(pidec_result_penalty(result.get())),
                value(pidec_result_j_epsilon(result.get())),
                value(pidec_result_e_delta(result.get())),
                std::to_string(pidec_result_iterations(result.get())),
                std::to_string(pidec_result_converged(result.get()))}});

    if (status == PIDEC_ERR_NO_CONVERGENCE) {
        die(kExitNoConvergence, std::string("control solve: ") + pidec_last_error());
    }
}

std::vector<std::string> trend_column(const pidec_table* table, int col,
                                      bool decreasing_ok) {
    // verdict per row vs the previous one; the first row is vacuously "1"
    std::vector<std::string> verdicts;
    for (int r = 0; r < pidec_table_rows(table); ++r) {
        if (r == 0) {
            verdicts.push_back("1");
            continue;
        }
        const double prev = pidec_table_value(table, r - 1, col);
        const double cur = pidec_table_value(table, r, col);
        const bool ok = decreasing_ok ? cur < prev : cur > prev;
        verdicts.push_back(ok ? "1" : "0");
    }
    return verdicts;
}

void run_sweep(const Config& cfg) {
    json sweep = cfg.sweep;
    if (sweep.is_null()) sweep = json{{"kind", "epsilon"}};
    std::string kind;
    read_into(sweep, "kind", kind);
    const std::filesystem::path out(cfg.out_dir);

    if (kind == "epsilon") {
        std::vector<double> values = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
        read_into(sweep, "values", values);
        std::string reference = "benchmark-exact";
        read_into(sweep, "reference", reference);

        const ProblemPtr problem = make_problem(cfg);
        TrajectoryPtr ref;
        if (reference != "zero") {
            ref = make_control(problem.get(), json{{"name", reference}});
        }
        pidec_table* raw = nullptr;
        const pidec_status status = pidec_sweep_epsilon(
            problem.get(), values.data(), static_cast<int>(values.size()), ref.get(),
            cfg.cg_tol, cfg.cg_max_iters, &raw);
        if (status != PIDEC_OK) die_api("epsilon sweep", status);
        const TablePtr table(raw);
        write_table_csv(out / "sweep_epsilon.csv", table.get(), cfg.precision);
        return;
    }

    if (kind == "delta") {
        std::vector<double> values = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
        read_into(sweep, "values", values);

        const ProblemPtr problem = make_problem(cfg);
        pidec_table* raw = nullptr;
        const pidec_status status = pidec_sweep_delta(
            problem.get(), values.data(), static_cast<int>(values.size()), cfg.fp_tol,
            cfg.max_fp_iters, cfg.cg_tol, cfg.cg_max_iters, &raw);
        if (status != PIDEC_OK) die_api("delta sweep", status);
        const TablePtr table(raw);
        write_table_csv(out / "sweep_delta.csv", table.get(), cfg.precision,
                        {"miss_decreasing"},
                        {trend_column(table.get(), table_column(table.get(), "miss"),
                                      /*decreasing_ok=*/true)});
        return;
    }

    if (kind == "galerkin") {
        double epsilon = cfg.epsilon;
        read_into(sweep, "epsilon", epsilon);
        std::vector<int> modes, slabs;
        if (sweep.contains("levels")) {
            for (const json& level : sweep["levels"]) {
                int m = 0, s = 0;
                read_into(level, "modes", m);
                read_into(level, "slabs", s);
                modes.push_back(m);
                slabs.push_back(s);
            }
        }
        if (modes.empty()) die(kExitConfig, "galerkin sweep needs a 'levels' array");

        const ProblemPtr problem = make_problem(cfg);
        pidec_table* raw = nullptr;
        const pidec_status status = pidec_sweep_galerkin(
            problem.get(), modes.data(), slabs.data(), static_cast<int>(modes.size()),
            epsilon, cfg.cg_tol, cfg.cg_max_iters, &raw);
        if (status != PIDEC_OK) die_api("galerkin sweep", status);
        const TablePtr table(raw);
        write_table_csv(
            out / "sweep_galerkin.csv", table.get(), cfg.precision,
            {"distance_decreasing"},
            {trend_column(table.get(), table_column(table.get(), "distance_to_full"),
                          /*decreasing_ok=*/true)});
        return;
    }

    die(kExitConfig, "unknown sweep kind: '" + kind + "'");
}

void run_convergence(const Config& cfg) {
    const std::filesystem::path out(cfg.out_dir);

    pidec_table* raw_spatial = nullptr;
    pidec_status status =
        pidec_study_spatial(cfg.spatial_cells.data(),
                            static_cast<int>(cfg.spatial_cells.size()),
                            cfg.n_steps_base, &raw_spatial);
    if (status != PIDEC_OK) die_api("spatial study", status);
    const TablePtr spatial(raw_spatial);
    write_table_csv(out / "convergence_spatial.csv", spatial.get(), cfg.precision);

    pidec_table* raw_temporal = nullptr;
    status = pidec_study_temporal(cfg.temporal_n_cells, cfg.temporal_steps.data(),
                                  static_cast<int>(cfg.temporal_steps.size()),
                                  &raw_temporal);
    if (status != PIDEC_OK) die_api("temporal study", status);
    const TablePtr temporal(raw_temporal);
    write_table_csv(out / "convergence_temporal.csv", temporal.get(), cfg.precision);
}

void run_reproduce(const Config& cfg) {
    // The full benchmark experiment: uncontrolled flow, exact-control flow,
    // both control solvers, and the two parameter sweeps, each in its own
    // subdirectory of out_dir.
    const std::filesystem::path out(cfg.out_dir);

    Config forward_exact = cfg;
    forward_exact.control = json{{"name", "benchmark-exact"}};
    forward_exact.out_dir = (out / "forward_exact").string();
    run_forward(forward_exact);

    Config forward_zero = cfg;
    forward_zero.control = json{{"name", "zero"}};
    forward_zero.out_dir = (out / "forward_uncontrolled").string();
    run_forward(forward_zero);

    Config penalty = cfg;
    penalty.method = "penalty";
    penalty.out_dir = (out / "penalty").string();
    run_control(penalty);

    Config resolvent = cfg;
    resolvent.method = "resolvent";
    resolvent.out_dir = (out / "resolvent").string();
    run_control(resolvent);

    Config eps_sweep = cfg;
    eps_sweep.sweep = json{{"kind", "epsilon"}};
    eps_sweep.out_dir = (out / "sweeps").string();
    run_sweep(eps_sweep);

    Config delta_sweep_cfg = cfg;
    delta_sweep_cfg.sweep = json{{"kind", "delta"}};
    delta_sweep_cfg.out_dir = (out / "sweeps").string();
    run_sweep(delta_sweep_cfg);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pidec: approximate controls for the 1D heat equation with memory"};
    app.require_subcommand(1);

    std::string config_path;
    Config overrides;
    bool has_n_cells = false, has_n_steps = false, has_epsilon = false,
         has_delta = false, has_method = false, has_out = false, has_seed = false;

    std::string method_flag, out_flag;
    int n_cells_flag = 0, n_steps_flag = 0;
    double epsilon_flag = 0.0, delta_flag = 0.0;
    unsigned int seed_flag = 0;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON configuration file");
        sub->add_option("--out", out_flag, "output directory")
            ->each([&](const std::string&) { has_out = true; });
        sub->add_option("--n-cells", n_cells_flag, "spatial cells")
            ->each([&](const std::string&) { has_n_cells = true; });
        sub->add_option("--n-steps", n_steps_flag, "time steps")
            ->each([&](const std::string&) { has_n_steps = true; });
        sub->add_option("--method", method_flag, "penalty or resolvent")
            ->each([&](const std::string&) { has_method = true; });
        sub->add_option("--epsilon", epsilon_flag, "penalty parameter")
            ->each([&](const std::string&) { has_epsilon = true; });
        sub->add_option("--delta", delta_flag, "resolvent regularization")
            ->each([&](const std::string&) { has_delta = true; });
        sub->add_option("--seed", seed_flag, "seed for randomized data")
            ->each([&](const std::string&) { has_seed = true; });
    };

    CLI::App* cmd_forward = app.add_subcommand(
        "forward", "solve the state equation under a configured control");
    CLI::App* cmd_control = app.add_subcommand(
        "control", "compute an approximate control (penalty or resolvent)");
    CLI::App* cmd_sweep = app.add_subcommand(
        "sweep", "epsilon, delta or galerkin parameter sweep");
    CLI::App* cmd_convergence = app.add_subcommand(
        "convergence", "spatial and temporal convergence ladders");
    CLI::App* cmd_reproduce = app.add_subcommand(
        "reproduce", "run the complete decaying-sine benchmark experiment");
    for (CLI::App* sub :
         {cmd_forward, cmd_control, cmd_sweep, cmd_convergence, cmd_reproduce}) {
        add_common(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        Config cfg;
        if (!config_path.empty()) load_config_file(config_path, cfg);
        if (has_n_cells) cfg.n_cells = n_cells_flag;
        if (has_n_steps) cfg.n_steps = n_steps_flag;
        if (has_method) cfg.method = method_flag;
        if (has_epsilon) cfg.epsilon = epsilon_flag;
        if (has_delta) cfg.delta = delta_flag;
        if (has_out) cfg.out_dir = out_flag;
        if (has_seed) cfg.seed = seed_flag;

        if (cmd_forward->parsed()) {
            run_forward(cfg);
        } else if (cmd_control->parsed()) {
            run_control(cfg);
        } else if (cmd_sweep->parsed()) {
            run_sweep(cfg);
        } else if (cmd_convergence->parsed()) {
            run_convergence(cfg);
        } else if (cmd_reproduce->parsed()) {
            run_reproduce(cfg);
        }
    } catch (const CliError& e) {
        std::cerr << "pidec: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "pidec: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}
