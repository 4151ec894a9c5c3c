// Copyright 2026 The cpk developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "cpk/capi.h"

namespace {

using nlohmann::json;

// Exit codes shared by the subcommands.
constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitOutsidePolytope = 2;
constexpr int kExitNonClassical = 3;
constexpr int kExitVerifyFailed = 4;

struct StringDeleter {
  void operator()(char* p) const { cpk_string_free(p); }
};
using CString = std::unique_ptr<char, StringDeleter>;

struct StateDeleter {
  void operator()(cpk_state* p) const { cpk_state_free(p); }
};
using StatePtr = std::unique_ptr<cpk_state, StateDeleter>;

struct TableDeleter {
  void operator()(cpk_table* p) const { cpk_table_free(p); }
};
using TablePtr = std::unique_ptr<cpk_table, TableDeleter>;

struct PmDeleter {
  void operator()(cpk_pm* p) const { cpk_pm_free(p); }
};
using PmPtr = std::unique_ptr<cpk_pm, PmDeleter>;

[[noreturn]] void fail(int code, const std::string& message) {
  std::cerr << "error: " << message << "\n";
  std::exit(code);
}

void check(cpk_status status, int exit_code_on_error) {
  if (status != CPK_OK) fail(exit_code_on_error, cpk_last_error());
}

std::string read_file(const std::string& path, int exit_code_on_error) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(exit_code_on_error, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(kExitParse, "cannot write '" + path + "'");
  out << content;
}

// Vertex cache under CPK_CACHE_DIR, keyed by party count and stamped with
// the library version.
std::optional<std::string> cache_path(int parties) {
  const char* dir = std::getenv("CPK_CACHE_DIR");
  if (!dir || !*dir) return std::nullopt;
  return std::string(dir) + "/vertices_p" + std::to_string(parties) + ".json";
}

std::string load_or_enumerate_vertices(int parties) {
  const auto path = cache_path(parties);
  if (path && std::filesystem::exists(*path)) {
    const std::string cached = read_file(*path, kExitParse);
    try {
      const json j = json::parse(cached);
      if (j.value("version", std::string()) == cpk_version()) return cached;
    } catch (const json::exception&) {
      // fall through and regenerate
    }
  }
  char* raw = nullptr;
  check(cpk_vertices(parties, &raw), kExitParse);
  CString text(raw);
  std::string result(text.get());
  if (path) {
    std::filesystem::create_directories(std::filesystem::path(*path).parent_path());
    write_file(*path, result);
  }
  return result;
}

StatePtr load_state(const std::string& scenario, const std::string& state_path,
                    int exit_code_on_error) {
  cpk_state* raw = nullptr;
  if (!scenario.empty()) {
    check(cpk_state_builtin(scenario.c_str(), &raw), exit_code_on_error);
  } else {
    const std::string text = read_file(state_path, exit_code_on_error);
    check(cpk_state_from_json(text.c_str(), &raw), exit_code_on_error);
  }
  return StatePtr(raw);
}

int run_simulate(const std::string& scenario, const std::string& state_path,
                 const std::string& instruments_path, const std::string& out_path) {
  const StatePtr state = load_state(scenario, state_path, kExitParse);

  std::string instruments_text;
  if (!instruments_path.empty()) {
    instruments_text = read_file(instruments_path, kExitParse);
  }

  cpk_table* raw_table = nullptr;
  check(cpk_simulate(state.get(),
                     instruments_text.empty() ? nullptr : instruments_text.c_str(),
                     &raw_table),
        kExitParse);
  TablePtr table(raw_table);

  char* raw_grid = nullptr;
  check(cpk_table_render(table.get(), &raw_grid), kExitParse);
  CString grid(raw_grid);
  std::cout << grid.get();

  if (!out_path.empty()) {
    char* raw_json = nullptr;
    check(cpk_table_to_json(table.get(), &raw_json), kExitParse);
    CString text(raw_json);
    write_file(out_path, std::string(text.get()) + "\n");
    std::cout << "table written to " << out_path << "\n";
  }
  return kExitOk;
}

int run_certify(const std::string& table_path, const std::string& out_path) {
  const std::string table_text = read_file(table_path, kExitParse);
  cpk_table* raw_table = nullptr;
  check(cpk_table_from_json(table_text.c_str(), &raw_table), kExitParse);
  TablePtr table(raw_table);

  const std::string vertices = load_or_enumerate_vertices(3);

  char* raw_report = nullptr;
  check(cpk_certify(table.get(), vertices.c_str(), &raw_report), kExitParse);
  CString report_text(raw_report);
  const json report = json::parse(report_text.get());

  if (!out_path.empty()) write_file(out_path, std::string(report_text.get()) + "\n");

  const bool in_polytope = report["in_nbts_polytope"].get<bool>();
  std::cout << "in NBTS polytope: " << (in_polytope ? "yes" : "no") << "\n";
  std::cout << "symmetries:       " << (report["symmetries_ok"].get<bool>() ? "yes" : "no") << "\n";
  std::cout << "last-mover check: " << (report["last_mover_ok"].get<bool>() ? "holds" : "violated") << "\n";
  if (!in_polytope) {
    std::cout << "verdict:          outside the NBTS polytope\n";
    return kExitOutsidePolytope;
  }

  const bool classical = report["classical"].get<bool>();
  std::cout << "vertices:         " << report["vertex_count"].get<std::size_t>() << "\n";
  std::cout << "extreme point:    "
            << (report["extremality"]["is_extreme"].get<bool>() ? "yes" : "no")
            << " (saturated rank "
            << report["extremality"]["saturated_rank"].get<int>() << ")\n";
  if (classical) {
    std::cout << "verdict:          classical (membership certificate)\n";
    return kExitOk;
  }
  std::cout << "verdict:          non-classical (separation certificate)\n";
  return kExitNonClassical;
}

int run_verify(const std::string& scenario, const std::string& state_path,
               const std::string& pm_path, unsigned seed, int random_samples,
               double tolerance, const std::string& out_path) {
  char* raw_report = nullptr;
  if (!pm_path.empty()) {
    const std::string text = read_file(pm_path, kExitParse);
    cpk_pm* raw_pm = nullptr;
    check(cpk_pm_from_json(text.c_str(), &raw_pm), kExitParse);
    PmPtr pm(raw_pm);
    check(cpk_verify_pm(pm.get(), seed, random_samples, tolerance, &raw_report),
          kExitParse);
  } else {
    const StatePtr state = load_state(scenario, state_path, kExitParse);
    check(cpk_verify_state(state.get(), seed, random_samples, tolerance, &raw_report),
          kExitParse);
  }
  CString report_text(raw_report);
  const json report = json::parse(report_text.get());
  if (!out_path.empty()) write_file(out_path, std::string(report_text.get()) + "\n");

  const auto& linearity = report["linearity"];
  std::cout << "linearity: " << (linearity["pass"].get<bool>() ? "pass" : "FAIL")
            << " (worst deviation " << linearity["worst_deviation"].get<double>()
            << " over " << linearity["extreme_triples"].get<int>() << " extreme + "
            << linearity["random_triples"].get<int>() << " random triples)\n";
  for (const auto& marginal : report["marginals"]) {
    std::cout << "marginal " << marginal["party"].get<std::string>() << ": "
              << (marginal["pass"].get<bool>() ? "pass" : "FAIL")
              << " (max deviation " << marginal["max_deviation"].get<double>() << ")\n";
  }
  if (report.contains("pm_equivalence")) {
    const auto& eq = report["pm_equivalence"];
    std::cout << "trace-rule equivalence: " << (eq["pass"].get<bool>() ? "pass" : "FAIL")
              << " (max gap " << eq["max_probability_gap"].get<double>()
              << ", round trip " << eq["round_trip_error"].get<double>() << ")\n";
  }
  if (!report["pass"].get<bool>()) {
    std::cout << "verification FAILED\n";
    return kExitVerifyFailed;
  }
  std::cout << "verification passed\n";
  return kExitOk;
}

int run_vertices(const std::string& out_path) {
  const std::string vertices = load_or_enumerate_vertices(3);
  const json j = json::parse(vertices);
  std::cout << "vertices: " << j["count"].get<std::size_t>() << "\n";
  if (!out_path.empty()) {
    write_file(out_path, vertices + "\n");
    std::cout << "written to " << out_path << "\n";
  }
  return kExitOk;
}

int run_sandwich(const std::string& kraus_path, const std::string& out_path) {
  const std::string text = read_file(kraus_path, kExitParse);
  char* raw = nullptr;
  check(cpk_sandwich(text.c_str(), &raw), kExitParse);
  CString result(raw);
  const json q = json::parse(result.get());
  const int dim_in = q["dim_in"].get<int>();
  const int dim_out = q["dim_out"].get<int>();
  std::cout << "q(j|i), " << dim_out << "x" << dim_in << ":\n";
  for (int jrow = 0; jrow < dim_out; ++jrow) {
    for (int i = 0; i < dim_in; ++i) {
      std::cout << "  "
                << q["entries"][static_cast<std::size_t>(jrow * dim_in + i)].get<double>();
    }
    std::cout << "\n";
  }
  if (!out_path.empty()) {
    write_file(out_path, std::string(result.get()) + "\n");
  }
  return kExitOk;
}

int run_pm_convert(const std::string& pm_path, const std::string& state_path,
                   const std::string& out_path) {
  if (out_path.empty()) fail(kExitParse, "--out is required");
  if (!pm_path.empty()) {
    const std::string text = read_file(pm_path, kExitParse);
    cpk_pm* raw_pm = nullptr;
    check(cpk_pm_from_json(text.c_str(), &raw_pm), kExitParse);
    PmPtr pm(raw_pm);
    cpk_state* raw_state = nullptr;
    check(cpk_pm_to_state(pm.get(), &raw_state), kExitParse);
    StatePtr state(raw_state);
    char* raw = nullptr;
    check(cpk_state_to_json(state.get(), &raw), kExitParse);
    CString text_out(raw);
    write_file(out_path, std::string(text_out.get()) + "\n");
    std::cout << "two-time state written to " << out_path << "\n";
    return kExitOk;
  }
  const std::string text = read_file(state_path, kExitParse);
  cpk_state* raw_state = nullptr;
  check(cpk_state_from_json(text.c_str(), &raw_state), kExitParse);
  StatePtr state(raw_state);
  cpk_pm* raw_pm = nullptr;
  check(cpk_state_to_pm(state.get(), &raw_pm), kExitParse);
  PmPtr pm(raw_pm);
  char* raw = nullptr;
  check(cpk_pm_to_json(pm.get(), &raw), kExitParse);
  CString text_out(raw);
  write_file(out_path, std::string(text_out.get()) + "\n");
  std::cout << "process matrix written to " << out_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cpk: simulate, verify and certify no-backwards-in-time-"
               "signalling correlations"};
  app.require_subcommand(1);

  unsigned seed = 0;
  int random_samples = 32;
  double tolerance = 1e-9;
  std::string scenario, state_path, pm_path, table_path, instruments_path,
      kraus_path, out_path;

  auto* simulate = app.add_subcommand("simulate", "evaluate a probability table");
  simulate->add_option("--scenario", scenario, "builtin scenario id (cyclic3)");
  simulate->add_option("--state", state_path, "two-time state JSON file");
  simulate->add_option("--instruments", instruments_path, "instruments JSON file");
  simulate->add_option("--out", out_path, "write the table JSON here");

  auto* certify = app.add_subcommand("certify", "classical-polytope membership");
  certify->add_option("--table", table_path, "probability table JSON file")->required();
  certify->add_option("--out", out_path, "write the report JSON here");

  auto* verify = app.add_subcommand("verify", "linearity and marginal checks");
  verify->add_option("--scenario", scenario, "builtin scenario id (cyclic3)");
  verify->add_option("--state", state_path, "two-time state JSON file");
  verify->add_option("--pm", pm_path, "process matrix JSON file");
  verify->add_option("--random", random_samples, "random channel samples");
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--tolerance", tolerance, "verification tolerance");
  verify->add_option("--out", out_path, "write the report JSON here");

  auto* vertices = app.add_subcommand("vertices", "enumerate classical vertices");
  vertices->add_option("--out", out_path, "write the vertex list here");

  auto* sandwich = app.add_subcommand(
      "sandwich", "stochastic matrix of a measurement-sandwiched channel");
  sandwich->add_option("--kraus", kraus_path, "Kraus set JSON file")->required();
  sandwich->add_option("--out", out_path, "write the stochastic matrix here");

  auto* pm_convert = app.add_subcommand(
      "pm-convert", "convert between process matrices and two-time states");
  pm_convert->add_option("--pm", pm_path, "process matrix JSON file");
  pm_convert->add_option("--state", state_path, "two-time state JSON file");
  pm_convert->add_option("--out", out_path, "output path")->required();

  CLI11_PARSE(app, argc, argv);

  if (simulate->parsed()) {
    if (scenario.empty() == state_path.empty()) {
      fail(kExitParse, "pass exactly one of --scenario or --state");
    }
    return run_simulate(scenario, state_path, instruments_path, out_path);
  }
  if (certify->parsed()) return run_certify(table_path, out_path);
  if (verify->parsed()) {
    const int sources = (!scenario.empty()) + (!state_path.empty()) + (!pm_path.empty());
    if (sources != 1) {
      fail(kExitParse, "pass exactly one of --scenario, --state or --pm");
    }
    return run_verify(scenario, state_path, pm_path, seed, random_samples,
                      tolerance, out_path);
  }
  if (vertices->parsed()) return run_vertices(out_path);
  if (sandwich->parsed()) return run_sandwich(kraus_path, out_path);
  if (pm_convert->parsed()) {
    if (pm_path.empty() == state_path.empty()) {
      fail(kExitParse, "pass exactly one of --pm or --state");
    }
    return run_pm_convert(pm_path, state_path, out_path);
  }
  return kExitOk;
}
