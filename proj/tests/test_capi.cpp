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

#include <doctest.h>

#include <json.hpp>

#include <cstring>
#include <string>

#include "cpk/capi.h"

using nlohmann::json;

namespace {

std::string take(char* text) {
  REQUIRE(text != nullptr);
  std::string out(text);
  cpk_string_free(text);
  return out;
}

}  // namespace

TEST_CASE("version and error reporting") {
  CHECK(std::strlen(cpk_version()) > 0);

  cpk_state* state = nullptr;
  CHECK(cpk_state_builtin("nope", &state) == CPK_ERR_INVALID);
  CHECK(std::strlen(cpk_last_error()) > 0);
  CHECK(cpk_state_builtin(nullptr, &state) == CPK_ERR_INVALID);
  CHECK(cpk_state_from_json("{broken", &state) == CPK_ERR_PARSE);
}

TEST_CASE("structurally valid but inconsistent states are rejected as invalid") {
  cpk_state* state = nullptr;
  REQUIRE(cpk_state_builtin("cyclic3", &state) == CPK_OK);
  char* text = nullptr;
  REQUIRE(cpk_state_to_json(state, &text) == CPK_OK);
  json doc = json::parse(take(text));
  cpk_state_free(state);

  // Break dagger-swap hermiticity: bump one entry's imaginary part.
  doc["tensor"]["data"][0][1] = 0.25;
  cpk_state* bad = nullptr;
  CHECK(cpk_state_from_json(doc.dump().c_str(), &bad) == CPK_ERR_INVALID);
  CHECK(std::string(cpk_last_error()).find("hermitian") != std::string::npos);
}

TEST_CASE("builtin scenario simulates the protocol table") {
  cpk_state* state = nullptr;
  REQUIRE(cpk_state_builtin("cyclic3", &state) == CPK_OK);

  cpk_table* table = nullptr;
  REQUIRE(cpk_simulate(state, nullptr, &table) == CPK_OK);

  char* grid = nullptr;
  REQUIRE(cpk_table_render(table, &grid) == CPK_OK);
  const std::string text = take(grid);
  CHECK(text.find("1/2") != std::string::npos);

  char* table_json = nullptr;
  REQUIRE(cpk_table_to_json(table, &table_json) == CPK_OK);
  const std::string serialized = take(table_json);
  const json parsed = json::parse(serialized);
  CHECK(parsed["parties"] == 3);
  CHECK(parsed["entries"]["000|000"] == "1/2");
  CHECK(parsed["entries"]["001|000"] == "0");

  // Round trip through the table loader.
  cpk_table* reloaded = nullptr;
  REQUIRE(cpk_table_from_json(serialized.c_str(), &reloaded) == CPK_OK);
  char* again = nullptr;
  REQUIRE(cpk_table_to_json(reloaded, &again) == CPK_OK);
  CHECK(take(again) == serialized);

  cpk_table_free(reloaded);
  cpk_table_free(table);
  cpk_state_free(state);
}

TEST_CASE("state JSON round trip") {
  cpk_state* state = nullptr;
  REQUIRE(cpk_state_builtin("cyclic3", &state) == CPK_OK);
  char* text = nullptr;
  REQUIRE(cpk_state_to_json(state, &text) == CPK_OK);
  const std::string serialized = take(text);

  cpk_state* reloaded = nullptr;
  REQUIRE(cpk_state_from_json(serialized.c_str(), &reloaded) == CPK_OK);
  cpk_table* table = nullptr;
  REQUIRE(cpk_simulate(reloaded, nullptr, &table) == CPK_OK);
  char* json_text = nullptr;
  REQUIRE(cpk_table_to_json(table, &json_text) == CPK_OK);
  CHECK(json::parse(take(json_text))["entries"]["111|000"] == "1/2");

  cpk_table_free(table);
  cpk_state_free(reloaded);
  cpk_state_free(state);
}

TEST_CASE("certification verdicts") {
  cpk_state* state = nullptr;
  REQUIRE(cpk_state_builtin("cyclic3", &state) == CPK_OK);
  cpk_table* table = nullptr;
  REQUIRE(cpk_simulate(state, nullptr, &table) == CPK_OK);

  char* report_text = nullptr;
  REQUIRE(cpk_certify(table, nullptr, &report_text) == CPK_OK);
  const json report = json::parse(take(report_text));
  CHECK(report["in_nbts_polytope"] == true);
  CHECK(report["classical"] == false);
  CHECK(report["certificate"]["kind"] == "separation");
  CHECK(report["symmetries_ok"] == true);
  CHECK(report["last_mover_ok"] == false);
  CHECK(report["vertex_count"] == 680);
  CHECK(report["extremality"]["saturated_rank"] == 63);

  cpk_table_free(table);
  cpk_state_free(state);
}

TEST_CASE("vertices and cached certification") {
  char* vertices_text = nullptr;
  REQUIRE(cpk_vertices(3, &vertices_text) == CPK_OK);
  const std::string vertices = take(vertices_text);
  CHECK(json::parse(vertices)["count"] == 680);
  CHECK(json::parse(vertices)["version"] == cpk_version());

  // Uniform table: classical with membership weights.
  json uniform = {{"parties", 3}, {"entries", json::object()}};
  for (int in_code = 0; in_code < 8; ++in_code) {
    for (int out_code = 0; out_code < 8; ++out_code) {
      std::string key, bits;
      for (int k = 2; k >= 0; --k) bits += ((out_code >> k) & 1) ? '1' : '0';
      key = bits + "|";
      bits.clear();
      for (int k = 2; k >= 0; --k) bits += ((in_code >> k) & 1) ? '1' : '0';
      key += bits;
      uniform["entries"][key] = "1/8";
    }
  }
  cpk_table* table = nullptr;
  REQUIRE(cpk_table_from_json(uniform.dump().c_str(), &table) == CPK_OK);
  char* report_text = nullptr;
  REQUIRE(cpk_certify(table, vertices.c_str(), &report_text) == CPK_OK);
  const json report = json::parse(take(report_text));
  CHECK(report["classical"] == true);
  CHECK(report["certificate"]["kind"] == "membership");
  cpk_table_free(table);

  CHECK(cpk_vertices(2, &vertices_text) == CPK_ERR_INVALID);
}

TEST_CASE("verification of the builtin state") {
  cpk_state* state = nullptr;
  REQUIRE(cpk_state_builtin("cyclic3", &state) == CPK_OK);
  char* report_text = nullptr;
  REQUIRE(cpk_verify_state(state, 0, 8, 1e-9, &report_text) == CPK_OK);
  const json report = json::parse(take(report_text));
  CHECK(report["pass"] == true);
  CHECK(report["linearity"]["pass"] == true);
  CHECK(report["linearity"]["extreme_triples"] == 64);
  CHECK(report["marginals"].size() == 3);
  cpk_state_free(state);
}

TEST_CASE("process matrix conversion through the C surface") {
  cpk_state* state = nullptr;
  REQUIRE(cpk_state_builtin("cyclic3", &state) == CPK_OK);

  cpk_pm* process = nullptr;
  REQUIRE(cpk_state_to_pm(state, &process) == CPK_OK);
  char* pm_text = nullptr;
  REQUIRE(cpk_pm_to_json(process, &pm_text) == CPK_OK);
  const std::string serialized = take(pm_text);

  cpk_pm* reloaded = nullptr;
  REQUIRE(cpk_pm_from_json(serialized.c_str(), &reloaded) == CPK_OK);
  char* report_text = nullptr;
  REQUIRE(cpk_verify_pm(reloaded, 0, 4, 1e-9, &report_text) == CPK_OK);
  const json report = json::parse(take(report_text));
  CHECK(report["pass"] == true);
  CHECK(report["pm_equivalence"]["pass"] == true);

  cpk_state* back = nullptr;
  REQUIRE(cpk_pm_to_state(reloaded, &back) == CPK_OK);
  cpk_table* table = nullptr;
  REQUIRE(cpk_simulate(back, nullptr, &table) == CPK_OK);
  char* table_text = nullptr;
  REQUIRE(cpk_table_to_json(table, &table_text) == CPK_OK);
  CHECK(json::parse(take(table_text))["entries"]["000|000"] == "1/2");

  cpk_table_free(table);
  cpk_state_free(back);
  cpk_pm_free(reloaded);
  cpk_pm_free(process);
  cpk_state_free(state);
}

TEST_CASE("sandwich endpoint") {
  const json x_kraus = {
      {"dim_in", 2},
      {"dim_out", 2},
      {"operators",
       {{{0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}}}},
  };
  char* text = nullptr;
  REQUIRE(cpk_sandwich(x_kraus.dump().c_str(), &text) == CPK_OK);
  const json q = json::parse(take(text));
  CHECK(q["entries"][0] == doctest::Approx(0.0));
  CHECK(q["entries"][1] == doctest::Approx(1.0));
  CHECK(q["entries"][2] == doctest::Approx(1.0));
  CHECK(q["entries"][3] == doctest::Approx(0.0));

  CHECK(cpk_sandwich("{}", &text) == CPK_ERR_PARSE);
  CHECK(cpk_sandwich(nullptr, &text) == CPK_ERR_INVALID);
}
