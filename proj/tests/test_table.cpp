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

#include "cpk/errors.hpp"
#include "cpk/json_io.hpp"
#include "cpk/prob_table.hpp"
#include "test_helpers.hpp"

using namespace cpk;

TEST_CASE("table indexing and predicates") {
  const ProbTable table = testing::protocol_table();
  const int outs[3] = {0, 0, 0};
  const int ins[3] = {0, 0, 0};
  CHECK(table.at(outs, ins) == Rational(1, 2));
  CHECK(table.normalized());
  CHECK(table.entries_in_range());
  CHECK_FALSE(table.is_deterministic());
  CHECK(testing::constant_zero_table().is_deterministic());

  CHECK_THROWS_AS(table.at_codes(8, 0), InvalidArgument);
  CHECK_THROWS_AS(ProbTable(0), InvalidArgument);
}

TEST_CASE("entry keys") {
  CHECK(table_entry_key(0b010, 0b110, 3) == "010|110");
  CHECK(table_entry_key(0, 0, 3) == "000|000");
}

TEST_CASE("table JSON round trip") {
  const ProbTable table = testing::protocol_table();
  const std::string text = table_to_json(table);
  CHECK(table_from_json(text) == table);

  CHECK_THROWS_AS(table_from_json("not json"), ParseError);
  CHECK_THROWS_AS(table_from_json("{\"parties\":3,\"entries\":{}}"), ParseError);
  CHECK_THROWS_AS(table_from_json("{\"parties\":3}"), ParseError);
}

TEST_CASE("grid rendering follows the reference layout") {
  const std::string grid = render_grid(testing::protocol_table());
  // Column order 000 001 010 100 011 101 110 111; row 000 holds halves at
  // the first and last columns.
  CHECK(grid.find("000   001   010   100   011   101   110   111") != std::string::npos);
  CHECK(grid.find("000    1/2     0     0     0     0     0     0   1/2") !=
        std::string::npos);
  CHECK(grid.find("001      0     0   1/2     0     0   1/2     0     0") !=
        std::string::npos);
  CHECK_THROWS_AS(render_grid(ProbTable(2)), InvalidArgument);
}

TEST_CASE("canonical keys are exact and order independent") {
  const ProbTable a = testing::protocol_table();
  const ProbTable b = testing::closed_form_table();
  CHECK(a.canonical_key() == b.canonical_key());
  CHECK(a.canonical_key() != testing::uniform_table().canonical_key());
}
