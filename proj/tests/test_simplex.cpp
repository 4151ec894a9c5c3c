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
#include "cpk/simplex.hpp"

using namespace cpk;

namespace {

using Matrix = std::vector<std::vector<Rational>>;

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational acc(0);
  for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
  return acc;
}

}  // namespace

TEST_CASE("feasible equality systems") {
  // x1 + x2 = 1, x1 - x2 = 0 -> x = (1/2, 1/2).
  const Matrix a = {{Rational(1), Rational(1)}, {Rational(1), Rational(-1)}};
  const std::vector<Rational> b = {Rational(1), Rational(0)};
  const FeasibilityResult result = solve_equality_feasibility(a, b);
  REQUIRE(result.feasible);
  CHECK(result.solution[0] == Rational(1, 2));
  CHECK(result.solution[1] == Rational(1, 2));
}

TEST_CASE("negative right-hand sides are handled by row flips") {
  // -x1 = -3 -> x1 = 3.
  const Matrix a = {{Rational(-1), Rational(0)}, {Rational(0), Rational(1)}};
  const std::vector<Rational> b = {Rational(-3), Rational(2)};
  const FeasibilityResult result = solve_equality_feasibility(a, b);
  REQUIRE(result.feasible);
  CHECK(result.solution[0] == Rational(3));
  CHECK(result.solution[1] == Rational(2));
}

TEST_CASE("infeasible systems produce a valid Farkas certificate") {
  // x1 + x2 = 1 and x1 + x2 = 2 cannot both hold.
  const Matrix a = {{Rational(1), Rational(1)}, {Rational(1), Rational(1)}};
  const std::vector<Rational> b = {Rational(1), Rational(2)};
  const FeasibilityResult result = solve_equality_feasibility(a, b);
  REQUIRE_FALSE(result.feasible);
  REQUIRE(result.farkas.size() == 2);
  // y.A_col <= 0 for all columns, y.b > 0 (checked internally too).
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(result.farkas[0] * a[0][j] + result.farkas[1] * a[1][j] <= 0);
  }
  CHECK(dot(result.farkas, b) > 0);

  // Nonnegativity makes x = -1 impossible.
  const Matrix single = {{Rational(1)}};
  const FeasibilityResult negative =
      solve_equality_feasibility(single, {Rational(-1)});
  CHECK_FALSE(negative.feasible);
}

TEST_CASE("degenerate and redundant rows") {
  // Duplicate consistent rows stay feasible.
  const Matrix a = {{Rational(1), Rational(1)},
                    {Rational(1), Rational(1)},
                    {Rational(0), Rational(1)}};
  const std::vector<Rational> b = {Rational(1), Rational(1), Rational(1, 3)};
  const FeasibilityResult result = solve_equality_feasibility(a, b);
  REQUIRE(result.feasible);
  CHECK(result.solution[0] == Rational(2, 3));
  CHECK(result.solution[1] == Rational(1, 3));
}

TEST_CASE("shape validation") {
  CHECK_THROWS_AS(solve_equality_feasibility({}, {}), InvalidArgument);
  const Matrix ragged = {{Rational(1), Rational(2)}, {Rational(1)}};
  CHECK_THROWS_AS(solve_equality_feasibility(ragged, {Rational(1), Rational(1)}),
                  InvalidArgument);
}

TEST_CASE("exact integer rank") {
  CHECK(exact_rank({}) == 0);
  CHECK(exact_rank({{Integer(0), Integer(0)}}) == 0);
  CHECK(exact_rank({{Integer(1), Integer(0)}, {Integer(0), Integer(1)}}) == 2);
  // Third row is the sum of the first two.
  CHECK(exact_rank({{Integer(1), Integer(2), Integer(3)},
                    {Integer(4), Integer(5), Integer(6)},
                    {Integer(5), Integer(7), Integer(9)}}) == 2);
  // Tall and wide shapes.
  CHECK(exact_rank({{Integer(2)}, {Integer(4)}, {Integer(6)}}) == 1);
  CHECK(exact_rank({{Integer(1), Integer(2), Integer(3), Integer(4)}}) == 1);
}

TEST_CASE("rational rank clears denominators") {
  const Matrix m = {{Rational(1, 2), Rational(1, 3)},
                    {Rational(3, 2), Rational(5)},
                    {Rational(2), Rational(4, 3)}};
  // Row 3 = 4 x row 1; row 2 is independent.
  CHECK(exact_rank_rational(m) == 2);

  const Matrix scaled_copies = {{Rational(1, 2), Rational(1, 3)},
                                {Rational(3, 2), Rational(1)}};
  CHECK(exact_rank_rational(scaled_copies) == 1);
}
