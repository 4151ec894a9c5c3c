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

#ifndef CPK_SIMPLEX_HPP
#define CPK_SIMPLEX_HPP

#include <cstdint>
#include <vector>

#include "cpk/rational.hpp"

namespace cpk {

struct FeasibilityResult {
  bool feasible = false;
  // Feasible: x >= 0 with A x = b, componentwise exact.
  std::vector<Rational> solution;
  // Infeasible: y with y.A_col <= 0 for every column and y.b > 0.
  std::vector<Rational> farkas;
};

// Decides {A x = b, x >= 0} by a phase-1 primal simplex in exact rational
// arithmetic with Bland's rule (termination guaranteed). Either outcome is
// re-verified by substitution before returning. Throws Error if the pivot
// guard trips, which indicates a bug rather than bad input.
FeasibilityResult solve_equality_feasibility(
    const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
    std::int64_t max_pivots = 1'000'000);

// Rank of an integer matrix by fraction-free (Bareiss) elimination.
int exact_rank(std::vector<std::vector<Integer>> m);

// Clears denominators row by row, then runs exact_rank.
int exact_rank_rational(const std::vector<std::vector<Rational>>& m);

}  // namespace cpk

#endif  // CPK_SIMPLEX_HPP
