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

#ifndef CPK_POLYTOPE_HPP
#define CPK_POLYTOPE_HPP

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cpk/prob_table.hpp"
#include "cpk/rational.hpp"

namespace cpk {

struct LinearEquality {
  std::vector<Rational> coeffs;  // one per table coordinate
  Rational rhs;
  std::string tag;
};

// Normalization (one per input assignment) plus, for each party, the
// marginal-independence equalities: the party's output distribution must not
// depend on that party's own input.
std::vector<LinearEquality> nbts_equalities(int n_parties = 3);

bool satisfies_equalities(const ProbTable& table,
                          const std::vector<LinearEquality>& equalities);
std::vector<std::string> equality_violations(
    const ProbTable& table, const std::vector<LinearEquality>& equalities);

// Deterministic adaptive causal strategy for three parties: the first party
// outputs a constant; its input selects who goes second (with a constant
// output for that branch) and how the remaining party's output depends on
// the second mover's input.
struct DetStrategy {
  struct Branch {
    int second_party = 1;
    int second_output = 0;
    std::array<int, 2> third_output{0, 0};  // indexed by the second mover's input
  };
  int first_party = 0;
  int first_output = 0;
  std::array<Branch, 2> branch{};  // indexed by the first party's input

  ProbTable to_table() const;
};

// All 1536 strategy encodings (3 x 2 x 16 x 16).
std::vector<DetStrategy> all_strategy_encodings();

// Distinct deterministic tables, sorted by canonical key; the position in
// the returned vector is the vertex id used in certificates.
std::vector<ProbTable> enumerate_classical_vertices();

struct Certificate {
  enum class Kind { Membership, Separation } kind = Kind::Membership;
  // Membership: convex weights over vertex ids (only nonzero ones listed).
  std::vector<std::pair<std::size_t, Rational>> weights;
  // Separation: integer functional with gcd 1; y.v <= y0 for every vertex
  // while y.p > y0.
  std::vector<Integer> y;
  Integer y0;
};

// Exact-rational feasibility LP for p = sum_i w_i v_i, w >= 0, sum w = 1.
// Returns either membership weights or a Farkas separation; both are
// re-verified exactly before returning.
Certificate membership(const ProbTable& p, const std::vector<ProbTable>& vertices);

bool verify_certificate(const Certificate& certificate, const ProbTable& p,
                        const std::vector<ProbTable>& vertices);

struct ExtremalityReport {
  bool satisfies_constraints = false;  // equalities hold and 0 <= p <= 1
  bool is_extreme = false;
  int saturated_rank = 0;
};

// Stacks the equality normals with one unit row per zero coordinate and
// computes the exact rank; the point is extreme iff the rank equals the
// number of coordinates.
ExtremalityReport extremality(const ProbTable& p);

// The five relabelling relations of the protocol table: global output flip,
// global input flip, cyclic party shift, and the (b, z) flip.
bool verify_symmetries(const ProbTable& p);

// For every support point, some single input flip must keep the entry
// reachable: p(abc|x',y,z) + p(abc|x,y',z) + p(abc|x,y,z') > 0. Holds for
// every deterministic causal strategy; fails for the protocol table.
bool last_mover_check(const ProbTable& p);

// Coordinates minus the exact rank of the equality system.
int nbts_affine_dimension(int n_parties = 3);

}  // namespace cpk

#endif  // CPK_POLYTOPE_HPP
