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

#ifndef CPK_PROCESS_MATRIX_HPP
#define CPK_PROCESS_MATRIX_HPP

#include <array>
#include <span>
#include <vector>

#include "cpk/twotime.hpp"

namespace cpk {

// Positive operator on the tensor product of every party's (in x out) pair,
// ordered party 0 in, party 0 out, party 1 in, ...
struct ProcessMatrix {
  Mat matrix;
  PartyLayout parties;

  Eigen::Index dim() const;
  void validate(double tol = 1e-10) const;  // square, hermitian, PSD
};

// The laboratory operator entering the trace rule: the transposed
// (unnormalized) Choi operator of the outcome's Kraus set on in (x) out.
Mat lab_operator(const KrausSet& kraus);

// tr[W (x)_k M_{a_k}] with per-party outcome Kraus sets.
double pm_probability(const ProcessMatrix& w,
                      const std::vector<std::array<KrausSet, 2>>& outcome_ops,
                      std::span<const int> outcomes);
// Convenience overload taking instruments and classical inputs.
double pm_probability(const ProcessMatrix& w,
                      const std::vector<Instrument>& instruments,
                      std::span<const int> outcomes, std::span<const int> inputs);

// The isomorphism between process matrices and linear two-time states:
// W's row index feeds the plain labels, the column index the dagger labels,
// with output-space bras and kets flipped.
TwoTimeState pm_to_twotime(const ProcessMatrix& w);
ProcessMatrix twotime_to_pm(const TwoTimeState& state);

// Valid process matrix sampled from a random causal circuit: random party
// order, random input state, random trace-preserving links, final output
// traced out.
ProcessMatrix random_causal_circuit(const PartyLayout& layout, RandomSource& rng);

// Binary-outcome instrument whose per-input channels are random
// trace-preserving maps split across the two outcomes.
Instrument random_instrument(const Party& party, RandomSource& rng);

}  // namespace cpk

#endif  // CPK_PROCESS_MATRIX_HPP
