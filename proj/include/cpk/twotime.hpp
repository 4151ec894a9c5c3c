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

#ifndef CPK_TWOTIME_HPP
#define CPK_TWOTIME_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cpk/channels.hpp"
#include "cpk/prob_table.hpp"
#include "cpk/tensor.hpp"

namespace cpk {

struct Party {
  std::string name;       // "A"
  std::string in_space;   // "A_i"
  std::string out_space;  // "A_o"
  int dim_in = 2;
  int dim_out = 2;
};

using PartyLayout = std::vector<Party>;

PartyLayout tripartite_layout();  // A, B, C with qubit spaces

// Laboratory instrument {M(a|x)}: one CP map per outcome a and input x,
// summing to a trace-preserving channel for each x.
struct Instrument {
  Party party;
  std::array<std::array<KrausSet, 2>, 2> ops;  // ops[outcome][input]

  ChannelVector channel(int outcome, int input) const;
  KrausSet input_channel(int input) const;  // outcomes merged
  void validate(double tol = 1e-10) const;
};

// Measure in the computational basis (outcome a), re-prepare |a xor x>.
Instrument build_measurement_instrument(const Party& party);
std::vector<Instrument> protocol_instruments(const PartyLayout& layout);

struct TwoTimeState {
  LabeledTensor tensor;
  PartyLayout parties;
};

// Dephasing link between laboratories (computational-basis measurement on
// the wire), optionally followed by a bit flip.
ChannelVector link_channel(bool flipped, const std::string& from_space,
                           const std::string& to_space);

// The cyclic three-party state: an equal mixture of plain and flipped
// dephasing links wired A->B->C->A.
TwoTimeState build_eta();

bool dagger_swap_hermitian(const LabeledTensor& t, double tol = 1e-12);

// Checks label structure (four slots per party, matching dims) and
// dagger-swap hermiticity; throws InvalidArgument on failure.
void validate_twotime(const TwoTimeState& state, double tol = 1e-12);

// p = (J(a|x) (x) K(b|y) (x) L(c|z)) . state, clamped to [0, 1].
double probability(const TwoTimeState& state,
                   const std::vector<Instrument>& instruments,
                   std::span<const int> outcomes, std::span<const int> inputs);

// All 4^n outcome/input probabilities snapped to exact rationals
// (denominator <= 2^20 within 1e-9). Throws NumericError when an entry is
// not near such a rational or a row fails to sum to one.
ProbTable full_table(const TwoTimeState& state,
                     const std::vector<Instrument>& instruments);

struct LinearityReport {
  bool pass = false;
  double worst_deviation = 0.0;
  int extreme_triples = 0;
  int random_triples = 0;
  std::vector<std::pair<std::string, double>> failures;  // description, value
};

// Contracts every combination of extreme classical channels (4^n of them)
// plus seeded random trace-preserving channels against the state; passes
// iff every scalar equals 1 within tolerance.
LinearityReport verify_linearity(const TwoTimeState& state,
                                 int random_samples = 32,
                                 std::uint64_t seed = 0,
                                 double tolerance = 1e-9);

// Rescales the state so all trace-preserving channel contractions give 1.
// Throws NumericError when the contraction is zero or channel-dependent.
TwoTimeState normalize_twotime(const TwoTimeState& state,
                               std::uint64_t seed = 0,
                               double tolerance = 1e-9);

struct MarginalReport {
  bool pass = false;
  double max_deviation = 0.0;
  std::vector<Mat> densities;             // recovered input state per sample
  std::vector<std::string> sample_names;  // which channels produced it
};

// Contracts every other party with sampled trace-preserving channels and
// checks the residual factorizes as rho (x) identity-on-output with rho a
// valid density matrix.
MarginalReport marginal_form_check(const TwoTimeState& state,
                                   std::size_t party_index,
                                   int random_samples = 8,
                                   std::uint64_t seed = 0,
                                   double tolerance = 1e-9);

}  // namespace cpk

#endif  // CPK_TWOTIME_HPP
