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

#ifndef CPK_CHANNELS_HPP
#define CPK_CHANNELS_HPP

#include <array>
#include <string>
#include <vector>

#include "cpk/linalg.hpp"
#include "cpk/tensor.hpp"

namespace cpk {

// Completely positive map given by Kraus operators, each dim_out x dim_in.
struct KrausSet {
  int dim_in = 2;
  int dim_out = 2;
  std::vector<Mat> operators;

  // Shapes and the trace non-increasing condition sum_k E_k^+ E_k <= I.
  void validate(double tol = 1e-10) const;
  bool is_trace_preserving(double tol = 1e-10) const;
  Mat kraus_sum() const;  // sum_k E_k^+ E_k
};

// CP map as a two-time vector sum_k E_k (x) E_k^*, carried on four labels:
// out (raised), in (lowered), in-dagger (raised), out-dagger (lowered).
struct ChannelVector {
  LabeledTensor tensor;
  std::string in_space;
  std::string out_space;
  int dim_in = 2;
  int dim_out = 2;
};

// in_space and out_space must differ (the four labels stay unambiguous).
ChannelVector kraus_to_channel_vector(const KrausSet& kraus,
                                      const std::string& in_space,
                                      const std::string& out_space);

// Choi matrix of the channel vector, rows (in, out) x cols (in', out').
Mat choi_matrix(const ChannelVector& channel);
bool is_completely_positive(const ChannelVector& channel, double tol = 1e-10);
// True iff contracting the identity onto the output side leaves the
// identity on the input side.
bool is_trace_preserving(const ChannelVector& channel, double tol = 1e-10);

// sum_t <t|_X (x) |t>^{X+}  and its raised mirror sum_t |t>^X (x) <t|_{X+}.
LabeledTensor identity_vector_lowered(const std::string& space, int dim = 2);
LabeledTensor identity_vector_raised(const std::string& space, int dim = 2);

// Density operator rho as the raised state vector on `space`.
LabeledTensor state_vector(const Mat& rho, const std::string& space);
// Effect sigma as the lowered costate vector. Components are transposed so
// that bullet(costate_vector(sigma), state_vector(rho)) == tr(sigma rho).
LabeledTensor costate_vector(const Mat& sigma, const std::string& space);

enum class ExtremeChannel : int {
  Identity = 0,
  Flip = 1,
  ReplaceZero = 2,
  ReplaceOne = 3,
};

// The four extreme classical bit channels as measure-and-reprepare Kraus
// sets: identity, flip, replace with 0, replace with 1. Every deterministic
// function {0,1} -> {0,1} is one of these.
KrausSet extreme_classical_kraus(ExtremeChannel which);
std::array<ChannelVector, 4> extreme_classical_channels(
    const std::string& in_space, const std::string& out_space);

struct StochasticMatrix {
  int dim_in = 2;
  int dim_out = 2;
  std::vector<double> entries;  // row-major, entries[j * dim_in + i] = q(j|i)

  double at(int j, int i) const;
  bool is_column_stochastic(double tol = 1e-10) const;
};

// q(j|i) = sum_k |<j|A_k|i>|^2: the classical stochastic map a channel
// reduces to when sandwiched between computational-basis measurements.
StochasticMatrix sandwich_to_stochastic(const KrausSet& kraus);

// Trace-preserving channel sampled by truncating a Haar-random unitary on
// the dilated space; kraus_count is the environment dimension.
KrausSet random_cptp_kraus(int dim_in, int dim_out, int kraus_count,
                           RandomSource& rng);

}  // namespace cpk

#endif  // CPK_CHANNELS_HPP
