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

#include "cpk/process_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cpk/errors.hpp"

namespace cpk {

namespace {

constexpr double kProbabilityTolerance = 1e-9;

struct PartySlots {
  int in_plain;   // raised, no dagger
  int out_plain;  // lowered, no dagger
  int in_dagger;  // lowered, dagger
  int out_dagger; // raised, dagger
};

PartySlots find_slots(const LabeledTensor& t, const Party& party) {
  PartySlots s{
      t.label_position(party.in_space, false, Variance::Raised),
      t.label_position(party.out_space, false, Variance::Lowered),
      t.label_position(party.in_space, true, Variance::Lowered),
      t.label_position(party.out_space, true, Variance::Raised),
  };
  if (s.in_plain < 0 || s.out_plain < 0 || s.in_dagger < 0 || s.out_dagger < 0) {
    throw InvalidArgument("state lacks the in/out label pairs for party " +
                          party.name);
  }
  return s;
}

}  // namespace

Eigen::Index ProcessMatrix::dim() const {
  Eigen::Index d = 1;
  for (const auto& party : parties) d *= party.dim_in * party.dim_out;
  return d;
}

void ProcessMatrix::validate(double tol) const {
  if (parties.empty()) throw InvalidArgument("process matrix has no parties");
  const Eigen::Index d = dim();
  if (matrix.rows() != d || matrix.cols() != d) {
    throw InvalidArgument("process matrix dimension mismatch");
  }
  if (!is_hermitian(matrix, tol)) {
    throw InvalidArgument("process matrix is not hermitian");
  }
  if (min_eigenvalue_hermitian(matrix) < -tol) {
    throw InvalidArgument("process matrix is not positive semidefinite");
  }
}

Mat lab_operator(const KrausSet& kraus) {
  kraus.validate();
  const int din = kraus.dim_in;
  const int dout = kraus.dim_out;
  const int d = din * dout;
  Mat op = Mat::Zero(d, d);
  for (int r1 = 0; r1 < din; ++r1) {
    for (int r2 = 0; r2 < dout; ++r2) {
      for (int c1 = 0; c1 < din; ++c1) {
        for (int c2 = 0; c2 < dout; ++c2) {
          Complex acc(0.0, 0.0);
          for (const auto& e : kraus.operators) {
            acc += e(c2, c1) * std::conj(e(r2, r1));
          }
          op(r1 * dout + r2, c1 * dout + c2) = acc;
        }
      }
    }
  }
  return op;
}

double pm_probability(const ProcessMatrix& w,
                      const std::vector<std::array<KrausSet, 2>>& outcome_ops,
                      std::span<const int> outcomes) {
  if (outcome_ops.size() != w.parties.size() ||
      outcomes.size() != w.parties.size()) {
    throw InvalidArgument("per-party operator count mismatch");
  }
  Mat joint = Mat::Identity(1, 1);
  for (std::size_t k = 0; k < outcome_ops.size(); ++k) {
    const int a = outcomes[k];
    if (a < 0 || a > 1) throw InvalidArgument("binary outcome expected");
    const KrausSet& set = outcome_ops[k][static_cast<std::size_t>(a)];
    if (set.dim_in != w.parties[k].dim_in || set.dim_out != w.parties[k].dim_out) {
      throw InvalidArgument("instrument dims do not match process matrix");
    }
    joint = kron(joint, lab_operator(set));
  }
  const Complex value = (w.matrix * joint).trace();
  if (std::fabs(value.imag()) > kProbabilityTolerance) {
    throw NumericError("trace rule produced a non-real probability");
  }
  const double p = value.real();
  if (p < -kProbabilityTolerance || p > 1.0 + kProbabilityTolerance) {
    throw NumericError("trace rule probability out of range: " + std::to_string(p));
  }
  return std::min(1.0, std::max(0.0, p));
}

double pm_probability(const ProcessMatrix& w,
                      const std::vector<Instrument>& instruments,
                      std::span<const int> outcomes, std::span<const int> inputs) {
  if (instruments.size() != w.parties.size() || inputs.size() != instruments.size()) {
    throw InvalidArgument("instrument/input arity mismatch");
  }
  std::vector<std::array<KrausSet, 2>> outcome_ops;
  outcome_ops.reserve(instruments.size());
  for (std::size_t k = 0; k < instruments.size(); ++k) {
    const int x = inputs[k];
    if (x < 0 || x > 1) throw InvalidArgument("binary input expected");
    outcome_ops.push_back(
        {instruments[k].ops[0][static_cast<std::size_t>(x)],
         instruments[k].ops[1][static_cast<std::size_t>(x)]});
  }
  return pm_probability(w, outcome_ops, outcomes);
}

TwoTimeState pm_to_twotime(const ProcessMatrix& w) {
  const std::size_t n = w.parties.size();
  const Eigen::Index d = w.dim();
  if (w.matrix.rows() != d || w.matrix.cols() != d) {
    throw InvalidArgument("process matrix dimension mismatch");
  }

  // Axis order before canonicalization: per party (in+, out-, in-dagger,
  // out-dagger) so a flat index decodes party by party.
  std::vector<SpaceLabel> labels;
  std::size_t total = 1;
  for (const auto& party : w.parties) {
    labels.push_back(raised(party.in_space, false, party.dim_in));
    labels.push_back(lowered(party.out_space, false, party.dim_out));
    labels.push_back(lowered(party.in_space, true, party.dim_in));
    labels.push_back(raised(party.out_space, true, party.dim_out));
    total *= static_cast<std::size_t>(party.dim_in) * party.dim_in *
             party.dim_out * party.dim_out;
  }

  std::vector<Complex> data(total);
  std::vector<int> idx(4 * n, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (std::size_t k = 4 * n; k-- > 0;) {
      const int dim = labels[k].dim;
      idx[k] = static_cast<int>(rem % static_cast<std::size_t>(dim));
      rem /= static_cast<std::size_t>(dim);
    }
    Eigen::Index row = 0, col = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const auto& party = w.parties[k];
      row = row * party.dim_in + idx[4 * k];
      row = row * party.dim_out + idx[4 * k + 1];
      col = col * party.dim_in + idx[4 * k + 2];
      col = col * party.dim_out + idx[4 * k + 3];
    }
    data[flat] = w.matrix(row, col);
  }
  return TwoTimeState{LabeledTensor(std::move(labels), std::move(data)), w.parties};
}

ProcessMatrix twotime_to_pm(const TwoTimeState& state) {
  const std::size_t n = state.parties.size();
  if (n == 0) throw InvalidArgument("state has no parties");
  const auto& t = state.tensor;
  if (t.rank() != static_cast<int>(4 * n)) {
    throw InvalidArgument("state tensor rank does not match party count");
  }

  std::vector<PartySlots> slots;
  slots.reserve(n);
  Eigen::Index d = 1;
  for (const auto& party : state.parties) {
    slots.push_back(find_slots(t, party));
    d *= party.dim_in * party.dim_out;
  }

  Mat w = Mat::Zero(d, d);
  std::vector<int> idx(4 * n, 0);
  for (Eigen::Index row = 0; row < d; ++row) {
    for (Eigen::Index col = 0; col < d; ++col) {
      Eigen::Index rrem = row, crem = col;
      for (std::size_t k = n; k-- > 0;) {
        const auto& party = state.parties[k];
        idx[static_cast<std::size_t>(slots[k].out_plain)] =
            static_cast<int>(rrem % party.dim_out);
        rrem /= party.dim_out;
        idx[static_cast<std::size_t>(slots[k].in_plain)] =
            static_cast<int>(rrem % party.dim_in);
        rrem /= party.dim_in;
        idx[static_cast<std::size_t>(slots[k].out_dagger)] =
            static_cast<int>(crem % party.dim_out);
        crem /= party.dim_out;
        idx[static_cast<std::size_t>(slots[k].in_dagger)] =
            static_cast<int>(crem % party.dim_in);
        crem /= party.dim_in;
      }
      w(row, col) = t.at(idx);
    }
  }
  return ProcessMatrix{std::move(w), state.parties};
}

ProcessMatrix random_causal_circuit(const PartyLayout& layout, RandomSource& rng) {
  if (layout.size() < 2) {
    throw InvalidArgument("causal circuit needs at least two parties");
  }
  std::vector<std::size_t> order(layout.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t k = order.size(); k-- > 1;) {
    std::swap(order[k], order[static_cast<std::size_t>(
                            rng.uniform_int(0, static_cast<int>(k)))]);
  }

  const Party& first = layout[order.front()];
  LabeledTensor tensor =
      state_vector(random_density(first.dim_in, rng), first.in_space);
  for (std::size_t k = 0; k + 1 < order.size(); ++k) {
    const Party& from = layout[order[k]];
    const Party& to = layout[order[k + 1]];
    const KrausSet link = random_cptp_kraus(from.dim_out, to.dim_in, 2, rng);
    tensor = tensor_product(
        tensor, kraus_to_channel_vector(link, from.out_space, to.in_space).tensor);
  }
  const Party& last = layout[order.back()];
  tensor = tensor_product(tensor,
                          identity_vector_lowered(last.out_space, last.dim_out));

  return twotime_to_pm(TwoTimeState{std::move(tensor), layout});
}

Instrument random_instrument(const Party& party, RandomSource& rng) {
  Instrument instrument;
  instrument.party = party;
  for (int x = 0; x < 2; ++x) {
    const KrausSet full = random_cptp_kraus(party.dim_in, party.dim_out, 4, rng);
    KrausSet zero{party.dim_in, party.dim_out,
                  {full.operators[0], full.operators[1]}};
    KrausSet one{party.dim_in, party.dim_out,
                 {full.operators[2], full.operators[3]}};
    instrument.ops[0][static_cast<std::size_t>(x)] = std::move(zero);
    instrument.ops[1][static_cast<std::size_t>(x)] = std::move(one);
  }
  return instrument;
}

}  // namespace cpk
