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

#include "cpk/twotime.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cpk/errors.hpp"

namespace cpk {

namespace {

constexpr std::int64_t kSnapDenominatorBound = std::int64_t{1} << 20;
constexpr double kSnapTolerance = 1e-9;
constexpr double kScalarTolerance = 1e-10;

const char* kExtremeNames[4] = {"identity", "flip", "replace0", "replace1"};

double contract_to_real_scalar(const LabeledTensor& joint,
                               const LabeledTensor& state) {
  const LabeledTensor value = bullet(joint, state);
  if (!value.is_scalar()) {
    throw InvalidArgument("contraction left unmatched labels");
  }
  const Complex v = value.scalar_value();
  if (std::fabs(v.imag()) > kScalarTolerance) {
    throw NumericError("contraction scalar has a non-real part");
  }
  return v.real();
}

}  // namespace

PartyLayout tripartite_layout() {
  return {
      Party{"A", "A_i", "A_o", 2, 2},
      Party{"B", "B_i", "B_o", 2, 2},
      Party{"C", "C_i", "C_o", 2, 2},
  };
}

ChannelVector Instrument::channel(int outcome, int input) const {
  if (outcome < 0 || outcome > 1 || input < 0 || input > 1) {
    throw InvalidArgument("binary outcome/input expected");
  }
  return kraus_to_channel_vector(
      ops[static_cast<std::size_t>(outcome)][static_cast<std::size_t>(input)],
      party.in_space, party.out_space);
}

KrausSet Instrument::input_channel(int input) const {
  KrausSet merged;
  merged.dim_in = party.dim_in;
  merged.dim_out = party.dim_out;
  for (int a = 0; a < 2; ++a) {
    const auto& set =
        ops[static_cast<std::size_t>(a)][static_cast<std::size_t>(input)];
    merged.operators.insert(merged.operators.end(), set.operators.begin(),
                            set.operators.end());
  }
  return merged;
}

void Instrument::validate(double tol) const {
  for (int a = 0; a < 2; ++a) {
    for (int x = 0; x < 2; ++x) {
      const auto& set =
          ops[static_cast<std::size_t>(a)][static_cast<std::size_t>(x)];
      set.validate(tol);
      if (set.dim_in != party.dim_in || set.dim_out != party.dim_out) {
        throw InvalidArgument("instrument dims do not match party spaces");
      }
    }
  }
  for (int x = 0; x < 2; ++x) {
    if (!input_channel(x).is_trace_preserving(tol)) {
      throw InvalidArgument(
          "instrument outcomes do not sum to a trace-preserving channel");
    }
  }
}

Instrument build_measurement_instrument(const Party& party) {
  if (party.dim_in != 2 || party.dim_out != 2) {
    throw InvalidArgument("measurement instrument expects binary spaces");
  }
  Instrument instrument;
  instrument.party = party;
  for (int a = 0; a < 2; ++a) {
    for (int x = 0; x < 2; ++x) {
      Mat e = Mat::Zero(2, 2);
      e(a ^ x, a) = 1.0;  // |a xor x><a|
      instrument.ops[static_cast<std::size_t>(a)][static_cast<std::size_t>(x)] =
          KrausSet{2, 2, {e}};
    }
  }
  return instrument;
}

std::vector<Instrument> protocol_instruments(const PartyLayout& layout) {
  std::vector<Instrument> instruments;
  instruments.reserve(layout.size());
  for (const auto& party : layout) {
    instruments.push_back(build_measurement_instrument(party));
  }
  return instruments;
}

ChannelVector link_channel(bool flipped, const std::string& from_space,
                           const std::string& to_space) {
  Mat e0 = Mat::Zero(2, 2), e1 = Mat::Zero(2, 2);
  if (flipped) {
    e0(1, 0) = 1.0;
    e1(0, 1) = 1.0;
  } else {
    e0(0, 0) = 1.0;
    e1(1, 1) = 1.0;
  }
  return kraus_to_channel_vector(KrausSet{2, 2, {e0, e1}}, from_space, to_space);
}

TwoTimeState build_eta() {
  const PartyLayout layout = tripartite_layout();
  const auto term = [&](bool flipped) {
    const LabeledTensor ab = link_channel(flipped, "A_o", "B_i").tensor;
    const LabeledTensor bc = link_channel(flipped, "B_o", "C_i").tensor;
    const LabeledTensor ca = link_channel(flipped, "C_o", "A_i").tensor;
    return tensor_product(tensor_product(ab, bc), ca);
  };
  const LabeledTensor eta = scale(add(term(false), term(true)), Complex(0.5, 0.0));
  return TwoTimeState{eta, layout};
}

bool dagger_swap_hermitian(const LabeledTensor& t, double tol) {
  const LabeledTensor swapped = dagger_swap_conjugate(t);
  return same_labels(t, swapped) && max_abs_diff(t, swapped) <= tol;
}

void validate_twotime(const TwoTimeState& state, double tol) {
  if (state.parties.empty()) throw InvalidArgument("state has no parties");
  const auto& t = state.tensor;
  if (t.rank() != static_cast<int>(4 * state.parties.size())) {
    throw InvalidArgument("state tensor rank does not match party count");
  }
  for (const auto& party : state.parties) {
    const bool ok =
        t.label_position(party.in_space, false, Variance::Raised) >= 0 &&
        t.label_position(party.in_space, true, Variance::Lowered) >= 0 &&
        t.label_position(party.out_space, false, Variance::Lowered) >= 0 &&
        t.label_position(party.out_space, true, Variance::Raised) >= 0;
    if (!ok) {
      throw InvalidArgument("state is missing labels for party " + party.name);
    }
  }
  if (!dagger_swap_hermitian(t, tol)) {
    throw InvalidArgument("state is not hermitian under the dagger swap");
  }
}

double probability(const TwoTimeState& state,
                   const std::vector<Instrument>& instruments,
                   std::span<const int> outcomes, std::span<const int> inputs) {
  const std::size_t n = state.parties.size();
  if (instruments.size() != n || outcomes.size() != n || inputs.size() != n) {
    throw InvalidArgument("instrument/outcome/input arity mismatch");
  }
  LabeledTensor joint = LabeledTensor::scalar(Complex(1.0, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    joint = tensor_product(joint, instruments[k].channel(outcomes[k], inputs[k]).tensor);
  }
  const double p = contract_to_real_scalar(joint, state.tensor);
  if (p < -kScalarTolerance || p > 1.0 + kScalarTolerance) {
    throw NumericError("probability out of range: " + std::to_string(p));
  }
  return std::min(1.0, std::max(0.0, p));
}

ProbTable full_table(const TwoTimeState& state,
                     const std::vector<Instrument>& instruments) {
  const int n = static_cast<int>(state.parties.size());
  ProbTable table(n);
  std::vector<int> outs(static_cast<std::size_t>(n)), ins(static_cast<std::size_t>(n));
  for (int in_code = 0; in_code < table.in_count(); ++in_code) {
    for (int out_code = 0; out_code < table.out_count(); ++out_code) {
      for (int k = 0; k < n; ++k) {
        outs[static_cast<std::size_t>(k)] = (out_code >> (n - 1 - k)) & 1;
        ins[static_cast<std::size_t>(k)] = (in_code >> (n - 1 - k)) & 1;
      }
      const double p = probability(state, instruments, outs, ins);
      const auto snapped = snap_to_rational(p, kSnapDenominatorBound, kSnapTolerance);
      if (!snapped) {
        throw NumericError("probability " + std::to_string(p) +
                           " at " + table_entry_key(out_code, in_code, n) +
                           " is not near a small rational");
      }
      table.at_codes(out_code, in_code) = *snapped;
    }
  }
  if (!table.normalized()) {
    throw NumericError("snapped table rows do not sum to one");
  }
  return table;
}

LinearityReport verify_linearity(const TwoTimeState& state, int random_samples,
                                 std::uint64_t seed, double tolerance) {
  const std::size_t n = state.parties.size();
  std::vector<std::array<ChannelVector, 4>> extremes;
  extremes.reserve(n);
  for (const auto& party : state.parties) {
    if (party.dim_in != 2 || party.dim_out != 2) {
      throw InvalidArgument("extreme channel sweep expects binary spaces");
    }
    extremes.push_back(extreme_classical_channels(party.in_space, party.out_space));
  }

  LinearityReport report;
  std::size_t combos = 1;
  for (std::size_t k = 0; k < n; ++k) combos *= 4;

  const auto record = [&](const std::string& what, double value) {
    const double dev = std::fabs(value - 1.0);
    report.worst_deviation = std::max(report.worst_deviation, dev);
    if (dev > tolerance) report.failures.emplace_back(what, value);
  };

  for (std::size_t combo = 0; combo < combos; ++combo) {
    LabeledTensor joint = LabeledTensor::scalar(Complex(1.0, 0.0));
    std::size_t rem = combo;
    std::ostringstream what;
    what << "extreme(";
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t choice = rem % 4;
      rem /= 4;
      joint = tensor_product(joint, extremes[k][choice].tensor);
      what << (k ? "," : "") << kExtremeNames[choice];
    }
    what << ")";
    record(what.str(), contract_to_real_scalar(joint, state.tensor));
    ++report.extreme_triples;
  }

  RandomSource rng(seed);
  for (int s = 0; s < random_samples; ++s) {
    LabeledTensor joint = LabeledTensor::scalar(Complex(1.0, 0.0));
    for (const auto& party : state.parties) {
      const KrausSet kraus =
          random_cptp_kraus(party.dim_in, party.dim_out, 2, rng);
      joint = tensor_product(
          joint,
          kraus_to_channel_vector(kraus, party.in_space, party.out_space).tensor);
    }
    record("random sample " + std::to_string(s),
           contract_to_real_scalar(joint, state.tensor));
    ++report.random_triples;
  }

  report.pass = report.failures.empty();
  return report;
}

TwoTimeState normalize_twotime(const TwoTimeState& state, std::uint64_t seed,
                               double tolerance) {
  const std::size_t n = state.parties.size();
  std::vector<double> values;

  std::vector<std::array<ChannelVector, 4>> extremes;
  for (const auto& party : state.parties) {
    extremes.push_back(extreme_classical_channels(party.in_space, party.out_space));
  }
  std::size_t combos = 1;
  for (std::size_t k = 0; k < n; ++k) combos *= 4;
  for (std::size_t combo = 0; combo < combos; ++combo) {
    LabeledTensor joint = LabeledTensor::scalar(Complex(1.0, 0.0));
    std::size_t rem = combo;
    for (std::size_t k = 0; k < n; ++k) {
      joint = tensor_product(joint, extremes[k][rem % 4].tensor);
      rem /= 4;
    }
    values.push_back(contract_to_real_scalar(joint, state.tensor));
  }

  RandomSource rng(seed);
  for (int s = 0; s < 8; ++s) {
    LabeledTensor joint = LabeledTensor::scalar(Complex(1.0, 0.0));
    for (const auto& party : state.parties) {
      joint = tensor_product(
          joint, kraus_to_channel_vector(
                     random_cptp_kraus(party.dim_in, party.dim_out, 2, rng),
                     party.in_space, party.out_space)
                     .tensor);
    }
    values.push_back(contract_to_real_scalar(joint, state.tensor));
  }

  const double c = values.front();
  for (double v : values) {
    if (std::fabs(v - c) > tolerance) {
      throw NumericError(
          "state contraction is channel-dependent; cannot normalize");
    }
  }
  if (std::fabs(c) <= tolerance) {
    throw NumericError("state contraction vanishes; cannot normalize");
  }
  return TwoTimeState{scale(state.tensor, Complex(1.0 / c, 0.0)), state.parties};
}

MarginalReport marginal_form_check(const TwoTimeState& state,
                                   std::size_t party_index, int random_samples,
                                   std::uint64_t seed, double tolerance) {
  const std::size_t n = state.parties.size();
  if (party_index >= n) throw InvalidArgument("party index out of range");
  const Party& party = state.parties[party_index];

  std::vector<std::size_t> others;
  for (std::size_t k = 0; k < n; ++k) {
    if (k != party_index) others.push_back(k);
  }

  MarginalReport report;
  report.pass = true;

  const auto check_residual = [&](const LabeledTensor& joint,
                                  const std::string& name) {
    report.sample_names.push_back(name);
    const LabeledTensor residual =
        joint.is_scalar() ? state.tensor : bullet(joint, state.tensor);
    const int p_in = residual.label_position(party.in_space, false, Variance::Raised);
    const int p_in2 = residual.label_position(party.in_space, true, Variance::Lowered);
    const int p_out = residual.label_position(party.out_space, false, Variance::Lowered);
    const int p_out2 = residual.label_position(party.out_space, true, Variance::Raised);
    if (residual.rank() != 4 || p_in < 0 || p_in2 < 0 || p_out < 0 || p_out2 < 0) {
      throw InvalidArgument("marginal residual has unexpected labels");
    }
    const int din = party.dim_in;
    const int dout = party.dim_out;

    Mat rho = Mat::Zero(din, din);
    std::vector<int> idx(4, 0);
    for (int i = 0; i < din; ++i) {
      for (int i2 = 0; i2 < din; ++i2) {
        Complex acc(0.0, 0.0);
        for (int o = 0; o < dout; ++o) {
          idx[static_cast<std::size_t>(p_in)] = i;
          idx[static_cast<std::size_t>(p_in2)] = i2;
          idx[static_cast<std::size_t>(p_out)] = o;
          idx[static_cast<std::size_t>(p_out2)] = o;
          acc += residual.at(idx);
        }
        rho(i, i2) = acc / static_cast<double>(dout);
      }
    }

    double dev = 0.0;
    for (int i = 0; i < din; ++i) {
      for (int i2 = 0; i2 < din; ++i2) {
        for (int o = 0; o < dout; ++o) {
          for (int o2 = 0; o2 < dout; ++o2) {
            idx[static_cast<std::size_t>(p_in)] = i;
            idx[static_cast<std::size_t>(p_in2)] = i2;
            idx[static_cast<std::size_t>(p_out)] = o;
            idx[static_cast<std::size_t>(p_out2)] = o2;
            const Complex expected = (o == o2) ? rho(i, i2) : Complex(0.0, 0.0);
            dev = std::max(dev, std::abs(residual.at(idx) - expected));
          }
        }
      }
    }

    const bool rho_ok = is_hermitian(rho, tolerance) &&
                        min_eigenvalue_hermitian(rho) >= -tolerance &&
                        std::abs(rho.trace() - Complex(1.0, 0.0)) <= tolerance;
    report.max_deviation = std::max(report.max_deviation, dev);
    if (dev > tolerance || !rho_ok) report.pass = false;
    report.densities.push_back(std::move(rho));
  };

  if (others.empty()) {
    check_residual(LabeledTensor::scalar(Complex(1.0, 0.0)), "none");
    return report;
  }

  std::vector<std::array<ChannelVector, 4>> extremes;
  for (std::size_t k : others) {
    const Party& other = state.parties[k];
    extremes.push_back(extreme_classical_channels(other.in_space, other.out_space));
  }
  std::size_t combos = 1;
  for (std::size_t k = 0; k < others.size(); ++k) combos *= 4;
  for (std::size_t combo = 0; combo < combos; ++combo) {
    LabeledTensor joint = LabeledTensor::scalar(Complex(1.0, 0.0));
    std::size_t rem = combo;
    std::ostringstream name;
    name << "extreme(";
    for (std::size_t k = 0; k < others.size(); ++k) {
      const std::size_t choice = rem % 4;
      rem /= 4;
      joint = tensor_product(joint, extremes[k][choice].tensor);
      name << (k ? "," : "") << kExtremeNames[choice];
    }
    name << ")";
    check_residual(joint, name.str());
  }

  RandomSource rng(seed);
  for (int s = 0; s < random_samples; ++s) {
    LabeledTensor joint = LabeledTensor::scalar(Complex(1.0, 0.0));
    for (std::size_t k : others) {
      const Party& other = state.parties[k];
      joint = tensor_product(
          joint, kraus_to_channel_vector(
                     random_cptp_kraus(other.dim_in, other.dim_out, 2, rng),
                     other.in_space, other.out_space)
                     .tensor);
    }
    check_residual(joint, "random sample " + std::to_string(s));
  }

  return report;
}

}  // namespace cpk
