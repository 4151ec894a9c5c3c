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
#include "cpk/twotime.hpp"
#include "test_helpers.hpp"

using namespace cpk;

namespace {

// The unmixed all-plain-links state; not a linear two-time state.
TwoTimeState unmixed_links() {
  const LabeledTensor t = tensor_product(
      tensor_product(link_channel(false, "A_o", "B_i").tensor,
                     link_channel(false, "B_o", "C_i").tensor),
      link_channel(false, "C_o", "A_i").tensor);
  return TwoTimeState{t, tripartite_layout()};
}

}  // namespace

TEST_CASE("measurement instrument reproduces the link channels") {
  const Party alice{"A", "A_i", "A_o", 2, 2};
  const Instrument instrument = build_measurement_instrument(alice);
  instrument.validate();

  // Outcome sum over a at input 0 is the plain dephasing link; at input 1
  // the flipped one.
  const LabeledTensor plain_sum = add(instrument.channel(0, 0).tensor,
                                      instrument.channel(1, 0).tensor);
  CHECK(approx_equal(plain_sum, link_channel(false, "A_i", "A_o").tensor, 1e-15));

  const LabeledTensor flip_sum = add(instrument.channel(0, 1).tensor,
                                     instrument.channel(1, 1).tensor);
  CHECK(approx_equal(flip_sum, link_channel(true, "A_i", "A_o").tensor, 1e-15));

  // Outcome 0 with input 1 maps |0><0| to |1><1| with unit weight.
  Mat zero = Mat::Zero(2, 2);
  zero(0, 0) = 1.0;
  Mat one = Mat::Zero(2, 2);
  one(1, 1) = 1.0;
  const LabeledTensor moved =
      bullet(instrument.channel(0, 1).tensor, state_vector(zero, "A_i"));
  CHECK(approx_equal(moved, state_vector(one, "A_o"), 1e-15));
}

TEST_CASE("channel algebra of the dephasing links") {
  const LabeledTensor m_ab = link_channel(false, "A", "B").tensor;
  const LabeledTensor m_bc = link_channel(false, "B", "C").tensor;
  const LabeledTensor m_ac = link_channel(false, "A", "C").tensor;
  const LabeledTensor mbar_ab = link_channel(true, "A", "B").tensor;
  const LabeledTensor mbar_bc = link_channel(true, "B", "C").tensor;

  CHECK(max_abs_diff(bullet(m_ab, m_bc), m_ac) <= 1e-12);
  CHECK(max_abs_diff(bullet(mbar_ab, mbar_bc), m_ac) <= 1e-12);

  const LabeledTensor x_bc = kraus_to_channel_vector(
      extreme_classical_kraus(ExtremeChannel::Flip), "B", "C").tensor;
  const LabeledTensor mbar_ac = link_channel(true, "A", "C").tensor;
  CHECK(max_abs_diff(bullet(m_ab, x_bc), mbar_ac) <= 1e-12);
  CHECK(max_abs_diff(bullet(mbar_ab, x_bc), m_ac) <= 1e-12);

  // (M + Mbar)/2 throws away and replaces with the maximally mixed state.
  const LabeledTensor mixed = scale(add(m_ab, mbar_ab), Complex(0.5, 0.0));
  const LabeledTensor replace = tensor_product(
      identity_vector_lowered("A"), scale(identity_vector_raised("B"), 0.5));
  CHECK(max_abs_diff(mixed, replace) <= 1e-12);
}

TEST_CASE("the cyclic state is dagger-swap hermitian and well formed") {
  const TwoTimeState eta = build_eta();
  CHECK(dagger_swap_hermitian(eta.tensor));
  CHECK_NOTHROW(validate_twotime(eta));
}

TEST_CASE("pointwise probabilities of the protocol") {
  const TwoTimeState eta = build_eta();
  const auto instruments = protocol_instruments(eta.parties);

  const auto p = [&](int a, int b, int c, int x, int y, int z) {
    const int outs[3] = {a, b, c};
    const int ins[3] = {x, y, z};
    return probability(eta, instruments, outs, ins);
  };

  CHECK(p(0, 0, 0, 0, 0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p(0, 0, 1, 1, 0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p(0, 0, 1, 0, 0, 0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("snapped table equals the reference grid and the closed form") {
  const TwoTimeState eta = build_eta();
  const ProbTable table = full_table(eta, protocol_instruments(eta.parties));

  CHECK(table == testing::protocol_table());
  CHECK(table == testing::closed_form_table());
  CHECK(table.normalized());

  int halves = 0, zeros = 0;
  for (int in_code = 0; in_code < 8; ++in_code) {
    for (int out_code = 0; out_code < 8; ++out_code) {
      const Rational& e = table.at_codes(out_code, in_code);
      if (e == Rational(1, 2)) ++halves;
      if (e == 0) ++zeros;
    }
  }
  CHECK(halves == 16);
  CHECK(zeros == 48);
}

TEST_CASE("unmixed links fail normalization") {
  CHECK_THROWS_AS(full_table(unmixed_links(), protocol_instruments(tripartite_layout())),
                  NumericError);
}

TEST_CASE("linearity verification") {
  const TwoTimeState eta = build_eta();

  const LinearityReport report = verify_linearity(eta, 32, 0, 1e-9);
  CHECK(report.pass);
  CHECK(report.extreme_triples == 64);
  CHECK(report.random_triples == 32);
  CHECK(report.worst_deviation <= 1e-9);

  // A rescaled state fails with deviation 1.
  const TwoTimeState doubled{scale(eta.tensor, 2.0), eta.parties};
  const LinearityReport bad = verify_linearity(doubled, 4, 0, 1e-9);
  CHECK_FALSE(bad.pass);
  CHECK(bad.worst_deviation == doctest::Approx(1.0).epsilon(1e-9));

  // Normalization repairs it.
  const TwoTimeState fixed = normalize_twotime(doubled);
  CHECK(verify_linearity(fixed, 8, 0, 1e-9).pass);
  CHECK(max_abs_diff(fixed.tensor, eta.tensor) <= 1e-12);

  // Normalizing an already normalized state is the identity.
  const TwoTimeState again = normalize_twotime(eta);
  CHECK(max_abs_diff(again.tensor, eta.tensor) <= 1e-12);
}

TEST_CASE("unmixed links are not linear and cannot be normalized") {
  const TwoTimeState unmixed = unmixed_links();

  const LinearityReport report = verify_linearity(unmixed, 0, 0, 1e-9);
  CHECK_FALSE(report.pass);
  // The all-identity triple closes the loop twice: scalar 2.
  bool found_identity_failure = false;
  for (const auto& [what, value] : report.failures) {
    if (what == "extreme(identity,identity,identity)") {
      found_identity_failure = true;
      CHECK(value == doctest::Approx(2.0).epsilon(1e-12));
    }
  }
  CHECK(found_identity_failure);

  CHECK_THROWS_AS(normalize_twotime(unmixed), NumericError);
}

TEST_CASE("marginals of the cyclic state have the product form") {
  // Any trace-preserving channels on the other parties leave a residual of
  // the form rho (x) identity. When the other parties apply the protocol's
  // own channels (plain or flipped dephasing links), the state entering the
  // lab is the maximally mixed one.
  const TwoTimeState eta = build_eta();
  for (std::size_t party = 0; party < 3; ++party) {
    const MarginalReport report = marginal_form_check(eta, party, 8, 0, 1e-9);
    CHECK(report.pass);
    CHECK(report.max_deviation <= 1e-9);
    REQUIRE(report.densities.size() == 16 + 8);  // extreme pairs + random
    REQUIRE(report.sample_names.size() == report.densities.size());

    int protocol_pairs = 0;
    for (std::size_t s = 0; s < report.densities.size(); ++s) {
      const std::string& name = report.sample_names[s];
      const bool protocol_channels =
          name == "extreme(identity,identity)" || name == "extreme(identity,flip)" ||
          name == "extreme(flip,identity)" || name == "extreme(flip,flip)";
      if (!protocol_channels) continue;
      ++protocol_pairs;
      CHECK((report.densities[s] - 0.5 * Mat::Identity(2, 2)).cwiseAbs().maxCoeff() <=
            1e-9);
    }
    CHECK(protocol_pairs == 4);

    // A replace-type pair funnels a pure state into A's lab (the replaced
    // bit reaches A_i through both terms unchanged); still product form,
    // but not maximally mixed.
    if (party == 0) {
      for (std::size_t s = 0; s < report.densities.size(); ++s) {
        if (report.sample_names[s] == "extreme(replace0,identity)") {
          CHECK(report.densities[s](0, 0).real() == doctest::Approx(1.0));
        }
      }
    }
  }
}

TEST_CASE("state validation rejects malformed states") {
  const TwoTimeState eta = build_eta();

  // Wrong party list for the tensor's labels.
  TwoTimeState mislabeled{eta.tensor, {Party{"Q", "Q_i", "Q_o", 2, 2}}};
  CHECK_THROWS_AS(validate_twotime(mislabeled), InvalidArgument);

  // Breaking dagger-swap hermiticity is caught.
  std::vector<Complex> data = eta.tensor.data();
  data[0] += Complex(0.0, 0.25);
  TwoTimeState skewed{LabeledTensor(eta.tensor.labels(), data), eta.parties};
  CHECK_THROWS_AS(validate_twotime(skewed), InvalidArgument);

  // Arity mismatches in the probability rule are rejected.
  const auto instruments = protocol_instruments(eta.parties);
  const int outs[2] = {0, 0};
  const int ins[2] = {0, 0};
  CHECK_THROWS_AS(probability(eta, instruments, outs, ins), InvalidArgument);

  // The zero state cannot be normalized.
  const TwoTimeState zero{scale(eta.tensor, 0.0), eta.parties};
  CHECK_THROWS_AS(normalize_twotime(zero), NumericError);
}

TEST_CASE("a post-selected single-party state fails the marginal form") {
  Mat zero = Mat::Zero(2, 2);
  zero(0, 0) = 1.0;
  const LabeledTensor tensor =
      tensor_product(state_vector(0.5 * Mat::Identity(2, 2), "A_i"),
                     costate_vector(zero, "A_o"));
  const TwoTimeState post_selected{tensor, {Party{"A", "A_i", "A_o", 2, 2}}};
  const MarginalReport report = marginal_form_check(post_selected, 0);
  CHECK_FALSE(report.pass);
}
