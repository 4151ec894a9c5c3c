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

#include "cpk/channels.hpp"
#include "cpk/errors.hpp"

using namespace cpk;

namespace {

Mat pauli_x() {
  Mat x = Mat::Zero(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  return x;
}

}  // namespace

TEST_CASE("identity channel vector forwards states") {
  const KrausSet identity{2, 2, {Mat::Identity(2, 2)}};
  const ChannelVector channel = kraus_to_channel_vector(identity, "X", "Y");

  Mat rho(2, 2);
  rho << 0.75, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.25;
  const LabeledTensor moved = bullet(channel.tensor, state_vector(rho, "X"));
  CHECK(approx_equal(moved, state_vector(rho, "Y"), 1e-12));
}

TEST_CASE("classical flip matches its explicit two-term vector") {
  // <0|_A |1>^B |1>^{A+} <0|_{B+}  +  <1|_A |0>^B |0>^{A+} <1|_{B+}
  std::vector<SpaceLabel> labels = {raised("B"), lowered("A"), raised("A", true),
                                    lowered("B", true)};
  std::vector<Complex> data(16, Complex(0.0, 0.0));
  const auto slot = [](int o, int i, int i2, int o2) {
    return static_cast<std::size_t>(((o * 2 + i) * 2 + i2) * 2 + o2);
  };
  data[slot(0, 1, 1, 0)] = 1.0;
  data[slot(1, 0, 0, 1)] = 1.0;
  const LabeledTensor expected(std::move(labels), std::move(data));

  const ChannelVector flip = kraus_to_channel_vector(
      extreme_classical_kraus(ExtremeChannel::Flip), "A", "B");
  CHECK(approx_equal(flip.tensor, expected, 1e-15));

  // The unitary lift of X differs from the dephased flip by cross terms but
  // acts identically after any dephasing link.
  const ChannelVector unitary_x =
      kraus_to_channel_vector(KrausSet{2, 2, {pauli_x()}}, "B", "C");
  const ChannelVector classical_x = kraus_to_channel_vector(
      extreme_classical_kraus(ExtremeChannel::Flip), "B", "C");
  const ChannelVector link = kraus_to_channel_vector(
      extreme_classical_kraus(ExtremeChannel::Identity), "A", "B");
  CHECK(approx_equal(bullet(link.tensor, unitary_x.tensor),
                     bullet(link.tensor, classical_x.tensor), 1e-12));
  CHECK_FALSE(approx_equal(unitary_x.tensor, classical_x.tensor, 1e-12));
}

TEST_CASE("trace preservation through the identity contraction") {
  const KrausSet identity{2, 2, {Mat::Identity(2, 2)}};
  CHECK(is_trace_preserving(kraus_to_channel_vector(identity, "X", "Y")));

  // A single measurement outcome is trace decreasing.
  Mat m00 = Mat::Zero(2, 2);
  m00(0, 0) = 1.0;
  CHECK_FALSE(is_trace_preserving(kraus_to_channel_vector(KrausSet{2, 2, {m00}},
                                                          "X", "Y")));

  // Both outcomes together are trace preserving.
  Mat m11 = Mat::Zero(2, 2);
  m11(1, 1) = 1.0;
  CHECK(is_trace_preserving(kraus_to_channel_vector(KrausSet{2, 2, {m00, m11}},
                                                    "X", "Y")));
}

TEST_CASE("extreme classical channels") {
  const auto channels = extreme_classical_channels("X", "Y");
  for (const auto& channel : channels) {
    CHECK(is_trace_preserving(channel));
    CHECK(is_completely_positive(channel));
  }

  // Replace-with-zero has the form identity-on-input (x) |0><0| on output.
  const LabeledTensor expected =
      tensor_product(identity_vector_lowered("X"),
                     tensor_product(basis_ket("Y", 0), basis_bra("Y", 0, true)));
  CHECK(approx_equal(channels[2].tensor, expected, 1e-15));

  // The four channels realize exactly the four functions {0,1} -> {0,1}.
  for (int which = 0; which < 4; ++which) {
    const KrausSet kraus = extreme_classical_kraus(static_cast<ExtremeChannel>(which));
    const StochasticMatrix q = sandwich_to_stochastic(kraus);
    for (int i = 0; i < 2; ++i) {
      int image = -1;
      switch (static_cast<ExtremeChannel>(which)) {
        case ExtremeChannel::Identity: image = i; break;
        case ExtremeChannel::Flip: image = 1 - i; break;
        case ExtremeChannel::ReplaceZero: image = 0; break;
        case ExtremeChannel::ReplaceOne: image = 1; break;
      }
      CHECK(q.at(image, i) == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("kraus validation") {
  const KrausSet empty{2, 2, {}};
  CHECK_THROWS_AS(empty.validate(), InvalidArgument);
  const KrausSet misshapen{2, 2, {Mat::Identity(3, 2)}};
  CHECK_THROWS_AS(misshapen.validate(), InvalidArgument);
  // Trace increasing: 2I.
  const KrausSet doubled{2, 2, {2.0 * Mat::Identity(2, 2)}};
  CHECK_THROWS_AS(doubled.validate(), InvalidArgument);
  // Trace non-increasing but not preserving is fine to validate.
  Mat half = 0.5 * Mat::Identity(2, 2);
  KrausSet halfset{2, 2, {half}};
  CHECK_NOTHROW(halfset.validate());
  CHECK_FALSE(halfset.is_trace_preserving());
  CHECK_THROWS_AS(
      kraus_to_channel_vector(KrausSet{2, 2, {Mat::Identity(2, 2)}}, "X", "X"),
      InvalidArgument);
}

TEST_CASE("sandwich stochastic matrices") {
  const StochasticMatrix id =
      sandwich_to_stochastic(KrausSet{2, 2, {Mat::Identity(2, 2)}});
  CHECK(id.at(0, 0) == doctest::Approx(1.0));
  CHECK(id.at(1, 0) == doctest::Approx(0.0));
  CHECK(id.is_column_stochastic());

  const StochasticMatrix flip = sandwich_to_stochastic(KrausSet{2, 2, {pauli_x()}});
  CHECK(flip.at(1, 0) == doctest::Approx(1.0));
  CHECK(flip.at(0, 1) == doctest::Approx(1.0));
  CHECK(flip.at(0, 0) == doctest::Approx(0.0));
  CHECK(flip.is_column_stochastic());

  // Fully depolarizing: q(j|i) = 1/2 everywhere.
  Mat y = Mat::Zero(2, 2);
  y(0, 1) = Complex(0.0, -1.0);
  y(1, 0) = Complex(0.0, 1.0);
  Mat z = Mat::Identity(2, 2);
  z(1, 1) = -1.0;
  const KrausSet depolarizing{
      2, 2, {0.5 * Mat::Identity(2, 2), 0.5 * pauli_x(), 0.5 * y, 0.5 * z}};
  const StochasticMatrix q = sandwich_to_stochastic(depolarizing);
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < 2; ++i) CHECK(q.at(j, i) == doctest::Approx(0.5));
  }
}

TEST_CASE("random trace-preserving channels stay column stochastic") {
  RandomSource rng(21);
  for (int sample = 0; sample < 50; ++sample) {
    const KrausSet kraus = random_cptp_kraus(2, 2, 2, rng);
    CHECK(kraus.is_trace_preserving());
    CHECK(sandwich_to_stochastic(kraus).is_column_stochastic());
  }
}

TEST_CASE("sandwiched channel acts as the stochastic matrix on diagonals") {
  RandomSource rng(22);
  for (int sample = 0; sample < 20; ++sample) {
    const KrausSet kraus = random_cptp_kraus(2, 2, 2, rng);
    const StochasticMatrix q = sandwich_to_stochastic(kraus);

    const double p0 = rng.uniform();
    Mat rho = Mat::Zero(2, 2);
    rho(0, 0) = p0;
    rho(1, 1) = 1.0 - p0;

    Mat evolved = Mat::Zero(2, 2);
    for (const auto& e : kraus.operators) evolved += e * rho * e.adjoint();
    // Final measurement keeps the diagonal only.
    for (int j = 0; j < 2; ++j) {
      double expected = 0.0;
      for (int i = 0; i < 2; ++i) expected += q.at(j, i) * rho(i, i).real();
      CHECK(evolved(j, j).real() == doctest::Approx(expected).epsilon(1e-10));
    }
  }
}

TEST_CASE("channel vectors have positive semidefinite Choi matrices") {
  RandomSource rng(23);
  for (int sample = 0; sample < 20; ++sample) {
    const KrausSet kraus = random_cptp_kraus(2, 2, 2, rng);
    const ChannelVector channel = kraus_to_channel_vector(kraus, "X", "Y");
    CHECK(is_completely_positive(channel));
    CHECK(min_eigenvalue_hermitian(choi_matrix(channel)) >= -1e-10);
  }
}
