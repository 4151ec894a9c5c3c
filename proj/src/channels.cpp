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

#include "cpk/channels.hpp"

#include <cmath>

#include "cpk/errors.hpp"

namespace cpk {

void KrausSet::validate(double tol) const {
  if (operators.empty()) throw InvalidArgument("Kraus set is empty");
  if (dim_in < 1 || dim_out < 1) throw InvalidArgument("Kraus dims must be positive");
  for (const auto& op : operators) {
    if (op.rows() != dim_out || op.cols() != dim_in) {
      throw InvalidArgument("Kraus operator shape mismatch");
    }
  }
  const Mat s = kraus_sum();
  Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (s + s.adjoint()),
                                            Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().maxCoeff() > 1.0 + tol) {
    throw InvalidArgument("Kraus set is trace increasing");
  }
}

Mat KrausSet::kraus_sum() const {
  Mat s = Mat::Zero(dim_in, dim_in);
  for (const auto& op : operators) s += op.adjoint() * op;
  return s;
}

bool KrausSet::is_trace_preserving(double tol) const {
  const Mat s = kraus_sum();
  return (s - Mat::Identity(dim_in, dim_in)).cwiseAbs().maxCoeff() <= tol;
}

ChannelVector kraus_to_channel_vector(const KrausSet& kraus,
                                      const std::string& in_space,
                                      const std::string& out_space) {
  kraus.validate();
  if (in_space == out_space) {
    throw InvalidArgument("channel endpoints must carry distinct space names");
  }
  const int din = kraus.dim_in;
  const int dout = kraus.dim_out;

  // Axis order (o, i, i2, o2) before canonicalization.
  std::vector<SpaceLabel> labels = {
      raised(out_space, false, dout),
      lowered(in_space, false, din),
      raised(in_space, true, din),
      lowered(out_space, true, dout),
  };
  std::vector<Complex> data(
      static_cast<std::size_t>(dout) * din * din * dout, Complex(0.0, 0.0));
  for (int o = 0; o < dout; ++o) {
    for (int i = 0; i < din; ++i) {
      for (int i2 = 0; i2 < din; ++i2) {
        for (int o2 = 0; o2 < dout; ++o2) {
          Complex acc(0.0, 0.0);
          for (const auto& op : kraus.operators) {
            acc += op(o, i) * std::conj(op(o2, i2));
          }
          const std::size_t flat =
              ((static_cast<std::size_t>(o) * din + i) * din + i2) * dout + o2;
          data[flat] = acc;
        }
      }
    }
  }
  return ChannelVector{LabeledTensor(std::move(labels), std::move(data)),
                       in_space, out_space, din, dout};
}

Mat choi_matrix(const ChannelVector& channel) {
  const int din = channel.dim_in;
  const int dout = channel.dim_out;
  const auto& t = channel.tensor;
  const int p_out = t.label_position(channel.out_space, false, Variance::Raised);
  const int p_in = t.label_position(channel.in_space, false, Variance::Lowered);
  const int p_in2 = t.label_position(channel.in_space, true, Variance::Raised);
  const int p_out2 = t.label_position(channel.out_space, true, Variance::Lowered);
  if (p_out < 0 || p_in < 0 || p_in2 < 0 || p_out2 < 0 || t.rank() != 4) {
    throw InvalidArgument("tensor does not have channel-vector labels");
  }

  Mat choi(din * dout, din * dout);
  std::vector<int> idx(4, 0);
  for (int i = 0; i < din; ++i) {
    for (int o = 0; o < dout; ++o) {
      for (int i2 = 0; i2 < din; ++i2) {
        for (int o2 = 0; o2 < dout; ++o2) {
          idx[static_cast<std::size_t>(p_out)] = o;
          idx[static_cast<std::size_t>(p_in)] = i;
          idx[static_cast<std::size_t>(p_in2)] = i2;
          idx[static_cast<std::size_t>(p_out2)] = o2;
          choi(i * dout + o, i2 * dout + o2) = t.at(idx);
        }
      }
    }
  }
  return choi;
}

bool is_completely_positive(const ChannelVector& channel, double tol) {
  const Mat choi = choi_matrix(channel);
  return is_hermitian(choi, tol) && min_eigenvalue_hermitian(choi) >= -tol;
}

bool is_trace_preserving(const ChannelVector& channel, double tol) {
  const LabeledTensor contracted =
      bullet(identity_vector_lowered(channel.out_space, channel.dim_out),
             channel.tensor);
  const LabeledTensor expected =
      identity_vector_lowered(channel.in_space, channel.dim_in);
  return same_labels(contracted, expected) &&
         max_abs_diff(contracted, expected) <= tol;
}

LabeledTensor identity_vector_lowered(const std::string& space, int dim) {
  std::vector<SpaceLabel> labels = {lowered(space, false, dim),
                                    raised(space, true, dim)};
  std::vector<Complex> data(static_cast<std::size_t>(dim) * dim, Complex(0.0, 0.0));
  for (int t = 0; t < dim; ++t) {
    data[static_cast<std::size_t>(t) * dim + t] = Complex(1.0, 0.0);
  }
  return LabeledTensor(std::move(labels), std::move(data));
}

LabeledTensor identity_vector_raised(const std::string& space, int dim) {
  std::vector<SpaceLabel> labels = {raised(space, false, dim),
                                    lowered(space, true, dim)};
  std::vector<Complex> data(static_cast<std::size_t>(dim) * dim, Complex(0.0, 0.0));
  for (int t = 0; t < dim; ++t) {
    data[static_cast<std::size_t>(t) * dim + t] = Complex(1.0, 0.0);
  }
  return LabeledTensor(std::move(labels), std::move(data));
}

LabeledTensor state_vector(const Mat& rho, const std::string& space) {
  if (rho.rows() != rho.cols()) throw InvalidArgument("state matrix is not square");
  const int dim = static_cast<int>(rho.rows());
  std::vector<SpaceLabel> labels = {raised(space, false, dim),
                                    lowered(space, true, dim)};
  std::vector<Complex> data(static_cast<std::size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i) {
    for (int i2 = 0; i2 < dim; ++i2) {
      data[static_cast<std::size_t>(i) * dim + i2] = rho(i, i2);
    }
  }
  return LabeledTensor(std::move(labels), std::move(data));
}

LabeledTensor costate_vector(const Mat& sigma, const std::string& space) {
  if (sigma.rows() != sigma.cols()) throw InvalidArgument("effect matrix is not square");
  const int dim = static_cast<int>(sigma.rows());
  std::vector<SpaceLabel> labels = {lowered(space, false, dim),
                                    raised(space, true, dim)};
  std::vector<Complex> data(static_cast<std::size_t>(dim) * dim);
  for (int o = 0; o < dim; ++o) {
    for (int o2 = 0; o2 < dim; ++o2) {
      data[static_cast<std::size_t>(o) * dim + o2] = sigma(o2, o);
    }
  }
  return LabeledTensor(std::move(labels), std::move(data));
}

KrausSet extreme_classical_kraus(ExtremeChannel which) {
  Mat e0 = Mat::Zero(2, 2), e1 = Mat::Zero(2, 2);
  switch (which) {
    case ExtremeChannel::Identity:
      e0(0, 0) = 1.0;  // |0><0|
      e1(1, 1) = 1.0;  // |1><1|
      break;
    case ExtremeChannel::Flip:
      e0(1, 0) = 1.0;  // |1><0|
      e1(0, 1) = 1.0;  // |0><1|
      break;
    case ExtremeChannel::ReplaceZero:
      e0(0, 0) = 1.0;  // |0><0|
      e1(0, 1) = 1.0;  // |0><1|
      break;
    case ExtremeChannel::ReplaceOne:
      e0(1, 0) = 1.0;  // |1><0|
      e1(1, 1) = 1.0;  // |1><1|
      break;
  }
  return KrausSet{2, 2, {e0, e1}};
}

std::array<ChannelVector, 4> extreme_classical_channels(
    const std::string& in_space, const std::string& out_space) {
  return {
      kraus_to_channel_vector(extreme_classical_kraus(ExtremeChannel::Identity),
                              in_space, out_space),
      kraus_to_channel_vector(extreme_classical_kraus(ExtremeChannel::Flip),
                              in_space, out_space),
      kraus_to_channel_vector(extreme_classical_kraus(ExtremeChannel::ReplaceZero),
                              in_space, out_space),
      kraus_to_channel_vector(extreme_classical_kraus(ExtremeChannel::ReplaceOne),
                              in_space, out_space),
  };
}

double StochasticMatrix::at(int j, int i) const {
  return entries[static_cast<std::size_t>(j) * dim_in + i];
}

bool StochasticMatrix::is_column_stochastic(double tol) const {
  for (int i = 0; i < dim_in; ++i) {
    double column = 0.0;
    for (int j = 0; j < dim_out; ++j) {
      const double q = at(j, i);
      if (q < -tol) return false;
      column += q;
    }
    if (std::fabs(column - 1.0) > tol) return false;
  }
  return true;
}

StochasticMatrix sandwich_to_stochastic(const KrausSet& kraus) {
  kraus.validate();
  StochasticMatrix q;
  q.dim_in = kraus.dim_in;
  q.dim_out = kraus.dim_out;
  q.entries.assign(static_cast<std::size_t>(q.dim_in) * q.dim_out, 0.0);
  for (int j = 0; j < q.dim_out; ++j) {
    for (int i = 0; i < q.dim_in; ++i) {
      double acc = 0.0;
      for (const auto& op : kraus.operators) acc += std::norm(op(j, i));
      q.entries[static_cast<std::size_t>(j) * q.dim_in + i] = acc;
    }
  }
  return q;
}

KrausSet random_cptp_kraus(int dim_in, int dim_out, int kraus_count,
                           RandomSource& rng) {
  if (dim_in < 1 || dim_out < 1 || kraus_count < 1) {
    throw InvalidArgument("channel dimensions must be positive");
  }
  const int dilated = dim_out * kraus_count;
  if (dilated < dim_in) {
    throw InvalidArgument("dilation too small for an isometry");
  }
  const Mat u = haar_unitary(dilated, rng);
  const Mat isometry = u.leftCols(dim_in);

  KrausSet kraus;
  kraus.dim_in = dim_in;
  kraus.dim_out = dim_out;
  for (int m = 0; m < kraus_count; ++m) {
    Mat e(dim_out, dim_in);
    for (int o = 0; o < dim_out; ++o) {
      for (int i = 0; i < dim_in; ++i) e(o, i) = isometry(o * kraus_count + m, i);
    }
    kraus.operators.push_back(std::move(e));
  }
  return kraus;
}

}  // namespace cpk
