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

#include "cpk/linalg.hpp"

#include <cmath>

#include "cpk/errors.hpp"

namespace cpk {

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

bool is_hermitian(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double min_eigenvalue_hermitian(const Mat& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("matrix is not square");
  const Mat h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool is_psd(const Mat& m, double tol) {
  return is_hermitian(m, tol) && min_eigenvalue_hermitian(m) >= -tol;
}

double RandomSource::uniform() {
  // 53-bit mantissa from the top of the engine output.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomSource::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

std::complex<double> RandomSource::normal_complex() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

int RandomSource::uniform_int(int lo, int hi) {
  if (hi < lo) throw InvalidArgument("empty integer range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

Mat gaussian_matrix(int rows, int cols, RandomSource& rng) {
  Mat out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = rng.normal_complex();
  }
  return out;
}

Mat haar_unitary(int dim, RandomSource& rng) {
  const Mat g = gaussian_matrix(dim, dim, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < dim; ++k) {
    const std::complex<double> d = r(k, k);
    const double mag = std::abs(d);
    q.col(k) *= (mag > 0.0) ? (d / mag) : std::complex<double>(1.0, 0.0);
  }
  return q;
}

Mat random_density(int dim, RandomSource& rng) {
  const Mat g = gaussian_matrix(dim, dim, rng);
  Mat rho = g * g.adjoint();
  rho /= rho.trace();
  return rho;
}

}  // namespace cpk
