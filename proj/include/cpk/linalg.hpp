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

#ifndef CPK_LINALG_HPP
#define CPK_LINALG_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>

namespace cpk {

using Mat = Eigen::MatrixXcd;

Mat kron(const Mat& a, const Mat& b);

bool is_hermitian(const Mat& m, double tol);
// Smallest eigenvalue of (m + m^dagger)/2.
double min_eigenvalue_hermitian(const Mat& m);
bool is_psd(const Mat& m, double tol);

// Deterministic random stream. Uniform and normal variates are generated
// from the raw engine output (Box-Muller), not from std distributions, so
// a seed pins the exact sequence independently of the standard library.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // [0, 1)
  double normal();
  std::complex<double> normal_complex();
  int uniform_int(int lo, int hi);  // inclusive bounds

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

Mat gaussian_matrix(int rows, int cols, RandomSource& rng);
Mat haar_unitary(int dim, RandomSource& rng);
Mat random_density(int dim, RandomSource& rng);

}  // namespace cpk

#endif  // CPK_LINALG_HPP
