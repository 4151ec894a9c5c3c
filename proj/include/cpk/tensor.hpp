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

#ifndef CPK_TENSOR_HPP
#define CPK_TENSOR_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "cpk/errors.hpp"

namespace cpk {

using Complex = std::complex<double>;

enum class Variance : std::uint8_t { Lowered = 0, Raised = 1 };

// One Hilbert-space index slot. Two slots contract when their name and
// dagger flag match and their variances are opposite.
struct SpaceLabel {
  std::string name;
  bool dagger = false;
  Variance variance = Variance::Raised;
  int dim = 2;

  bool operator==(const SpaceLabel&) const = default;
};

SpaceLabel raised(std::string name, bool dagger = false, int dim = 2);
SpaceLabel lowered(std::string name, bool dagger = false, int dim = 2);

// Dense complex tensor with labeled axes. Storage is row-major in canonical
// label order (sorted by name, then dagger flag, then variance), so two
// tensors with the same content compare entry-for-entry.
class LabeledTensor {
 public:
  LabeledTensor();  // rank-0 zero
  LabeledTensor(std::vector<SpaceLabel> labels, std::vector<Complex> data);

  static LabeledTensor scalar(Complex value);

  const std::vector<SpaceLabel>& labels() const { return labels_; }
  const std::vector<Complex>& data() const { return data_; }

  int rank() const { return static_cast<int>(labels_.size()); }
  std::size_t size() const { return data_.size(); }
  bool is_scalar() const { return labels_.empty(); }
  Complex scalar_value() const;  // throws InvalidArgument unless rank 0

  // Multi-index lookup, indices in canonical label order.
  Complex at(std::span<const int> indices) const;
  std::size_t flat_index(std::span<const int> indices) const;

  // Position of a label in the canonical order, -1 if absent.
  int label_position(const std::string& name, bool dagger, Variance v) const;

 private:
  std::vector<SpaceLabel> labels_;
  std::vector<Complex> data_;
};

// The bullet operation: contracts every label pair shared by (name, dagger)
// -- opposite variances required -- and tensors the remaining labels.
// Scalars multiply through.
LabeledTensor bullet(const LabeledTensor& a, const LabeledTensor& b);

// Outer product. The operands may share no (name, dagger) slot.
LabeledTensor tensor_product(const LabeledTensor& a, const LabeledTensor& b);

// Renames spaces. The map must be injective on the names it touches and the
// renaming must not create duplicate labels.
LabeledTensor relabel(const LabeledTensor& t,
                      const std::map<std::string, std::string>& renames);

LabeledTensor add(const LabeledTensor& a, const LabeledTensor& b);
LabeledTensor scale(const LabeledTensor& t, Complex factor);

// Swaps every label with its dagger partner (flip dagger flag and variance)
// and conjugates the data. Physical two-time states are fixed points.
LabeledTensor dagger_swap_conjugate(const LabeledTensor& t);

bool same_labels(const LabeledTensor& a, const LabeledTensor& b);
// Largest entrywise deviation; requires identical label sets.
double max_abs_diff(const LabeledTensor& a, const LabeledTensor& b);
bool approx_equal(const LabeledTensor& a, const LabeledTensor& b,
                  double tolerance);

// Computational-basis vectors |value>^space and <value|_space.
LabeledTensor basis_ket(const std::string& space, int value,
                        bool dagger = false, int dim = 2);
LabeledTensor basis_bra(const std::string& space, int value,
                        bool dagger = false, int dim = 2);

}  // namespace cpk

#endif  // CPK_TENSOR_HPP
