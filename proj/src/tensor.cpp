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

#include "cpk/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace cpk {

namespace {

bool label_before(const SpaceLabel& a, const SpaceLabel& b) {
  if (a.name != b.name) return a.name < b.name;
  if (a.dagger != b.dagger) return b.dagger;  // false sorts first
  return a.variance < b.variance;             // Lowered before Raised
}

bool same_slot(const SpaceLabel& a, const SpaceLabel& b) {
  return a.name == b.name && a.dagger == b.dagger && a.variance == b.variance;
}

std::vector<std::size_t> strides_for(const std::vector<SpaceLabel>& labels) {
  std::vector<std::size_t> strides(labels.size());
  std::size_t s = 1;
  for (std::size_t k = labels.size(); k-- > 0;) {
    strides[k] = s;
    s *= static_cast<std::size_t>(labels[k].dim);
  }
  return strides;
}

std::size_t total_size(const std::vector<SpaceLabel>& labels) {
  std::size_t s = 1;
  for (const auto& l : labels) s *= static_cast<std::size_t>(l.dim);
  return s;
}

std::string describe(const SpaceLabel& l) {
  std::string s = l.name;
  if (l.dagger) s += "+";
  s += (l.variance == Variance::Raised) ? "(up)" : "(down)";
  return s;
}

}  // namespace

SpaceLabel raised(std::string name, bool dagger, int dim) {
  return SpaceLabel{std::move(name), dagger, Variance::Raised, dim};
}

SpaceLabel lowered(std::string name, bool dagger, int dim) {
  return SpaceLabel{std::move(name), dagger, Variance::Lowered, dim};
}

LabeledTensor::LabeledTensor() : data_(1, Complex(0.0, 0.0)) {}

LabeledTensor LabeledTensor::scalar(Complex value) {
  LabeledTensor t;
  t.data_[0] = value;
  return t;
}

LabeledTensor::LabeledTensor(std::vector<SpaceLabel> labels,
                             std::vector<Complex> data) {
  for (const auto& l : labels) {
    if (l.dim < 1) throw InvalidArgument("label '" + l.name + "' has dim < 1");
  }
  if (data.size() != total_size(labels)) {
    throw InvalidArgument("tensor data length does not match label dims");
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      if (same_slot(labels[i], labels[j])) {
        throw InvalidArgument("duplicate label " + describe(labels[i]));
      }
    }
  }

  std::vector<std::size_t> perm(labels.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t i, std::size_t j) {
    return label_before(labels[i], labels[j]);
  });

  bool already_sorted = true;
  for (std::size_t k = 0; k < perm.size(); ++k) {
    if (perm[k] != k) {
      already_sorted = false;
      break;
    }
  }
  if (already_sorted) {
    labels_ = std::move(labels);
    data_ = std::move(data);
    return;
  }

  labels_.reserve(labels.size());
  for (std::size_t k = 0; k < perm.size(); ++k) labels_.push_back(labels[perm[k]]);

  const auto old_strides = strides_for(labels);
  data_.assign(data.size(), Complex(0.0, 0.0));
  const std::size_t n = data.size();
  const std::size_t rank = labels_.size();
  for (std::size_t flat = 0; flat < n; ++flat) {
    std::size_t rem = flat;
    std::size_t old_flat = 0;
    for (std::size_t k = rank; k-- > 0;) {
      const std::size_t dim = static_cast<std::size_t>(labels_[k].dim);
      const std::size_t idx = rem % dim;
      rem /= dim;
      old_flat += idx * old_strides[perm[k]];
    }
    data_[flat] = data[old_flat];
  }
}

Complex LabeledTensor::scalar_value() const {
  if (!is_scalar()) throw InvalidArgument("tensor is not rank 0");
  return data_[0];
}

std::size_t LabeledTensor::flat_index(std::span<const int> indices) const {
  if (indices.size() != labels_.size()) {
    throw InvalidArgument("index count does not match tensor rank");
  }
  std::size_t flat = 0;
  std::size_t stride = 1;
  for (std::size_t k = labels_.size(); k-- > 0;) {
    const int idx = indices[k];
    if (idx < 0 || idx >= labels_[k].dim) {
      throw InvalidArgument("index out of range for label " + labels_[k].name);
    }
    flat += static_cast<std::size_t>(idx) * stride;
    stride *= static_cast<std::size_t>(labels_[k].dim);
  }
  return flat;
}

Complex LabeledTensor::at(std::span<const int> indices) const {
  return data_[flat_index(indices)];
}

int LabeledTensor::label_position(const std::string& name, bool dagger,
                                  Variance v) const {
  for (std::size_t k = 0; k < labels_.size(); ++k) {
    const auto& l = labels_[k];
    if (l.name == name && l.dagger == dagger && l.variance == v) {
      return static_cast<int>(k);
    }
  }
  return -1;
}

LabeledTensor bullet(const LabeledTensor& a, const LabeledTensor& b) {
  if (a.is_scalar()) return scale(b, a.scalar_value());
  if (b.is_scalar()) return scale(a, b.scalar_value());

  const auto& la = a.labels();
  const auto& lb = b.labels();

  // Slots grouped by (name, dagger); a shared slot must be unique per side.
  std::map<std::pair<std::string, bool>, std::pair<std::vector<int>, std::vector<int>>> slots;
  for (std::size_t i = 0; i < la.size(); ++i) {
    slots[{la[i].name, la[i].dagger}].first.push_back(static_cast<int>(i));
  }
  for (std::size_t j = 0; j < lb.size(); ++j) {
    slots[{lb[j].name, lb[j].dagger}].second.push_back(static_cast<int>(j));
  }

  std::vector<std::pair<int, int>> pairs;
  std::vector<bool> a_contracted(la.size(), false), b_contracted(lb.size(), false);
  for (const auto& [key, positions] : slots) {
    const auto& [pa, pb] = positions;
    if (pa.empty() || pb.empty()) continue;
    if (pa.size() != 1 || pb.size() != 1) {
      throw InvalidArgument("ambiguous contraction on label '" + key.first + "'");
    }
    const auto& sa = la[static_cast<std::size_t>(pa[0])];
    const auto& sb = lb[static_cast<std::size_t>(pb[0])];
    if (sa.variance == sb.variance) {
      throw InvalidArgument("same-variance collision on label '" + key.first + "'");
    }
    if (sa.dim != sb.dim) {
      throw InvalidArgument("dimension mismatch on label '" + key.first + "'");
    }
    pairs.emplace_back(pa[0], pb[0]);
    a_contracted[static_cast<std::size_t>(pa[0])] = true;
    b_contracted[static_cast<std::size_t>(pb[0])] = true;
  }

  std::vector<int> free_a, free_b;
  for (std::size_t i = 0; i < la.size(); ++i) {
    if (!a_contracted[i]) free_a.push_back(static_cast<int>(i));
  }
  for (std::size_t j = 0; j < lb.size(); ++j) {
    if (!b_contracted[j]) free_b.push_back(static_cast<int>(j));
  }

  std::vector<SpaceLabel> out_labels;
  out_labels.reserve(free_a.size() + free_b.size());
  for (int i : free_a) out_labels.push_back(la[static_cast<std::size_t>(i)]);
  for (int j : free_b) out_labels.push_back(lb[static_cast<std::size_t>(j)]);

  const auto stride_a = strides_for(la);
  const auto stride_b = strides_for(lb);

  std::vector<std::size_t> out_dims;
  for (const auto& l : out_labels) out_dims.push_back(static_cast<std::size_t>(l.dim));
  std::size_t out_size = 1;
  for (auto d : out_dims) out_size *= d;

  std::size_t con_size = 1;
  for (const auto& [ia, jb] : pairs) {
    con_size *= static_cast<std::size_t>(la[static_cast<std::size_t>(ia)].dim);
  }

  std::vector<Complex> out(out_size, Complex(0.0, 0.0));
  const std::size_t na = free_a.size();
  for (std::size_t r = 0; r < out_size; ++r) {
    std::size_t base_a = 0, base_b = 0;
    std::size_t rem = r;
    for (std::size_t k = out_dims.size(); k-- > 0;) {
      const std::size_t idx = rem % out_dims[k];
      rem /= out_dims[k];
      if (k < na) {
        base_a += idx * stride_a[static_cast<std::size_t>(free_a[k])];
      } else {
        base_b += idx * stride_b[static_cast<std::size_t>(free_b[k - na])];
      }
    }
    Complex acc(0.0, 0.0);
    for (std::size_t c = 0; c < con_size; ++c) {
      std::size_t off_a = base_a, off_b = base_b;
      std::size_t crem = c;
      for (std::size_t k = pairs.size(); k-- > 0;) {
        const auto [ia, jb] = pairs[k];
        const std::size_t dim = static_cast<std::size_t>(la[static_cast<std::size_t>(ia)].dim);
        const std::size_t idx = crem % dim;
        crem /= dim;
        off_a += idx * stride_a[static_cast<std::size_t>(ia)];
        off_b += idx * stride_b[static_cast<std::size_t>(jb)];
      }
      acc += a.data()[off_a] * b.data()[off_b];
    }
    out[r] = acc;
  }

  return LabeledTensor(std::move(out_labels), std::move(out));
}

LabeledTensor tensor_product(const LabeledTensor& a, const LabeledTensor& b) {
  if (a.is_scalar()) return scale(b, a.scalar_value());
  if (b.is_scalar()) return scale(a, b.scalar_value());

  for (const auto& sa : a.labels()) {
    for (const auto& sb : b.labels()) {
      if (sa.name == sb.name && sa.dagger == sb.dagger) {
        throw InvalidArgument("shared label '" + sa.name + "' in tensor product");
      }
    }
  }

  std::vector<SpaceLabel> out_labels = a.labels();
  out_labels.insert(out_labels.end(), b.labels().begin(), b.labels().end());

  std::vector<Complex> out;
  out.reserve(a.size() * b.size());
  for (const auto& va : a.data()) {
    for (const auto& vb : b.data()) out.push_back(va * vb);
  }
  return LabeledTensor(std::move(out_labels), std::move(out));
}

LabeledTensor relabel(const LabeledTensor& t,
                      const std::map<std::string, std::string>& renames) {
  // Injectivity over the names actually present.
  {
    std::map<std::string, std::string> seen;  // target -> source
    for (const auto& l : t.labels()) {
      auto it = renames.find(l.name);
      if (it == renames.end()) continue;
      auto [pos, inserted] = seen.emplace(it->second, l.name);
      if (!inserted && pos->second != l.name) {
        throw InvalidArgument("relabel map is not injective on '" + it->second + "'");
      }
    }
  }

  std::vector<SpaceLabel> out_labels = t.labels();
  for (auto& l : out_labels) {
    auto it = renames.find(l.name);
    if (it != renames.end()) l.name = it->second;
  }
  for (std::size_t i = 0; i < out_labels.size(); ++i) {
    for (std::size_t j = i + 1; j < out_labels.size(); ++j) {
      if (same_slot(out_labels[i], out_labels[j])) {
        throw InvalidArgument("relabel collision on " + describe(out_labels[i]));
      }
    }
  }
  return LabeledTensor(std::move(out_labels), t.data());
}

LabeledTensor add(const LabeledTensor& a, const LabeledTensor& b) {
  if (!same_labels(a, b)) throw InvalidArgument("label mismatch in tensor add");
  std::vector<Complex> out = a.data();
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += b.data()[k];
  return LabeledTensor(a.labels(), std::move(out));
}

LabeledTensor scale(const LabeledTensor& t, Complex factor) {
  std::vector<Complex> out = t.data();
  for (auto& v : out) v *= factor;
  return LabeledTensor(t.labels(), std::move(out));
}

LabeledTensor dagger_swap_conjugate(const LabeledTensor& t) {
  std::vector<SpaceLabel> out_labels = t.labels();
  for (auto& l : out_labels) {
    l.dagger = !l.dagger;
    l.variance = (l.variance == Variance::Raised) ? Variance::Lowered : Variance::Raised;
  }
  std::vector<Complex> out = t.data();
  for (auto& v : out) v = std::conj(v);
  return LabeledTensor(std::move(out_labels), std::move(out));
}

bool same_labels(const LabeledTensor& a, const LabeledTensor& b) {
  return a.labels() == b.labels();
}

double max_abs_diff(const LabeledTensor& a, const LabeledTensor& b) {
  if (!same_labels(a, b)) throw InvalidArgument("label mismatch in tensor comparison");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
  }
  return worst;
}

bool approx_equal(const LabeledTensor& a, const LabeledTensor& b, double tolerance) {
  if (!same_labels(a, b)) return false;
  return max_abs_diff(a, b) <= tolerance;
}

LabeledTensor basis_ket(const std::string& space, int value, bool dagger, int dim) {
  if (value < 0 || value >= dim) throw InvalidArgument("basis value out of range");
  std::vector<Complex> data(static_cast<std::size_t>(dim), Complex(0.0, 0.0));
  data[static_cast<std::size_t>(value)] = Complex(1.0, 0.0);
  return LabeledTensor({raised(space, dagger, dim)}, std::move(data));
}

LabeledTensor basis_bra(const std::string& space, int value, bool dagger, int dim) {
  if (value < 0 || value >= dim) throw InvalidArgument("basis value out of range");
  std::vector<Complex> data(static_cast<std::size_t>(dim), Complex(0.0, 0.0));
  data[static_cast<std::size_t>(value)] = Complex(1.0, 0.0);
  return LabeledTensor({lowered(space, dagger, dim)}, std::move(data));
}

}  // namespace cpk
