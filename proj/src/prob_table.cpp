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

#include "cpk/prob_table.hpp"

#include <sstream>
#include <utility>

#include "cpk/errors.hpp"

namespace cpk {

namespace {

std::string bit_string(int code, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int k = 0; k < n; ++k) {
    if (code & (1 << (n - 1 - k))) s[static_cast<std::size_t>(k)] = '1';
  }
  return s;
}

}  // namespace

ProbTable::ProbTable(int n_parties) : n_(n_parties) {
  if (n_parties < 1 || n_parties > 8) {
    throw InvalidArgument("party count out of range");
  }
  entries_.assign(std::size_t{1} << (2 * n_), Rational(0));
}

const Rational& ProbTable::at_codes(int out_code, int in_code) const {
  if (out_code < 0 || out_code >= out_count() || in_code < 0 || in_code >= in_count()) {
    throw InvalidArgument("table code out of range");
  }
  return entries_[static_cast<std::size_t>(in_code) * out_count() + out_code];
}

Rational& ProbTable::at_codes(int out_code, int in_code) {
  return const_cast<Rational&>(std::as_const(*this).at_codes(out_code, in_code));
}

int ProbTable::pack_bits(std::span<const int> bits) {
  int code = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw InvalidArgument("bit value out of range");
    code = (code << 1) | b;
  }
  return code;
}

const Rational& ProbTable::at(std::span<const int> outputs,
                              std::span<const int> inputs) const {
  if (static_cast<int>(outputs.size()) != n_ || static_cast<int>(inputs.size()) != n_) {
    throw InvalidArgument("output/input arity mismatch");
  }
  return at_codes(pack_bits(outputs), pack_bits(inputs));
}

Rational& ProbTable::at(std::span<const int> outputs, std::span<const int> inputs) {
  return const_cast<Rational&>(std::as_const(*this).at(outputs, inputs));
}

bool ProbTable::entries_in_range() const {
  for (const auto& e : entries_) {
    if (e < 0 || e > 1) return false;
  }
  return true;
}

bool ProbTable::normalized() const {
  if (!entries_in_range()) return false;
  for (int in_code = 0; in_code < in_count(); ++in_code) {
    Rational row(0);
    for (int out_code = 0; out_code < out_count(); ++out_code) {
      row += at_codes(out_code, in_code);
    }
    if (row != 1) return false;
  }
  return true;
}

bool ProbTable::is_deterministic() const {
  for (const auto& e : entries_) {
    if (e != 0 && e != 1) return false;
  }
  return true;
}

bool ProbTable::operator==(const ProbTable& other) const {
  if (n_ != other.n_) return false;
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (entries_[k] != other.entries_[k]) return false;
  }
  return true;
}

std::string ProbTable::canonical_key() const {
  std::string key;
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (k) key += ',';
    key += rational_to_string(entries_[k]);
  }
  return key;
}

std::string table_entry_key(int out_code, int in_code, int n) {
  return bit_string(out_code, n) + "|" + bit_string(in_code, n);
}

std::string render_grid(const ProbTable& table) {
  if (table.n_parties() != 3) {
    throw InvalidArgument("grid rendering is defined for three parties");
  }
  static constexpr int kOrder[8] = {0b000, 0b001, 0b010, 0b100,
                                    0b011, 0b101, 0b110, 0b111};
  std::ostringstream os;
  os << "p(a,b,c|x,y,z)   a,b,c\n";
  os << "x,y,z   ";
  for (int col : kOrder) os << "  " << bit_string(col, 3) << " ";
  os << "\n";
  for (int row : kOrder) {
    os << "  " << bit_string(row, 3) << " ";
    for (int col : kOrder) {
      const std::string cell = rational_to_string(table.at_codes(col, row));
      os << "  ";
      for (std::size_t pad = cell.size(); pad < 4; ++pad) os << ' ';
      os << cell;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace cpk
