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

#ifndef CPK_PROB_TABLE_HPP
#define CPK_PROB_TABLE_HPP

#include <span>
#include <string>
#include <vector>

#include "cpk/rational.hpp"

namespace cpk {

// Exact conditional distribution p(outputs | inputs) over binary inputs and
// outputs for n parties: 4^n rational coordinates, 64 for n = 3. Party 0's
// bit is the most significant in both codes.
class ProbTable {
 public:
  explicit ProbTable(int n_parties = 3);

  int n_parties() const { return n_; }
  std::size_t size() const { return entries_.size(); }  // 4^n
  int out_count() const { return 1 << n_; }
  int in_count() const { return 1 << n_; }

  const Rational& at_codes(int out_code, int in_code) const;
  Rational& at_codes(int out_code, int in_code);
  const Rational& at(std::span<const int> outputs, std::span<const int> inputs) const;
  Rational& at(std::span<const int> outputs, std::span<const int> inputs);

  static int pack_bits(std::span<const int> bits);

  bool entries_in_range() const;  // all coordinates in [0, 1]
  bool normalized() const;        // every input row sums to exactly 1
  bool is_deterministic() const;  // all coordinates 0 or 1

  bool operator==(const ProbTable& other) const;

  // Comma-joined canonical entries; exact, order-independent dedup key.
  std::string canonical_key() const;

 private:
  int n_;
  std::vector<Rational> entries_;
};

// "abc|xyz" style key for one coordinate.
std::string table_entry_key(int out_code, int in_code, int n);

// Pretty 8x8 grid for three parties, columns and rows ordered
// 000 001 010 100 011 101 110 111.
std::string render_grid(const ProbTable& table);

}  // namespace cpk

#endif  // CPK_PROB_TABLE_HPP
