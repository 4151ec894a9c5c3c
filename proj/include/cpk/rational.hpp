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

#ifndef CPK_RATIONAL_HPP
#define CPK_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace cpk {

using Integer = mpz_class;

// Always kept canonical: gcd(|num|, den) = 1, den > 0, zero is 0/1.
using Rational = mpq_class;

// Parses "3", "-7" or "num/den". Throws ParseError on anything else.
Rational rational_from_string(const std::string& text);

// Canonical "p/q", or just "p" when q = 1.
std::string rational_to_string(const Rational& value);

// Nearest rational with denominator <= max_denominator, provided it lies
// within tolerance of value; nullopt otherwise. Walks the continued-fraction
// convergents, so the returned fraction is a best approximation.
std::optional<Rational> snap_to_rational(double value,
                                         std::int64_t max_denominator,
                                         double tolerance);

}  // namespace cpk

#endif  // CPK_RATIONAL_HPP
