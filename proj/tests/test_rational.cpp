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
#include "cpk/rational.hpp"

using namespace cpk;

TEST_CASE("rational parsing and canonical form") {
  CHECK(rational_from_string("3") == Rational(3));
  CHECK(rational_from_string("-7") == Rational(-7));
  CHECK(rational_from_string("1/2") == Rational(1, 2));
  CHECK(rational_from_string("2/4") == Rational(1, 2));
  CHECK(rational_from_string("-6/4") == Rational(-3, 2));

  const Rational q = rational_from_string("10/15");
  CHECK(q.get_num() == 2);
  CHECK(q.get_den() == 3);

  CHECK(rational_to_string(Rational(1, 2)) == "1/2");
  CHECK(rational_to_string(Rational(0)) == "0");
  CHECK(rational_to_string(Rational(-3, 2)) == "-3/2");
  CHECK(rational_to_string(Rational(5)) == "5");

  CHECK_THROWS_AS(rational_from_string("abc"), ParseError);
  CHECK_THROWS_AS(rational_from_string("1/0"), ParseError);
  CHECK_THROWS_AS(rational_from_string(""), ParseError);
  CHECK_THROWS_AS(rational_from_string("1.5"), ParseError);
}

TEST_CASE("snapping to small rationals") {
  const std::int64_t bound = std::int64_t{1} << 20;

  auto half = snap_to_rational(0.5, bound, 1e-9);
  REQUIRE(half.has_value());
  CHECK(*half == Rational(1, 2));

  auto zero = snap_to_rational(1e-14, bound, 1e-9);
  REQUIRE(zero.has_value());
  CHECK(*zero == Rational(0));

  auto tiny_negative = snap_to_rational(-3e-13, bound, 1e-9);
  REQUIRE(tiny_negative.has_value());
  CHECK(*tiny_negative == Rational(0));

  auto one = snap_to_rational(1.0 - 2e-13, bound, 1e-9);
  REQUIRE(one.has_value());
  CHECK(*one == Rational(1));

  auto third = snap_to_rational(1.0 / 3.0, bound, 1e-9);
  REQUIRE(third.has_value());
  CHECK(*third == Rational(1, 3));

  auto deep = snap_to_rational(5.0 / 1024.0 + 4e-10, bound, 1e-9);
  REQUIRE(deep.has_value());
  CHECK(*deep == Rational(5, 1024));

  // Nothing with a small denominator is within 1e-9 of these.
  CHECK_FALSE(snap_to_rational(0.5 + 5e-7, 4, 1e-9).has_value());
  const double irrational = 0.7071067811865476;
  CHECK_FALSE(snap_to_rational(irrational, 1 << 4, 1e-9).has_value());
}
