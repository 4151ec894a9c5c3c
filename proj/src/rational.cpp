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

#include "cpk/rational.hpp"

#include <cmath>
#include <stdexcept>

#include "cpk/errors.hpp"

namespace cpk {

Rational rational_from_string(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
      Integer n(text);
      return Rational(n);
    }
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in rational: " + text);
    Rational q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ParseError("not a rational: '" + text + "'");
  }
}

std::string rational_to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::optional<Rational> snap_to_rational(double value,
                                         std::int64_t max_denominator,
                                         double tolerance) {
  if (!std::isfinite(value) || max_denominator < 1) return std::nullopt;

  const bool negative = value < 0.0;
  const double x = std::fabs(value);

  // Anything that snaps must be modest in magnitude; probabilities are.
  if (x > 1e15) return std::nullopt;

  Integer p_prev(0), q_prev(1);  // convergent k-1
  Integer p_cur(1), q_cur(0);    // convergent k
  Integer best_p(0), best_q(1);
  double best_err = std::fabs(x);

  double frac = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double floor_part = std::floor(frac);
    if (floor_part > 9e17) break;  // stay within long range
    Integer a(static_cast<long>(floor_part));

    // Largest partial quotient that keeps the denominator within bounds.
    if (q_cur != 0) {
      Integer a_max = (Integer(static_cast<long>(max_denominator)) - q_prev) / q_cur;
      if (a > a_max) a = a_max;
    }
    if (a < 0) break;

    Integer p_next = a * p_cur + p_prev;
    Integer q_next = a * q_cur + q_prev;
    if (q_next > max_denominator || q_next == 0) break;

    const double approx = p_next.get_d() / q_next.get_d();
    const double err = std::fabs(x - approx);
    if (err < best_err) {
      best_err = err;
      best_p = p_next;
      best_q = q_next;
    }

    if (a != Integer(static_cast<long>(floor_part))) break;  // quotient was clamped
    const double rem = frac - floor_part;
    if (rem < 1e-18) break;

    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
    frac = 1.0 / rem;
    if (!std::isfinite(frac)) break;
  }

  if (best_err > tolerance) return std::nullopt;
  Rational result(negative ? -best_p : best_p, best_q);
  result.canonicalize();
  return result;
}

}  // namespace cpk
