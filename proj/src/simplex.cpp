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

#include "cpk/simplex.hpp"

#include <cstddef>

#include "cpk/errors.hpp"

namespace cpk {

FeasibilityResult solve_equality_feasibility(
    const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
    std::int64_t max_pivots) {
  const std::size_t m = A.size();
  if (m == 0 || b.size() != m) throw InvalidArgument("bad system shape");
  const std::size_t n = A[0].size();
  for (const auto& row : A) {
    if (row.size() != n) throw InvalidArgument("ragged system matrix");
  }

  // Flip rows so the right-hand side is nonnegative.
  std::vector<int> row_sign(m, 1);
  std::vector<std::vector<Rational>> tab(m, std::vector<Rational>(n + m + 1, Rational(0)));
  for (std::size_t r = 0; r < m; ++r) {
    const bool flip = b[r] < 0;
    row_sign[r] = flip ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) tab[r][j] = flip ? Rational(-A[r][j]) : A[r][j];
    tab[r][n + r] = 1;
    tab[r][n + m] = flip ? Rational(-b[r]) : b[r];
  }

  // Phase-1 objective: minimize the sum of artificials. Reduced-cost row
  // starts as c_j - sum of each column over the rows (artificial basis).
  std::vector<Rational> z(n + m, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    Rational col(0);
    for (std::size_t r = 0; r < m; ++r) col += tab[r][j];
    z[j] = -col;
  }

  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) basis[r] = n + r;

  const std::size_t rhs = n + m;
  std::int64_t pivots = 0;
  while (true) {
    // Bland: entering column is the lowest index with negative reduced cost.
    std::size_t enter = n + m;
    for (std::size_t j = 0; j < n + m; ++j) {
      if (z[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == n + m) break;

    std::size_t leave = m;
    Rational best_ratio(0);
    for (std::size_t r = 0; r < m; ++r) {
      if (tab[r][enter] > 0) {
        Rational ratio = tab[r][rhs] / tab[r][enter];
        if (leave == m || ratio < best_ratio ||
            (ratio == best_ratio && basis[r] < basis[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
    }
    if (leave == m) {
      throw Error("phase-1 column unbounded; simplex invariant broken");
    }

    // Pivot on (leave, enter).
    const Rational pivot = tab[leave][enter];
    for (std::size_t j = 0; j <= rhs; ++j) tab[leave][j] /= pivot;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == leave) continue;
      const Rational factor = tab[r][enter];
      if (factor == 0) continue;
      for (std::size_t j = 0; j <= rhs; ++j) tab[r][j] -= factor * tab[leave][j];
    }
    const Rational zfactor = z[enter];
    if (zfactor != 0) {
      for (std::size_t j = 0; j < n + m; ++j) z[j] -= zfactor * tab[leave][j];
    }
    basis[leave] = enter;

    if (++pivots > max_pivots) {
      throw Error("simplex pivot guard exceeded; implementation bug");
    }
  }

  Rational objective(0);
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] >= n) objective += tab[r][rhs];
  }

  FeasibilityResult result;
  if (objective == 0) {
    result.feasible = true;
    result.solution.assign(n, Rational(0));
    for (std::size_t r = 0; r < m; ++r) {
      if (basis[r] < n) result.solution[basis[r]] = tab[r][rhs];
    }
    // Exact re-substitution.
    for (std::size_t r = 0; r < m; ++r) {
      Rational acc(0);
      for (std::size_t j = 0; j < n; ++j) acc += A[r][j] * result.solution[j];
      if (acc != b[r]) throw Error("simplex solution failed re-substitution");
    }
    for (const auto& x : result.solution) {
      if (x < 0) throw Error("simplex produced a negative basic value");
    }
  } else {
    result.feasible = false;
    // Multipliers read off the artificial columns: y_r = 1 - z[n + r],
    // unflipped back to the original row signs.
    result.farkas.assign(m, Rational(0));
    for (std::size_t r = 0; r < m; ++r) {
      Rational y = Rational(1) - z[n + r];
      if (row_sign[r] < 0) y = -y;
      result.farkas[r] = y;
    }
    // Exact certificate check: y.A_col <= 0 for all columns, y.b > 0.
    for (std::size_t j = 0; j < n; ++j) {
      Rational acc(0);
      for (std::size_t r = 0; r < m; ++r) acc += result.farkas[r] * A[r][j];
      if (acc > 0) throw Error("Farkas certificate failed column check");
    }
    Rational acc(0);
    for (std::size_t r = 0; r < m; ++r) acc += result.farkas[r] * b[r];
    if (!(acc > 0)) throw Error("Farkas certificate failed strict side");
  }
  return result;
}

int exact_rank(std::vector<std::vector<Integer>> m) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m[0].size();

  Integer prev(1);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot_row = rank;
    while (pivot_row < rows && m[pivot_row][col] == 0) ++pivot_row;
    if (pivot_row == rows) continue;
    if (pivot_row != rank) std::swap(m[pivot_row], m[rank]);

    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t c = col + 1; c < cols; ++c) {
        const Integer value = m[rank][col] * m[r][c] - m[r][col] * m[rank][c];
        Integer quotient, remainder;
        mpz_tdiv_qr(quotient.get_mpz_t(), remainder.get_mpz_t(),
                    value.get_mpz_t(), prev.get_mpz_t());
        if (remainder != 0) {
          throw Error("fraction-free elimination divided inexactly");
        }
        m[r][c] = quotient;
      }
      m[r][col] = 0;
    }
    prev = m[rank][col];
    ++rank;
  }
  return static_cast<int>(rank);
}

int exact_rank_rational(const std::vector<std::vector<Rational>>& m) {
  std::vector<std::vector<Integer>> scaled;
  scaled.reserve(m.size());
  for (const auto& row : m) {
    Integer lcm(1);
    for (const auto& q : row) {
      Integer den = q.get_den();
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    }
    std::vector<Integer> out;
    out.reserve(row.size());
    for (const auto& q : row) {
      out.push_back(Integer(q.get_num() * (lcm / q.get_den())));
    }
    scaled.push_back(std::move(out));
  }
  return exact_rank(std::move(scaled));
}

}  // namespace cpk
