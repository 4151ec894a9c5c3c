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

#include "cpk/polytope.hpp"

#include <map>

#include "cpk/errors.hpp"
#include "cpk/simplex.hpp"

namespace cpk {

namespace {

std::string bit_string(int code, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int k = 0; k < n; ++k) {
    if (code & (1 << (n - 1 - k))) s[static_cast<std::size_t>(k)] = '1';
  }
  return s;
}

std::size_t coordinate(int out_code, int in_code, int n) {
  return static_cast<std::size_t>(in_code) * (std::size_t{1} << n) + out_code;
}

}  // namespace

std::vector<LinearEquality> nbts_equalities(int n_parties) {
  const int n = n_parties;
  const int outs = 1 << n;
  const int ins = 1 << n;
  const std::size_t coords = static_cast<std::size_t>(outs) * ins;

  std::vector<LinearEquality> equalities;

  for (int in_code = 0; in_code < ins; ++in_code) {
    LinearEquality eq;
    eq.coeffs.assign(coords, Rational(0));
    eq.rhs = 1;
    eq.tag = "norm|" + bit_string(in_code, n);
    for (int out_code = 0; out_code < outs; ++out_code) {
      eq.coeffs[coordinate(out_code, in_code, n)] = 1;
    }
    equalities.push_back(std::move(eq));
  }

  for (int party = 0; party < n; ++party) {
    const int in_bit = 1 << (n - 1 - party);
    const int out_bit = 1 << (n - 1 - party);
    for (int value = 0; value < 2; ++value) {
      for (int in_base = 0; in_base < ins; ++in_base) {
        if (in_base & in_bit) continue;  // enumerate the others' inputs once
        LinearEquality eq;
        eq.coeffs.assign(coords, Rational(0));
        eq.rhs = 0;
        eq.tag = "nbts|party=" + std::to_string(party) +
                 "|out=" + std::to_string(value) +
                 "|others=" + bit_string(in_base, n);
        for (int out_code = 0; out_code < outs; ++out_code) {
          if (((out_code & out_bit) != 0) != (value == 1)) continue;
          eq.coeffs[coordinate(out_code, in_base, n)] += 1;
          eq.coeffs[coordinate(out_code, in_base | in_bit, n)] -= 1;
        }
        equalities.push_back(std::move(eq));
      }
    }
  }
  return equalities;
}

bool satisfies_equalities(const ProbTable& table,
                          const std::vector<LinearEquality>& equalities) {
  return equality_violations(table, equalities).empty();
}

std::vector<std::string> equality_violations(
    const ProbTable& table, const std::vector<LinearEquality>& equalities) {
  const int n = table.n_parties();
  const int outs = table.out_count();
  const int ins = table.in_count();
  std::vector<std::string> violated;
  for (const auto& eq : equalities) {
    Rational acc(0);
    for (int in_code = 0; in_code < ins; ++in_code) {
      for (int out_code = 0; out_code < outs; ++out_code) {
        const Rational& c = eq.coeffs[coordinate(out_code, in_code, n)];
        if (c != 0) acc += c * table.at_codes(out_code, in_code);
      }
    }
    if (acc != eq.rhs) violated.push_back(eq.tag);
  }
  return violated;
}

ProbTable DetStrategy::to_table() const {
  ProbTable table(3);
  for (int in_code = 0; in_code < 8; ++in_code) {
    int in_bits[3] = {(in_code >> 2) & 1, (in_code >> 1) & 1, in_code & 1};
    const int first_input = in_bits[first_party];
    const Branch& br = branch[static_cast<std::size_t>(first_input)];
    const int second = br.second_party;
    const int third = 3 - first_party - second;

    int out_bits[3] = {0, 0, 0};
    out_bits[first_party] = first_output;
    out_bits[second] = br.second_output;
    out_bits[third] = br.third_output[static_cast<std::size_t>(in_bits[second])];

    const int out_code = (out_bits[0] << 2) | (out_bits[1] << 1) | out_bits[2];
    table.at_codes(out_code, in_code) = 1;
  }
  return table;
}

std::vector<DetStrategy> all_strategy_encodings() {
  std::vector<DetStrategy> strategies;
  strategies.reserve(1536);
  for (int first = 0; first < 3; ++first) {
    std::array<int, 2> other{};
    int w = 0;
    for (int p = 0; p < 3; ++p) {
      if (p != first) other[static_cast<std::size_t>(w++)] = p;
    }
    for (int first_output = 0; first_output < 2; ++first_output) {
      // 16 sub-strategies per branch: second mover (2) x second output (2)
      // x third-output function of the second mover's input (4).
      for (int code0 = 0; code0 < 16; ++code0) {
        for (int code1 = 0; code1 < 16; ++code1) {
          DetStrategy s;
          s.first_party = first;
          s.first_output = first_output;
          const int codes[2] = {code0, code1};
          for (int xb = 0; xb < 2; ++xb) {
            const int code = codes[xb];
            DetStrategy::Branch br;
            br.second_party = other[static_cast<std::size_t>((code >> 3) & 1)];
            br.second_output = (code >> 2) & 1;
            br.third_output = {(code >> 1) & 1, code & 1};
            s.branch[static_cast<std::size_t>(xb)] = br;
          }
          strategies.push_back(s);
        }
      }
    }
  }
  return strategies;
}

std::vector<ProbTable> enumerate_classical_vertices() {
  std::map<std::string, ProbTable> unique;
  for (const auto& strategy : all_strategy_encodings()) {
    ProbTable table = strategy.to_table();
    unique.emplace(table.canonical_key(), std::move(table));
  }
  std::vector<ProbTable> vertices;
  vertices.reserve(unique.size());
  for (auto& [key, table] : unique) vertices.push_back(std::move(table));
  return vertices;
}

Certificate membership(const ProbTable& p, const std::vector<ProbTable>& vertices) {
  if (!p.normalized()) {
    throw InvalidArgument("membership expects a normalized table");
  }
  if (vertices.empty()) throw InvalidArgument("empty vertex list");
  const std::size_t coords = p.size();
  const std::size_t n_vertices = vertices.size();
  const int n = p.n_parties();
  const int outs = p.out_count();
  const int ins = p.in_count();

  // Rows: one per coordinate plus the convexity row.
  std::vector<std::vector<Rational>> A(coords + 1,
                                       std::vector<Rational>(n_vertices, Rational(0)));
  std::vector<Rational> b(coords + 1, Rational(0));
  for (std::size_t v = 0; v < n_vertices; ++v) {
    if (vertices[v].n_parties() != n) {
      throw InvalidArgument("vertex arity mismatch");
    }
    for (int in_code = 0; in_code < ins; ++in_code) {
      for (int out_code = 0; out_code < outs; ++out_code) {
        A[coordinate(out_code, in_code, n)][v] = vertices[v].at_codes(out_code, in_code);
      }
    }
    A[coords][v] = 1;
  }
  for (int in_code = 0; in_code < ins; ++in_code) {
    for (int out_code = 0; out_code < outs; ++out_code) {
      b[coordinate(out_code, in_code, n)] = p.at_codes(out_code, in_code);
    }
  }
  b[coords] = 1;

  const FeasibilityResult lp = solve_equality_feasibility(A, b);

  Certificate certificate;
  if (lp.feasible) {
    certificate.kind = Certificate::Kind::Membership;
    for (std::size_t v = 0; v < n_vertices; ++v) {
      if (lp.solution[v] != 0) certificate.weights.emplace_back(v, lp.solution[v]);
    }
  } else {
    certificate.kind = Certificate::Kind::Separation;
    // The multiplier on the convexity row becomes the bound: g.v <= -g0.
    Integer lcm(1);
    for (const auto& q : lp.farkas) {
      Integer den = q.get_den();
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    }
    std::vector<Integer> scaled;
    scaled.reserve(lp.farkas.size());
    Integer gcd(0);
    for (const auto& q : lp.farkas) {
      Integer value = q.get_num() * (lcm / q.get_den());
      mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), value.get_mpz_t());
      scaled.push_back(std::move(value));
    }
    if (gcd == 0) throw Error("zero Farkas certificate");
    for (auto& value : scaled) value /= gcd;
    certificate.y.assign(scaled.begin(), scaled.end() - 1);
    certificate.y0 = -scaled.back();
  }

  if (!verify_certificate(certificate, p, vertices)) {
    throw Error("certificate failed exact re-verification");
  }
  return certificate;
}

bool verify_certificate(const Certificate& certificate, const ProbTable& p,
                        const std::vector<ProbTable>& vertices) {
  const int n = p.n_parties();
  const int outs = p.out_count();
  const int ins = p.in_count();
  const std::size_t coords = p.size();

  if (certificate.kind == Certificate::Kind::Membership) {
    Rational total(0);
    std::vector<Rational> mix(coords, Rational(0));
    for (const auto& [id, weight] : certificate.weights) {
      if (id >= vertices.size() || weight < 0) return false;
      total += weight;
      for (int in_code = 0; in_code < ins; ++in_code) {
        for (int out_code = 0; out_code < outs; ++out_code) {
          mix[coordinate(out_code, in_code, n)] +=
              weight * vertices[id].at_codes(out_code, in_code);
        }
      }
    }
    if (total != 1) return false;
    for (int in_code = 0; in_code < ins; ++in_code) {
      for (int out_code = 0; out_code < outs; ++out_code) {
        if (mix[coordinate(out_code, in_code, n)] != p.at_codes(out_code, in_code)) {
          return false;
        }
      }
    }
    return true;
  }

  if (certificate.y.size() != coords) return false;
  const auto dot = [&](const ProbTable& t) {
    Rational acc(0);
    for (int in_code = 0; in_code < ins; ++in_code) {
      for (int out_code = 0; out_code < outs; ++out_code) {
        acc += Rational(certificate.y[coordinate(out_code, in_code, n)]) *
               t.at_codes(out_code, in_code);
      }
    }
    return acc;
  };
  const Rational bound(certificate.y0);
  for (const auto& vertex : vertices) {
    if (dot(vertex) > bound) return false;
  }
  return dot(p) > bound;
}

ExtremalityReport extremality(const ProbTable& p) {
  ExtremalityReport report;
  const auto equalities = nbts_equalities(p.n_parties());
  if (!p.entries_in_range() || !satisfies_equalities(p, equalities)) {
    return report;  // outside the polytope; nothing saturated to count
  }
  report.satisfies_constraints = true;

  const std::size_t coords = p.size();
  std::vector<std::vector<Rational>> rows;
  rows.reserve(equalities.size() + coords);
  for (const auto& eq : equalities) rows.push_back(eq.coeffs);

  const int n = p.n_parties();
  for (int in_code = 0; in_code < p.in_count(); ++in_code) {
    for (int out_code = 0; out_code < p.out_count(); ++out_code) {
      if (p.at_codes(out_code, in_code) == 0) {
        std::vector<Rational> row(coords, Rational(0));
        row[coordinate(out_code, in_code, n)] = 1;
        rows.push_back(std::move(row));
      }
    }
  }

  report.saturated_rank = exact_rank_rational(rows);
  report.is_extreme = report.saturated_rank == static_cast<int>(coords);
  return report;
}

bool verify_symmetries(const ProbTable& p) {
  if (p.n_parties() != 3) {
    throw InvalidArgument("symmetry relations are defined for three parties");
  }
  const auto cycle = [](int code) { return ((code << 1) & 0b110) | ((code >> 2) & 1); };
  for (int in_code = 0; in_code < 8; ++in_code) {
    for (int out_code = 0; out_code < 8; ++out_code) {
      const Rational& value = p.at_codes(out_code, in_code);
      if (value != p.at_codes(out_code ^ 0b111, in_code)) return false;
      if (value != p.at_codes(out_code, in_code ^ 0b111)) return false;
      if (value != p.at_codes(cycle(out_code), cycle(in_code))) return false;
      if (value != p.at_codes(out_code ^ 0b010, in_code ^ 0b001)) return false;
    }
  }
  return true;
}

bool last_mover_check(const ProbTable& p) {
  if (p.n_parties() != 3) {
    throw InvalidArgument("last-mover check is defined for three parties");
  }
  for (int in_code = 0; in_code < 8; ++in_code) {
    for (int out_code = 0; out_code < 8; ++out_code) {
      if (p.at_codes(out_code, in_code) == 0) continue;
      Rational flips(0);
      flips += p.at_codes(out_code, in_code ^ 0b100);
      flips += p.at_codes(out_code, in_code ^ 0b010);
      flips += p.at_codes(out_code, in_code ^ 0b001);
      if (!(flips > 0)) return false;
    }
  }
  return true;
}

int nbts_affine_dimension(int n_parties) {
  const auto equalities = nbts_equalities(n_parties);
  std::vector<std::vector<Rational>> rows;
  rows.reserve(equalities.size());
  for (const auto& eq : equalities) rows.push_back(eq.coeffs);
  const int coords = 1 << (2 * n_parties);
  return coords - exact_rank_rational(rows);
}

}  // namespace cpk
