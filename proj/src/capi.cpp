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

#include "cpk/capi.h"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "cpk/errors.hpp"
#include "cpk/json_io.hpp"
#include "cpk/polytope.hpp"
#include "cpk/process_matrix.hpp"
#include "cpk/twotime.hpp"

struct cpk_state {
  cpk::TwoTimeState value;
};

struct cpk_table {
  cpk::ProbTable value{3};
};

struct cpk_pm {
  cpk::ProcessMatrix value;
};

namespace {

using nlohmann::json;

constexpr const char* kVersion = "1.0.0";

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

char* to_cstring(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

template <typename Fn>
cpk_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return CPK_OK;
  } catch (const cpk::ParseError& e) {
    set_error(e.what());
    return CPK_ERR_PARSE;
  } catch (const cpk::InvalidArgument& e) {
    set_error(e.what());
    return CPK_ERR_INVALID;
  } catch (const cpk::NumericError& e) {
    set_error(e.what());
    return CPK_ERR_NUMERIC;
  } catch (const std::exception& e) {
    set_error(e.what());
    return CPK_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return CPK_ERR_INTERNAL;
  }
}

void require(bool condition, const char* message) {
  if (!condition) throw cpk::InvalidArgument(message);
}

json linearity_to_json(const cpk::LinearityReport& report) {
  json failures = json::array();
  for (const auto& [what, value] : report.failures) {
    failures.push_back({{"channels", what}, {"value", value}});
  }
  return {{"pass", report.pass},
          {"worst_deviation", report.worst_deviation},
          {"extreme_triples", report.extreme_triples},
          {"random_triples", report.random_triples},
          {"failures", failures}};
}

json marginal_to_json(const cpk::TwoTimeState& state, std::size_t party_index,
                      std::uint32_t seed, std::int32_t random_samples,
                      double tolerance) {
  const auto report = cpk::marginal_form_check(state, party_index, random_samples,
                                               seed, tolerance);
  json rho = json::array();
  if (!report.densities.empty()) {
    const cpk::Mat& first = report.densities.front();
    for (Eigen::Index r = 0; r < first.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < first.cols(); ++c) {
        row.push_back({first(r, c).real(), first(r, c).imag()});
      }
      rho.push_back(row);
    }
  }
  return {{"party", state.parties[party_index].name},
          {"pass", report.pass},
          {"max_deviation", report.max_deviation},
          {"samples", report.densities.size()},
          {"rho", rho}};
}

}  // namespace

extern "C" {

const char* cpk_version(void) { return kVersion; }

const char* cpk_last_error(void) { return g_last_error.c_str(); }

void cpk_string_free(char* text) { delete[] text; }

cpk_status cpk_state_builtin(const char* scenario, cpk_state** out_state) {
  return guarded([&] {
    require(scenario && out_state, "null argument");
    require(std::string(scenario) == "cyclic3",
            "unknown scenario (expected \"cyclic3\")");
    *out_state = new cpk_state{cpk::build_eta()};
  });
}

cpk_status cpk_state_from_json(const char* json_text, cpk_state** out_state) {
  return guarded([&] {
    require(json_text && out_state, "null argument");
    *out_state = new cpk_state{cpk::state_from_json(json_text)};
  });
}

cpk_status cpk_state_to_json(const cpk_state* state, char** out_json) {
  return guarded([&] {
    require(state && out_json, "null argument");
    *out_json = to_cstring(cpk::state_to_json(state->value));
  });
}

void cpk_state_free(cpk_state* state) { delete state; }

cpk_status cpk_simulate(const cpk_state* state, const char* instruments_json,
                        cpk_table** out_table) {
  return guarded([&] {
    require(state && out_table, "null argument");
    std::vector<cpk::Instrument> instruments =
        instruments_json
            ? cpk::instruments_from_json(instruments_json, state->value.parties)
            : cpk::protocol_instruments(state->value.parties);
    *out_table = new cpk_table{cpk::full_table(state->value, instruments)};
  });
}

cpk_status cpk_table_from_json(const char* json_text, cpk_table** out_table) {
  return guarded([&] {
    require(json_text && out_table, "null argument");
    *out_table = new cpk_table{cpk::table_from_json(json_text)};
  });
}

cpk_status cpk_table_to_json(const cpk_table* table, char** out_json) {
  return guarded([&] {
    require(table && out_json, "null argument");
    *out_json = to_cstring(cpk::table_to_json(table->value));
  });
}

cpk_status cpk_table_render(const cpk_table* table, char** out_text) {
  return guarded([&] {
    require(table && out_text, "null argument");
    *out_text = to_cstring(cpk::render_grid(table->value));
  });
}

void cpk_table_free(cpk_table* table) { delete table; }

cpk_status cpk_verify_state(const cpk_state* state, uint32_t seed,
                            int32_t random_samples, double tolerance,
                            char** out_report_json) {
  return guarded([&] {
    require(state && out_report_json, "null argument");
    require(random_samples >= 0, "random sample count must be nonnegative");
    require(tolerance > 0, "tolerance must be positive");

    const auto linearity =
        cpk::verify_linearity(state->value, random_samples, seed, tolerance);
    json marginals = json::array();
    bool marginals_pass = true;
    for (std::size_t k = 0; k < state->value.parties.size(); ++k) {
      json entry = marginal_to_json(state->value, k, seed, 8, tolerance);
      marginals_pass = marginals_pass && entry["pass"].get<bool>();
      marginals.push_back(std::move(entry));
    }

    const json report = {{"pass", linearity.pass && marginals_pass},
                         {"linearity", linearity_to_json(linearity)},
                         {"marginals", marginals}};
    *out_report_json = to_cstring(report.dump(2));
  });
}

cpk_status cpk_verify_pm(const cpk_pm* process, uint32_t seed,
                         int32_t random_samples, double tolerance,
                         char** out_report_json) {
  return guarded([&] {
    require(process && out_report_json, "null argument");
    require(random_samples >= 0, "random sample count must be nonnegative");
    require(tolerance > 0, "tolerance must be positive");

    const cpk::ProcessMatrix& w = process->value;
    const cpk::TwoTimeState state = cpk::pm_to_twotime(w);

    const auto linearity =
        cpk::verify_linearity(state, random_samples, seed, tolerance);
    json marginals = json::array();
    bool marginals_pass = true;
    for (std::size_t k = 0; k < state.parties.size(); ++k) {
      json entry = marginal_to_json(state, k, seed, 8, tolerance);
      marginals_pass = marginals_pass && entry["pass"].get<bool>();
      marginals.push_back(std::move(entry));
    }

    // Trace rule vs contraction rule on random instruments, plus the
    // round-trip through the isomorphism.
    const cpk::ProcessMatrix back = cpk::twotime_to_pm(state);
    const double round_trip = (back.matrix - w.matrix).cwiseAbs().maxCoeff();

    cpk::RandomSource rng(seed);
    double max_gap = 0.0;
    double max_sum_gap = 0.0;
    bool range_ok = true;
    const int equivalence_samples = std::max(1, static_cast<int>(random_samples));
    const std::size_t n = w.parties.size();
    std::vector<int> outcomes(n, 0), inputs(n, 0);
    for (int s = 0; s < equivalence_samples; ++s) {
      std::vector<cpk::Instrument> instruments;
      instruments.reserve(n);
      for (const auto& party : w.parties) {
        instruments.push_back(cpk::random_instrument(party, rng));
      }
      for (std::size_t k = 0; k < n; ++k) {
        inputs[k] = rng.uniform_int(0, 1);
      }
      double total = 0.0;
      for (int out_code = 0; out_code < (1 << n); ++out_code) {
        for (std::size_t k = 0; k < n; ++k) {
          outcomes[k] = (out_code >> (n - 1 - k)) & 1;
        }
        // An out-of-range value is a verification failure for the claimed
        // process, not an internal error.
        try {
          const double via_trace =
              cpk::pm_probability(w, instruments, outcomes, inputs);
          const double via_state =
              cpk::probability(state, instruments, outcomes, inputs);
          max_gap = std::max(max_gap, std::fabs(via_trace - via_state));
          total += via_trace;
        } catch (const cpk::NumericError&) {
          range_ok = false;
        }
      }
      max_sum_gap = std::max(max_sum_gap, std::fabs(total - 1.0));
    }

    const bool equivalence_pass = range_ok && max_gap <= tolerance &&
                                  max_sum_gap <= tolerance && round_trip <= 1e-12;
    const json report = {
        {"pass", linearity.pass && marginals_pass && equivalence_pass},
        {"linearity", linearity_to_json(linearity)},
        {"marginals", marginals},
        {"pm_equivalence",
         {{"pass", equivalence_pass},
          {"probabilities_in_range", range_ok},
          {"max_probability_gap", max_gap},
          {"max_outcome_sum_gap", max_sum_gap},
          {"round_trip_error", round_trip},
          {"samples", equivalence_samples}}}};
    *out_report_json = to_cstring(report.dump(2));
  });
}

cpk_status cpk_vertices(int32_t n_parties, char** out_vertices_json) {
  return guarded([&] {
    require(out_vertices_json, "null argument");
    require(n_parties == 3, "vertex enumeration supports three parties");
    *out_vertices_json =
        to_cstring(cpk::vertices_to_json(cpk::enumerate_classical_vertices(), kVersion));
  });
}

cpk_status cpk_certify(const cpk_table* table, const char* vertices_json,
                       char** out_report_json) {
  return guarded([&] {
    require(table && out_report_json, "null argument");
    const cpk::ProbTable& p = table->value;
    require(p.n_parties() == 3, "certification supports three parties");

    const auto equalities = cpk::nbts_equalities(p.n_parties());
    const bool in_range = p.entries_in_range();
    const bool normalization = p.normalized();
    const auto violations = cpk::equality_violations(p, equalities);
    bool nbts_ok = true;
    json violation_tags = json::array();
    for (const auto& tag : violations) {
      if (tag.rfind("norm|", 0) == 0) continue;  // reported via normalization
      nbts_ok = false;
      violation_tags.push_back(tag);
    }
    const bool in_polytope = in_range && normalization && nbts_ok;

    json report = {{"parties", p.n_parties()},
                   {"entries_in_range", in_range},
                   {"normalization_ok", normalization},
                   {"nbts_ok", nbts_ok},
                   {"nbts_violations", violation_tags},
                   {"in_nbts_polytope", in_polytope},
                   {"symmetries_ok", cpk::verify_symmetries(p)},
                   {"last_mover_ok", cpk::last_mover_check(p)}};

    if (in_polytope) {
      std::vector<cpk::ProbTable> vertices =
          vertices_json ? cpk::vertices_from_json(vertices_json)
                        : cpk::enumerate_classical_vertices();
      const cpk::Certificate certificate = cpk::membership(p, vertices);
      report["vertex_count"] = vertices.size();
      report["classical"] =
          certificate.kind == cpk::Certificate::Kind::Membership;
      report["certificate"] = json::parse(cpk::certificate_to_json(certificate));

      const auto extremal = cpk::extremality(p);
      report["extremality"] = {{"satisfies_constraints", extremal.satisfies_constraints},
                               {"is_extreme", extremal.is_extreme},
                               {"saturated_rank", extremal.saturated_rank}};
    }
    *out_report_json = to_cstring(report.dump(2));
  });
}

cpk_status cpk_sandwich(const char* kraus_json, char** out_stochastic_json) {
  return guarded([&] {
    require(kraus_json && out_stochastic_json, "null argument");
    const cpk::KrausSet kraus = cpk::kraus_from_json(kraus_json);
    *out_stochastic_json =
        to_cstring(cpk::stochastic_to_json(cpk::sandwich_to_stochastic(kraus)));
  });
}

cpk_status cpk_pm_from_json(const char* json_text, cpk_pm** out_process) {
  return guarded([&] {
    require(json_text && out_process, "null argument");
    *out_process = new cpk_pm{cpk::pm_from_json(json_text)};
  });
}

cpk_status cpk_pm_to_json(const cpk_pm* process, char** out_json) {
  return guarded([&] {
    require(process && out_json, "null argument");
    *out_json = to_cstring(cpk::pm_to_json(process->value));
  });
}

cpk_status cpk_pm_to_state(const cpk_pm* process, cpk_state** out_state) {
  return guarded([&] {
    require(process && out_state, "null argument");
    *out_state = new cpk_state{cpk::pm_to_twotime(process->value)};
  });
}

cpk_status cpk_state_to_pm(const cpk_state* state, cpk_pm** out_process) {
  return guarded([&] {
    require(state && out_process, "null argument");
    *out_process = new cpk_pm{cpk::twotime_to_pm(state->value)};
  });
}

void cpk_pm_free(cpk_pm* process) { delete process; }

}  // extern "C"
