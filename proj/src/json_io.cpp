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

#include "cpk/json_io.hpp"

#include <json.hpp>

#include <set>

#include "cpk/errors.hpp"

namespace cpk {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

json complex_to_json(const Complex& value) {
  return json::array({value.real(), value.imag()});
}

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("complex entries must be [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const Mat& m) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(complex_to_json(m(r, c)));
  }
  return data;
}

Mat matrix_from_json(const json& data, Eigen::Index rows, Eigen::Index cols) {
  if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != rows * cols) {
    throw ParseError("matrix entry count mismatch");
  }
  Mat m(rows, cols);
  Eigen::Index k = 0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(data[k++]);
  }
  return m;
}

const json& expect(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

json party_layout_to_json(const PartyLayout& layout) {
  json parties = json::array();
  for (const auto& party : layout) {
    parties.push_back({{"name", party.name},
                       {"in", party.in_space},
                       {"out", party.out_space},
                       {"dim_in", party.dim_in},
                       {"dim_out", party.dim_out}});
  }
  return parties;
}

PartyLayout party_layout_from_json(const json& parties) {
  if (!parties.is_array() || parties.empty()) {
    throw ParseError("'parties' must be a non-empty array");
  }
  PartyLayout layout;
  std::set<std::string> names, spaces;
  for (const auto& p : parties) {
    Party party;
    party.name = expect(p, "name").get<std::string>();
    party.in_space = expect(p, "in").get<std::string>();
    party.out_space = expect(p, "out").get<std::string>();
    party.dim_in = p.value("dim_in", 2);
    party.dim_out = p.value("dim_out", 2);
    if (party.dim_in < 1 || party.dim_out < 1) {
      throw ParseError("party dims must be positive");
    }
    if (!names.insert(party.name).second) {
      throw ParseError("duplicate party name '" + party.name + "'");
    }
    if (!spaces.insert(party.in_space).second ||
        !spaces.insert(party.out_space).second) {
      throw ParseError("party spaces must be distinct");
    }
    layout.push_back(std::move(party));
  }
  return layout;
}

}  // namespace

std::string tensor_to_json(const LabeledTensor& tensor) {
  json labels = json::array();
  for (const auto& l : tensor.labels()) {
    labels.push_back({{"name", l.name},
                      {"dagger", l.dagger},
                      {"variance", l.variance == Variance::Raised ? "up" : "down"},
                      {"dim", l.dim}});
  }
  json data = json::array();
  for (const auto& v : tensor.data()) data.push_back(complex_to_json(v));
  return json{{"labels", labels}, {"data", data}}.dump();
}

LabeledTensor tensor_from_json(const std::string& text) {
  const json j = parse(text);
  std::vector<SpaceLabel> labels;
  for (const auto& l : expect(j, "labels")) {
    SpaceLabel label;
    label.name = expect(l, "name").get<std::string>();
    label.dagger = expect(l, "dagger").get<bool>();
    const std::string variance = expect(l, "variance").get<std::string>();
    if (variance == "up") {
      label.variance = Variance::Raised;
    } else if (variance == "down") {
      label.variance = Variance::Lowered;
    } else {
      throw ParseError("variance must be 'up' or 'down'");
    }
    label.dim = expect(l, "dim").get<int>();
    labels.push_back(std::move(label));
  }
  const json& data = expect(j, "data");
  std::vector<Complex> values;
  values.reserve(data.size());
  for (const auto& v : data) values.push_back(complex_from_json(v));
  return LabeledTensor(std::move(labels), std::move(values));
}

std::string kraus_to_json(const KrausSet& kraus) {
  json ops = json::array();
  for (const auto& op : kraus.operators) ops.push_back(matrix_to_json(op));
  return json{{"dim_in", kraus.dim_in},
              {"dim_out", kraus.dim_out},
              {"operators", ops}}
      .dump();
}

KrausSet kraus_from_json(const std::string& text) {
  const json j = parse(text);
  KrausSet kraus;
  kraus.dim_in = expect(j, "dim_in").get<int>();
  kraus.dim_out = expect(j, "dim_out").get<int>();
  if (kraus.dim_in < 1 || kraus.dim_out < 1) {
    throw ParseError("Kraus dims must be positive");
  }
  for (const auto& op : expect(j, "operators")) {
    kraus.operators.push_back(matrix_from_json(op, kraus.dim_out, kraus.dim_in));
  }
  kraus.validate();
  return kraus;
}

std::string stochastic_to_json(const StochasticMatrix& q) {
  json entries = json::array();
  for (double v : q.entries) entries.push_back(v);
  return json{{"dim_in", q.dim_in}, {"dim_out", q.dim_out}, {"entries", entries}}
      .dump();
}

std::string state_to_json(const TwoTimeState& state) {
  return json{{"parties", party_layout_to_json(state.parties)},
              {"tensor", json::parse(tensor_to_json(state.tensor))}}
      .dump();
}

TwoTimeState state_from_json(const std::string& text) {
  const json j = parse(text);
  TwoTimeState state;
  state.parties = party_layout_from_json(expect(j, "parties"));
  state.tensor = tensor_from_json(expect(j, "tensor").dump());
  validate_twotime(state);
  return state;
}

std::string instruments_to_json(const std::vector<Instrument>& instruments) {
  json list = json::array();
  for (const auto& instrument : instruments) {
    json ops = json::object();
    for (int a = 0; a < 2; ++a) {
      for (int x = 0; x < 2; ++x) {
        ops[std::to_string(a) + "|" + std::to_string(x)] = json::parse(
            kraus_to_json(instrument.ops[static_cast<std::size_t>(a)]
                                        [static_cast<std::size_t>(x)]));
      }
    }
    list.push_back({{"party", instrument.party.name},
                    {"in", instrument.party.in_space},
                    {"out", instrument.party.out_space},
                    {"operations", ops}});
  }
  return json{{"instruments", list}}.dump();
}

std::vector<Instrument> instruments_from_json(const std::string& text,
                                              const PartyLayout& layout) {
  const json j = parse(text);
  const json& list = expect(j, "instruments");
  if (!list.is_array() || list.size() != layout.size()) {
    throw InvalidArgument("instrument count does not match the party layout");
  }
  std::vector<Instrument> instruments(layout.size());
  std::vector<bool> seen(layout.size(), false);
  for (const auto& entry : list) {
    const std::string name = expect(entry, "party").get<std::string>();
    std::size_t index = layout.size();
    for (std::size_t k = 0; k < layout.size(); ++k) {
      if (layout[k].name == name) index = k;
    }
    if (index == layout.size()) {
      throw InvalidArgument("instrument for unknown party '" + name + "'");
    }
    if (seen[index]) {
      throw InvalidArgument("duplicate instrument for party '" + name + "'");
    }
    seen[index] = true;

    Instrument instrument;
    instrument.party = layout[index];
    const json& ops = expect(entry, "operations");
    for (int a = 0; a < 2; ++a) {
      for (int x = 0; x < 2; ++x) {
        const std::string key = std::to_string(a) + "|" + std::to_string(x);
        auto it = ops.find(key);
        if (it == ops.end()) {
          throw ParseError("missing instrument operation '" + key + "'");
        }
        instrument.ops[static_cast<std::size_t>(a)][static_cast<std::size_t>(x)] =
            kraus_from_json(it->dump());
      }
    }
    instrument.validate();
    instruments[index] = std::move(instrument);
  }
  return instruments;
}

std::string pm_to_json(const ProcessMatrix& w) {
  json parties = json::array();
  json names = json::array();
  for (const auto& party : w.parties) {
    parties.push_back({{"dim_in", party.dim_in}, {"dim_out", party.dim_out}});
    names.push_back(party.name);
  }
  return json{{"parties", parties},
              {"names", names},
              {"matrix", matrix_to_json(w.matrix)}}
      .dump();
}

ProcessMatrix pm_from_json(const std::string& text) {
  const json j = parse(text);
  const json& parties = expect(j, "parties");
  if (!parties.is_array() || parties.empty()) {
    throw ParseError("'parties' must be a non-empty array");
  }

  ProcessMatrix w;
  std::size_t index = 0;
  for (const auto& p : parties) {
    Party party;
    if (j.contains("names") && index < j["names"].size()) {
      party.name = j["names"][index].get<std::string>();
    } else if (parties.size() <= 3) {
      party.name = std::string(1, static_cast<char>('A' + index));
    } else {
      party.name = "P" + std::to_string(index + 1);
    }
    party.in_space = party.name + "_i";
    party.out_space = party.name + "_o";
    party.dim_in = expect(p, "dim_in").get<int>();
    party.dim_out = expect(p, "dim_out").get<int>();
    if (party.dim_in < 1 || party.dim_out < 1) {
      throw ParseError("party dims must be positive");
    }
    w.parties.push_back(std::move(party));
    ++index;
  }
  const Eigen::Index d = w.dim();
  w.matrix = matrix_from_json(expect(j, "matrix"), d, d);
  w.validate();
  return w;
}

std::string table_to_json(const ProbTable& table) {
  json entries = json::object();
  for (int in_code = 0; in_code < table.in_count(); ++in_code) {
    for (int out_code = 0; out_code < table.out_count(); ++out_code) {
      entries[table_entry_key(out_code, in_code, table.n_parties())] =
          rational_to_string(table.at_codes(out_code, in_code));
    }
  }
  return json{{"parties", table.n_parties()}, {"entries", entries}}.dump();
}

ProbTable table_from_json(const std::string& text) {
  const json j = parse(text);
  const int n = expect(j, "parties").get<int>();
  if (n < 1 || n > 8) throw ParseError("party count out of range");
  ProbTable table(n);
  const json& entries = expect(j, "entries");
  if (!entries.is_object() || entries.size() != table.size()) {
    throw ParseError("table must carry exactly 4^n entries");
  }
  for (int in_code = 0; in_code < table.in_count(); ++in_code) {
    for (int out_code = 0; out_code < table.out_count(); ++out_code) {
      const std::string key = table_entry_key(out_code, in_code, n);
      auto it = entries.find(key);
      if (it == entries.end()) throw ParseError("missing table entry '" + key + "'");
      table.at_codes(out_code, in_code) =
          rational_from_string(it->get<std::string>());
    }
  }
  return table;
}

std::string certificate_to_json(const Certificate& certificate) {
  if (certificate.kind == Certificate::Kind::Membership) {
    json weights = json::object();
    for (const auto& [id, weight] : certificate.weights) {
      weights[std::to_string(id)] = rational_to_string(weight);
    }
    return json{{"kind", "membership"}, {"weights", weights}}.dump();
  }
  json y = json::array();
  for (const auto& v : certificate.y) y.push_back(v.get_str());
  return json{{"kind", "separation"}, {"y", y}, {"y0", certificate.y0.get_str()}}
      .dump();
}

Certificate certificate_from_json(const std::string& text) {
  const json j = parse(text);
  const std::string kind = expect(j, "kind").get<std::string>();
  Certificate certificate;
  if (kind == "membership") {
    certificate.kind = Certificate::Kind::Membership;
    for (const auto& [key, value] : expect(j, "weights").items()) {
      certificate.weights.emplace_back(std::stoull(key),
                                       rational_from_string(value.get<std::string>()));
    }
    return certificate;
  }
  if (kind != "separation") throw ParseError("unknown certificate kind");
  certificate.kind = Certificate::Kind::Separation;
  for (const auto& v : expect(j, "y")) {
    certificate.y.push_back(Integer(v.get<std::string>()));
  }
  certificate.y0 = Integer(expect(j, "y0").get<std::string>());
  return certificate;
}

std::string vertices_to_json(const std::vector<ProbTable>& vertices,
                             const std::string& version) {
  json list = json::array();
  for (std::size_t id = 0; id < vertices.size(); ++id) {
    list.push_back({{"id", id},
                    {"table", json::parse(table_to_json(vertices[id]))}});
  }
  const int parties = vertices.empty() ? 0 : vertices.front().n_parties();
  return json{{"version", version},
              {"parties", parties},
              {"count", vertices.size()},
              {"vertices", list}}
      .dump();
}

std::vector<ProbTable> vertices_from_json(const std::string& text,
                                          std::string* version_out) {
  const json j = parse(text);
  if (version_out) *version_out = j.value("version", std::string());
  std::vector<ProbTable> vertices;
  const json& list = expect(j, "vertices");
  vertices.reserve(list.size());
  std::size_t expected_id = 0;
  for (const auto& entry : list) {
    if (expect(entry, "id").get<std::size_t>() != expected_id++) {
      throw ParseError("vertex ids must be consecutive from zero");
    }
    vertices.push_back(table_from_json(expect(entry, "table").dump()));
  }
  return vertices;
}

}  // namespace cpk
