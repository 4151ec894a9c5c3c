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

#ifndef CPK_JSON_IO_HPP
#define CPK_JSON_IO_HPP

#include <string>
#include <vector>

#include "cpk/channels.hpp"
#include "cpk/polytope.hpp"
#include "cpk/process_matrix.hpp"
#include "cpk/prob_table.hpp"
#include "cpk/tensor.hpp"
#include "cpk/twotime.hpp"

namespace cpk {

// Serialized forms. Complex numbers are [re, im] pairs; tensors list their
// labels in canonical order with the data row-major; exact quantities are
// rational strings such as "1/2". All readers throw ParseError on malformed
// input and InvalidArgument on structurally valid but inconsistent data.

std::string tensor_to_json(const LabeledTensor& tensor);
LabeledTensor tensor_from_json(const std::string& text);

std::string kraus_to_json(const KrausSet& kraus);
KrausSet kraus_from_json(const std::string& text);

std::string stochastic_to_json(const StochasticMatrix& q);

std::string state_to_json(const TwoTimeState& state);
TwoTimeState state_from_json(const std::string& text);  // validates structure

std::string instruments_to_json(const std::vector<Instrument>& instruments);
std::vector<Instrument> instruments_from_json(const std::string& text,
                                              const PartyLayout& layout);

std::string pm_to_json(const ProcessMatrix& w);
ProcessMatrix pm_from_json(const std::string& text);  // validates hermitian + PSD

std::string table_to_json(const ProbTable& table);
ProbTable table_from_json(const std::string& text);

std::string certificate_to_json(const Certificate& certificate);
Certificate certificate_from_json(const std::string& text);

std::string vertices_to_json(const std::vector<ProbTable>& vertices,
                             const std::string& version);
std::vector<ProbTable> vertices_from_json(const std::string& text,
                                          std::string* version_out = nullptr);

}  // namespace cpk

#endif  // CPK_JSON_IO_HPP
