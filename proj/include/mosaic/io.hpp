// Copyright 2026 The mosaic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include "mosaic/channel.hpp"
#include "mosaic/simulator.hpp"

namespace mosaic {

// Noise-model file: a JSON array of per-layer entries
//   {"layer_index": i, "models": [{"support": [q...],
//     "terms": [{"pauli": "XX", "rate": 0.02}, ...]}, ...]}
// Pauli symbols are positional on the sorted support.
std::string noise_models_to_json(const std::vector<std::vector<PauliLindbladModel>>& per_layer);
std::vector<std::vector<PauliLindbladModel>> noise_models_from_json(const std::string& text, int n);

// Observable grammar: "rho00" | "tfim[:J[:h]]" | "<coeff>*<PAULI>[+...]"
// | a bare Pauli string such as "ZII".
Observable parse_observable(const std::string& text, int n);
std::string observable_to_string(const Observable& obs);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace mosaic
