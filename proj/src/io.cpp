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

#include "mosaic/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mosaic/errors.hpp"

namespace mosaic {

using ordered_json = nlohmann::ordered_json;

std::string noise_models_to_json(const std::vector<std::vector<PauliLindbladModel>>& per_layer) {
  ordered_json root = ordered_json::array();
  for (std::size_t li = 0; li < per_layer.size(); ++li) {
    ordered_json layer;
    layer["layer_index"] = li;
    ordered_json models = ordered_json::array();
    for (const auto& m : per_layer[li]) {
      ordered_json jm;
      jm["support"] = m.support();
      ordered_json terms = ordered_json::array();
      for (const auto& [p, rate] : m.terms()) {
        std::string local;
        for (int q : m.support()) local += p.symbol(q);
        terms.push_back({{"pauli", local}, {"rate", rate}});
      }
      jm["terms"] = std::move(terms);
      models.push_back(std::move(jm));
    }
    layer["models"] = std::move(models);
    root.push_back(std::move(layer));
  }
  return root.dump(2) + "\n";
}

std::vector<std::vector<PauliLindbladModel>> noise_models_from_json(const std::string& text, int n) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw config_error(std::string("noise model JSON parse failure: ") + e.what());
  }
  if (!root.is_array()) throw config_error("noise model file must be a JSON array");
  std::vector<std::vector<PauliLindbladModel>> out;
  for (const auto& layer : root) {
    std::size_t idx = layer.at("layer_index").get<std::size_t>();
    if (idx >= out.size()) out.resize(idx + 1);
    std::vector<PauliLindbladModel> models;
    for (const auto& jm : layer.at("models")) {
      std::vector<int> support = jm.at("support").get<std::vector<int>>();
      for (int q : support) {
        if (q < 0 || q >= n) throw config_error("noise model support outside circuit width");
      }
      std::vector<std::pair<PauliString, double>> terms;
      for (const auto& jt : jm.at("terms")) {
        std::string sym = jt.at("pauli").get<std::string>();
        if (sym.size() != support.size()) {
          throw config_error("noise term '" + sym + "' length does not match support");
        }
        PauliString p = PauliString::identity(n);
        for (std::size_t i = 0; i < support.size(); ++i) {
          p = pauli_mul(p, PauliString::single(n, support[i], sym[i]));
        }
        terms.emplace_back(p, jt.at("rate").get<double>());
      }
      models.emplace_back(n, std::move(terms));
    }
    out[idx] = std::move(models);
  }
  return out;
}

Observable parse_observable(const std::string& text, int n) {
  if (text.empty()) throw config_error("empty observable spec");
  if (text == "rho00") return Observable::zero_projector();
  if (text.rfind("tfim", 0) == 0) {
    double J = 1.0, h = 1.0;
    if (text.size() > 4) {
      std::string rest = text.substr(5);  // skip "tfim:"
      if (text[4] != ':') throw config_error("bad observable spec '" + text + "'");
      auto colon = rest.find(':');
      try {
        if (colon == std::string::npos) {
          J = std::stod(rest);
        } else {
          J = std::stod(rest.substr(0, colon));
          h = std::stod(rest.substr(colon + 1));
        }
      } catch (const std::exception&) {
        throw config_error("bad observable spec '" + text + "'");
      }
    }
    return Observable::tfim_energy(n, J, h);
  }
  // "<coeff>*<PAULI>[+<coeff>*<PAULI>...]" or a bare Pauli string
  std::vector<std::pair<double, PauliString>> terms;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find('+', pos);
    std::string tok = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    double coeff = 1.0;
    std::string pauli = tok;
    auto star = tok.find('*');
    if (star != std::string::npos) {
      try {
        coeff = std::stod(tok.substr(0, star));
      } catch (const std::exception&) {
        throw config_error("bad observable coefficient in '" + tok + "'");
      }
      pauli = tok.substr(star + 1);
    }
    PauliString p = PauliString::from_text(pauli);
    if (p.n() != n) {
      throw config_error("observable pauli '" + pauli + "' has width " + std::to_string(p.n()) +
                         ", circuit has " + std::to_string(n));
    }
    terms.emplace_back(coeff, p);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return Observable::pauli_sum(std::move(terms));
}

std::string observable_to_string(const Observable& obs) {
  if (obs.kind == Observable::Kind::ZeroProjector) return "rho00";
  std::string out;
  for (std::size_t i = 0; i < obs.terms.size(); ++i) {
    if (i) out += "+";
    std::ostringstream ss;
    ss << obs.terms[i].first;
    out += ss.str() + "*" + obs.terms[i].second.text();
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot write file: " + path);
  out << content;
}

}  // namespace mosaic
