// Copyright 2026 The kgforge Authors
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

#include "kgforge/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "kgforge/error.hpp"

namespace kgforge {

namespace {

using json = nlohmann::json;

constexpr std::array<std::pair<ModelKind, std::string_view>, 9> kModelNames{{
    {ModelKind::kTransE, "TransE"},
    {ModelKind::kTransH, "TransH"},
    {ModelKind::kTransR, "TransR"},
    {ModelKind::kTransD, "TransD"},
    {ModelKind::kUM, "UM"},
    {ModelKind::kSE, "SE"},
    {ModelKind::kRESCAL, "RESCAL"},
    {ModelKind::kDistMult, "DistMult"},
    {ModelKind::kERMLP, "ERMLP"},
}};

template <class Enum, std::size_t N>
Enum parse_enum(std::string_view s, const std::array<std::pair<Enum, std::string_view>, N>& table,
                std::string_view what) {
  for (const auto& [value, name] : table)
    if (name == s) return value;
  std::string accepted;
  for (const auto& [value, name] : table) {
    if (!accepted.empty()) accepted += ", ";
    accepted += name;
  }
  throw ConfigError("unknown " + std::string(what) + " '" + std::string(s) +
                    "' (expected one of " + accepted + ")");
}

template <class Enum, std::size_t N>
std::string_view enum_name(Enum e, const std::array<std::pair<Enum, std::string_view>, N>& table) {
  for (const auto& [value, name] : table)
    if (value == e) return name;
  return "?";
}

constexpr std::array<std::pair<LossKind, std::string_view>, 2> kLossNames{{
    {LossKind::kMarginRanking, "margin_ranking"},
    {LossKind::kBinaryCrossEntropy, "binary_cross_entropy"},
}};

constexpr std::array<std::pair<FilterSetting, std::string_view>, 3> kFilterNames{{
    {FilterSetting::kRaw, "raw"},
    {FilterSetting::kFiltered, "filtered"},
    {FilterSetting::kBoth, "both"},
}};

constexpr std::array<std::pair<Mode, std::string_view>, 2> kModeNames{{
    {Mode::kTraining, "training"},
    {Mode::kHpo, "hpo"},
}};

const std::set<std::string> kKnownKeys = {
    "batch_size", "device",   "embedding_dim", "eval_ks", "filter_setting", "learning_rate",
    "loss",       "margin",   "metadata",      "mode",    "model_name",     "model_specific",
    "num_epochs", "seed",     "split_ratio"};

std::int64_t get_int(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(std::string(key) + " must be an integer");
  return v.get<std::int64_t>();
}

double get_real(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number()) throw ConfigError(std::string(key) + " must be a number");
  return v.get<double>();
}

std::string get_string(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_string()) throw ConfigError(std::string(key) + " must be a string");
  return v.get<std::string>();
}

}  // namespace

std::string_view to_string(ModelKind m) { return enum_name(m, kModelNames); }
std::string_view to_string(LossKind l) { return enum_name(l, kLossNames); }
std::string_view to_string(FilterSetting f) { return enum_name(f, kFilterNames); }
std::string_view to_string(Mode m) { return enum_name(m, kModeNames); }

ModelKind parse_model_kind(std::string_view s) { return parse_enum(s, kModelNames, "model"); }
LossKind parse_loss_kind(std::string_view s) { return parse_enum(s, kLossNames, "loss"); }
FilterSetting parse_filter_setting(std::string_view s) {
  return parse_enum(s, kFilterNames, "filter setting");
}
Mode parse_mode(std::string_view s) { return parse_enum(s, kModeNames, "mode"); }

LossKind default_loss(ModelKind m) {
  return m == ModelKind::kERMLP ? LossKind::kBinaryCrossEntropy : LossKind::kMarginRanking;
}

ExperimentConfig default_config(ModelKind m) {
  ExperimentConfig c;
  c.model_name = m;
  c.loss = default_loss(m);
  return c;
}

std::int64_t ExperimentConfig::relation_dim() const {
  auto it = model_specific.find("relation_dim");
  return it == model_specific.end() ? embedding_dim : it->second;
}

std::int64_t ExperimentConfig::hidden_dim() const {
  auto it = model_specific.find("hidden_dim");
  return it == model_specific.end() ? embedding_dim : it->second;
}

int ExperimentConfig::scoring_norm() const {
  auto it = model_specific.find("scoring_norm");
  return it == model_specific.end() ? 1 : static_cast<int>(it->second);
}

void ExperimentConfig::validate() const {
  if (embedding_dim < 1) throw ConfigError("embedding_dim must be >= 1");
  for (const auto& [key, value] : model_specific) {
    if (std::find(std::begin(kModelSpecificKeys), std::end(kModelSpecificKeys), key) ==
        std::end(kModelSpecificKeys))
      throw ConfigError("unknown model_specific key '" + key + "'");
    if (value < 1) throw ConfigError("model_specific." + key + " must be >= 1");
  }
  if (scoring_norm() != 1 && scoring_norm() != 2)
    throw ConfigError("model_specific.scoring_norm must be 1 or 2");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
    throw ConfigError("learning_rate must be a positive finite number");
  if (!(margin >= 0.0) || !std::isfinite(margin))
    throw ConfigError("margin must be a non-negative finite number");
  if (num_epochs < 1) throw ConfigError("num_epochs must be >= 1");
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (!(split_ratio > 0.0 && split_ratio < 1.0))
    throw ConfigError("split_ratio must lie strictly between 0 and 1");
  if (eval_ks.empty()) throw ConfigError("eval_ks must not be empty");
  for (auto k : eval_ks)
    if (k < 1) throw ConfigError("eval_ks entries must be >= 1");
  if (device != "cpu") throw ConfigError("device '" + device + "' is not supported (only cpu)");
}

nlohmann::json ExperimentConfig::to_json() const {
  json j;
  j["mode"] = to_string(mode);
  j["model_name"] = to_string(model_name);
  j["embedding_dim"] = embedding_dim;
  j["model_specific"] = json::object();
  for (const auto& [k, v] : model_specific) j["model_specific"][k] = v;
  j["learning_rate"] = learning_rate;
  j["margin"] = margin;
  j["loss"] = to_string(loss);
  j["num_epochs"] = num_epochs;
  j["batch_size"] = batch_size;
  j["split_ratio"] = split_ratio;
  j["seed"] = seed;
  j["eval_ks"] = eval_ks;
  j["filter_setting"] = to_string(filter_setting);
  j["device"] = device;
  j["metadata"] = json::object();
  for (const auto& [k, v] : metadata) j["metadata"][k] = v;
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
  for (const auto& item : j.items())
    if (!kKnownKeys.contains(item.key()))
      throw ConfigError("unknown configuration key '" + item.key() + "'");
  if (!j.contains("model_name")) throw ConfigError("configuration is missing model_name");

  try {
    ExperimentConfig c = default_config(parse_model_kind(get_string(j, "model_name")));
    if (j.contains("mode")) c.mode = parse_mode(get_string(j, "mode"));
    if (j.contains("embedding_dim")) c.embedding_dim = get_int(j, "embedding_dim");
    if (j.contains("model_specific")) {
      const auto& ms = j.at("model_specific");
      if (!ms.is_object()) throw ConfigError("model_specific must be an object");
      for (const auto& item : ms.items()) {
        if (!item.value().is_number_integer())
          throw ConfigError("model_specific." + item.key() + " must be an integer");
        c.model_specific[item.key()] = item.value().get<std::int64_t>();
      }
    }
    if (j.contains("learning_rate")) c.learning_rate = get_real(j, "learning_rate");
    if (j.contains("margin")) c.margin = get_real(j, "margin");
    if (j.contains("loss")) c.loss = parse_loss_kind(get_string(j, "loss"));
    if (j.contains("num_epochs")) c.num_epochs = get_int(j, "num_epochs");
    if (j.contains("batch_size")) c.batch_size = get_int(j, "batch_size");
    if (j.contains("split_ratio")) c.split_ratio = get_real(j, "split_ratio");
    if (j.contains("seed")) {
      const auto& s = j.at("seed");
      if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0))
        throw ConfigError("seed must be a non-negative integer");
      c.seed = s.get<std::uint64_t>();
    }
    if (j.contains("eval_ks")) {
      const auto& ks = j.at("eval_ks");
      if (!ks.is_array()) throw ConfigError("eval_ks must be an array");
      c.eval_ks.clear();
      for (const auto& k : ks) {
        if (!k.is_number_integer()) throw ConfigError("eval_ks entries must be integers");
        c.eval_ks.push_back(k.get<std::int64_t>());
      }
    }
    if (j.contains("filter_setting"))
      c.filter_setting = parse_filter_setting(get_string(j, "filter_setting"));
    if (j.contains("device")) c.device = get_string(j, "device");
    if (j.contains("metadata")) {
      const auto& md = j.at("metadata");
      if (!md.is_object()) throw ConfigError("metadata must be an object");
      for (const auto& item : md.items()) {
        if (!item.value().is_string())
          throw ConfigError("metadata." + item.key() + " must be a string");
        c.metadata[item.key()] = item.value().get<std::string>();
      }
    }
    c.validate();
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
}

}  // namespace kgforge
