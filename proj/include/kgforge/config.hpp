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

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace kgforge {

enum class ModelKind { kTransE, kTransH, kTransR, kTransD, kUM, kSE, kRESCAL, kDistMult, kERMLP };

enum class LossKind { kMarginRanking, kBinaryCrossEntropy };

enum class FilterSetting { kRaw, kFiltered, kBoth };

enum class Mode { kTraining, kHpo };

inline constexpr ModelKind kAllModels[] = {
    ModelKind::kTransE, ModelKind::kTransH,  ModelKind::kTransR,
    ModelKind::kTransD, ModelKind::kUM,      ModelKind::kSE,
    ModelKind::kRESCAL, ModelKind::kDistMult, ModelKind::kERMLP};

std::string_view to_string(ModelKind m);
std::string_view to_string(LossKind l);
std::string_view to_string(FilterSetting f);
std::string_view to_string(Mode m);

/// Parsers throw ConfigError listing the accepted spellings.
ModelKind parse_model_kind(std::string_view s);
LossKind parse_loss_kind(std::string_view s);
FilterSetting parse_filter_setting(std::string_view s);
Mode parse_mode(std::string_view s);

/// Loss used when a config does not name one: BCE for ERMLP, margin ranking
/// for every other model.
LossKind default_loss(ModelKind m);

/// Full description of one experiment. The canonical JSON form uses the
/// member names below as keys.
struct ExperimentConfig {
  Mode mode = Mode::kTraining;
  ModelKind model_name = ModelKind::kTransE;
  std::int64_t embedding_dim = 50;
  /// Extra dimensions: relation_dim (TransR, TransD), hidden_dim (ERMLP),
  /// scoring_norm (TransE, SE; 1 or 2).
  std::map<std::string, std::int64_t> model_specific;
  double learning_rate = 0.01;
  double margin = 1.0;
  LossKind loss = LossKind::kMarginRanking;
  std::int64_t num_epochs = 100;
  std::int64_t batch_size = 32;
  double split_ratio = 0.8;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> eval_ks = {1, 3, 10};
  FilterSetting filter_setting = FilterSetting::kBoth;
  /// Only "cpu" is accepted.
  std::string device = "cpu";
  /// Free-form provenance: data_path, data_format, dataset_url, reference.
  std::map<std::string, std::string> metadata;

  std::int64_t relation_dim() const;
  std::int64_t hidden_dim() const;
  int scoring_norm() const;

  /// Throws ConfigError describing the first violated constraint.
  void validate() const;

  nlohmann::json to_json() const;
  /// Parses and validates. Missing optional keys take their defaults.
  static ExperimentConfig from_json(const nlohmann::json& j);

  bool operator==(const ExperimentConfig&) const = default;
};

/// Defaults for a model, including its default loss.
ExperimentConfig default_config(ModelKind m);

/// Keys recognised inside model_specific.
inline constexpr std::string_view kModelSpecificKeys[] = {"hidden_dim", "relation_dim",
                                                          "scoring_norm"};

}  // namespace kgforge
