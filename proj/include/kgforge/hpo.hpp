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
#include <vector>

#include <json.hpp>

#include "kgforge/config.hpp"
#include "kgforge/evaluation.hpp"
#include "kgforge/kg.hpp"
#include "kgforge/rng.hpp"

namespace kgforge {

/// Metric a search optimises: filtered hits@k (maximised) or filtered mean
/// rank (minimised).
struct SelectionMetric {
  enum class Kind { kHitsAtK, kMeanRankFiltered };
  Kind kind = Kind::kHitsAtK;
  std::int64_t k = 10;

  double value(const RankMetrics& m) const;
  bool better(double a, double b) const;

  nlohmann::json to_json() const;
  static SelectionMetric from_json(const nlohmann::json& j);

  bool operator==(const SelectionMetric&) const = default;
};

/// Candidate values per hyper-parameter. Keys are ExperimentConfig keys or
/// model_specific keys; values are the raw JSON candidates.
///
/// JSON form: {"trials": 10, "selection_metric": {"name": "hits_at_k", "k": 10},
///             "model_name": ["TransE"], "learning_rate": [0.01, 0.1], ...}
struct SearchSpace {
  std::map<std::string, std::vector<nlohmann::json>> candidates;
  std::int64_t trials = 10;
  SelectionMetric selection_metric;

  /// Every set must be non-empty and every candidate must yield a valid
  /// ExperimentConfig. Throws ConfigError.
  void validate() const;

  nlohmann::json to_json() const;
  static SearchSpace from_json(const nlohmann::json& j);
};

/// Draw every hyper-parameter independently and uniformly from its set.
ExperimentConfig sample_config(const SearchSpace& space, Rng& rng);

struct TrialRecord {
  ExperimentConfig config;
  RankMetrics metrics;
  std::int64_t trial_index = 0;
  bool failed = false;
  std::string error;
  /// Selection metric on the validation triples; meaningless when failed.
  double selection_value = 0.0;

  nlohmann::json to_json() const;
};

struct SearchResult {
  std::vector<TrialRecord> trials;
  std::size_t best_index = 0;
  IndexedKG sub_train;
  IndexedKG validation;

  const TrialRecord& best() const { return trials.at(best_index); }
};

/// Ratio of the internal sub-train / validation split.
inline constexpr double kValidationSplitRatio = 0.9;

/// Pluggable optimiser: what to try next, and how to run the search.
class HyperparameterOptimizer {
 public:
  virtual ~HyperparameterOptimizer() = default;

  virtual ExperimentConfig propose_next(const SearchSpace& space, Rng& rng) = 0;

  /// Default loop: split kg_train 0.9/0.1, then for each trial propose a
  /// config, seed it with derive_seed(seed, trial_index), train on the
  /// sub-train part and rank the validation part. Diverging trials are
  /// recorded as failed. Ties go to the lowest trial index.
  virtual SearchResult run_search(const IndexedKG& kg_train, const SearchSpace& space,
                                  std::uint64_t seed);
};

class RandomSearch final : public HyperparameterOptimizer {
 public:
  ExperimentConfig propose_next(const SearchSpace& space, Rng& rng) override {
    return sample_config(space, rng);
  }
};

SearchResult random_search(const IndexedKG& kg_train, const SearchSpace& space, std::uint64_t seed);

nlohmann::json trials_to_json(const SearchResult& result);

}  // namespace kgforge
