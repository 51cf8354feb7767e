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

#include "kgforge/hpo.hpp"

#include <algorithm>

#include "kgforge/error.hpp"
#include "kgforge/log.hpp"
#include "kgforge/training.hpp"

namespace kgforge {

namespace {

using json = nlohmann::json;

bool is_model_specific(const std::string& key) {
  return std::find(std::begin(kModelSpecificKeys), std::end(kModelSpecificKeys), key) !=
         std::end(kModelSpecificKeys);
}

void put(json& j, const std::string& key, const json& value) {
  if (is_model_specific(key))
    j["model_specific"][key] = value;
  else
    j[key] = value;
}

}  // namespace

double SelectionMetric::value(const RankMetrics& m) const {
  if (kind == Kind::kMeanRankFiltered) return m.mean_rank_filtered;
  auto it = m.hits_at_k_filtered.find(k);
  if (it == m.hits_at_k_filtered.end())
    throw Error("metrics lack filtered hits@" + std::to_string(k));
  return it->second;
}

bool SelectionMetric::better(double a, double b) const {
  return kind == Kind::kMeanRankFiltered ? a < b : a > b;
}

nlohmann::json SelectionMetric::to_json() const {
  if (kind == Kind::kMeanRankFiltered) return {{"name", "mean_rank_filtered"}};
  return {{"name", "hits_at_k"}, {"k", k}};
}

SelectionMetric SelectionMetric::from_json(const nlohmann::json& j) {
  SelectionMetric m;
  const std::string name = j.is_string() ? j.get<std::string>() : j.at("name").get<std::string>();
  if (name == "mean_rank_filtered") {
    m.kind = Kind::kMeanRankFiltered;
  } else if (name == "hits_at_k") {
    m.kind = Kind::kHitsAtK;
    if (j.is_object() && j.contains("k")) m.k = j.at("k").get<std::int64_t>();
    if (m.k < 1) throw ConfigError("selection_metric.k must be >= 1");
  } else {
    throw ConfigError("unknown selection metric '" + name +
                      "' (expected hits_at_k or mean_rank_filtered)");
  }
  return m;
}

void SearchSpace::validate() const {
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (!candidates.contains("model_name")) throw ConfigError("search space needs model_name candidates");
  for (const auto& [key, values] : candidates)
    if (values.empty()) throw ConfigError("empty candidate set for '" + key + "'");

  json base = json::object();
  for (const auto& [key, values] : candidates) put(base, key, values.front());
  for (const auto& [key, values] : candidates) {
    for (const auto& v : values) {
      json probe = base;
      put(probe, key, v);
      try {
        ExperimentConfig::from_json(probe);
      } catch (const ConfigError& e) {
        throw ConfigError("invalid candidate " + v.dump() + " for '" + key + "': " + e.what());
      }
    }
  }
}

nlohmann::json SearchSpace::to_json() const {
  json j;
  j["trials"] = trials;
  j["selection_metric"] = selection_metric.to_json();
  for (const auto& [key, values] : candidates) j[key] = values;
  return j;
}

SearchSpace SearchSpace::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("search space must be a JSON object");
  SearchSpace space;
  try {
    for (const auto& item : j.items()) {
      if (item.key() == "trials") {
        space.trials = item.value().get<std::int64_t>();
      } else if (item.key() == "selection_metric") {
        space.selection_metric = SelectionMetric::from_json(item.value());
      } else {
        if (!item.value().is_array())
          throw ConfigError("hyper-parameter '" + item.key() + "' must map to an array of candidates");
        space.candidates[item.key()] = item.value().get<std::vector<json>>();
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid search space: ") + e.what());
  }
  space.validate();
  return space;
}

ExperimentConfig sample_config(const SearchSpace& space, Rng& rng) {
  json j = json::object();
  for (const auto& [key, values] : space.candidates) {
    if (values.empty()) throw ConfigError("empty candidate set for '" + key + "'");
    put(j, key, values[static_cast<std::size_t>(rng.below(values.size()))]);
  }
  return ExperimentConfig::from_json(j);
}

nlohmann::json TrialRecord::to_json() const {
  json j;
  j["trial_index"] = trial_index;
  j["config"] = config.to_json();
  j["failed"] = failed;
  if (failed) {
    j["error"] = error;
  } else {
    j["selection_value"] = selection_value;
    json m = metrics.to_json();
    m.erase("per_triple_ranks");
    j["metrics"] = std::move(m);
  }
  return j;
}

SearchResult HyperparameterOptimizer::run_search(const IndexedKG& kg_train, const SearchSpace& space,
                                                 std::uint64_t seed) {
  space.validate();
  auto sub = split(kg_train, kValidationSplitRatio, seed);
  const auto known = known_triples({&kg_train});

  SearchResult result;
  Rng rng(seed, Stream::kSearch);
  for (std::int64_t i = 0; i < space.trials; ++i) {
    TrialRecord record;
    record.trial_index = i;
    record.config = propose_next(space, rng);
    record.config.seed = derive_seed(seed, static_cast<std::uint64_t>(i));
    record.config.mode = Mode::kHpo;
    try {
      auto model = make_model(record.config.model_name);
      auto trained = train(sub.train, record.config);
      std::vector<std::int64_t> ks = record.config.eval_ks;
      if (space.selection_metric.kind == SelectionMetric::Kind::kHitsAtK &&
          std::find(ks.begin(), ks.end(), space.selection_metric.k) == ks.end())
        ks.push_back(space.selection_metric.k);
      record.metrics = evaluate(*model, trained.params, sub.test.triples(), known, ks);
      record.selection_value = space.selection_metric.value(record.metrics);
      logger().info("trial {}: {} = {}", i, space.selection_metric.kind == SelectionMetric::Kind::kHitsAtK
                                                ? "hits@" + std::to_string(space.selection_metric.k)
                                                : std::string("mean rank"),
                    record.selection_value);
    } catch (const DivergenceError& e) {
      record.failed = true;
      record.error = e.what();
      logger().warn("trial {} failed: {}", i, e.what());
    }
    result.trials.push_back(std::move(record));
  }

  bool found = false;
  for (std::size_t i = 0; i < result.trials.size(); ++i) {
    const auto& t = result.trials[i];
    if (t.failed) continue;
    if (!found || space.selection_metric.better(t.selection_value, result.trials[result.best_index].selection_value)) {
      result.best_index = i;
      found = true;
    }
  }
  if (!found) throw Error("all " + std::to_string(space.trials) + " trials failed");
  result.sub_train = std::move(sub.train);
  result.validation = std::move(sub.test);
  return result;
}

SearchResult random_search(const IndexedKG& kg_train, const SearchSpace& space, std::uint64_t seed) {
  RandomSearch optimizer;
  return optimizer.run_search(kg_train, space, seed);
}

nlohmann::json trials_to_json(const SearchResult& result) {
  json j;
  j["best_trial_index"] = result.best().trial_index;
  json trials = json::array();
  for (const auto& t : result.trials) trials.push_back(t.to_json());
  j["trials"] = std::move(trials);
  return j;
}

}  // namespace kgforge
