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
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kgforge/kg.hpp"
#include "kgforge/models.hpp"

namespace kgforge {

enum class Side { kHead, kTail };

struct RankEntry {
  TripleIds triple;
  Side side = Side::kHead;
  double raw_rank = 0.0;
  double filtered_rank = 0.0;

  bool operator==(const RankEntry&) const = default;
};

/// Link-prediction metrics. Ranks are "realistic": tied candidates count
/// half, so rank = 1 + #better + #tied / 2.
struct RankMetrics {
  double mean_rank_raw = 0.0;
  double mean_rank_filtered = 0.0;
  std::map<std::int64_t, double> hits_at_k_raw;
  std::map<std::int64_t, double> hits_at_k_filtered;
  std::vector<RankEntry> per_triple_ranks;

  nlohmann::json to_json() const;
  static RankMetrics from_json(const nlohmann::json& j);

  bool operator==(const RankMetrics&) const = default;
};

struct RankPair {
  double raw = 0.0;
  double filtered = 0.0;
};

/// Rank of `triple` among all substitutions of `side`. Candidates found in
/// `filter_set` (other than the triple itself) are dropped for the filtered
/// rank.
RankPair rank_one(const Model& model, const ModelParams& params, const TripleIds& triple, Side side,
                  std::size_t num_entities, const TripleSet& filter_set);

/// Head- and tail-side ranks for every test triple, pooled into mean rank
/// and hits@k. Throws on an empty test set.
RankMetrics evaluate(const Model& model, const ModelParams& params, std::span<const TripleIds> test,
                     const TripleSet& known, std::span<const std::int64_t> ks);

/// Every triple of the given graphs, for use as a filter set.
TripleSet known_triples(std::initializer_list<const IndexedKG*> graphs);

}  // namespace kgforge
