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

#include "kgforge/evaluation.hpp"

#include <string>

#include "kgforge/error.hpp"

namespace kgforge {

namespace {

using json = nlohmann::json;

const char* side_name(Side s) { return s == Side::kHead ? "head" : "tail"; }

Side parse_side(const std::string& s) {
  if (s == "head") return Side::kHead;
  if (s == "tail") return Side::kTail;
  throw Error("invalid rank side '" + s + "'");
}

json hits_to_json(const std::map<std::int64_t, double>& hits) {
  json out = json::object();
  for (const auto& [k, v] : hits) out[std::to_string(k)] = v;
  return out;
}

std::map<std::int64_t, double> hits_from_json(const json& j) {
  std::map<std::int64_t, double> out;
  for (const auto& item : j.items()) out[std::stoll(item.key())] = item.value().get<double>();
  return out;
}

}  // namespace

nlohmann::json RankMetrics::to_json() const {
  json j;
  j["mean_rank_raw"] = mean_rank_raw;
  j["mean_rank_filtered"] = mean_rank_filtered;
  j["hits_at_k_raw"] = hits_to_json(hits_at_k_raw);
  j["hits_at_k_filtered"] = hits_to_json(hits_at_k_filtered);
  json ranks = json::array();
  for (const auto& e : per_triple_ranks) {
    ranks.push_back({{"head", e.triple.head},
                     {"relation", e.triple.relation},
                     {"tail", e.triple.tail},
                     {"side", side_name(e.side)},
                     {"raw_rank", e.raw_rank},
                     {"filtered_rank", e.filtered_rank}});
  }
  j["per_triple_ranks"] = std::move(ranks);
  return j;
}

RankMetrics RankMetrics::from_json(const nlohmann::json& j) {
  try {
    RankMetrics m;
    m.mean_rank_raw = j.at("mean_rank_raw").get<double>();
    m.mean_rank_filtered = j.at("mean_rank_filtered").get<double>();
    m.hits_at_k_raw = hits_from_json(j.at("hits_at_k_raw"));
    m.hits_at_k_filtered = hits_from_json(j.at("hits_at_k_filtered"));
    for (const auto& e : j.at("per_triple_ranks")) {
      m.per_triple_ranks.push_back(
          {{e.at("head").get<EntityId>(), e.at("relation").get<RelationId>(), e.at("tail").get<EntityId>()},
           parse_side(e.at("side").get<std::string>()),
           e.at("raw_rank").get<double>(),
           e.at("filtered_rank").get<double>()});
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(std::string("invalid evaluation summary: ") + e.what());
  }
}

RankPair rank_one(const Model& model, const ModelParams& params, const TripleIds& triple, Side side,
                  std::size_t num_entities, const TripleSet& filter_set) {
  std::vector<TripleIds> candidates(num_entities, triple);
  for (std::size_t e = 0; e < num_entities; ++e) {
    auto& slot = side == Side::kHead ? candidates[e].head : candidates[e].tail;
    slot = static_cast<EntityId>(e);
  }
  std::vector<double> scores(num_entities);
  model.score_batch(params, candidates, scores);

  const EntityId truth = side == Side::kHead ? triple.head : triple.tail;
  const double target = scores[truth];
  std::size_t better_raw = 0, tied_raw = 0, better_filtered = 0, tied_filtered = 0;
  for (std::size_t e = 0; e < num_entities; ++e) {
    if (e == truth) continue;
    const bool better = scores[e] > target;
    const bool tied = scores[e] == target;
    if (!better && !tied) continue;
    (better ? better_raw : tied_raw) += 1;
    if (!filter_set.contains(candidates[e])) (better ? better_filtered : tied_filtered) += 1;
  }
  return {1.0 + static_cast<double>(better_raw) + 0.5 * static_cast<double>(tied_raw),
          1.0 + static_cast<double>(better_filtered) + 0.5 * static_cast<double>(tied_filtered)};
}

RankMetrics evaluate(const Model& model, const ModelParams& params, std::span<const TripleIds> test,
                     const TripleSet& known, std::span<const std::int64_t> ks) {
  if (test.empty()) throw Error("empty test set");
  RankMetrics m;
  m.per_triple_ranks.reserve(2 * test.size());
  for (const auto& t : test) {
    check_in_range(params, t);
    for (Side side : {Side::kHead, Side::kTail}) {
      const auto r = rank_one(model, params, t, side, params.dims.num_entities, known);
      m.per_triple_ranks.push_back({t, side, r.raw, r.filtered});
    }
  }

  const auto n = static_cast<double>(m.per_triple_ranks.size());
  double sum_raw = 0.0, sum_filtered = 0.0;
  for (const auto& e : m.per_triple_ranks) {
    sum_raw += e.raw_rank;
    sum_filtered += e.filtered_rank;
  }
  m.mean_rank_raw = sum_raw / n;
  m.mean_rank_filtered = sum_filtered / n;
  for (auto k : ks) {
    std::size_t raw = 0, filtered = 0;
    const auto kd = static_cast<double>(k);
    for (const auto& e : m.per_triple_ranks) {
      raw += e.raw_rank <= kd;
      filtered += e.filtered_rank <= kd;
    }
    m.hits_at_k_raw[k] = static_cast<double>(raw) / n;
    m.hits_at_k_filtered[k] = static_cast<double>(filtered) / n;
  }
  return m;
}

TripleSet known_triples(std::initializer_list<const IndexedKG*> graphs) {
  TripleSet out;
  for (const auto* g : graphs)
    for (const auto& t : g->triples()) out.insert(t);
  return out;
}

}  // namespace kgforge
