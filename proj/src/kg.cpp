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

#include "kgforge/kg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kgforge/error.hpp"
#include "kgforge/log.hpp"
#include "kgforge/rng.hpp"

namespace kgforge {

std::optional<EntityId> IndexedKG::entity_id(const std::string& label) const {
  auto it = entity_to_id_.find(label);
  if (it == entity_to_id_.end()) return std::nullopt;
  return it->second;
}

std::optional<RelationId> IndexedKG::relation_id(const std::string& label) const {
  auto it = relation_to_id_.find(label);
  if (it == relation_to_id_.end()) return std::nullopt;
  return it->second;
}

TripleIds IndexedKG::to_ids(const Triple& t) const {
  auto h = entity_id(t.head);
  if (!h) throw Error("unknown entity '" + t.head + "'");
  auto r = relation_id(t.relation);
  if (!r) throw Error("unknown relation '" + t.relation + "'");
  auto tl = entity_id(t.tail);
  if (!tl) throw Error("unknown entity '" + t.tail + "'");
  return {*h, *r, *tl};
}

Triple IndexedKG::to_labels(const TripleIds& t) const {
  return {entity_labels_.at(t.head), relation_labels_.at(t.relation),
          entity_labels_.at(t.tail)};
}

IndexedKG IndexedKG::with_triples(std::vector<TripleIds> triples) const {
  IndexedKG out;
  out.entity_labels_ = entity_labels_;
  out.relation_labels_ = relation_labels_;
  out.entity_to_id_ = entity_to_id_;
  out.relation_to_id_ = relation_to_id_;
  std::sort(triples.begin(), triples.end());
  triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
  for (const auto& t : triples) {
    if (t.head >= out.num_entities() || t.tail >= out.num_entities() ||
        t.relation >= out.num_relations()) {
      throw Error("triple ID out of range");
    }
  }
  out.triples_ = std::move(triples);
  return out;
}

IndexedKG IndexedKG::from_dictionaries(std::vector<std::string> entity_labels,
                                       std::vector<std::string> relation_labels,
                                       std::vector<TripleIds> triples) {
  IndexedKG base;
  base.entity_labels_ = std::move(entity_labels);
  base.relation_labels_ = std::move(relation_labels);
  base.rebuild_maps();
  if (base.entity_to_id_.size() != base.entity_labels_.size() ||
      base.relation_to_id_.size() != base.relation_labels_.size()) {
    throw Error("duplicate label in dictionary");
  }
  return base.with_triples(std::move(triples));
}

void IndexedKG::rebuild_maps() {
  entity_to_id_.clear();
  relation_to_id_.clear();
  for (std::size_t i = 0; i < entity_labels_.size(); ++i)
    entity_to_id_.emplace(entity_labels_[i], static_cast<EntityId>(i));
  for (std::size_t i = 0; i < relation_labels_.size(); ++i)
    relation_to_id_.emplace(relation_labels_[i], static_cast<RelationId>(i));
}

IndexedKG build_index(std::span<const Triple> triples) {
  if (triples.empty()) throw Error("empty knowledge graph");

  IndexedKG kg;
  for (const auto& t : triples) {
    if (t.head.empty() || t.relation.empty() || t.tail.empty())
      throw Error("triple with empty label");
    kg.entity_labels_.push_back(t.head);
    kg.entity_labels_.push_back(t.tail);
    kg.relation_labels_.push_back(t.relation);
  }
  for (auto* labels : {&kg.entity_labels_, &kg.relation_labels_}) {
    std::sort(labels->begin(), labels->end());
    labels->erase(std::unique(labels->begin(), labels->end()), labels->end());
  }
  kg.rebuild_maps();

  std::vector<TripleIds> ids;
  ids.reserve(triples.size());
  for (const auto& t : triples) ids.push_back(kg.to_ids(t));
  std::sort(ids.begin(), ids.end());
  const auto before = ids.size();
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  kg.duplicates_removed_ = before - ids.size();
  if (kg.duplicates_removed_ > 0)
    logger().warn("removed {} duplicate triples", kg.duplicates_removed_);
  kg.triples_ = std::move(ids);
  return kg;
}

TrainTestSplit split(const IndexedKG& kg, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw Error("split ratio must lie in (0, 1)");
  const auto& all = kg.triples();
  if (all.size() < 2) throw Error("degenerate split");

  std::vector<std::size_t> order(all.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed, Stream::kSplit);
  rng.shuffle(std::span(order));

  const auto n_train = static_cast<std::size_t>(
      std::llround(ratio * static_cast<double>(all.size())));

  std::vector<char> in_train(all.size(), 0);
  std::vector<char> entity_seen(kg.num_entities(), 0);
  std::vector<char> relation_seen(kg.num_relations(), 0);
  auto take = [&](std::size_t idx) {
    in_train[idx] = 1;
    entity_seen[all[idx].head] = 1;
    entity_seen[all[idx].tail] = 1;
    relation_seen[all[idx].relation] = 1;
  };
  for (std::size_t i = 0; i < std::min(n_train, order.size()); ++i) take(order[i]);

  // Coverage only grows, so a single ordered pass reaches the fixpoint.
  std::size_t repaired = 0;
  for (std::size_t i = n_train; i < order.size(); ++i) {
    const auto& t = all[order[i]];
    if (!entity_seen[t.head] || !entity_seen[t.tail] || !relation_seen[t.relation]) {
      take(order[i]);
      ++repaired;
    }
  }
  if (repaired > 0) logger().debug("split moved {} test triples into train", repaired);

  std::vector<TripleIds> train, test;
  for (std::size_t i = 0; i < all.size(); ++i)
    (in_train[i] ? train : test).push_back(all[i]);
  if (train.empty() || test.empty()) throw Error("degenerate split");
  return {kg.with_triples(std::move(train)), kg.with_triples(std::move(test))};
}

}  // namespace kgforge
