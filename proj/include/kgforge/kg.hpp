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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace kgforge {

using EntityId = std::uint32_t;
using RelationId = std::uint32_t;

/// A labelled fact (head, relation, tail).
struct Triple {
  std::string head;
  std::string relation;
  std::string tail;

  auto operator<=>(const Triple&) const = default;
};

/// A fact in ID space.
struct TripleIds {
  EntityId head = 0;
  RelationId relation = 0;
  EntityId tail = 0;

  auto operator<=>(const TripleIds&) const = default;
};

struct TripleIdsHash {
  std::size_t operator()(const TripleIds& t) const noexcept {
    std::uint64_t x = (std::uint64_t(t.head) << 32) | t.tail;
    x ^= std::uint64_t(t.relation) * 0x9E3779B97F4A7C15ULL;
    return std::hash<std::uint64_t>{}(x);
  }
};

using TripleSet = std::unordered_set<TripleIds, TripleIdsHash>;

/// Integer-indexed knowledge graph with its label dictionaries.
///
/// Entity IDs are 0..num_entities()-1 with no gaps, assigned in
/// lexicographic label order; likewise relations. Triples are unique and
/// kept sorted by (head, relation, tail) ID.
class IndexedKG {
 public:
  IndexedKG() = default;

  std::size_t num_entities() const { return entity_labels_.size(); }
  std::size_t num_relations() const { return relation_labels_.size(); }

  const std::vector<TripleIds>& triples() const { return triples_; }
  const std::vector<std::string>& entity_labels() const { return entity_labels_; }
  const std::vector<std::string>& relation_labels() const { return relation_labels_; }
  const std::map<std::string, EntityId>& entity_to_id() const { return entity_to_id_; }
  const std::map<std::string, RelationId>& relation_to_id() const { return relation_to_id_; }

  std::optional<EntityId> entity_id(const std::string& label) const;
  std::optional<RelationId> relation_id(const std::string& label) const;

  /// Maps labels to IDs. Throws kgforge::Error naming the unknown label.
  TripleIds to_ids(const Triple& t) const;
  Triple to_labels(const TripleIds& t) const;

  /// Same dictionaries, different triple list (deduplicated and sorted).
  IndexedKG with_triples(std::vector<TripleIds> triples) const;

  /// Rebuild from stored dictionaries; labels must already be sorted.
  static IndexedKG from_dictionaries(std::vector<std::string> entity_labels,
                                     std::vector<std::string> relation_labels,
                                     std::vector<TripleIds> triples);

  /// Number of input triples dropped as exact duplicates by build_index.
  std::size_t duplicates_removed() const { return duplicates_removed_; }

 private:
  friend IndexedKG build_index(std::span<const Triple> triples);

  void rebuild_maps();

  std::vector<std::string> entity_labels_;
  std::vector<std::string> relation_labels_;
  std::map<std::string, EntityId> entity_to_id_;
  std::map<std::string, RelationId> relation_to_id_;
  std::vector<TripleIds> triples_;
  std::size_t duplicates_removed_ = 0;
};

/// Index a labelled triple list. Throws kgforge::Error("empty knowledge
/// graph") on empty input and on empty labels.
IndexedKG build_index(std::span<const Triple> triples);

struct TrainTestSplit {
  IndexedKG train;
  IndexedKG test;
};

/// Seeded train/test split with coverage repair: test triples whose head,
/// tail or relation is absent from train are moved into train.
TrainTestSplit split(const IndexedKG& kg, double ratio, std::uint64_t seed);

}  // namespace kgforge
