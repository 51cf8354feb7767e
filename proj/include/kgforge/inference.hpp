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

#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "kgforge/kg.hpp"
#include "kgforge/models.hpp"

namespace kgforge {

/// Scores aligned with the input. An out-of-range ID raises an error naming
/// its position.
std::vector<double> predict(const Model& model, const ModelParams& params,
                            std::span<const TripleIds> triples);

/// Every (h, r, t) over the given sets in lexicographic ID order, minus
/// `exclude` and, when requested, minus h == t.
std::vector<TripleIds> enumerate_candidates(std::span<const EntityId> entities,
                                            std::span<const RelationId> relations,
                                            const TripleSet& exclude, bool exclude_reflexive);

struct ScoredTriple {
  TripleIds triple;
  double score = 0.0;
};

/// Descending by score; equal scores fall back to ID order.
std::vector<ScoredTriple> rank_candidates(const Model& model, const ModelParams& params,
                                          std::span<const TripleIds> candidates);

struct LabelledPrediction {
  Triple triple;
  double score = 0.0;
};

std::vector<LabelledPrediction> to_labels(const IndexedKG& kg, std::span<const ScoredTriple> ranked);

/// "head\trelation\ttail\tscore" per line, score with 6 significant digits.
void write_predictions(const std::filesystem::path& path, std::span<const LabelledPrediction> ranked);

/// Three-column TSV, readable by ingest::read_tsv.
void write_triples(const std::filesystem::path& path, std::span<const Triple> triples);

/// Writes `content` to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace kgforge
