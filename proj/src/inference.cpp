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

#include "kgforge/inference.hpp"

#include <algorithm>
#include <fstream>

#include <fmt/format.h>

#include "kgforge/error.hpp"

namespace kgforge {

std::vector<double> predict(const Model& model, const ModelParams& params,
                            std::span<const TripleIds> triples) {
  for (std::size_t i = 0; i < triples.size(); ++i) {
    try {
      check_in_range(params, triples[i]);
    } catch (const Error& e) {
      throw Error("triple at position " + std::to_string(i) + ": " + e.what());
    }
  }
  std::vector<double> scores(triples.size());
  if (!triples.empty()) model.score_batch(params, triples, scores);
  return scores;
}

std::vector<TripleIds> enumerate_candidates(std::span<const EntityId> entities,
                                            std::span<const RelationId> relations,
                                            const TripleSet& exclude, bool exclude_reflexive) {
  std::vector<EntityId> ents(entities.begin(), entities.end());
  std::vector<RelationId> rels(relations.begin(), relations.end());
  for (auto* v : {&ents, &rels}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  std::vector<TripleIds> out;
  out.reserve(ents.size() * ents.size() * rels.size());
  for (auto h : ents)
    for (auto r : rels)
      for (auto t : ents) {
        if (exclude_reflexive && h == t) continue;
        const TripleIds c{h, r, t};
        if (!exclude.contains(c)) out.push_back(c);
      }
  return out;
}

std::vector<ScoredTriple> rank_candidates(const Model& model, const ModelParams& params,
                                          std::span<const TripleIds> candidates) {
  const auto scores = predict(model, params, candidates);
  std::vector<ScoredTriple> out(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) out[i] = {candidates[i], scores[i]};
  std::sort(out.begin(), out.end(), [](const ScoredTriple& a, const ScoredTriple& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.triple < b.triple;
  });
  return out;
}

std::vector<LabelledPrediction> to_labels(const IndexedKG& kg, std::span<const ScoredTriple> ranked) {
  std::vector<LabelledPrediction> out;
  out.reserve(ranked.size());
  for (const auto& s : ranked) out.push_back({kg.to_labels(s.triple), s.score});
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
    out.flush();
    if (!out) throw Error("cannot write " + path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot write " + path.string() + ": " + ec.message());
  }
}

void write_predictions(const std::filesystem::path& path, std::span<const LabelledPrediction> ranked) {
  std::string text;
  for (const auto& p : ranked)
    text += fmt::format("{}\t{}\t{}\t{:.6g}\n", p.triple.head, p.triple.relation, p.triple.tail, p.score);
  write_file_atomic(path, text);
}

void write_triples(const std::filesystem::path& path, std::span<const Triple> triples) {
  std::string text;
  for (const auto& t : triples) text += t.head + '\t' + t.relation + '\t' + t.tail + '\n';
  write_file_atomic(path, text);
}

}  // namespace kgforge
