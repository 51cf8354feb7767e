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

#include "kgforge/synthetic.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "kgforge/error.hpp"
#include "kgforge/rng.hpp"

namespace kgforge {

namespace {

struct Pattern {
  const char* relation;
  std::vector<std::pair<std::size_t, std::size_t>> group_pairs;
};

const std::vector<Pattern>& patterns() {
  static const std::vector<Pattern> p = {
      {"adjacent_to", {{0, 1}, {2, 3}}},
      {"above", {{0, 2}, {1, 3}}},
      {"diagonal_to", {{0, 3}}},
      {"across", {{1, 2}}},
  };
  return p;
}

std::string entity_label(std::size_t group, std::size_t index) {
  return "g" + std::to_string(group) + "_e" + std::to_string(index);
}

}  // namespace

std::vector<Triple> synthetic_kg(const SyntheticSpec& spec) {
  const auto n = spec.entities_per_group;
  std::vector<Triple> admissible;
  for (const auto& pattern : patterns())
    for (const auto& [src, dst] : pattern.group_pairs)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          admissible.push_back({entity_label(src, i), pattern.relation, entity_label(dst, j)});

  if (spec.num_triples == 0 || spec.num_triples > admissible.size())
    throw Error("synthetic graph supports 1.." + std::to_string(admissible.size()) + " triples");

  Rng rng(spec.seed, Stream::kSynthetic);
  rng.shuffle(std::span(admissible));
  admissible.resize(spec.num_triples);
  std::sort(admissible.begin(), admissible.end());
  return admissible;
}

}  // namespace kgforge
