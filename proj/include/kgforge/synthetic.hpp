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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "kgforge/kg.hpp"

namespace kgforge {

/// Seeded benchmark graph with planted group structure.
///
/// 40 entities "g<group>_e<index>" in 4 groups of 10. Group centroids behave
/// like the corners of a parallelogram, and each relation links every member
/// of a source group to every member of a target group:
///
///   adjacent_to  g0 -> g1, g2 -> g3
///   above        g0 -> g2, g1 -> g3
///   diagonal_to  g0 -> g3
///   across       g1 -> g2
///
/// That gives 600 admissible triples, of which `num_triples` are drawn
/// uniformly without replacement. Every pattern is a consistent translation,
/// so a translational model can recover it exactly.
struct SyntheticSpec {
  std::size_t entities_per_group = 10;
  std::size_t num_triples = 400;
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kSyntheticGroups = 4;

std::vector<Triple> synthetic_kg(const SyntheticSpec& spec);

}  // namespace kgforge
