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

#include <algorithm>
#include <cmath>

#include "kgforge/config.hpp"

namespace kgforge {

struct LossConfig {
  LossKind kind = LossKind::kMarginRanking;
  double margin = 1.0;
};

/// max(0, margin - f_pos + f_neg); higher scores are more plausible.
inline double margin_loss(double f_pos, double f_neg, double margin) {
  return std::max(0.0, margin - f_pos + f_neg);
}

/// log(1 + exp(x)) without overflow.
inline double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

inline double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

/// Binary cross entropy of sigmoid(score) against a 0/1 label.
/// -log sigmoid(s) = softplus(-s), -log(1 - sigmoid(s)) = softplus(s).
inline double bce_loss(double score, int label) {
  return label != 0 ? softplus(-score) : softplus(score);
}

}  // namespace kgforge
