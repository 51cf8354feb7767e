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

// Independent reference implementations used by unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kgforge/evaluation.hpp"
#include "kgforge/kg.hpp"
#include "kgforge/models.hpp"
#include "kgforge/rng.hpp"

namespace kgforge::testing {

struct GradientMismatch {
  std::string tensor;
  std::size_t index = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  double rel_error = 0.0;
};

inline double relative_error(double a, double n) {
  return std::abs(a - n) / std::max({std::abs(a), std::abs(n), 1e-6});
}

/// Compare a dense copy of `analytic` against central differences of `f`
/// over every parameter. Returns the worst element.
inline GradientMismatch worst_gradient_error(ModelParams params, const SparseGradient& analytic,
                                             const std::function<double(const ModelParams&)>& f,
                                             double eps = 1e-5) {
  GradientMismatch worst;
  worst.rel_error = -1.0;
  for (std::size_t ti = 0; ti < params.tensors.size(); ++ti) {
    auto& tensor = params.tensors[ti];
    for (std::size_t k = 0; k < tensor.data.size(); ++k) {
      const std::size_t r = k / tensor.cols;
      const std::size_t c = k % tensor.cols;
      double a = 0.0;
      if (auto it = analytic.rows().find({ti, r}); it != analytic.rows().end()) a = it->second[c];
      const double saved = tensor.data[k];
      tensor.data[k] = saved + eps;
      const double up = f(params);
      tensor.data[k] = saved - eps;
      const double down = f(params);
      tensor.data[k] = saved;
      const double n = (up - down) / (2.0 * eps);
      const double err = relative_error(a, n);
      if (err > worst.rel_error) worst = {tensor.name, k, a, n, err};
    }
  }
  return worst;
}

/// Gradient of score(t) with coefficient 1 against finite differences.
inline GradientMismatch check_score_gradient(const Model& model, const ModelParams& params,
                                             const TripleIds& t, double eps = 1e-5) {
  SparseGradient g;
  const double one = 1.0;
  model.grad_batch(params, std::span(&t, 1), std::span(&one, 1), g);
  return worst_gradient_error(params, g, [&](const ModelParams& p) { return score(model, p, t); }, eps);
}

/// Random parameters with every element drawn from U[-1, 1].
inline ModelParams random_params(ModelKind kind, const ModelDims& dims, std::uint64_t seed) {
  auto params = init_params(kind, dims, seed);
  Rng rng(seed ^ 0x5EEDULL);
  for (auto& tensor : params.tensors)
    for (auto& v : tensor.data) v = rng.uniform(-1.0, 1.0);
  return params;
}

/// Exhaustive rank: scores every candidate one call at a time.
inline double oracle_rank(const Model& model, const ModelParams& params, const TripleIds& truth,
                          Side side, std::size_t num_entities, const TripleSet* filter) {
  const double s_true = score(model, params, truth);
  std::int64_t better = 0;
  std::int64_t tied = 0;
  for (EntityId e = 0; e < num_entities; ++e) {
    TripleIds c = truth;
    (side == Side::kHead ? c.head : c.tail) = e;
    if (c == truth) continue;
    if (filter != nullptr && filter->contains(c)) continue;
    const double s = score(model, params, c);
    if (s > s_true)
      ++better;
    else if (s == s_true)
      ++tied;
  }
  return 1.0 + static_cast<double>(better) + 0.5 * static_cast<double>(tied);
}

struct OracleMetrics {
  std::vector<double> raw;
  std::vector<double> filtered;
  double mean_raw = 0.0;
  double mean_filtered = 0.0;

  double hits(const std::vector<double>& ranks, std::int64_t k) const {
    std::size_t n = 0;
    for (double r : ranks)
      if (r <= static_cast<double>(k)) ++n;
    return static_cast<double>(n) / static_cast<double>(ranks.size());
  }
};

inline OracleMetrics oracle_evaluate(const Model& model, const ModelParams& params,
                                     std::span<const TripleIds> test, const TripleSet& known) {
  OracleMetrics m;
  for (const auto& t : test) {
    for (Side side : {Side::kHead, Side::kTail}) {
      m.raw.push_back(oracle_rank(model, params, t, side, params.dims.num_entities, nullptr));
      m.filtered.push_back(oracle_rank(model, params, t, side, params.dims.num_entities, &known));
    }
  }
  double sr = 0.0, sf = 0.0;
  for (std::size_t i = 0; i < m.raw.size(); ++i) {
    sr += m.raw[i];
    sf += m.filtered[i];
  }
  m.mean_raw = sr / static_cast<double>(m.raw.size());
  m.mean_filtered = sf / static_cast<double>(m.filtered.size());
  return m;
}

/// Pearson chi-square statistic of observed counts against a uniform law.
inline double chi_square_uniform(std::span<const std::size_t> counts) {
  std::size_t total = 0;
  for (auto c : counts) total += c;
  const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
  double chi = 0.0;
  for (auto c : counts) chi += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
  return chi;
}

}  // namespace kgforge::testing
