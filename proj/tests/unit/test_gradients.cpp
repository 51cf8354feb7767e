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

#include <doctest.h>

#include <cmath>
#include <set>

#include "kgforge/loss.hpp"
#include "kgforge/models.hpp"
#include "oracles.hpp"

using namespace kgforge;

namespace {

ModelDims toy_dims(ModelKind kind, int norm) {
  ModelDims d{5, 3, 4, 4, 4, norm};
  if (kind == ModelKind::kTransR || kind == ModelKind::kTransD) d.relation_dim = 3;
  if (kind == ModelKind::kERMLP) d.hidden_dim = 5;
  return d;
}

TripleIds random_triple(Rng& rng) {
  return {static_cast<EntityId>(rng.below(5)), static_cast<RelationId>(rng.below(3)),
          static_cast<EntityId>(rng.below(5))};
}

}  // namespace

TEST_CASE("score gradients match central differences") {
  for (auto kind : kAllModels) {
    for (int norm : {1, 2}) {
      auto model = make_model(kind);
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto params = testing::random_params(kind, toy_dims(kind, norm), seed);
        Rng rng(seed + 100);
        const auto t = random_triple(rng);
        const auto worst = testing::check_score_gradient(*model, params, t);
        INFO(to_string(kind), " norm ", norm, " seed ", seed, " tensor ", worst.tensor, "[", worst.index,
             "] analytic ", worst.analytic, " numeric ", worst.numeric);
        CHECK(worst.rel_error < 1e-4);
      }
    }
  }
}

TEST_CASE("loss gradients match central differences") {
  for (auto kind : kAllModels) {
    auto model = make_model(kind);
    for (auto loss_kind : {LossKind::kMarginRanking, LossKind::kBinaryCrossEntropy}) {
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto params = testing::random_params(kind, toy_dims(kind, 2), seed);
        Rng rng(seed + 7);
        const auto pos = random_triple(rng);
        auto neg = pos;
        neg.tail = static_cast<EntityId>((pos.tail + 1 + rng.below(4)) % 5);
        // Margin chosen so the hinge is active with a loss near 1.
        const double gap = score(*model, params, pos) - score(*model, params, neg);
        const LossConfig loss{loss_kind, std::max(gap + 1.0, 1.0)};
        const auto g = grad_loss(*model, params, pos, neg, loss);
        const auto worst = testing::worst_gradient_error(
            params, g, [&](const ModelParams& p) { return pair_loss(*model, p, pos, neg, loss); });
        INFO(to_string(kind), " ", to_string(loss_kind), " seed ", seed, " tensor ", worst.tensor);
        CHECK(worst.rel_error < 1e-4);
      }
    }
  }
}

TEST_CASE("inactive hinge gives an empty gradient") {
  for (auto kind : kAllModels) {
    auto model = make_model(kind);
    const auto params = testing::random_params(kind, toy_dims(kind, 1), 3);
    const TripleIds pos{0, 1, 2}, neg{0, 1, 3};
    const double gap = score(*model, params, pos) - score(*model, params, neg);
    // Choose a margin the pair already satisfies, or swap the pair.
    const bool swap = gap < 0.0;
    const LossConfig loss{LossKind::kMarginRanking, std::abs(gap) / 2.0};
    const auto g = swap ? grad_loss(*model, params, neg, pos, loss) : grad_loss(*model, params, pos, neg, loss);
    CHECK(g.empty());
    CHECK((swap ? pair_loss(*model, params, neg, pos, loss) : pair_loss(*model, params, pos, neg, loss)) == 0.0);
  }
}

TEST_CASE("gradients touch only rows used by the pair") {
  for (auto kind : kAllModels) {
    auto model = make_model(kind);
    const auto params = testing::random_params(kind, toy_dims(kind, 2), 5);
    const TripleIds pos{0, 1, 2}, neg{0, 1, 4};
    const auto g = grad_loss(*model, params, pos, neg, {LossKind::kBinaryCrossEntropy, 0.0});
    const std::set<std::string> per_entity{"entity_embeddings", "entity_projections"};
    for (const auto& [key, values] : g.rows()) {
      const auto& name = params.tensors[key.first].name;
      if (per_entity.contains(name)) {
        CHECK((key.second == 0 || key.second == 2 || key.second == 4));
      } else if (!name.starts_with("mlp_")) {
        CHECK(key.second == 1);
      }
    }
    CHECK_FALSE(g.contains(0, 3));
  }
}

TEST_CASE("DistMult BCE gradient matches the symbolic form") {
  auto model = make_model(ModelKind::kDistMult);
  auto p = init_params(ModelKind::kDistMult, {2, 1, 2, 2, 2, 1}, 0);
  std::vector<double> h{0.3, -0.7}, r{1.2, 0.4}, t{-0.5, 0.9};
  std::copy(h.begin(), h.end(), p.at("entity_embeddings").row(0).begin());
  std::copy(t.begin(), t.end(), p.at("entity_embeddings").row(1).begin());
  std::copy(r.begin(), r.end(), p.at("relation_embeddings").row(0).begin());

  const double s = h[0] * r[0] * t[0] + h[1] * r[1] * t[1];
  const double coeff = 1.0 / (1.0 + std::exp(-s)) - 1.0;  // d/ds of -log sigma(s)
  SparseGradient g;
  const TripleIds pos{0, 0, 1};
  const double c = coeff;
  model->grad_batch(p, std::span(&pos, 1), std::span(&c, 1), g);
  const auto& head = g.rows().at({0, 0});
  for (int i = 0; i < 2; ++i) CHECK(head[i] == doctest::Approx(coeff * r[i] * t[i]).epsilon(1e-14));
  CHECK(bce_loss(s, 1) == doctest::Approx(-std::log(1.0 / (1.0 + std::exp(-s)))));
}
