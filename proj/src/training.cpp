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

#include "kgforge/training.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "kgforge/error.hpp"
#include "kgforge/log.hpp"

namespace kgforge {

TripleIds sample_negative(const TripleIds& pos, std::size_t num_entities, Rng& rng) {
  if (num_entities < 2) throw Error("negative sampling needs at least 2 entities");
  TripleIds neg = pos;
  EntityId& slot = rng.coin() ? neg.head : neg.tail;
  // Uniform over the other num_entities - 1 entities.
  auto draw = static_cast<EntityId>(rng.below(num_entities - 1));
  if (draw >= slot) ++draw;
  slot = draw;
  return neg;
}

LossConfig loss_config(const ExperimentConfig& config) { return {config.loss, config.margin}; }

TrainingHistory train_params(const Model& model, ModelParams& params, const IndexedKG& kg_train,
                             const ExperimentConfig& config) {
  config.validate();
  const auto& triples = kg_train.triples();
  if (triples.empty()) throw Error("training set is empty");

  const auto started = std::chrono::steady_clock::now();
  const auto loss = loss_config(config);
  const auto batch_size = static_cast<std::size_t>(config.batch_size);
  const auto num_entities = params.dims.num_entities;
  Rng shuffle_rng(config.seed, Stream::kShuffle);
  Rng corruption_rng(config.seed, Stream::kCorruption);

  std::vector<std::size_t> order(triples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  TrainingHistory history;
  std::vector<TripleIds> pairs;
  std::vector<double> scores, coeffs;
  for (std::int64_t epoch = 0; epoch < config.num_epochs; ++epoch) {
    shuffle_rng.shuffle(std::span(order));
    double epoch_loss = 0.0;
    std::size_t batch_index = 0;
    for (std::size_t start = 0; start < order.size(); start += batch_size, ++batch_index) {
      const auto end = std::min(order.size(), start + batch_size);
      const auto n = end - start;

      // Layout: [pos_0, neg_0, pos_1, neg_1, ...]
      pairs.clear();
      for (std::size_t i = start; i < end; ++i) {
        const auto& pos = triples[order[i]];
        pairs.push_back(pos);
        pairs.push_back(sample_negative(pos, num_entities, corruption_rng));
      }
      scores.assign(pairs.size(), 0.0);
      model.score_batch(params, pairs, scores);

      coeffs.assign(pairs.size(), 0.0);
      double batch_loss = 0.0;
      const double inv_n = 1.0 / static_cast<double>(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double f_pos = scores[2 * i];
        const double f_neg = scores[2 * i + 1];
        if (loss.kind == LossKind::kMarginRanking) {
          const double l = margin_loss(f_pos, f_neg, loss.margin);
          batch_loss += l;
          if (loss.margin - f_pos + f_neg > 0.0) {
            coeffs[2 * i] = -inv_n;
            coeffs[2 * i + 1] = inv_n;
          }
        } else {
          batch_loss += bce_loss(f_pos, 1) + bce_loss(f_neg, 0);
          coeffs[2 * i] = (sigmoid(f_pos) - 1.0) * inv_n;
          coeffs[2 * i + 1] = sigmoid(f_neg) * inv_n;
        }
      }
      if (!std::isfinite(batch_loss)) {
        throw DivergenceError("non-finite loss at epoch " + std::to_string(epoch + 1) + ", batch " +
                              std::to_string(batch_index + 1));
      }
      epoch_loss += batch_loss;

      SparseGradient grad;
      model.grad_batch(params, pairs, coeffs, grad);
      grad.apply(params, -config.learning_rate);
      if (model.constraint_phase() == ConstraintPhase::kAfterBatch) apply_constraints(model, params);
    }
    if (model.constraint_phase() == ConstraintPhase::kAfterEpoch) apply_constraints(model, params);
    if (!params.all_finite())
      throw DivergenceError("non-finite parameters after epoch " + std::to_string(epoch + 1));

    history.epoch_losses.push_back(epoch_loss / static_cast<double>(order.size()));
    ++history.epochs_run;
    logger().debug("epoch {}: mean loss {}", epoch + 1, history.epoch_losses.back());
  }
  history.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return history;
}

TrainResult train(const IndexedKG& kg_train, const ExperimentConfig& config) {
  config.validate();
  auto model = make_model(config.model_name);
  const auto dims = dims_from_config(config, kg_train.num_entities(), kg_train.num_relations());
  TrainResult result{init_params(config.model_name, dims, config.seed), {}};
  result.history = train_params(*model, result.params, kg_train, config);
  logger().info("trained {} for {} epochs in {:.3f} s (final loss {})", model->name(),
                result.history.epochs_run, result.history.wall_seconds,
                result.history.epoch_losses.back());
  return result;
}

}  // namespace kgforge
