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
#include <vector>

#include "kgforge/config.hpp"
#include "kgforge/kg.hpp"
#include "kgforge/loss.hpp"
#include "kgforge/models.hpp"
#include "kgforge/rng.hpp"

namespace kgforge {

struct TrainingHistory {
  std::vector<double> epoch_losses;
  std::size_t epochs_run = 0;
  double wall_seconds = 0.0;
};

/// Replace the head (probability 1/2) or the tail by an entity drawn
/// uniformly from all other entities. The relation is never corrupted.
TripleIds sample_negative(const TripleIds& pos, std::size_t num_entities, Rng& rng);

LossConfig loss_config(const ExperimentConfig& config);

struct TrainResult {
  ModelParams params;
  TrainingHistory history;
};

/// Continue SGD training from `params` for config.num_epochs epochs.
/// Negatives come from the corruption stream, batch order from the shuffle
/// stream, both seeded by config.seed. Throws DivergenceError naming the
/// epoch and batch when a loss or parameter becomes non-finite.
TrainingHistory train_params(const Model& model, ModelParams& params, const IndexedKG& kg_train,
                             const ExperimentConfig& config);

/// Initialise a built-in model from config.seed and train it.
TrainResult train(const IndexedKG& kg_train, const ExperimentConfig& config);

}  // namespace kgforge
