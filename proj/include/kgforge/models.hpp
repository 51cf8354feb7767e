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
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kgforge/config.hpp"
#include "kgforge/kg.hpp"
#include "kgforge/loss.hpp"

namespace kgforge {

/// Dense row-major parameter block. Row i is one entity, one relation, or
/// (for single-block tensors such as MLP weights) one output unit.
struct Tensor {
  std::string name;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }

  bool operator==(const Tensor&) const = default;
};

/// Shape information that fixes a model's parameter layout.
struct ModelDims {
  std::size_t num_entities = 0;
  std::size_t num_relations = 0;
  std::size_t embedding_dim = 0;
  std::size_t relation_dim = 0;
  std::size_t hidden_dim = 0;
  /// p of the L_p distance used by TransE and SE (1 or 2).
  int scoring_norm = 1;

  bool operator==(const ModelDims&) const = default;
};

ModelDims dims_from_config(const ExperimentConfig& config, std::size_t num_entities,
                           std::size_t num_relations);

/// All trainable state of one model.
struct ModelParams {
  std::string model_name;
  ModelDims dims;
  std::vector<Tensor> tensors;

  Tensor& at(std::string_view name);
  const Tensor& at(std::string_view name) const;
  const Tensor* find(std::string_view name) const;

  bool all_finite() const;

  bool operator==(const ModelParams&) const = default;
};

/// Sparse gradient keyed by (tensor index, row). Rows that no triple touched
/// are absent. Iteration order is deterministic.
class SparseGradient {
 public:
  using Key = std::pair<std::size_t, std::size_t>;

  /// Accumulator for one row, zero-initialised on first access.
  std::span<double> row(std::size_t tensor, std::size_t row, std::size_t cols);

  bool empty() const { return rows_.empty(); }
  std::size_t size() const { return rows_.size(); }
  const std::map<Key, std::vector<double>>& rows() const { return rows_; }
  bool contains(std::size_t tensor, std::size_t row) const { return rows_.contains({tensor, row}); }

  void scale(double factor);
  /// params += step * gradient.
  void apply(ModelParams& params, double step) const;

 private:
  std::map<Key, std::vector<double>> rows_;
};

enum class ConstraintPhase { kNone, kAfterBatch, kAfterEpoch };

struct ConstraintReport {
  /// Rows left unchanged because they had zero norm.
  std::size_t degenerate_rows = 0;
};

/// Model contract. Anything implementing score_batch and grad_batch can be
/// trained, evaluated and used for inference.
///
/// Scores follow one convention: higher means more plausible. Distance
/// models return a negated distance.
class Model {
 public:
  virtual ~Model() = default;

  virtual std::string_view name() const = 0;

  /// out[i] = score(triples[i]).
  virtual void score_batch(const ModelParams& params, std::span<const TripleIds> triples,
                           std::span<double> out) const = 0;

  /// grad += sum_i coeffs[i] * d score(triples[i]) / d params.
  virtual void grad_batch(const ModelParams& params, std::span<const TripleIds> triples,
                          std::span<const double> coeffs, SparseGradient& grad) const = 0;

  virtual ConstraintPhase constraint_phase() const { return ConstraintPhase::kNone; }
  virtual ConstraintReport enforce_constraints(ModelParams&) const { return {}; }
};

std::unique_ptr<Model> make_model(ModelKind kind);
/// Looks up a built-in model by its configuration name.
std::unique_ptr<Model> make_model(std::string_view name);

struct InitOptions {
  /// Half-width of the uniform noise added to identity-initialised matrices.
  double matrix_noise = 0.1;
};

/// Seeded initialisation. Embedding rows ~ U[-6/sqrt(d), 6/sqrt(d)], relation
/// embeddings L2-normalised once, square or rectangular matrices identity
/// plus noise, MLP weights ~ U[-1/sqrt(fan_in), 1/sqrt(fan_in)].
ModelParams init_params(ModelKind kind, const ModelDims& dims, std::uint64_t seed,
                        const InitOptions& options = {});

/// Tensor names of a built-in model in storage order.
std::vector<std::string> tensor_names(ModelKind kind);

/// Throws kgforge::Error when an ID lies outside params.dims.
void check_in_range(const ModelParams& params, const TripleIds& t);

double score(const Model& model, const ModelParams& params, const TripleIds& t);

/// Gradient of the loss for one (positive, negative) pair. Margin ranking
/// uses max(0, margin - f(pos) + f(neg)); binary cross entropy sums the
/// positive (label 1) and negative (label 0) terms.
SparseGradient grad_loss(const Model& model, const ModelParams& params, const TripleIds& pos,
                         const TripleIds& neg, const LossConfig& loss);

/// Loss value matching grad_loss.
double pair_loss(const Model& model, const ModelParams& params, const TripleIds& pos,
                 const TripleIds& neg, const LossConfig& loss);

/// Enforce the model's norm constraints regardless of schedule.
ConstraintReport apply_constraints(const Model& model, ModelParams& params);

/// Built-in row-level constraint helpers. Both leave zero rows unchanged.
bool normalize_row(std::span<double> row);
bool project_to_unit_ball(std::span<double> row);

}  // namespace kgforge
