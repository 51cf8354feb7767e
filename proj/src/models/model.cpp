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

#include <cmath>

#include "builtin.hpp"
#include "kgforge/error.hpp"
#include "kgforge/log.hpp"
#include "kgforge/rng.hpp"

namespace kgforge {

using detail::InitKind;
using detail::TensorSpec;

ModelDims dims_from_config(const ExperimentConfig& config, std::size_t num_entities,
                           std::size_t num_relations) {
  ModelDims dims;
  dims.num_entities = num_entities;
  dims.num_relations = num_relations;
  dims.embedding_dim = static_cast<std::size_t>(config.embedding_dim);
  dims.relation_dim = static_cast<std::size_t>(config.relation_dim());
  dims.hidden_dim = static_cast<std::size_t>(config.hidden_dim());
  dims.scoring_norm = config.scoring_norm();
  // Only TransR and TransD project into a separate relation space.
  if (config.model_name != ModelKind::kTransR && config.model_name != ModelKind::kTransD)
    dims.relation_dim = dims.embedding_dim;
  return dims;
}

Tensor& ModelParams::at(std::string_view name) {
  for (auto& t : tensors)
    if (t.name == name) return t;
  throw Error("model " + model_name + " has no tensor '" + std::string(name) + "'");
}

const Tensor& ModelParams::at(std::string_view name) const {
  return const_cast<ModelParams*>(this)->at(name);
}

const Tensor* ModelParams::find(std::string_view name) const {
  for (const auto& t : tensors)
    if (t.name == name) return &t;
  return nullptr;
}

bool ModelParams::all_finite() const {
  for (const auto& t : tensors)
    for (double x : t.data)
      if (!std::isfinite(x)) return false;
  return true;
}

std::span<double> SparseGradient::row(std::size_t tensor, std::size_t row, std::size_t cols) {
  auto [it, inserted] = rows_.try_emplace({tensor, row});
  if (inserted) it->second.assign(cols, 0.0);
  return it->second;
}

void SparseGradient::scale(double factor) {
  for (auto& [key, values] : rows_)
    for (double& v : values) v *= factor;
}

void SparseGradient::apply(ModelParams& params, double step) const {
  for (const auto& [key, values] : rows_) {
    auto target = params.tensors.at(key.first).row(key.second);
    for (std::size_t i = 0; i < values.size(); ++i) target[i] += step * values[i];
  }
}

namespace detail {

std::vector<TensorSpec> tensor_layout(ModelKind kind, const ModelDims& dims) {
  const auto ne = dims.num_entities;
  const auto nr = dims.num_relations;
  const auto d = dims.embedding_dim;
  const auto dr = dims.relation_dim;
  const auto h = dims.hidden_dim;
  const TensorSpec entities{"entity_embeddings", ne, d, InitKind::kEmbedding};
  switch (kind) {
    case ModelKind::kTransE:
    case ModelKind::kDistMult:
      return {entities, {"relation_embeddings", nr, d, InitKind::kNormalizedEmbedding}};
    case ModelKind::kTransH:
      return {entities,
              {"relation_embeddings", nr, d, InitKind::kNormalizedEmbedding},
              {"normal_vectors", nr, d, InitKind::kEmbedding}};
    case ModelKind::kTransR:
      return {entities,
              {"relation_embeddings", nr, dr, InitKind::kNormalizedEmbedding},
              {"projection_matrices", nr, dr * d, InitKind::kIdentityPlusNoise, dr, d}};
    case ModelKind::kTransD:
      return {entities,
              {"relation_embeddings", nr, dr, InitKind::kNormalizedEmbedding},
              {"entity_projections", ne, d, InitKind::kEmbedding},
              {"relation_projections", nr, dr, InitKind::kEmbedding}};
    case ModelKind::kUM:
      return {entities};
    case ModelKind::kSE:
      return {entities,
              {"head_projections", nr, d * d, InitKind::kIdentityPlusNoise, d, d},
              {"tail_projections", nr, d * d, InitKind::kIdentityPlusNoise, d, d}};
    case ModelKind::kRESCAL:
      return {entities, {"relation_matrices", nr, d * d, InitKind::kIdentityPlusNoise, d, d}};
    case ModelKind::kERMLP:
      return {entities,
              {"relation_embeddings", nr, d, InitKind::kNormalizedEmbedding},
              {"mlp_hidden_weights", h, 3 * d, InitKind::kFanIn, 0, 0, 3 * d},
              {"mlp_hidden_bias", 1, h, InitKind::kFanIn, 0, 0, 3 * d},
              {"mlp_output_weights", 1, h, InitKind::kFanIn, 0, 0, h}};
  }
  throw Error("unknown model kind");
}

DistanceTerm distance_score(const Eigen::VectorXd& v, Distance kind) {
  DistanceTerm out{0.0, Eigen::VectorXd::Zero(v.size())};
  switch (kind) {
    case Distance::kL1:
      out.score = -v.cwiseAbs().sum();
      for (Eigen::Index i = 0; i < v.size(); ++i)
        out.dscore[i] = v[i] > 0.0 ? -1.0 : (v[i] < 0.0 ? 1.0 : 0.0);
      break;
    case Distance::kL2: {
      const double n = v.norm();
      out.score = -n;
      if (n > 0.0) out.dscore = -v / n;
      break;
    }
    case Distance::kSquaredL2:
      out.score = -v.squaredNorm();
      out.dscore = -2.0 * v;
      break;
  }
  return out;
}

void BuiltinModel::score_batch(const ModelParams& params, std::span<const TripleIds> triples,
                               std::span<double> out) const {
  if (out.size() != triples.size()) throw Error("score_batch: output size mismatch");
  for (std::size_t i = 0; i < triples.size(); ++i) {
    check_in_range(params, triples[i]);
    out[i] = score_one(params, triples[i]);
  }
}

void BuiltinModel::grad_batch(const ModelParams& params, std::span<const TripleIds> triples,
                              std::span<const double> coeffs, SparseGradient& grad) const {
  if (coeffs.size() != triples.size()) throw Error("grad_batch: coefficient size mismatch");
  for (std::size_t i = 0; i < triples.size(); ++i) {
    check_in_range(params, triples[i]);
    if (coeffs[i] != 0.0) add_gradient(params, triples[i], coeffs[i], grad);
  }
}

}  // namespace detail

std::unique_ptr<Model> make_model(ModelKind kind) {
  switch (kind) {
    case ModelKind::kTransE: return detail::make_transe();
    case ModelKind::kTransH: return detail::make_transh();
    case ModelKind::kTransR: return detail::make_transr();
    case ModelKind::kTransD: return detail::make_transd();
    case ModelKind::kUM: return detail::make_um();
    case ModelKind::kSE: return detail::make_se();
    case ModelKind::kRESCAL: return detail::make_rescal();
    case ModelKind::kDistMult: return detail::make_distmult();
    case ModelKind::kERMLP: return detail::make_ermlp();
  }
  throw Error("unknown model kind");
}

std::unique_ptr<Model> make_model(std::string_view name) { return make_model(parse_model_kind(name)); }

ModelParams init_params(ModelKind kind, const ModelDims& dims, std::uint64_t seed,
                        const InitOptions& options) {
  if (dims.num_entities == 0 || dims.num_relations == 0)
    throw Error("cannot initialise a model without entities and relations");
  if (dims.embedding_dim == 0 || dims.relation_dim == 0 || dims.hidden_dim == 0)
    throw Error("model dimensions must be positive");

  Rng rng(seed, Stream::kInit);
  ModelParams params;
  params.model_name = std::string(to_string(kind));
  params.dims = dims;
  for (const auto& spec : detail::tensor_layout(kind, dims)) {
    Tensor t{spec.name, spec.rows, spec.cols, std::vector<double>(spec.rows * spec.cols)};
    switch (spec.init) {
      case InitKind::kEmbedding:
      case InitKind::kNormalizedEmbedding: {
        const double bound = 6.0 / std::sqrt(static_cast<double>(spec.cols));
        for (double& x : t.data) x = rng.uniform(-bound, bound);
        if (spec.init == InitKind::kNormalizedEmbedding)
          for (std::size_t i = 0; i < t.rows; ++i) normalize_row(t.row(i));
        break;
      }
      case InitKind::kIdentityPlusNoise:
        for (std::size_t i = 0; i < t.rows; ++i) {
          auto row = t.row(i);
          for (std::size_t a = 0; a < spec.mat_rows; ++a)
            for (std::size_t b = 0; b < spec.mat_cols; ++b) {
              const double noise =
                  options.matrix_noise == 0.0 ? 0.0 : rng.uniform(-options.matrix_noise, options.matrix_noise);
              row[a * spec.mat_cols + b] = (a == b ? 1.0 : 0.0) + noise;
            }
        }
        break;
      case InitKind::kFanIn: {
        const double bound = 1.0 / std::sqrt(static_cast<double>(spec.fan_in));
        for (double& x : t.data) x = rng.uniform(-bound, bound);
        break;
      }
    }
    params.tensors.push_back(std::move(t));
  }
  return params;
}

std::vector<std::string> tensor_names(ModelKind kind) {
  std::vector<std::string> out;
  for (const auto& spec : detail::tensor_layout(kind, ModelDims{1, 1, 1, 1, 1, 1}))
    out.push_back(spec.name);
  return out;
}

void check_in_range(const ModelParams& params, const TripleIds& t) {
  if (t.head >= params.dims.num_entities || t.tail >= params.dims.num_entities)
    throw Error("entity ID out of range (" + std::to_string(std::max(t.head, t.tail)) +
                " >= " + std::to_string(params.dims.num_entities) + ")");
  if (t.relation >= params.dims.num_relations)
    throw Error("relation ID out of range (" + std::to_string(t.relation) +
                " >= " + std::to_string(params.dims.num_relations) + ")");
}

double score(const Model& model, const ModelParams& params, const TripleIds& t) {
  double out = 0.0;
  model.score_batch(params, std::span(&t, 1), std::span(&out, 1));
  return out;
}

double pair_loss(const Model& model, const ModelParams& params, const TripleIds& pos,
                 const TripleIds& neg, const LossConfig& loss) {
  const TripleIds pair[2] = {pos, neg};
  double s[2];
  model.score_batch(params, pair, s);
  if (loss.kind == LossKind::kMarginRanking) return margin_loss(s[0], s[1], loss.margin);
  return bce_loss(s[0], 1) + bce_loss(s[1], 0);
}

SparseGradient grad_loss(const Model& model, const ModelParams& params, const TripleIds& pos,
                         const TripleIds& neg, const LossConfig& loss) {
  const TripleIds pair[2] = {pos, neg};
  double s[2];
  model.score_batch(params, pair, s);
  double coeffs[2] = {0.0, 0.0};
  if (loss.kind == LossKind::kMarginRanking) {
    if (loss.margin - s[0] + s[1] > 0.0) {
      coeffs[0] = -1.0;
      coeffs[1] = 1.0;
    }
  } else {
    // d/ds softplus(-s) = sigmoid(s) - 1, d/ds softplus(s) = sigmoid(s)
    coeffs[0] = sigmoid(s[0]) - 1.0;
    coeffs[1] = sigmoid(s[1]);
  }
  SparseGradient grad;
  model.grad_batch(params, pair, coeffs, grad);
  return grad;
}

ConstraintReport apply_constraints(const Model& model, ModelParams& params) {
  auto report = model.enforce_constraints(params);
  if (report.degenerate_rows > 0)
    logger().warn("{}: {} zero-norm rows left unnormalised", model.name(), report.degenerate_rows);
  return report;
}

namespace {
// Rows within this distance of the unit sphere count as normalised, which
// makes repeated constraint application exact no-ops.
constexpr double kNormSlack = 1e-12;
}  // namespace

bool normalize_row(std::span<double> row) {
  double sq = 0.0;
  for (double x : row) sq += x * x;
  if (sq == 0.0) return false;
  if (std::abs(sq - 1.0) <= kNormSlack) return true;
  const double n = std::sqrt(sq);
  for (double& x : row) x /= n;
  return true;
}

bool project_to_unit_ball(std::span<double> row) {
  double sq = 0.0;
  for (double x : row) sq += x * x;
  if (sq == 0.0) return false;
  if (sq > 1.0 + kNormSlack) {
    const double n = std::sqrt(sq);
    for (double& x : row) x /= n;
  }
  return true;
}

}  // namespace kgforge
