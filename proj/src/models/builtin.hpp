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
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kgforge/models.hpp"

namespace kgforge::detail {

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstVecMap = Eigen::Map<const Eigen::VectorXd>;
using VecMap = Eigen::Map<Eigen::VectorXd>;
using ConstMatMap = Eigen::Map<const RowMajorMatrix>;
using MatMap = Eigen::Map<RowMajorMatrix>;

enum class InitKind {
  kEmbedding,            // U[-6/sqrt(cols), 6/sqrt(cols)]
  kNormalizedEmbedding,  // as kEmbedding, then each row L2-normalised
  kIdentityPlusNoise,    // each row is a flattened (mat_rows x mat_cols) identity + noise
  kFanIn,                // U[-1/sqrt(fan_in), 1/sqrt(fan_in)]
};

struct TensorSpec {
  std::string name;
  std::size_t rows;
  std::size_t cols;
  InitKind init;
  std::size_t mat_rows = 0;  // kIdentityPlusNoise
  std::size_t mat_cols = 0;
  std::size_t fan_in = 0;    // kFanIn
};

std::vector<TensorSpec> tensor_layout(ModelKind kind, const ModelDims& dims);

inline ConstVecMap vec(const Tensor& t, std::size_t row) {
  return {t.data.data() + row * t.cols, static_cast<Eigen::Index>(t.cols)};
}

inline ConstMatMap mat(const Tensor& t, std::size_t row, std::size_t rows, std::size_t cols) {
  return {t.data.data() + row * t.cols, static_cast<Eigen::Index>(rows),
          static_cast<Eigen::Index>(cols)};
}

inline VecMap grad_vec(SparseGradient& g, std::size_t tensor, const Tensor& t, std::size_t row) {
  auto r = g.row(tensor, row, t.cols);
  return {r.data(), static_cast<Eigen::Index>(r.size())};
}

inline MatMap grad_mat(SparseGradient& g, std::size_t tensor, const Tensor& t, std::size_t row,
                       std::size_t rows, std::size_t cols) {
  auto r = g.row(tensor, row, t.cols);
  return {r.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)};
}

enum class Distance { kL1, kL2, kSquaredL2 };

/// Score -dist(v) and its derivative with respect to v. Kinks (L1 at zero
/// coordinates, L2 at v = 0) take subgradient 0.
struct DistanceTerm {
  double score;
  Eigen::VectorXd dscore;
};

DistanceTerm distance_score(const Eigen::VectorXd& v, Distance kind);

inline Distance lp_distance(int p) { return p == 2 ? Distance::kL2 : Distance::kL1; }

/// Shared plumbing for built-in models: range checks and per-triple loops.
class BuiltinModel : public Model {
 public:
  void score_batch(const ModelParams& params, std::span<const TripleIds> triples,
                   std::span<double> out) const final;
  void grad_batch(const ModelParams& params, std::span<const TripleIds> triples,
                  std::span<const double> coeffs, SparseGradient& grad) const final;

 protected:
  virtual double score_one(const ModelParams& p, const TripleIds& t) const = 0;
  virtual void add_gradient(const ModelParams& p, const TripleIds& t, double coeff,
                            SparseGradient& g) const = 0;
};

std::unique_ptr<Model> make_transe();
std::unique_ptr<Model> make_transh();
std::unique_ptr<Model> make_transr();
std::unique_ptr<Model> make_transd();
std::unique_ptr<Model> make_um();
std::unique_ptr<Model> make_se();
std::unique_ptr<Model> make_rescal();
std::unique_ptr<Model> make_distmult();
std::unique_ptr<Model> make_ermlp();

}  // namespace kgforge::detail
