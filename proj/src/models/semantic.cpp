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

// Semantic matching models: RESCAL, DistMult, ERMLP.

#include "builtin.hpp"

namespace kgforge::detail {

namespace {

using Eigen::VectorXd;

// f = e_h^T W_r e_t
class Rescal final : public BuiltinModel {
 public:
  static constexpr std::size_t kEnt = 0, kRelMat = 1;

  std::string_view name() const override { return "RESCAL"; }

 protected:
  double score_one(const ModelParams& p, const TripleIds& t) const override {
    const auto d = p.dims.embedding_dim;
    const auto& e = p.tensors[kEnt];
    return vec(e, t.head).dot(mat(p.tensors[kRelMat], t.relation, d, d) * vec(e, t.tail));
  }

  void add_gradient(const ModelParams& p, const TripleIds& t, double coeff,
                    SparseGradient& g) const override {
    const auto d = p.dims.embedding_dim;
    const auto& e = p.tensors[kEnt];
    const auto& rm = p.tensors[kRelMat];
    const auto w = mat(rm, t.relation, d, d);
    const VectorXd h = vec(e, t.head);
    const VectorXd tl = vec(e, t.tail);
    grad_vec(g, kEnt, e, t.head) += coeff * (w * tl);
    grad_vec(g, kEnt, e, t.tail) += coeff * (w.transpose() * h);
    grad_mat(g, kRelMat, rm, t.relation, d, d) += coeff * (h * tl.transpose());
  }
};

// f = sum_i e_h[i] r[i] e_t[i]
class DistMult final : public BuiltinModel {
 public:
  static constexpr std::size_t kEnt = 0, kRel = 1;

  std::string_view name() const override { return "DistMult"; }

 protected:
  double score_one(const ModelParams& p, const TripleIds& t) const override {
    const auto& e = p.tensors[kEnt];
    return (vec(e, t.head).array() * vec(p.tensors[kRel], t.relation).array() *
            vec(e, t.tail).array())
        .sum();
  }

  void add_gradient(const ModelParams& p, const TripleIds& t, double coeff,
                    SparseGradient& g) const override {
    const auto& e = p.tensors[kEnt];
    const auto& rel = p.tensors[kRel];
    const VectorXd h = vec(e, t.head);
    const VectorXd r = vec(rel, t.relation);
    const VectorXd tl = vec(e, t.tail);
    grad_vec(g, kEnt, e, t.head) += coeff * r.cwiseProduct(tl);
    grad_vec(g, kEnt, e, t.tail) += coeff * h.cwiseProduct(r);
    grad_vec(g, kRel, rel, t.relation) += coeff * h.cwiseProduct(tl);
  }
};

// f = w^T tanh(H [e_h; r; e_t] + b)
class ErMlp final : public BuiltinModel {
 public:
  static constexpr std::size_t kEnt = 0, kRel = 1, kHidden = 2, kBias = 3, kOut = 4;

  std::string_view name() const override { return "ERMLP"; }

 protected:
  struct Forward {
    VectorXd x;
    VectorXd a;
  };

  Forward forward(const ModelParams& p, const TripleIds& t) const {
    const auto d = static_cast<Eigen::Index>(p.dims.embedding_dim);
    const auto hidden = p.dims.hidden_dim;
    const auto& e = p.tensors[kEnt];
    Forward f;
    f.x.resize(3 * d);
    f.x << vec(e, t.head), vec(p.tensors[kRel], t.relation), vec(e, t.tail);
    const auto hw = mat(p.tensors[kHidden], 0, hidden, 3 * p.dims.embedding_dim);
    f.a = (hw * f.x + vec(p.tensors[kBias], 0)).array().tanh().matrix();
    return f;
  }

  double score_one(const ModelParams& p, const TripleIds& t) const override {
    return vec(p.tensors[kOut], 0).dot(forward(p, t).a);
  }

  void add_gradient(const ModelParams& p, const TripleIds& t, double coeff,
                    SparseGradient& g) const override {
    const auto d = static_cast<Eigen::Index>(p.dims.embedding_dim);
    const auto hidden = p.dims.hidden_dim;
    const auto f = forward(p, t);
    const auto& hidden_w = p.tensors[kHidden];
    const auto& out_w = p.tensors[kOut];
    const auto hw = mat(hidden_w, 0, hidden, 3 * p.dims.embedding_dim);

    const VectorXd delta =
        coeff * vec(out_w, 0).cwiseProduct((1.0 - f.a.array().square()).matrix());
    const VectorXd gx = hw.transpose() * delta;

    grad_vec(g, kOut, out_w, 0) += coeff * f.a;
    grad_vec(g, kBias, p.tensors[kBias], 0) += delta;
    // The hidden weight matrix is stored as one row per hidden unit.
    for (std::size_t j = 0; j < hidden; ++j)
      grad_vec(g, kHidden, hidden_w, j) += delta[static_cast<Eigen::Index>(j)] * f.x;

    const auto& e = p.tensors[kEnt];
    grad_vec(g, kEnt, e, t.head) += gx.segment(0, d);
    grad_vec(g, kRel, p.tensors[kRel], t.relation) += gx.segment(d, d);
    grad_vec(g, kEnt, e, t.tail) += gx.segment(2 * d, d);
  }
};

}  // namespace

std::unique_ptr<Model> make_rescal() { return std::make_unique<Rescal>(); }
std::unique_ptr<Model> make_distmult() { return std::make_unique<DistMult>(); }
std::unique_ptr<Model> make_ermlp() { return std::make_unique<ErMlp>(); }

}  // namespace kgforge::detail
