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

// Translational distance models: TransE, TransH, TransR, TransD, UM, SE.

#include "builtin.hpp"

namespace kgforge::detail {

namespace {

using Eigen::VectorXd;

ConstraintReport normalize_rows(Tensor& t) {
  ConstraintReport report;
  for (std::size_t i = 0; i < t.rows; ++i)
    if (!normalize_row(t.row(i))) ++report.degenerate_rows;
  return report;
}

ConstraintReport ball_rows(Tensor& t) {
  ConstraintReport report;
  for (std::size_t i = 0; i < t.rows; ++i)
    if (!project_to_unit_ball(t.row(i))) ++report.degenerate_rows;
  return report;
}

// f = -||e_h + r - e_t||_p
class TransE final : public BuiltinModel {
 public:
  static constexpr std::size_t kEnt = 0, kRel = 1;

  std::string_view name() const override { return "TransE"; }
  ConstraintPhase constraint_phase() const override { return ConstraintPhase::kAfterBatch; }
  ConstraintReport enforce_constraints(ModelParams& p) const override {
    return normalize_rows(p.tensors[kEnt]);
  }

 protected:
  VectorXd residual(const ModelParams& p, const TripleIds& t) const {
    const auto& e = p.tensors[kEnt];
    return vec(e, t.head) + vec(p.tensors[kRel], t.relation) - vec(e, t.tail);
  }

  double score_one(const ModelParams& p, const TripleIds& t) const override {
    return distance_score(residual(p, t), lp_distance(p.dims.scoring_norm)).score;
  }

  void add_gradient(const ModelParams& p, const TripleIds& t, double coeff,
                    SparseGradient& g) const override {
    const auto term = distance_score(residual(p, t), lp_distance(p.dims.scoring_norm));
    const auto& e = p.tensors[kEnt];
    grad_vec(g, kEnt, e, t.head) += coeff * term.dscore;
    grad_vec(g, kEnt, e, t.tail) -= coeff * term.dscore;
    grad_vec(g, kRel, p.tensors[kRel], t.relation) += coeff * term.dscore;
  }
};

// f = -||e_h - e_t||^2
class UnstructuredModel final : public BuiltinModel {
 public:
  static constexpr std::size_t kEnt = 0;

  std::string_view name() const override { return "UM"; }

 protected:
  double score_one(const ModelParams& p, const TripleIds& t) const override {
    const auto& e = p.tensors[kEnt];
    return -(vec(e, t.head) - vec(e, t.tail)).squaredNorm();
  }

  void add_gradient(const ModelParams& p, const TripleIds& t, double coeff,
                    SparseGradient& g) const override {
    const auto& e = p.tensors[kEnt];
    const VectorXd diff = vec(e, t.head) - vec(e, t.tail);
    grad_vec(g, kEnt, e, t.head) += (-2.0 * coeff) * diff;
    grad_vec(g, kEnt, e, t.tail) += (2.0 * coeff) * diff;
  }
};

// f = -||M_{r,1} e_h - M_{r,2} e_t||_p
class StructuredEmbedding final : public BuiltinModel {
 public:
  static constexpr std::size_t kEnt = 0, kHeadProj = 1, kTailProj = 2;

  std::string_view name() const override { return "SE"; }

 protected:
  double score_one(const ModelParams& p, const TripleIds& t) const override {
    const auto d = p.dims.embedding_dim;
    const auto& e = p.tensors[kEnt];
    const VectorXd v = mat(p.tensors[kHeadProj], t.relation, d, d) * vec(e, t.head) -
                       mat(p.tensors[kTailProj], t.relation, d, d) * vec(e, t.tail);
    return distance_score(v, lp_distance(p.dims.scoring_norm)).score;
  }

  void add_gradient(const ModelParams& p, const TripleIds& t, double coeff,
                    SparseGradient& g) const override {
    const auto d = p.dims.embedding_dim;
    const auto& e = p.tensors[kEnt];
    const auto& hp = p.tensors[kHeadProj];
    const auto& tp = p.tensors[kTailProj];
    const auto mh = mat(hp, t.relation, d, d);
    const auto mt = mat(tp, t.relation, d, d);
    const VectorXd h = vec(e, t.head);
    const VectorXd tl = vec(e, t.tail);
    const VectorXd v = mh * h - mt * tl;
    const VectorXd gv = coeff * distance_score(v, lp_distance(p.dims.scoring_norm)).dscore;

    grad_vec(g, kEnt, e, t.head) += mh.transpose() * gv;
    grad_vec(g, kEnt, e, t.tail) -= mt.transpose() * gv;
    grad_mat(g, kHeadProj, hp, t.relation, d, d) += gv * h.transpose();
    grad_mat(g, kTailProj, tp, t.relation, d, d) -= gv * tl.transpose();
  }
};

// f = -||(e_h - w.e_h w) + d_r - (e_t - w.e_t w)||^2
class TransH final : public BuiltinModel {
 public:
  static constexpr std::size_t kEnt = 0, kRel = 1, kNormal = 2;

  std::string_view name() const override { return "TransH"; }
  ConstraintPhase constraint_phase() const override { return ConstraintPhase::kAfterBatch; }
  ConstraintReport enforce_constraints(ModelParams& p) const override {
    return normalize_rows(p.tensors[kNormal]);
  }

 protected:
  double score_one(const ModelParams& p, const TripleIds& t) const override {
    const auto& e = p.tensors[kEnt];
    const VectorXd u = vec(e, t.head) - vec(e, t.tail);
    const auto w = vec(p.tensors[kNormal], t.relation);
    const VectorXd v = u - w.dot(u) * w + vec(p.tensors[kRel], t.relation);
    return -v.squaredNorm();
  }

  void add_gradient(const ModelParams& p, const TripleIds& t, double coeff,
                    SparseGradient& g) const override {
    const auto& e = p.tensors[kEnt];
    const VectorXd u = vec(e, t.head) - vec(e, t.tail);
    const VectorXd w = vec(p.tensors[kNormal], t.relation);
    const double wu = w.dot(u);
    const VectorXd v = u - wu * w + vec(p.tensors[kRel], t.relation);
    const VectorXd gv = (-2.0 * coeff) * v;
    // dv/du = I - w w^T (symmetric)
    const VectorXd gu = gv - w.dot(gv) * w;

    grad_vec(g, kEnt, e, t.head) += gu;
    grad_vec(g, kEnt, e, t.tail) -= gu;
    grad_vec(g, kRel, p.tensors[kRel], t.relation) += gv;
    grad_vec(g, kNormal, p.tensors[kNormal], t.relation) += -gv.dot(w) * u - wu * gv;
  }
};

// f = -||M_r e_h + r - M_r e_t||^2, M_r is relation_dim x embedding_dim
class TransR final : public BuiltinModel {
 public:
  static constexpr std::size_t kEnt = 0, kRel = 1, kProj = 2;

  std::string_view name() const override { return "TransR"; }
  ConstraintPhase constraint_phase() const override { return ConstraintPhase::kAfterEpoch; }
  ConstraintReport enforce_constraints(ModelParams& p) const override {
    auto report = ball_rows(p.tensors[kEnt]);
    report.degenerate_rows += ball_rows(p.tensors[kRel]).degenerate_rows;
    return report;
  }

 protected:
  double score_one(const ModelParams& p, const TripleIds& t) const override {
    const auto& e = p.tensors[kEnt];
    const auto m = mat(p.tensors[kProj], t.relation, p.dims.relation_dim, p.dims.embedding_dim);
    const VectorXd diff = vec(e, t.head) - vec(e, t.tail);
    return -(m * diff + vec(p.tensors[kRel], t.relation)).squaredNorm();
  }

  void add_gradient(const ModelParams& p, const TripleIds& t, double coeff,
                    SparseGradient& g) const override {
    const auto dr = p.dims.relation_dim;
    const auto d = p.dims.embedding_dim;
    const auto& e = p.tensors[kEnt];
    const auto& proj = p.tensors[kProj];
    const auto m = mat(proj, t.relation, dr, d);
    const VectorXd diff = vec(e, t.head) - vec(e, t.tail);
    const VectorXd v = m * diff + vec(p.tensors[kRel], t.relation);
    const VectorXd gv = (-2.0 * coeff) * v;
    const VectorXd gdiff = m.transpose() * gv;

    grad_vec(g, kEnt, e, t.head) += gdiff;
    grad_vec(g, kEnt, e, t.tail) -= gdiff;
    grad_vec(g, kRel, p.tensors[kRel], t.relation) += gv;
    grad_mat(g, kProj, proj, t.relation, dr, d) += gv * diff.transpose();
  }
};

// f = -||(I + r_p h_p^T) e_h + r - (I + r_p t_p^T) e_t||^2
// I is the relation_dim x embedding_dim identity (truncated or zero padded).
class TransD final : public BuiltinModel {
 public:
  static constexpr std::size_t kEnt = 0, kRel = 1, kEntProj = 2, kRelProj = 3;

  std::string_view name() const override { return "TransD"; }
  ConstraintPhase constraint_phase() const override { return ConstraintPhase::kAfterEpoch; }
  ConstraintReport enforce_constraints(ModelParams& p) const override {
    auto report = ball_rows(p.tensors[kEnt]);
    report.degenerate_rows += ball_rows(p.tensors[kRel]).degenerate_rows;
    return report;
  }

 protected:
  static VectorXd resize_to(const VectorXd& x, Eigen::Index n) {
    VectorXd out = VectorXd::Zero(n);
    const auto k = std::min(n, x.size());
    out.head(k) = x.head(k);
    return out;
  }

  struct Terms {
    VectorXd h, tl, hp, tp, rp, v;
    double proj_gap;  // h_p.e_h - t_p.e_t
  };

  Terms terms(const ModelParams& p, const TripleIds& t) const {
    const auto& e = p.tensors[kEnt];
    const auto& ep = p.tensors[kEntProj];
    Terms x;
    x.h = vec(e, t.head);
    x.tl = vec(e, t.tail);
    x.hp = vec(ep, t.head);
    x.tp = vec(ep, t.tail);
    x.rp = vec(p.tensors[kRelProj], t.relation);
    x.proj_gap = x.hp.dot(x.h) - x.tp.dot(x.tl);
    const auto dr = static_cast<Eigen::Index>(p.dims.relation_dim);
    x.v = resize_to(x.h - x.tl, dr) + x.proj_gap * x.rp + vec(p.tensors[kRel], t.relation);
    return x;
  }

  double score_one(const ModelParams& p, const TripleIds& t) const override {
    return -terms(p, t).v.squaredNorm();
  }

  void add_gradient(const ModelParams& p, const TripleIds& t, double coeff,
                    SparseGradient& g) const override {
    const auto x = terms(p, t);
    const VectorXd gv = (-2.0 * coeff) * x.v;
    const double rg = x.rp.dot(gv);
    const auto d = static_cast<Eigen::Index>(p.dims.embedding_dim);
    const VectorXd gv_d = resize_to(gv, d);

    const auto& e = p.tensors[kEnt];
    const auto& ep = p.tensors[kEntProj];
    grad_vec(g, kEnt, e, t.head) += gv_d + rg * x.hp;
    grad_vec(g, kEnt, e, t.tail) -= gv_d + rg * x.tp;
    grad_vec(g, kEntProj, ep, t.head) += rg * x.h;
    grad_vec(g, kEntProj, ep, t.tail) -= rg * x.tl;
    grad_vec(g, kRel, p.tensors[kRel], t.relation) += gv;
    grad_vec(g, kRelProj, p.tensors[kRelProj], t.relation) += x.proj_gap * gv;
  }
};

}  // namespace

std::unique_ptr<Model> make_transe() { return std::make_unique<TransE>(); }
std::unique_ptr<Model> make_transh() { return std::make_unique<TransH>(); }
std::unique_ptr<Model> make_transr() { return std::make_unique<TransR>(); }
std::unique_ptr<Model> make_transd() { return std::make_unique<TransD>(); }
std::unique_ptr<Model> make_um() { return std::make_unique<UnstructuredModel>(); }
std::unique_ptr<Model> make_se() { return std::make_unique<StructuredEmbedding>(); }

}  // namespace kgforge::detail
