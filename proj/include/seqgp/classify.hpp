/*
 * Copyright 2026 The seqgp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SEQGP_CLASSIFY_HPP
#define SEQGP_CLASSIFY_HPP

#include <algorithm>
#include <numeric>
#include <vector>

#include "seqgp/gp.hpp"

namespace seqgp {

/// Sufficient information for M-class GP classification: M-1 regression
/// states (class M's latents are pinned to zero) over the latent matrix
/// (rows = classes, columns = data points).
template <typename Scalar>
struct ClassSuffInfo {
  int n_classes{2};
  std::vector<RegressionSuffInfo<Scalar>> per_class;  // M-1 entries
  Matrix<Scalar> latents;                             // (M-1) x t
  Index t{0};

  Index n_latent() const { return Index(n_classes) - 1; }
};

template <typename Scalar>
struct ClassProbs {
  Vector<Scalar> probs;  // length M, sums to 1
};

/// Softmax class likelihood over a full M-vector of latents:
///   p(c | y) = exp(-y_c) / sum_m exp(-y_m).
/// Large latents mean an *unlikely* class.  Evaluated in log space with
/// max-subtraction so it never overflows.
template <typename Scalar>
Scalar log_softmax_prob(const Vector<Scalar>& latents, int cls) {
  const Index m = latents.size();
  if (cls < 1 || Index(cls) > m) throw std::invalid_argument("log_softmax_prob: bad class");
  const Vector<Scalar> neg = -latents;
  const Scalar mx = neg.maxCoeff();
  const Scalar lse = mx + std::log((neg.array() - mx).exp().sum());
  return neg[cls - 1] - lse;
}

template <typename Scalar>
Scalar softmax_prob(const Vector<Scalar>& latents, int cls) {
  return std::exp(log_softmax_prob(latents, cls));
}

/// All M class probabilities from the M-1 free latents (class M pinned at 0).
template <typename Scalar>
Vector<Scalar> softmax_probs_pinned(const Vector<Scalar>& free_latents) {
  Vector<Scalar> full(free_latents.size() + 1);
  full.head(free_latents.size()) = free_latents;
  full[free_latents.size()] = Scalar(0);
  Vector<Scalar> neg = -full;
  const Scalar mx = neg.maxCoeff();
  Vector<Scalar> e = (neg.array() - mx).exp();
  return e / e.sum();
}

/// Per-class scalar Student-t predictives of the latents at a query point.
template <typename Scalar>
std::vector<PredictiveT<Scalar>> latent_predictives(const ClassSuffInfo<Scalar>& s,
                                                    const Matrix<Scalar>& design,
                                                    const Vector<Scalar>& x) {
  std::vector<PredictiveT<Scalar>> out;
  out.reserve(size_t(s.n_latent()));
  for (Index m = 0; m < s.n_latent(); ++m)
    out.push_back(predict(s.per_class[size_t(m)], design, Vector<Scalar>(s.latents.row(m)), x));
  return out;
}

/// Monte Carlo class predictive: draw L independent latent sets from the
/// product of per-class Student-t predictives and average the softmax
/// likelihood.  Each draw's probabilities are normalized, so the average sums
/// to one exactly.
template <typename Scalar>
ClassProbs<Scalar> class_predictive(const ClassSuffInfo<Scalar>& s, const Matrix<Scalar>& design,
                                    const Vector<Scalar>& x, Index n_samples, RngStream& rng) {
  if (n_samples < 1) throw std::invalid_argument("class_predictive: need at least one sample");
  const auto pts = latent_predictives(s, design, x);
  Vector<Scalar> acc = Vector<Scalar>::Zero(s.n_classes);
  Vector<Scalar> draw(s.n_latent());
  for (Index l = 0; l < n_samples; ++l) {
    for (Index m = 0; m < s.n_latent(); ++m) draw[m] = sample_predictive(pts[size_t(m)], rng);
    acc += softmax_probs_pinned(draw);
  }
  ClassProbs<Scalar> out;
  out.probs = acc / Scalar(n_samples);
  return out;
}

/// Draw the M-1 latents for a new point from the per-class predictives.
template <typename Scalar>
Vector<Scalar> sample_new_latents(const ClassSuffInfo<Scalar>& s, const Matrix<Scalar>& design,
                                  const Vector<Scalar>& x, RngStream& rng) {
  const auto pts = latent_predictives(s, design, x);
  Vector<Scalar> out(s.n_latent());
  for (Index m = 0; m < s.n_latent(); ++m) out[m] = sample_predictive(pts[size_t(m)], rng);
  return out;
}

/// Random partition of 0..t-1 into consecutive blocks of at most fold_size.
template <typename Scalar = double>
std::vector<std::vector<Index>> fold_partition(Index t, Index fold_size, RngStream& rng) {
  std::vector<Index> perm(size_t(t));
  std::iota(perm.begin(), perm.end(), Index(0));
  std::shuffle(perm.begin(), perm.end(), rng.engine());
  std::vector<std::vector<Index>> blocks;
  for (Index start = 0; start < t; start += fold_size) {
    const Index stop = std::min(t, start + fold_size);
    blocks.emplace_back(perm.begin() + start, perm.begin() + stop);
  }
  return blocks;
}

/// Log MH acceptance ratio for replacing class m's latents on a block: the
/// prior-conditional proposal cancels against the prior, leaving the product
/// of softmax likelihood ratios over the block.
template <typename Scalar>
Scalar gibbs_log_accept(const ClassSuffInfo<Scalar>& s, const std::vector<int>& labels, Index m,
                        const std::vector<Index>& block, const Vector<Scalar>& proposal) {
  Scalar log_a = 0;
  Vector<Scalar> col(s.n_latent() + 1);
  for (size_t j = 0; j < block.size(); ++j) {
    const Index i = block[j];
    col.head(s.n_latent()) = s.latents.col(i);
    col[s.n_latent()] = Scalar(0);
    const Scalar cur = log_softmax_prob(col, labels[size_t(i)]);
    col[m] = proposal[Index(j)];
    const Scalar prop = log_softmax_prob(col, labels[size_t(i)]);
    log_a += prop - cur;
  }
  return log_a;
}

/// One randomly-blocked MH-within-Gibbs sweep over the latents: for each
/// class and each block, propose from the conditional multivariate-t
/// (block_predict) and accept by the softmax likelihood ratio.  Correlation
/// matrices are untouched; beta~/psi are refreshed once after the sweep.
template <typename Scalar>
void gibbs_propagate(ClassSuffInfo<Scalar>& s, const Matrix<Scalar>& design,
                     const std::vector<int>& labels, Index fold_size, RngStream& rng) {
  if (Index(labels.size()) != s.t) throw std::invalid_argument("gibbs_propagate: bad labels");
  if (s.t == 0) return;
  const auto blocks = fold_partition(s.t, fold_size, rng);
  for (Index m = 0; m < s.n_latent(); ++m) {
    auto& cls = s.per_class[size_t(m)];
    for (const auto& block : blocks) {
      const auto bp =
          block_predict(cls, design, Vector<Scalar>(s.latents.row(m)), block);
      const Vector<Scalar> proposal = sample_block_predictive(bp, rng);
      const Scalar log_a = gibbs_log_accept(s, labels, m, block, proposal);
      if (log_a >= 0 || std::log(rng.uniform()) < log_a) {
        for (size_t j = 0; j < block.size(); ++j) s.latents(m, block[j]) = proposal[Index(j)];
      }
    }
  }
  for (Index m = 0; m < s.n_latent(); ++m)
    refresh_response_stats(s.per_class[size_t(m)], design, Vector<Scalar>(s.latents.row(m)));
}

}  // namespace seqgp

#endif  // SEQGP_CLASSIFY_HPP
