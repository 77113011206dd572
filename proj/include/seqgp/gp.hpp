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

#ifndef SEQGP_GP_HPP
#define SEQGP_GP_HPP

#include <cmath>
#include <stdexcept>

#include "seqgp/kernel.hpp"
#include "seqgp/rng.hpp"
#include "seqgp/stats.hpp"
#include "seqgp/types.hpp"

namespace seqgp {

/// Prior specification: sigma^2 ~ IG(a/2, b/2) (a=b=0 gives the improper
/// scale-invariant prior) and independent Exp(lambda) priors on the kernel
/// range and nugget.
template <typename Scalar>
struct PriorSpec {
  Scalar a{0};
  Scalar b{0};
  Scalar lambda_range{5};
  Scalar lambda_nugget{5};

  bool proper() const { return a > Scalar(0); }

  void validate() const {
    const bool improper = (a == Scalar(0) && b == Scalar(0));
    const bool proper_pair = (a > Scalar(0) && b > Scalar(0));
    if (!improper && !proper_pair)
      throw std::invalid_argument("PriorSpec: (a,b) must be both zero or both positive");
    if (!(lambda_range > 0) || !(lambda_nugget > 0))
      throw std::invalid_argument("PriorSpec: exponential rates must be positive");
  }

  Scalar log_params_prior(const KernelParams<Scalar>& p) const {
    return std::log(lambda_range) - lambda_range * p.range + std::log(lambda_nugget) -
           lambda_nugget * p.nugget;
  }

  KernelParams<Scalar> sample_params(RngStream& rng) const {
    return KernelParams<Scalar>(Scalar(rng.exponential(double(lambda_range))),
                                Scalar(rng.exponential(double(lambda_nugget))));
  }
};

/// Which mean basis f(x) the regression uses.  Linear is f(x) = [1, x'];
/// Zero drops the mean entirely (the classification convention).
enum class MeanBasis { Linear, Zero };

/// f(x_i)' rows for a whole design; an empty matrix for the zero basis.
template <typename Scalar>
Matrix<Scalar> mean_basis_rows(const Matrix<Scalar>& design, MeanBasis basis) {
  if (basis == MeanBasis::Zero) return Matrix<Scalar>(design.rows(), 0);
  Matrix<Scalar> f(design.rows(), design.cols() + 1);
  f.col(0).setOnes();
  f.rightCols(design.cols()) = design;
  return f;
}

template <typename Scalar>
Vector<Scalar> mean_basis_at(const Vector<Scalar>& x, MeanBasis basis) {
  if (basis == MeanBasis::Zero) return Vector<Scalar>(0);
  Vector<Scalar> f(x.size() + 1);
  f[0] = Scalar(1);
  f.tail(x.size()) = x;
  return f;
}

/// Everything a particle needs to weight and predict: the kernel parameters,
/// the correlation matrix with cached inverse, and the marginalized regression
/// statistics beta~, V_beta, psi (plus K^-1(Y - F beta~), cached for O(t)
/// predictive means).
template <typename Scalar>
struct RegressionSuffInfo {
  KernelParams<Scalar> params{1, 1};
  CorrMatrix<Scalar> K;
  Vector<Scalar> beta_tilde;  // empty for the zero mean basis
  Matrix<Scalar> v_beta;
  Scalar log_det_v{0};
  Scalar psi{0};
  Vector<Scalar> kinv_resid;
  Index t{0};
  MeanBasis basis{MeanBasis::Linear};
  PriorSpec<Scalar> prior;

  Index basis_cols() const { return beta_tilde.size(); }
};

/// Student-t predictive summary at one query point.  scale2 is the squared
/// scale parameter, not the variance (variance = scale2 * dof/(dof-2)).
template <typename Scalar>
struct PredictiveT {
  Scalar mean{0};
  Scalar scale2{0};
  Scalar dof{0};
};

/// Marginalized regression statistics for a given correlation matrix:
///   V_beta = (F' K^-1 F)^-1,  beta~ = V_beta F' K^-1 Y,
///   psi = Y' K^-1 Y - beta~' V_beta^-1 beta~.
/// With the improper prior (a=0) this requires t > basis columns.
template <typename Scalar>
RegressionSuffInfo<Scalar> compute_suffstats(CorrMatrix<Scalar> K, const Matrix<Scalar>& design,
                                             const Vector<Scalar>& y,
                                             const KernelParams<Scalar>& params,
                                             const PriorSpec<Scalar>& prior,
                                             MeanBasis basis = MeanBasis::Linear) {
  const Index t = y.size();
  if (K.size() != t || design.rows() != t)
    throw std::invalid_argument("compute_suffstats: inconsistent sizes");

  RegressionSuffInfo<Scalar> s;
  s.params = params;
  s.prior = prior;
  s.basis = basis;
  s.t = t;

  const Matrix<Scalar> f = mean_basis_rows(design, basis);
  const Index q = f.cols();
  if (!prior.proper() && t <= q)
    throw std::invalid_argument("compute_suffstats: improper prior needs t > p+1");

  const Vector<Scalar> kinv_y = block_solve(K, y);
  if (q > 0) {
    const Matrix<Scalar> kinv_f = block_solve(K, f);
    Matrix<Scalar> a = f.transpose() * kinv_f;  // V_beta^-1
    a = (a + a.transpose()) / Scalar(2);
    Eigen::LLT<Matrix<Scalar>> llt(a);
    if (llt.info() != Eigen::Success)
      throw DecompositionError("compute_suffstats: degenerate design (F'K^-1F singular)");
    const Matrix<Scalar> l = llt.matrixL();
    s.log_det_v = -2 * l.diagonal().array().log().sum();
    s.v_beta = llt.solve(Matrix<Scalar>::Identity(q, q));
    s.beta_tilde = s.v_beta * (f.transpose() * kinv_y);
    s.psi = y.dot(kinv_y) - s.beta_tilde.dot(a * s.beta_tilde);
    s.kinv_resid = kinv_y - kinv_f * s.beta_tilde;
  } else {
    s.beta_tilde.resize(0);
    s.v_beta.resize(0, 0);
    s.log_det_v = 0;
    s.psi = y.dot(kinv_y);
    s.kinv_resid = kinv_y;
  }
  if (s.psi < Scalar(-1e-10))
    throw DecompositionError("compute_suffstats: psi significantly negative");
  if (s.psi < 0) s.psi = 0;
  s.K = std::move(K);
  return s;
}

/// Refresh beta~, psi and the residual cache for new responses on an
/// unchanged correlation matrix (used after Gibbs latent sweeps).
template <typename Scalar>
void refresh_response_stats(RegressionSuffInfo<Scalar>& s, const Matrix<Scalar>& design,
                            const Vector<Scalar>& y) {
  const Vector<Scalar> kinv_y = block_solve(s.K, y);
  if (s.basis == MeanBasis::Linear) {
    const Matrix<Scalar> f = mean_basis_rows(design, s.basis);
    const Matrix<Scalar> kinv_f = block_solve(s.K, f);
    const Matrix<Scalar> a = f.transpose() * kinv_f;
    s.beta_tilde = s.v_beta * (f.transpose() * kinv_y);
    s.psi = std::max<Scalar>(0, y.dot(kinv_y) - s.beta_tilde.dot(a * s.beta_tilde));
    s.kinv_resid = kinv_y - kinv_f * s.beta_tilde;
  } else {
    s.psi = std::max<Scalar>(0, y.dot(kinv_y));
    s.kinv_resid = kinv_y;
  }
}

/// Log marginal density of the responses given the correlation matrix, with
/// beta and sigma^2 integrated out:
///
///   log p(Y | K) = 1/2 log|V_beta| - 1/2 log|K| - (t-q)/2 log(2 pi)
///                + lgamma((a+t-q)/2) - (a+t-q)/2 log((b+psi)/2)
///                + [a>0]  (a/2 log(b/2) - lgamma(a/2)),
///
/// where q counts mean-basis columns.  Adding the log kernel-parameter prior
/// yields the unnormalized log posterior targeted by MH.
template <typename Scalar>
Scalar log_marginal(const RegressionSuffInfo<Scalar>& s) {
  const Scalar a = s.prior.a, b = s.prior.b;
  const Scalar q = Scalar(s.basis_cols());
  const Scalar t = Scalar(s.t);
  Scalar out = Scalar(0.5) * s.log_det_v - Scalar(0.5) * s.K.log_det -
               Scalar(0.5) * (t - q) * std::log(Scalar(2) * Scalar(M_PI)) +
               std::lgamma(Scalar(0.5) * (a + t - q)) -
               Scalar(0.5) * (a + t - q) * std::log(Scalar(0.5) * (b + s.psi));
  if (a > 0) out += Scalar(0.5) * a * std::log(Scalar(0.5) * b) - std::lgamma(Scalar(0.5) * a);
  return out;
}

template <typename Scalar>
Scalar log_unnorm_posterior(const RegressionSuffInfo<Scalar>& s) {
  return log_marginal(s) + s.prior.log_params_prior(s.params);
}

/// Student-t predictive at a query point:
///   mean   f(x)' beta~ + k(x)' K^-1 (Y - F beta~)
///   scale2 (b + psi) [K(x,x) - k'K^-1 k + w'V_beta w] / (a + t - q),
///          w = f(x) - F'K^-1 k(x)
///   dof    a + t - q.
/// Tiny negative scale2 from float noise is clamped to 1e-12; anything below
/// -1e-10 is a genuine PD loss and throws.
template <typename Scalar>
PredictiveT<Scalar> predict(const RegressionSuffInfo<Scalar>& s, const Matrix<Scalar>& design,
                            const Vector<Scalar>& y, const Vector<Scalar>& x) {
  const Index t = s.t;
  if (design.rows() != t || y.size() != t)
    throw std::invalid_argument("predict: data inconsistent with sufficient information");

  const Scalar a = s.prior.a, b = s.prior.b;
  const Index q = s.basis_cols();
  const Scalar dof = a + Scalar(t - q);
  if (!(dof > 0)) throw std::invalid_argument("predict: nonpositive degrees of freedom");

  PredictiveT<Scalar> out;
  out.dof = dof;

  const Vector<Scalar> k = t > 0 ? corr_vector(design, x, s.params) : Vector<Scalar>(0);
  const Vector<Scalar> kinv_k = t > 0 ? Vector<Scalar>(block_solve(s.K, k)) : Vector<Scalar>(0);

  Scalar cond = Scalar(1) + s.params.nugget - (t > 0 ? k.dot(kinv_k) : Scalar(0));
  Scalar mean = t > 0 ? k.dot(s.kinv_resid) : Scalar(0);
  if (q > 0) {
    const Vector<Scalar> fx = mean_basis_at(x, s.basis);
    mean += fx.dot(s.beta_tilde);
    Vector<Scalar> w = fx;
    if (t > 0) {
      const Matrix<Scalar> f = mean_basis_rows(design, s.basis);
      w -= f.transpose() * kinv_k;
    }
    cond += w.dot(s.v_beta * w);
  }

  Scalar scale2 = (b + s.psi) * cond / dof;
  if (scale2 < Scalar(-1e-10))
    throw DecompositionError("predict: negative predictive variance");
  if (scale2 <= 0) scale2 = Scalar(1e-12);

  out.mean = mean;
  out.scale2 = scale2;
  return out;
}

template <typename Scalar>
Scalar log_predict_density(const PredictiveT<Scalar>& pt, Scalar y) {
  const Scalar s = std::sqrt(pt.scale2);
  return student_t_logpdf((y - pt.mean) / s, pt.dof) - std::log(s);
}

template <typename Scalar>
Scalar predict_density(const PredictiveT<Scalar>& pt, Scalar y) {
  return std::exp(log_predict_density(pt, y));
}

template <typename Scalar>
Scalar sample_predictive(const PredictiveT<Scalar>& pt, RngStream& rng) {
  return pt.mean + std::sqrt(pt.scale2) * Scalar(rng.student_t(double(pt.dof)));
}

/// Multivariate Student-t over a block of points.
template <typename Scalar>
struct BlockPredictive {
  Vector<Scalar> mean;
  Matrix<Scalar> scale;  // squared-scale matrix
  Scalar dof{0};
};

/// Conditional predictive of the responses at index block I given the
/// complement -I, an |I|-dimensional Student-t:
///   mean   F_I beta~ + K_{I,-I} K_{-I,-I}^-1 (Y_{-I} - F_{-I} beta~)
///   scale  (b + psi_{-I}) [K_{I,I} - K_{I,-I} K_{-I,-I}^-1 K_{-I,I}
///                          + W V_beta W'] / (a + |-I| - q)
///   dof    a + |-I| - q,
/// with beta~, V_beta, psi computed from the complement subset.  For the zero
/// mean basis with a proper prior the complement may even be empty, which
/// yields the (b/a)-scaled prior.
template <typename Scalar>
BlockPredictive<Scalar> block_predict(const RegressionSuffInfo<Scalar>& s,
                                      const Matrix<Scalar>& design, const Vector<Scalar>& y,
                                      const std::vector<Index>& block) {
  const Index t = s.t;
  const Index nb = Index(block.size());
  if (nb < 1 || nb > t) throw std::invalid_argument("block_predict: bad block");

  std::vector<bool> in_block(size_t(t), false);
  for (Index i : block) {
    if (i < 0 || i >= t) throw std::invalid_argument("block_predict: index out of range");
    in_block[size_t(i)] = true;
  }
  std::vector<Index> rest;
  rest.reserve(size_t(t - nb));
  for (Index i = 0; i < t; ++i)
    if (!in_block[size_t(i)]) rest.push_back(i);
  const Index nr = Index(rest.size());

  const Scalar a = s.prior.a, b = s.prior.b;
  const Index q = s.basis_cols();
  const Scalar dof = a + Scalar(nr - q);
  if (!(dof > 0)) throw std::invalid_argument("block_predict: nonpositive degrees of freedom");

  // Extract the partitioned pieces of the stored correlation matrix.
  Matrix<Scalar> k_bb(nb, nb), k_br(nb, nr);
  for (Index i = 0; i < nb; ++i) {
    for (Index j = 0; j < nb; ++j) k_bb(i, j) = s.K.values(block[size_t(i)], block[size_t(j)]);
    for (Index j = 0; j < nr; ++j) k_br(i, j) = s.K.values(block[size_t(i)], rest[size_t(j)]);
  }

  BlockPredictive<Scalar> out;
  out.dof = dof;

  if (nr == 0) {
    out.mean = Vector<Scalar>::Zero(nb);
    out.scale = (b / a) * k_bb;
    return out;
  }

  Matrix<Scalar> k_rr(nr, nr);
  for (Index i = 0; i < nr; ++i)
    for (Index j = 0; j < nr; ++j) k_rr(i, j) = s.K.values(rest[size_t(i)], rest[size_t(j)]);

  Eigen::LLT<Matrix<Scalar>> llt(k_rr);
  if (llt.info() != Eigen::Success) {
    k_rr.diagonal().array() += Scalar(kCholJitter);
    llt.compute(k_rr);
    if (llt.info() != Eigen::Success)
      throw DecompositionError("block_predict: complement matrix not positive definite");
  }

  Vector<Scalar> y_r(nr);
  for (Index j = 0; j < nr; ++j) y_r[j] = y[rest[size_t(j)]];

  const Vector<Scalar> kinv_y = llt.solve(y_r);
  Matrix<Scalar> cross = k_br * llt.solve(k_br.transpose());
  Matrix<Scalar> schur = k_bb - cross;

  if (q > 0) {
    Matrix<Scalar> x_r(nr, design.cols()), x_b(nb, design.cols());
    for (Index j = 0; j < nr; ++j) x_r.row(j) = design.row(rest[size_t(j)]);
    for (Index i = 0; i < nb; ++i) x_b.row(i) = design.row(block[size_t(i)]);
    const Matrix<Scalar> f_r = mean_basis_rows(x_r, s.basis);
    const Matrix<Scalar> f_b = mean_basis_rows(x_b, s.basis);
    const Matrix<Scalar> kinv_f = llt.solve(f_r);
    Matrix<Scalar> va = f_r.transpose() * kinv_f;
    va = (va + va.transpose()) / Scalar(2);
    Eigen::LLT<Matrix<Scalar>> llt_v(va);
    if (llt_v.info() != Eigen::Success)
      throw DecompositionError("block_predict: degenerate complement design");
    const Matrix<Scalar> v = llt_v.solve(Matrix<Scalar>::Identity(q, q));
    const Vector<Scalar> beta = v * (f_r.transpose() * kinv_y);
    const Scalar psi = std::max<Scalar>(0, y_r.dot(kinv_y) - beta.dot(va * beta));
    const Matrix<Scalar> w = f_b - k_br * kinv_f;
    out.mean = f_b * beta + k_br * (kinv_y - kinv_f * beta);
    schur += w * v * w.transpose();
    out.scale = (b + psi) * schur / dof;
  } else {
    const Scalar psi = std::max<Scalar>(0, y_r.dot(kinv_y));
    out.mean = k_br * kinv_y;
    out.scale = (b + psi) * schur / dof;
  }
  out.scale = ((out.scale + out.scale.transpose()) / Scalar(2)).eval();
  return out;
}

/// Draw from a multivariate Student-t given its Cholesky-factorizable scale.
template <typename Scalar>
Vector<Scalar> sample_block_predictive(const BlockPredictive<Scalar>& bp, RngStream& rng) {
  const Index n = bp.mean.size();
  Matrix<Scalar> scale = bp.scale;
  Eigen::LLT<Matrix<Scalar>> llt(scale);
  if (llt.info() != Eigen::Success) {
    scale.diagonal().array() += Scalar(kCholJitter);
    llt.compute(scale);
    if (llt.info() != Eigen::Success)
      throw DecompositionError("sample_block_predictive: scale matrix not positive definite");
  }
  Vector<Scalar> z(n);
  for (Index i = 0; i < n; ++i) z[i] = Scalar(rng.normal());
  const Scalar chi2 = Scalar(rng.chi_squared(double(bp.dof)));
  const Matrix<Scalar> l = llt.matrixL();
  return bp.mean + std::sqrt(bp.dof / chi2) * (l * z);
}

}  // namespace seqgp

#endif  // SEQGP_GP_HPP
