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

#ifndef SEQGP_KERNEL_HPP
#define SEQGP_KERNEL_HPP

#include <cmath>
#include <stdexcept>
#include <string>

#include "seqgp/types.hpp"

namespace seqgp {

/// Thrown when a matrix that should be positive definite is not, or when a
/// design is too degenerate to factorize.  Samplers treat this as a rejected
/// parameter draw rather than a fatal error.
class DecompositionError : public std::runtime_error {
 public:
  explicit DecompositionError(const std::string& what) : std::runtime_error(what) {}
};

/// The two free hyperparameters of the isotropic Gaussian correlation:
/// K(x, x') = exp(-||x - x'||^2 / range) + nugget * delta_{x,x'}.
template <typename Scalar>
struct KernelParams {
  Scalar range;
  Scalar nugget;

  KernelParams(Scalar range_in, Scalar nugget_in) : range(range_in), nugget(nugget_in) {
    if (!(range > 0) || !(nugget > 0))
      throw std::invalid_argument("KernelParams: range and nugget must be positive");
  }
};

/// Correlation matrix of a design together with its cached inverse,
/// log-determinant and (when built by factorization) Cholesky factor.
/// The inverse is kept explicitly because the partition-inverse extension and
/// the resample weights consume it repeatedly.
template <typename Scalar>
struct CorrMatrix {
  Matrix<Scalar> values;
  Matrix<Scalar> inverse;
  Matrix<Scalar> chol;  // lower triangular; empty when no factor is maintained
  Scalar log_det{0};

  Index size() const { return values.rows(); }
  bool has_chol() const { return chol.rows() == values.rows(); }
};

/// Correlation between two points.  The nugget enters on exact coordinate
/// equality; inside matrix construction the delta is on index identity instead
/// (see build_corr), so duplicated rows stay off-diagonal 1.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar corr(const Eigen::MatrixBase<DerivedA>& x,
                               const Eigen::MatrixBase<DerivedB>& y,
                               const KernelParams<typename DerivedA::Scalar>& params) {
  using Scalar = typename DerivedA::Scalar;
  if (x.size() != y.size()) throw std::invalid_argument("corr: dimension mismatch");
  const Scalar sq = (x - y).squaredNorm();
  Scalar k = std::exp(-sq / params.range);
  if (sq == Scalar(0) && (x.array() == y.array()).all()) k += params.nugget;
  return k;
}

/// k(x): correlations between a query point and every row of a design.
template <typename DerivedX, typename Derivedx>
Vector<typename DerivedX::Scalar> corr_vector(
    const Eigen::MatrixBase<DerivedX>& design, const Eigen::MatrixBase<Derivedx>& x,
    const KernelParams<typename DerivedX::Scalar>& params) {
  using Scalar = typename DerivedX::Scalar;
  const Index t = design.rows();
  Vector<Scalar> k(t);
  for (Index i = 0; i < t; ++i) k[i] = corr(design.row(i).transpose(), x, params);
  return k;
}

/// New-row correlations for matrix extension: pure K*, no nugget even when a
/// coordinate duplicates an existing row (the matrix delta is on index
/// identity, so duplicates stay off-diagonal 1).
template <typename DerivedX, typename Derivedx>
Vector<typename DerivedX::Scalar> extension_corr_vector(
    const Eigen::MatrixBase<DerivedX>& design, const Eigen::MatrixBase<Derivedx>& x,
    const KernelParams<typename DerivedX::Scalar>& params) {
  using Scalar = typename DerivedX::Scalar;
  const Index t = design.rows();
  Vector<Scalar> k(t);
  for (Index i = 0; i < t; ++i)
    k[i] = std::exp(-(design.row(i).transpose() - x).squaredNorm() / params.range);
  return k;
}

namespace detail {

template <typename Scalar>
bool try_llt(const Matrix<Scalar>& m, Matrix<Scalar>& lower) {
  Eigen::LLT<Matrix<Scalar>> llt(m);
  if (llt.info() != Eigen::Success) return false;
  lower = llt.matrixL();
  return true;
}

}  // namespace detail

/// Jitter added on a one-shot factorization retry before declaring failure.
inline constexpr double kCholJitter = 1e-8;

/// Build the correlation matrix of a design, factorize it and cache the
/// inverse and log-determinant.  The nugget sits on the diagonal only (delta
/// on index identity), so coincident rows still produce a PD matrix.
/// Throws DecompositionError if the matrix cannot be factorized even after a
/// single jitter retry; callers reject the parameter draw in that case.
template <typename Derived>
CorrMatrix<typename Derived::Scalar> build_corr(
    const Eigen::MatrixBase<Derived>& design,
    const KernelParams<typename Derived::Scalar>& params) {
  using Scalar = typename Derived::Scalar;
  const Index t = design.rows();
  if (t < 1) throw std::invalid_argument("build_corr: empty design");
  if (!design.allFinite()) throw std::invalid_argument("build_corr: non-finite design");

  CorrMatrix<Scalar> out;
  out.values.resize(t, t);
  for (Index i = 0; i < t; ++i) {
    out.values(i, i) = Scalar(1) + params.nugget;
    for (Index j = 0; j < i; ++j) {
      const Scalar v = std::exp(-(design.row(i) - design.row(j)).squaredNorm() / params.range);
      out.values(i, j) = v;
      out.values(j, i) = v;
    }
  }

  if (!detail::try_llt(out.values, out.chol)) {
    out.values.diagonal().array() += Scalar(kCholJitter);
    if (!detail::try_llt(out.values, out.chol))
      throw DecompositionError("build_corr: correlation matrix not positive definite");
  }

  out.log_det = 2 * out.chol.diagonal().array().log().sum();
  // Inverse from the factor: L^-T L^-1.
  Matrix<Scalar> linv = Matrix<Scalar>::Identity(t, t);
  out.chol.template triangularView<Eigen::Lower>().solveInPlace(linv);
  out.inverse.noalias() = linv.transpose() * linv;
  return out;
}

/// Grow a correlation matrix by one point using the partition-inverse
/// equations: with mu(x) = [k_self - k' K^-1 k]^-1 and g(x) = -mu(x) K^-1 k,
///
///   K_{t+1}^-1 = [ K^-1 + g g'/mu   g  ]
///                [ g'               mu ],
///
/// in O(t^2) arithmetic.  The Cholesky factor is carried along by the usual
/// append step and the log-determinant by log|K_{t+1}| = log|K_t| - log mu.
template <typename Scalar>
CorrMatrix<Scalar> extend_inverse(const CorrMatrix<Scalar>& K, const Vector<Scalar>& k_new,
                                  Scalar k_self) {
  const Index t = K.size();
  if (k_new.size() != t) throw std::invalid_argument("extend_inverse: bad correlation vector");

  const Vector<Scalar> v = K.inverse * k_new;
  const Scalar cond_var = k_self - k_new.dot(v);
  if (!(cond_var > 0) || !std::isfinite(cond_var))
    throw DecompositionError("extend_inverse: conditional variance not positive");
  const Scalar mu = Scalar(1) / cond_var;

  CorrMatrix<Scalar> out;
  out.values.resize(t + 1, t + 1);
  out.values.topLeftCorner(t, t) = K.values;
  out.values.topRightCorner(t, 1) = k_new;
  out.values.bottomLeftCorner(1, t) = k_new.transpose();
  out.values(t, t) = k_self;

  out.inverse.resize(t + 1, t + 1);
  out.inverse.topLeftCorner(t, t) = K.inverse;
  out.inverse.topLeftCorner(t, t).noalias() += mu * v * v.transpose();
  out.inverse.topRightCorner(t, 1) = -mu * v;
  out.inverse.bottomLeftCorner(1, t) = (-mu * v).transpose();
  out.inverse(t, t) = mu;

  out.log_det = K.log_det - std::log(mu);

  if (K.has_chol()) {
    Vector<Scalar> l12 = k_new;
    K.chol.template triangularView<Eigen::Lower>().solveInPlace(l12);
    const Scalar diag_sq = k_self - l12.squaredNorm();
    if (diag_sq > 0) {
      out.chol = Matrix<Scalar>::Zero(t + 1, t + 1);
      out.chol.topLeftCorner(t, t) = K.chol;
      out.chol.bottomLeftCorner(1, t) = l12.transpose();
      out.chol(t, t) = std::sqrt(diag_sq);
    }
  }
  return out;
}

/// K^-1 B through the factorization when available, otherwise through the
/// cached inverse (matrices produced by long extend_inverse chains may have
/// dropped the factor).
template <typename Scalar, typename Derived>
Matrix<Scalar> block_solve(const CorrMatrix<Scalar>& K, const Eigen::MatrixBase<Derived>& B) {
  if (B.rows() != K.size()) throw std::invalid_argument("block_solve: dimension mismatch");
  if (K.has_chol()) {
    Matrix<Scalar> x = B;
    K.chol.template triangularView<Eigen::Lower>().solveInPlace(x);
    K.chol.transpose().template triangularView<Eigen::Upper>().solveInPlace(x);
    return x;
  }
  return K.inverse * B;
}

}  // namespace seqgp

#endif  // SEQGP_KERNEL_HPP
