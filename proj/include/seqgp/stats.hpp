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

#ifndef SEQGP_STATS_HPP
#define SEQGP_STATS_HPP

#include <cmath>
#include <limits>
#include <stdexcept>

namespace seqgp {

namespace detail {

/// Continued fraction for the regularized incomplete beta (modified Lentz).
template <typename Scalar>
Scalar beta_cf(Scalar a, Scalar b, Scalar x) {
  const Scalar tiny = Scalar(1e-300);
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  Scalar qab = a + b, qap = a + 1, qam = a - 1;
  Scalar c = 1;
  Scalar d = 1 - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1 / d;
  Scalar h = d;
  for (int m = 1; m <= 300; ++m) {
    const Scalar m2 = Scalar(2 * m);
    Scalar aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1 / d;
    const Scalar del = d * c;
    h *= del;
    if (std::abs(del - 1) < eps) break;
  }
  return h;
}

}  // namespace detail

/// Regularized incomplete beta function I_x(a, b).
template <typename Scalar>
Scalar inc_beta(Scalar a, Scalar b, Scalar x) {
  if (!(a > 0) || !(b > 0)) throw std::invalid_argument("inc_beta: a, b must be positive");
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  const Scalar ln_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  if (x < (a + 1) / (a + b + 2)) {
    return std::exp(ln_front) * detail::beta_cf(a, b, x) / a;
  }
  return 1 - std::exp(ln_front) * detail::beta_cf(b, a, 1 - x) / b;
}

/// Log density of the standard Student-t at z.
template <typename Scalar>
Scalar student_t_logpdf(Scalar z, Scalar dof) {
  const Scalar half = Scalar(0.5);
  return std::lgamma(half * (dof + 1)) - std::lgamma(half * dof) -
         half * std::log(dof * Scalar(M_PI)) -
         half * (dof + 1) * std::log1p(z * z / dof);
}

template <typename Scalar>
Scalar student_t_pdf(Scalar z, Scalar dof) {
  return std::exp(student_t_logpdf(z, dof));
}

/// CDF of the standard Student-t.
template <typename Scalar>
Scalar student_t_cdf(Scalar z, Scalar dof) {
  if (z == 0) return Scalar(0.5);
  const Scalar x = dof / (dof + z * z);
  const Scalar tail = Scalar(0.5) * inc_beta(Scalar(0.5) * dof, Scalar(0.5), x);
  return z > 0 ? 1 - tail : tail;
}

}  // namespace seqgp

#endif  // SEQGP_STATS_HPP
