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

#include "experiments/datasets.hpp"

#include <cmath>
#include <stdexcept>

namespace seqgp {

double sinusoid(double x) {
  return std::sin(M_PI * x / 5.0) + std::cos(4.0 * M_PI * x / 5.0) / 5.0;
}

double exp2d(double x1, double x2) { return x1 * std::exp(-x1 * x1 - x2 * x2); }

int exp2d_class_label(double x1, double x2) {
  const double trace_sign = x1 * (x1 * x1 + x2 * x2 - 2.0);
  if (trace_sign < 0.0) return x1 > 0.0 ? 3 : 1;
  return 2;
}

ScaledData ScaledData::make(MatrixXd x, VectorXd y, VectorXd x_lo, VectorXd x_hi) {
  if (x.rows() != y.size()) throw std::invalid_argument("ScaledData: size mismatch");
  if (x_lo.size() != x.cols() || x_hi.size() != x.cols())
    throw std::invalid_argument("ScaledData: bad domain bounds");
  ScaledData out;
  out.x_lo = std::move(x_lo);
  out.x_hi = std::move(x_hi);
  out.y_center = y.size() > 0 ? y.mean() : 0.0;
  const double range = y.size() > 0 ? y.maxCoeff() - y.minCoeff() : 1.0;
  out.y_range = range > 0 ? range : 1.0;

  out.x_scaled.resize(x.rows(), x.cols());
  for (Index j = 0; j < x.cols(); ++j) {
    const double width = out.x_hi[j] - out.x_lo[j];
    if (!(width > 0)) throw std::invalid_argument("ScaledData: empty domain dimension");
    out.x_scaled.col(j) = (x.col(j).array() - out.x_lo[j]) / width;
  }
  out.y_scaled = (y.array() - out.y_center) / out.y_range;
  out.x_raw = std::move(x);
  out.y_raw = std::move(y);
  return out;
}

ScaledData ScaledData::make_from_data(MatrixXd x, VectorXd y) {
  VectorXd lo = x.colwise().minCoeff();
  VectorXd hi = x.colwise().maxCoeff();
  for (Index j = 0; j < x.cols(); ++j)
    if (!(hi[j] > lo[j])) hi[j] = lo[j] + 1.0;  // constant column
  return make(std::move(x), std::move(y), std::move(lo), std::move(hi));
}

VectorXd ScaledData::scale_x(const VectorXd& raw) const {
  return ((raw - x_lo).array() / (x_hi - x_lo).array()).matrix();
}

VectorXd ScaledData::unscale_x(const VectorXd& scaled) const {
  return (scaled.array() * (x_hi - x_lo).array()).matrix() + x_lo;
}

}  // namespace seqgp
