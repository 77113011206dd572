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

#ifndef SEQGP_EXPERIMENTS_DATASETS_HPP
#define SEQGP_EXPERIMENTS_DATASETS_HPP

#include "seqgp/types.hpp"

namespace seqgp {

// --- synthetic generators ---------------------------------------------------

/// 1-d sinusoid: sin(pi x / 5) + cos(4 pi x / 5) / 5 on [0, 9.6].
double sinusoid(double x);
inline constexpr double kSinusoidLo = 0.0;
inline constexpr double kSinusoidHi = 9.6;

/// 2-d exponential: x1 exp(-x1^2 - x2^2) on [-2, 2]^2.
double exp2d(double x1, double x2);
inline constexpr double kExp2dLo = -2.0;
inline constexpr double kExp2dHi = 2.0;
/// Its global minimizer (-sqrt(1/2), 0).
inline constexpr double kExp2dMinX1 = -0.7071067811865476;
inline constexpr double kExp2dMinX2 = 0.0;

/// Hessian trace of exp2d has the sign of x1 (x1^2 + x2^2 - 2).  Labels:
/// 1 where the trace is negative and x1 <= 0, 3 where it is negative and
/// x1 > 0, 2 otherwise.
int exp2d_class_label(double x1, double x2);

// --- input/output scaling ----------------------------------------------------

/// Inputs scaled to [0,1]^p by an affine domain map and outputs standardized
/// to mean zero, range one.  Keeps both raw and scaled copies plus the maps,
/// so raw -> scaled -> raw round trips exactly.
struct ScaledData {
  MatrixXd x_raw, x_scaled;
  VectorXd y_raw, y_scaled;
  VectorXd x_lo, x_hi;
  double y_center{0}, y_range{1};

  static ScaledData make(MatrixXd x, VectorXd y, VectorXd x_lo, VectorXd x_hi);
  /// Domain bounds taken from the data itself (per-dimension min/max).
  static ScaledData make_from_data(MatrixXd x, VectorXd y);

  VectorXd scale_x(const VectorXd& raw) const;
  VectorXd unscale_x(const VectorXd& scaled) const;
  double scale_y(double raw) const { return (raw - y_center) / y_range; }
  double unscale_y(double scaled) const { return scaled * y_range + y_center; }
};

}  // namespace seqgp

#endif  // SEQGP_EXPERIMENTS_DATASETS_HPP
