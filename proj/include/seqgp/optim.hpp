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

#ifndef SEQGP_OPTIM_HPP
#define SEQGP_OPTIM_HPP

#include <algorithm>
#include <functional>
#include <vector>

#include "seqgp/types.hpp"

namespace seqgp {

/// Derivative-free Nelder-Mead minimization restricted to the unit box.
/// Points are clamped to [0,1]^p before evaluation, so the minimizer returned
/// is always feasible.
template <typename Scalar, typename Fn>
Vector<Scalar> nelder_mead_box(Fn&& objective, Vector<Scalar> start, Scalar step = Scalar(0.1),
                               int max_iter = 200, Scalar tol = Scalar(1e-8)) {
  const Index p = start.size();
  const auto clamp = [](Vector<Scalar> x) {
    return x.cwiseMax(Scalar(0)).cwiseMin(Scalar(1)).eval();
  };
  const auto eval = [&](const Vector<Scalar>& x) { return objective(clamp(x)); };

  struct Node {
    Vector<Scalar> x;
    Scalar f;
  };
  std::vector<Node> simplex;
  simplex.reserve(size_t(p) + 1);
  start = clamp(std::move(start));
  simplex.push_back({start, eval(start)});
  for (Index j = 0; j < p; ++j) {
    Vector<Scalar> x = start;
    x[j] += (x[j] + step <= Scalar(1)) ? step : -step;
    simplex.push_back({x, eval(x)});
  }
  const auto by_f = [](const Node& a, const Node& b) { return a.f < b.f; };

  for (int it = 0; it < max_iter; ++it) {
    std::sort(simplex.begin(), simplex.end(), by_f);
    if (std::abs(simplex.back().f - simplex.front().f) < tol) break;

    Vector<Scalar> centroid = Vector<Scalar>::Zero(p);
    for (size_t i = 0; i + 1 < simplex.size(); ++i) centroid += simplex[i].x;
    centroid /= Scalar(p);

    Node& worst = simplex.back();
    const Vector<Scalar> refl = centroid + (centroid - worst.x);
    const Scalar f_refl = eval(refl);
    if (f_refl < simplex.front().f) {
      const Vector<Scalar> expa = centroid + Scalar(2) * (centroid - worst.x);
      const Scalar f_expa = eval(expa);
      worst = f_expa < f_refl ? Node{expa, f_expa} : Node{refl, f_refl};
    } else if (f_refl < simplex[simplex.size() - 2].f) {
      worst = {refl, f_refl};
    } else {
      const Vector<Scalar> contr = centroid + Scalar(0.5) * (worst.x - centroid);
      const Scalar f_contr = eval(contr);
      if (f_contr < worst.f) {
        worst = {contr, f_contr};
      } else {
        for (size_t i = 1; i < simplex.size(); ++i) {
          simplex[i].x = simplex[0].x + Scalar(0.5) * (simplex[i].x - simplex[0].x);
          simplex[i].f = eval(simplex[i].x);
        }
      }
    }
  }
  std::sort(simplex.begin(), simplex.end(), by_f);
  return clamp(simplex.front().x);
}

}  // namespace seqgp

#endif  // SEQGP_OPTIM_HPP
