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

#ifndef SEQGP_DESIGN_HPP
#define SEQGP_DESIGN_HPP

#include <algorithm>
#include <iostream>
#include <limits>
#include <numeric>
#include <optional>

#include "seqgp/optim.hpp"
#include "seqgp/particle.hpp"

namespace seqgp {

enum class Provenance { FreshLhd, FixedPool, Augmented };

/// Candidate locations in the scaled [0,1]^p input domain.
template <typename Scalar>
struct CandidateSet {
  Matrix<Scalar> points;
  Provenance provenance{Provenance::FreshLhd};

  Index size() const { return points.rows(); }
};

template <typename Scalar>
struct AcquisitionRecord {
  Vector<Scalar> chosen;
  Index chosen_index{0};
  Scalar score{0};
  std::optional<Vector<Scalar>> x_star;
  Vector<Scalar> per_candidate;
};

/// Expected improvement under a Student-t predictive with dof > 1:
///   E I = delta T_nu(delta/s) + [nu s + delta^2/s] t_nu(delta/s) / (nu - 1),
/// delta = f_min - mean, s = sqrt(scale2).  In the s -> 0 limit this is the
/// certain improvement max(delta, 0).
template <typename Scalar>
Scalar expected_improvement(const PredictiveT<Scalar>& pt, Scalar f_min) {
  if (!(pt.dof > 1)) throw std::invalid_argument("expected_improvement: needs dof > 1");
  const Scalar s = std::sqrt(pt.scale2);
  const Scalar delta = f_min - pt.mean;
  if (s < Scalar(1e-14)) return std::max<Scalar>(delta, 0);
  const Scalar z = delta / s;
  const Scalar ei = delta * student_t_cdf(z, pt.dof) +
                    (pt.dof * s + delta * delta / s) * student_t_pdf(z, pt.dof) / (pt.dof - 1);
  return std::max<Scalar>(ei, 0);
}

enum class FminMode { Observed, MeanSurface };

/// Particle-averaged predictive mean at one point.
template <typename Scalar>
Scalar posterior_mean_at(const ParticleSet<RegressionModel<Scalar>>& ps, const Vector<Scalar>& x) {
  const auto& d = ps.data();
  Scalar acc = 0;
  for (const auto& s : ps.particles())
    acc += predict(s, Matrix<Scalar>(d.x.topRows(s.t)), Vector<Scalar>(d.y.head(s.t)), x).mean;
  return acc / Scalar(ps.n_particles());
}

/// Current best value: the first order statistic of the observed responses,
/// or (for noisy responses) the minimum of the particle-averaged predictive
/// mean over the probe points plus the training inputs.
template <typename Scalar>
Scalar f_min(const ParticleSet<RegressionModel<Scalar>>& ps, FminMode mode,
             const CandidateSet<Scalar>& probe) {
  const auto& d = ps.data();
  if (d.t() == 0) throw std::invalid_argument("f_min: no data");
  if (mode == FminMode::Observed) return d.y.minCoeff();
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (Index j = 0; j < probe.size(); ++j)
    best = std::min(best, posterior_mean_at(ps, Vector<Scalar>(probe.points.row(j))));
  for (Index i = 0; i < d.t(); ++i)
    best = std::min(best, posterior_mean_at(ps, Vector<Scalar>(d.x.row(i))));
  return best;
}

/// Minimum-mean-predictive location of the MAP particle: pick the particle
/// with the highest unnormalized posterior, then minimize its predictive mean
/// with a local derivative-free search started from the best seed candidate.
template <typename Scalar>
Vector<Scalar> map_candidate(const ParticleSet<RegressionModel<Scalar>>& ps,
                             const CandidateSet<Scalar>& seeds) {
  if (ps.n_particles() == 0 || seeds.size() == 0)
    throw std::invalid_argument("map_candidate: empty particles or seeds");
  const auto& d = ps.data();
  const auto& s = ps.particles()[size_t(ps.map_particle())];
  const Matrix<Scalar> x_train = d.x.topRows(s.t);
  const Vector<Scalar> y_train = d.y.head(s.t);
  const auto mean_at = [&](const Vector<Scalar>& x) {
    return predict(s, x_train, y_train, x).mean;
  };

  Index best = 0;
  Scalar best_val = std::numeric_limits<Scalar>::infinity();
  for (Index j = 0; j < seeds.size(); ++j) {
    const Scalar v = mean_at(Vector<Scalar>(seeds.points.row(j)));
    if (v < best_val) {
      best_val = v;
      best = j;
    }
  }
  const Vector<Scalar> seed = seeds.points.row(best);
  try {
    Vector<Scalar> opt = nelder_mead_box<Scalar>(mean_at, seed);
    return mean_at(opt) <= best_val ? opt : seed;
  } catch (const std::exception&) {
    return seed;  // fall back to the best seed point
  }
}

/// EI-maximizing acquisition: fresh candidates augmented with the MAP
/// minimum-mean location, scored by the particle-averaged EI.  Particles with
/// dof <= 1 contribute zero with a warning instead of failing the average.
template <typename Scalar>
AcquisitionRecord<Scalar> choose_next_ei(const ParticleSet<RegressionModel<Scalar>>& ps,
                                         const CandidateSet<Scalar>& cands,
                                         FminMode mode = FminMode::MeanSurface) {
  const auto& d = ps.data();
  const Matrix<Scalar> x_train = d.x;
  const Vector<Scalar> y_train = d.y;

  const Vector<Scalar> x_star = map_candidate(ps, cands);
  Matrix<Scalar> all(cands.size() + 1, cands.points.cols());
  all.topRows(cands.size()) = cands.points;
  all.row(cands.size()) = x_star.transpose();

  const Scalar fmin = f_min(ps, mode, cands);

  Index skipped = 0;
  Vector<Scalar> scores = Vector<Scalar>::Zero(all.rows());
  for (const auto& s : ps.particles()) {
    const Matrix<Scalar> xt = x_train.topRows(s.t);
    const Vector<Scalar> yt = y_train.head(s.t);
    for (Index j = 0; j < all.rows(); ++j) {
      const auto pt = predict(s, xt, yt, Vector<Scalar>(all.row(j)));
      if (pt.dof > 1) {
        scores[j] += expected_improvement(pt, fmin);
      } else {
        ++skipped;
      }
    }
  }
  if (skipped > 0)
    std::cerr << "choose_next_ei: " << skipped
              << " particle evaluations had dof <= 1 and contributed zero EI\n";
  scores /= Scalar(ps.n_particles());

  AcquisitionRecord<Scalar> rec;
  Index best = 0;
  for (Index j = 1; j < scores.size(); ++j)
    if (scores[j] > scores[best]) best = j;  // ties keep the lowest index
  rec.chosen = all.row(best);
  rec.chosen_index = best;
  rec.score = scores[best];
  rec.x_star = x_star;
  rec.per_candidate = scores;
  return rec;
}

/// Shannon entropy of a class distribution, with 0 log 0 := 0.
template <typename Scalar>
Scalar entropy(const ClassProbs<Scalar>& probs) {
  Scalar h = 0;
  for (Index m = 0; m < probs.probs.size(); ++m) {
    const Scalar p = probs.probs[m];
    if (p > 0) h -= p * std::log(p);
  }
  return h;
}

/// Best-versus-second-best entropy: binary entropy of the two largest class
/// probabilities after renormalization; insensitive to irrelevant classes.
template <typename Scalar>
Scalar bvsb_entropy(const ClassProbs<Scalar>& probs) {
  const Index m = probs.probs.size();
  if (m < 2) return 0;
  Scalar top1 = -1, top2 = -1;
  for (Index i = 0; i < m; ++i) {
    const Scalar p = probs.probs[i];
    if (p > top1) {
      top2 = top1;
      top1 = p;
    } else if (p > top2) {
      top2 = p;
    }
  }
  const Scalar total = top1 + top2;
  if (!(total > 0)) return 0;
  ClassProbs<Scalar> two;
  two.probs = Vector<Scalar>(2);
  two.probs << top1 / total, top2 / total;
  return entropy(two);
}

/// Mean class probabilities over the particles at one point.
template <typename Scalar>
ClassProbs<Scalar> posterior_class_probs(ParticleSet<ClassifierModel<Scalar>>& ps,
                                         const Vector<Scalar>& x, Index n_samples) {
  auto& d = ps.data();
  Vector<Scalar> acc = Vector<Scalar>::Zero(d.n_classes);
  auto& particles = ps.particles();
  std::vector<RngStream>& streams = const_cast<std::vector<RngStream>&>(ps.streams());
  std::vector<Vector<Scalar>> per(particles.size());
  parallel_for(Index(particles.size()), ps.config().n_threads, [&](Index i) {
    per[size_t(i)] = class_predictive(particles[size_t(i)], Matrix<Scalar>(d.x.topRows(ps.t())),
                                      x, n_samples, streams[size_t(i)])
                         .probs;
  });
  for (const auto& p : per) acc += p;
  ClassProbs<Scalar> out;
  out.probs = acc / Scalar(particles.size());
  return out;
}

/// Entropy-driven acquisition over a candidate pool: per-candidate
/// particle-mean BVSB entropy, optionally smoothed across candidates by a
/// normalized Gaussian kernel exp(-||x - x'||^2 / d_s).  smooth_range <= 0
/// means "use the MAP particle's range".
template <typename Scalar>
AcquisitionRecord<Scalar> choose_next_entropy(ParticleSet<ClassifierModel<Scalar>>& ps,
                                              const CandidateSet<Scalar>& cands,
                                              bool smooth = false, Scalar smooth_range = 0) {
  if (cands.size() == 0) throw std::invalid_argument("choose_next_entropy: empty candidate pool");
  const Index n = cands.size();
  const Index n_samples = ps.config().class_mc_samples;

  Vector<Scalar> scores(n);
  for (Index j = 0; j < n; ++j) {
    const auto probs = posterior_class_probs(ps, Vector<Scalar>(cands.points.row(j)), n_samples);
    scores[j] = bvsb_entropy(probs);
  }

  if (smooth) {
    Scalar ds = smooth_range;
    if (!(ds > 0)) ds = ps.particles()[size_t(ps.map_particle())].per_class[0].params.range;
    Vector<Scalar> smoothed(n);
    for (Index j = 0; j < n; ++j) {
      Scalar num = 0, den = 0;
      for (Index k = 0; k < n; ++k) {
        const Scalar w =
            std::exp(-(cands.points.row(j) - cands.points.row(k)).squaredNorm() / ds);
        num += w * scores[k];
        den += w;
      }
      smoothed[j] = num / den;
    }
    scores = smoothed;
  }

  AcquisitionRecord<Scalar> rec;
  Index best = 0;
  for (Index j = 1; j < n; ++j)
    if (scores[j] > scores[best]) best = j;  // ties keep the lowest index
  rec.chosen = cands.points.row(best);
  rec.chosen_index = best;
  rec.score = scores[best];
  rec.per_candidate = scores;
  return rec;
}

/// Latin hypercube design on [0,1)^p: per dimension, a random permutation of
/// the n strata with uniform jitter inside each stratum.
template <typename Scalar = double>
CandidateSet<Scalar> lhd(Index n, Index p, RngStream& rng) {
  if (n < 1 || p < 1) throw std::invalid_argument("lhd: need n, p >= 1");
  CandidateSet<Scalar> out;
  out.provenance = Provenance::FreshLhd;
  out.points.resize(n, p);
  std::vector<Index> perm(size_t(n));
  for (Index j = 0; j < p; ++j) {
    std::iota(perm.begin(), perm.end(), Index(0));
    std::shuffle(perm.begin(), perm.end(), rng.engine());
    for (Index i = 0; i < n; ++i)
      out.points(i, j) = (Scalar(perm[size_t(i)]) + Scalar(rng.uniform())) / Scalar(n);
  }
  return out;
}

/// Greedy maximum entropy design: select n pool points maximizing the
/// log-determinant of their correlation matrix at reference range d_ref.
/// Each addition maximizes the determinant increment, i.e. the conditional
/// variance 1 - k'K^-1 k (the partition-inverse 1/mu quantity), tracked
/// incrementally in O(pool * t) per round.  Seeded with the pool point
/// closest to the pool centroid.
template <typename Scalar>
CandidateSet<Scalar> med(Index n, const CandidateSet<Scalar>& pool, Scalar d_ref = Scalar(0.5)) {
  const Index m = pool.size();
  if (n < 1 || m < n) throw std::invalid_argument("med: pool exhausted");
  const Index p = pool.points.cols();
  const KernelParams<Scalar> params(d_ref, Scalar(1e-9));  // tiny nugget keeps late steps PD

  const RowVector<Scalar> centroid = pool.points.colwise().mean();
  Index seed = 0;
  Scalar seed_dist = std::numeric_limits<Scalar>::infinity();
  for (Index i = 0; i < m; ++i) {
    const Scalar dist = (pool.points.row(i) - centroid).squaredNorm();
    if (dist < seed_dist) {
      seed_dist = dist;
      seed = i;
    }
  }

  std::vector<Index> selected{seed};
  std::vector<bool> used(size_t(m), false);
  used[size_t(seed)] = true;

  CorrMatrix<Scalar> K = build_corr(Matrix<Scalar>(pool.points.row(seed)), params);
  // Correlations of every pool point to the selected set, grown column-wise.
  Matrix<Scalar> cross(m, n);
  Vector<Scalar> cond(m);  // conditional variance of each candidate
  for (Index i = 0; i < m; ++i) {
    const Scalar k0 =
        std::exp(-(pool.points.row(i) - pool.points.row(seed)).squaredNorm() / d_ref);
    cross(i, 0) = k0;
    cond[i] = Scalar(1) + params.nugget - k0 * k0 * K.inverse(0, 0);
  }

  while (Index(selected.size()) < n) {
    const Index t = Index(selected.size());
    Index best = -1;
    Scalar best_var = -std::numeric_limits<Scalar>::infinity();
    for (Index i = 0; i < m; ++i) {
      if (used[size_t(i)]) continue;
      if (cond[i] > best_var) {
        best_var = cond[i];
        best = i;
      }
    }
    const Vector<Scalar> k_new = cross.row(best).head(t);
    K = extend_inverse(K, k_new, Scalar(1) + params.nugget);
    used[size_t(best)] = true;
    selected.push_back(best);

    // Rank-one refresh of every candidate's conditional variance.
    const Scalar mu = K.inverse(t, t);
    const auto g_col = K.inverse.col(t).head(t);
    for (Index i = 0; i < m; ++i) {
      if (used[size_t(i)]) continue;
      const Scalar k_i =
          std::exp(-(pool.points.row(i) - pool.points.row(best)).squaredNorm() / d_ref);
      const Scalar s = cross.row(i).head(t).dot(g_col) + mu * k_i;
      cond[i] -= s * s / mu;
      cross(i, t) = k_i;
    }
  }

  CandidateSet<Scalar> out;
  out.provenance = Provenance::FixedPool;
  out.points.resize(n, p);
  for (Index r = 0; r < n; ++r) out.points.row(r) = pool.points.row(selected[size_t(r)]);
  return out;
}

}  // namespace seqgp

#endif  // SEQGP_DESIGN_HPP
