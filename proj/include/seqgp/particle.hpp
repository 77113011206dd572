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

#ifndef SEQGP_PARTICLE_HPP
#define SEQGP_PARTICLE_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "seqgp/classify.hpp"
#include "seqgp/gp.hpp"
#include "seqgp/parallel.hpp"
#include "seqgp/rng.hpp"

namespace seqgp {

enum class ResampleScheme { Multinomial, Systematic };

template <typename Scalar>
struct EngineConfig {
  Index n_particles{1000};
  Index t0{5};
  Index init_mh_rounds{10000};
  Index init_thin{10};
  bool rejuvenate{true};
  Scalar window_u{4};
  Scalar window_l{3};
  Scalar window_gamma{0};  // >0 narrows the MH window as t grows
  PriorSpec<Scalar> prior{};
  ResampleScheme resample_scheme{ResampleScheme::Multinomial};
  std::uint64_t seed{0};
  int n_threads{1};
  Index class_mc_samples{100};  // L in the classification predictive
  Index gibbs_fold{10};

  void validate() const {
    if (n_particles < 1) throw std::invalid_argument("EngineConfig: need particles");
    if (!(window_u > window_l) || !(window_l > 0))
      throw std::invalid_argument("EngineConfig: need window_u > window_l > 0");
    if (init_thin < 1 || init_mh_rounds < 1)
      throw std::invalid_argument("EngineConfig: bad init chain settings");
    prior.validate();
  }

  /// Half-width ratio r of the sliding-window proposal Unif(d/r, d*r) at time
  /// t.  The baseline is u/l; gamma > 0 shrinks the ratio toward 1 as t grows.
  Scalar window_ratio_at(Index t) const {
    const Scalar r0 = window_u / window_l;
    if (window_gamma == 0 || t <= t0) return r0;
    const Scalar c = std::pow(Scalar(1) + Scalar(0.1) * Scalar(t - t0), window_gamma);
    return std::pow(r0, Scalar(1) / c);
  }
};

/// One sliding-window MH move on the kernel parameters against an arbitrary
/// log target.  Proposals are d* ~ Unif(d/r, d r) (and likewise for g), whose
/// width scales with the current value, so the asymmetry correction
/// q(d|d*)/q(d*|d) = d/d* enters the acceptance ratio.  try_target returns
/// nullopt when the proposal cannot even be evaluated (failed decomposition),
/// which counts as a rejection.  Returns true on acceptance, with params and
/// cur_log_target updated.
template <typename Scalar, typename TryTarget>
bool window_mh_move(KernelParams<Scalar>& params, Scalar& cur_log_target, Scalar window_ratio,
                    TryTarget&& try_target, RngStream& rng) {
  const Scalar r = window_ratio;
  if (!(r > 1)) throw std::invalid_argument("window_mh_move: ratio must exceed 1");
  const Scalar d_new = Scalar(rng.uniform(double(params.range / r), double(params.range * r)));
  const Scalar g_new = Scalar(rng.uniform(double(params.nugget / r), double(params.nugget * r)));
  const KernelParams<Scalar> prop(d_new, g_new);
  const std::optional<Scalar> prop_target = try_target(prop);
  if (!prop_target) return false;
  const Scalar log_q = std::log(params.range / d_new) + std::log(params.nugget / g_new);
  const Scalar log_a = *prop_target - cur_log_target + log_q;
  if (log_a >= 0 || std::log(rng.uniform()) < log_a) {
    params = prop;
    cur_log_target = *prop_target;
    return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Regression model
// ---------------------------------------------------------------------------

template <typename Scalar>
struct RegressionData {
  Matrix<Scalar> x;
  Vector<Scalar> y;

  Index t() const { return y.size(); }
  Index dim() const { return x.cols(); }

  void append(const Vector<Scalar>& xi, Scalar yi) {
    if (t() == 0 && x.cols() == 0) x.resize(0, xi.size());
    if (xi.size() != x.cols()) throw std::invalid_argument("RegressionData: dimension mismatch");
    x.conservativeResize(x.rows() + 1, Eigen::NoChange);
    x.row(x.rows() - 1) = xi.transpose();
    y.conservativeResize(y.size() + 1);
    y[y.size() - 1] = yi;
  }
};

template <typename Scalar_>
struct RegressionModel {
  using Scalar = Scalar_;
  using State = RegressionSuffInfo<Scalar>;
  using Data = RegressionData<Scalar>;

  struct Obs {
    Vector<Scalar> x;
    Scalar y;
  };

  static void append(Data& d, const Obs& z) { d.append(z.x, z.y); }

  static State make_state(const KernelParams<Scalar>& params, const Data& d, Index t,
                          const PriorSpec<Scalar>& prior) {
    return compute_suffstats(build_corr(d.x.topRows(t), params), Matrix<Scalar>(d.x.topRows(t)),
                             Vector<Scalar>(d.y.head(t)), params, prior, MeanBasis::Linear);
  }

  static Scalar log_un_posterior(const State& s) { return log_unnorm_posterior(s); }

  static Scalar log_pred_density(const State& s, const Data& d, const Obs& z,
                                 const EngineConfig<Scalar>&, RngStream&) {
    const auto pt = predict(s, Matrix<Scalar>(d.x.topRows(s.t)), Vector<Scalar>(d.y.head(s.t)),
                            z.x);
    return seqgp::log_predict_density(pt, z.y);
  }

  /// Deterministic propagate: copy the kernel parameters, extend K by the
  /// partition-inverse equations, recompute beta~, V_beta, psi.  The data
  /// must already contain the new observation as its last row.
  static void propagate(State& s, const Data& d, const Obs&, const EngineConfig<Scalar>&,
                        RngStream&) {
    const Index t_new = s.t + 1;
    if (d.t() < t_new) throw std::invalid_argument("propagate: data not yet appended");
    const Vector<Scalar> k =
        extension_corr_vector(d.x.topRows(s.t), Vector<Scalar>(d.x.row(t_new - 1)), s.params);
    CorrMatrix<Scalar> grown = extend_inverse(s.K, k, Scalar(1) + s.params.nugget);
    s = compute_suffstats(std::move(grown), Matrix<Scalar>(d.x.topRows(t_new)),
                          Vector<Scalar>(d.y.head(t_new)), s.params, s.prior, MeanBasis::Linear);
  }

  /// One window-MH step on (range, nugget) jointly, rebuilding the matrices
  /// for the proposal; a failed decomposition is a rejection.
  static bool mh_step(State& s, const Data& d, Scalar window_ratio, RngStream& rng) {
    KernelParams<Scalar> params = s.params;
    Scalar cur = log_un_posterior(s);
    std::optional<State> accepted;
    const bool ok = window_mh_move(
        params, cur, window_ratio,
        [&](const KernelParams<Scalar>& prop) -> std::optional<Scalar> {
          try {
            State cand = make_state(prop, d, s.t, s.prior);
            const Scalar target = log_un_posterior(cand);
            accepted = std::move(cand);
            return target;
          } catch (const DecompositionError&) {
            return std::nullopt;
          }
        },
        rng);
    if (ok) s = std::move(*accepted);
    return ok;
  }

  static State init_chain_start(const Data& d, Index t0, const PriorSpec<Scalar>& prior,
                                RngStream& rng) {
    for (int attempt = 0; attempt < 100; ++attempt) {
      try {
        return make_state(prior.sample_params(rng), d, t0, prior);
      } catch (const DecompositionError&) {
      }
    }
    throw DecompositionError("init: could not build a starting state from the prior");
  }

  /// One round of the initialization chain: independence proposal from the
  /// prior, accepted by the marginal-likelihood ratio (prior and proposal
  /// densities cancel).
  static void init_chain_round(State& s, const Data& d, Index t0, const EngineConfig<Scalar>& cfg,
                               RngStream& rng) {
    const KernelParams<Scalar> prop = cfg.prior.sample_params(rng);
    std::optional<State> cand;
    try {
      cand = make_state(prop, d, t0, cfg.prior);
    } catch (const DecompositionError&) {
      return;
    }
    const Scalar log_a = log_marginal(*cand) - log_marginal(s);
    if (log_a >= 0 || std::log(rng.uniform()) < log_a) s = std::move(*cand);
  }

  static bool mcmc_round(State& s, const Data& d, const EngineConfig<Scalar>& cfg,
                         RngStream& rng) {
    return mh_step(s, d, cfg.window_u / cfg.window_l, rng);
  }
};

// ---------------------------------------------------------------------------
// Classification model
// ---------------------------------------------------------------------------

template <typename Scalar>
struct ClassifyData {
  Matrix<Scalar> x;
  std::vector<int> labels;  // 1-based class labels
  int n_classes{0};

  Index t() const { return Index(labels.size()); }
  Index dim() const { return x.cols(); }

  void append(const Vector<Scalar>& xi, int label) {
    if (t() == 0 && x.cols() == 0) x.resize(0, xi.size());
    if (xi.size() != x.cols()) throw std::invalid_argument("ClassifyData: dimension mismatch");
    if (label < 1 || label > n_classes) throw std::invalid_argument("ClassifyData: bad label");
    x.conservativeResize(x.rows() + 1, Eigen::NoChange);
    x.row(x.rows() - 1) = xi.transpose();
    labels.push_back(label);
  }
};

template <typename Scalar_>
struct ClassifierModel {
  using Scalar = Scalar_;
  using State = ClassSuffInfo<Scalar>;
  using Data = ClassifyData<Scalar>;

  struct Obs {
    Vector<Scalar> x;
    int label{1};
  };

  static void append(Data& d, const Obs& z) { d.append(z.x, z.label); }

  /// Fresh state over the first t points: given latents when provided,
  /// otherwise zeros.  The proper prior makes t = 0 valid (empty matrices).
  static State make_state(const std::vector<KernelParams<Scalar>>& params, const Data& d, Index t,
                          const PriorSpec<Scalar>& prior,
                          const Matrix<Scalar>* latents = nullptr) {
    if (!prior.proper())
      throw std::invalid_argument("classification requires a proper prior (a, b > 0)");
    State s;
    s.n_classes = d.n_classes;
    s.t = t;
    if (Index(params.size()) != s.n_latent())
      throw std::invalid_argument("make_state: need one KernelParams per latent class");
    s.latents = latents ? Matrix<Scalar>(latents->leftCols(t))
                        : Matrix<Scalar>::Zero(s.n_latent(), t);
    s.per_class.reserve(size_t(s.n_latent()));
    for (Index m = 0; m < s.n_latent(); ++m) {
      if (t == 0) {
        RegressionSuffInfo<Scalar> cls;
        cls.params = params[size_t(m)];
        cls.prior = prior;
        cls.basis = MeanBasis::Zero;
        cls.t = 0;
        s.per_class.push_back(std::move(cls));
      } else {
        s.per_class.push_back(compute_suffstats(
            build_corr(d.x.topRows(t), params[size_t(m)]), Matrix<Scalar>(d.x.topRows(t)),
            Vector<Scalar>(s.latents.row(m)), params[size_t(m)], prior, MeanBasis::Zero));
      }
    }
    return s;
  }

  static Scalar log_un_posterior(const State& s) {
    Scalar out = 0;
    for (const auto& cls : s.per_class) out += log_unnorm_posterior(cls);
    return out;
  }

  static Scalar log_pred_density(const State& s, const Data& d, const Obs& z,
                                 const EngineConfig<Scalar>& cfg, RngStream& rng) {
    const auto probs = class_predictive(s, Matrix<Scalar>(d.x.topRows(s.t)), z.x,
                                        cfg.class_mc_samples, rng);
    return std::log(std::max<Scalar>(probs.probs[z.label - 1], Scalar(1e-300)));
  }

  /// Propagate: draw the new point's latents from the per-class predictives,
  /// extend every class's correlation matrix, then run one blocked
  /// MH-within-Gibbs sweep over all latents conditional on the labels.
  static void propagate(State& s, const Data& d, const Obs& z, const EngineConfig<Scalar>& cfg,
                        RngStream& rng) {
    const Index t_new = s.t + 1;
    if (d.t() < t_new) throw std::invalid_argument("propagate: data not yet appended");
    const Matrix<Scalar> x_old = d.x.topRows(s.t);
    const Vector<Scalar> fresh = sample_new_latents(s, x_old, z.x, rng);
    for (Index m = 0; m < s.n_latent(); ++m) {
      auto& cls = s.per_class[size_t(m)];
      const Vector<Scalar> k = extension_corr_vector(x_old, z.x, cls.params);
      cls.K = extend_inverse(cls.K, k, Scalar(1) + cls.params.nugget);
      cls.t = t_new;
    }
    s.latents.conservativeResize(Eigen::NoChange, t_new);
    s.latents.col(t_new - 1) = fresh;
    s.t = t_new;
    gibbs_propagate(s, Matrix<Scalar>(d.x.topRows(t_new)), d.labels, cfg.gibbs_fold, rng);
  }

  /// Window MH on each class's kernel parameters given that class's latents.
  static bool mh_step(State& s, const Data& d, Scalar window_ratio, RngStream& rng) {
    bool any = false;
    const Matrix<Scalar> x = d.x.topRows(s.t);
    for (Index m = 0; m < s.n_latent(); ++m) {
      auto& cls = s.per_class[size_t(m)];
      KernelParams<Scalar> params = cls.params;
      Scalar cur = log_unnorm_posterior(cls);
      std::optional<RegressionSuffInfo<Scalar>> accepted;
      const Vector<Scalar> latents_m = s.latents.row(m);
      const bool ok = window_mh_move(
          params, cur, window_ratio,
          [&](const KernelParams<Scalar>& prop) -> std::optional<Scalar> {
            try {
              auto cand = compute_suffstats(build_corr(x, prop), x, latents_m, prop, cls.prior,
                                            MeanBasis::Zero);
              const Scalar target = log_unnorm_posterior(cand);
              accepted = std::move(cand);
              return target;
            } catch (const DecompositionError&) {
              return std::nullopt;
            }
          },
          rng);
      if (ok) {
        cls = std::move(*accepted);
        any = true;
      }
    }
    return any;
  }

  static State init_chain_start(const Data& d, Index t0, const PriorSpec<Scalar>& prior,
                                RngStream& rng) {
    std::vector<KernelParams<Scalar>> params;
    for (Index m = 0; m + 1 < Index(d.n_classes); ++m) params.push_back(prior.sample_params(rng));
    for (int attempt = 0; attempt < 100; ++attempt) {
      try {
        return make_state(params, d, t0, prior);
      } catch (const DecompositionError&) {
        for (auto& p : params) p = prior.sample_params(rng);
      }
    }
    throw DecompositionError("init: could not build a starting state from the prior");
  }

  /// Hybrid initialization round: M-fold independence MH on the kernel
  /// parameters from the prior, interleaved with one Gibbs latent sweep.
  static void init_chain_round(State& s, const Data& d, Index t0, const EngineConfig<Scalar>& cfg,
                               RngStream& rng) {
    const Matrix<Scalar> x = d.x.topRows(t0);
    for (Index m = 0; m < s.n_latent(); ++m) {
      auto& cls = s.per_class[size_t(m)];
      const KernelParams<Scalar> prop = cfg.prior.sample_params(rng);
      std::optional<RegressionSuffInfo<Scalar>> cand;
      try {
        cand = compute_suffstats(build_corr(x, prop), x, Vector<Scalar>(s.latents.row(m)), prop,
                                 cfg.prior, MeanBasis::Zero);
      } catch (const DecompositionError&) {
        continue;
      }
      const Scalar log_a = log_marginal(*cand) - log_marginal(cls);
      if (log_a >= 0 || std::log(rng.uniform()) < log_a) cls = std::move(*cand);
    }
    std::vector<int> head(d.labels.begin(), d.labels.begin() + t0);
    gibbs_propagate(s, x, head, cfg.gibbs_fold, rng);
  }

  static bool mcmc_round(State& s, const Data& d, const EngineConfig<Scalar>& cfg,
                         RngStream& rng) {
    const bool moved = mh_step(s, d, cfg.window_u / cfg.window_l, rng);
    gibbs_propagate(s, Matrix<Scalar>(d.x.topRows(s.t)), d.labels, cfg.gibbs_fold, rng);
    return moved;
  }
};

// ---------------------------------------------------------------------------
// Particle set
// ---------------------------------------------------------------------------

template <typename Scalar>
Scalar effective_sample_size(const Vector<Scalar>& normalized_weights) {
  return Scalar(1) / normalized_weights.squaredNorm();
}

/// Multinomial or systematic resampling from normalized weights.
template <typename Scalar>
std::vector<Index> resample_from_weights(const Vector<Scalar>& w, ResampleScheme scheme,
                                         RngStream& rng) {
  const Index n = w.size();
  Vector<Scalar> cum(n);
  Scalar acc = 0;
  for (Index i = 0; i < n; ++i) {
    acc += w[i];
    cum[i] = acc;
  }
  cum[n - 1] = Scalar(1);  // guard against rounding
  std::vector<Index> out(size_t(n));
  if (scheme == ResampleScheme::Multinomial) {
    for (Index k = 0; k < n; ++k) {
      const Scalar u = Scalar(rng.uniform());
      out[size_t(k)] = Index(std::lower_bound(cum.data(), cum.data() + n, u) - cum.data());
    }
  } else {
    const Scalar u0 = Scalar(rng.uniform()) / Scalar(n);
    Index j = 0;
    for (Index k = 0; k < n; ++k) {
      const Scalar pos = u0 + Scalar(k) / Scalar(n);
      while (j < n - 1 && cum[j] < pos) ++j;
      out[size_t(k)] = j;
    }
  }
  return out;
}

/// The particle-learning engine.  Holds N sufficient-information states, the
/// shared growing data record and one RNG stream per particle plus one for
/// resampling.  Every update is: resample by one-step predictive weight,
/// propagate each resampled particle, optionally rejuvenate by one MH step.
template <typename Model>
class ParticleSet {
 public:
  using Scalar = typename Model::Scalar;
  using State = typename Model::State;
  using Data = typename Model::Data;
  using Obs = typename Model::Obs;
  using Config = EngineConfig<Scalar>;

  /// Build the initial particle approximation at time t0.  With t0 > 0 an MH
  /// chain targeting p(K | z^t0) is run for max(init_mh_rounds, N*init_thin)
  /// rounds with proposals from the prior, thinned every init_thin rounds,
  /// and the last N snapshots become the particles.  With t0 = 0 (proper
  /// prior only) the particles are iid prior draws.
  static ParticleSet initialize(Data data, const Config& cfg) {
    cfg.validate();
    ParticleSet ps(std::move(data), cfg);
    const Index n = cfg.n_particles;
    if (cfg.t0 == 0) {
      if (!cfg.prior.proper())
        throw std::invalid_argument("initialize: t0 = 0 requires a proper prior");
      ps.particles_.reserve(size_t(n));
      for (Index i = 0; i < n; ++i)
        ps.particles_.push_back(Model::init_chain_start(ps.data_, 0, cfg.prior, ps.streams_[size_t(i)]));
      ps.t_ = 0;
      return ps;
    }
    if (ps.data_.t() < cfg.t0) throw std::invalid_argument("initialize: data shorter than t0");
    if (!cfg.prior.proper() && cfg.t0 <= ps.data_.dim() + 1)
      throw std::invalid_argument("initialize: improper prior needs t0 > p+1");

    RngStream& chain_rng = ps.streams_.back();
    State state = Model::init_chain_start(ps.data_, cfg.t0, cfg.prior, chain_rng);
    const Index rounds = std::max(cfg.init_mh_rounds, n * cfg.init_thin);
    std::vector<State> kept;
    kept.reserve(size_t(rounds / cfg.init_thin + 1));
    for (Index r = 1; r <= rounds; ++r) {
      Model::init_chain_round(state, ps.data_, cfg.t0, cfg, chain_rng);
      if (r % cfg.init_thin == 0) kept.push_back(state);
    }
    const Index start = Index(kept.size()) - n;
    ps.particles_.assign(kept.begin() + start, kept.end());
    ps.t_ = cfg.t0;
    return ps;
  }

  /// Restore from a snapshot: states are rebuilt, not deserialized.
  static ParticleSet restore(Data data, const Config& cfg, std::vector<State> particles, Index t,
                             std::vector<RngStream> streams, std::vector<Scalar> ess_trace) {
    ParticleSet ps(std::move(data), cfg);
    if (Index(particles.size()) != cfg.n_particles)
      throw std::invalid_argument("restore: particle count mismatch");
    ps.particles_ = std::move(particles);
    ps.t_ = t;
    if (!streams.empty()) ps.streams_ = std::move(streams);
    ps.ess_trace_ = std::move(ess_trace);
    return ps;
  }

  /// Normalized resampling weights for the next observation,
  /// w_i ∝ p(z_{t+1} | S_t^{(i)}), computed in log space with
  /// max-subtraction.  Throws if every weight degenerates, naming the first
  /// offending particles.
  Vector<Scalar> normalized_weights(const Obs& z) {
    const Index n = n_particles();
    Vector<Scalar> logw(n);
    parallel_for(n, cfg_.n_threads, [&](Index i) {
      logw[i] = Model::log_pred_density(particles_[size_t(i)], data_, z, cfg_, streams_[size_t(i)]);
    });
    Scalar mx = -std::numeric_limits<Scalar>::infinity();
    for (Index i = 0; i < n; ++i)
      if (std::isfinite(logw[i])) mx = std::max(mx, logw[i]);
    if (!std::isfinite(mx)) {
      std::ostringstream msg;
      msg << "normalized_weights: all weights degenerate; first log-weights:";
      for (Index i = 0; i < std::min<Index>(n, 5); ++i) msg << ' ' << logw[i];
      throw std::runtime_error(msg.str());
    }
    Vector<Scalar> w(n);
    for (Index i = 0; i < n; ++i) w[i] = std::isfinite(logw[i]) ? std::exp(logw[i] - mx) : Scalar(0);
    const Scalar total = w.sum();
    return w / total;
  }

  std::vector<Index> resample_indices(const Vector<Scalar>& weights) {
    return resample_from_weights(weights, cfg_.resample_scheme, streams_.back());
  }

  /// One PL update with the new observation: resample, propagate, rejuvenate.
  void update(const Obs& z) {
    const Vector<Scalar> w = normalized_weights(z);
    ess_trace_.push_back(effective_sample_size(w));
    const std::vector<Index> zeta = resample_indices(w);

    Model::append(data_, z);
    const Index t_new = t_ + 1;

    std::vector<State> next(size_t(n_particles()));
    const Scalar ratio = cfg_.window_ratio_at(t_new);
    parallel_for(n_particles(), cfg_.n_threads, [&](Index i) {
      State s = particles_[size_t(zeta[size_t(i)])];
      Model::propagate(s, data_, z, cfg_, streams_[size_t(i)]);
      if (cfg_.rejuvenate) Model::mh_step(s, data_, ratio, streams_[size_t(i)]);
      next[size_t(i)] = std::move(s);
    });
    particles_ = std::move(next);
    t_ = t_new;
  }

  Index n_particles() const { return Index(particles_.size()); }
  Index t() const { return t_; }
  const Data& data() const { return data_; }
  Data& data() { return data_; }
  const Config& config() const { return cfg_; }
  const std::vector<State>& particles() const { return particles_; }
  std::vector<State>& particles() { return particles_; }
  const std::vector<Scalar>& ess_trace() const { return ess_trace_; }
  const std::vector<RngStream>& streams() const { return streams_; }

  /// Index of the maximum-a-posteriori particle (unnormalized posterior).
  Index map_particle() const {
    Index best = 0;
    Scalar best_val = -std::numeric_limits<Scalar>::infinity();
    for (Index i = 0; i < n_particles(); ++i) {
      const Scalar v = Model::log_un_posterior(particles_[size_t(i)]);
      if (v > best_val) {
        best_val = v;
        best = i;
      }
    }
    return best;
  }

 private:
  ParticleSet(Data data, const Config& cfg)
      : cfg_(cfg), data_(std::move(data)),
        streams_(make_streams(cfg.seed, size_t(cfg.n_particles) + 1)) {}

  Config cfg_;
  Data data_;
  Index t_{0};
  std::vector<State> particles_;
  std::vector<RngStream> streams_;
  std::vector<Scalar> ess_trace_;
};

/// Batch-MCMC baseline sharing the window-MH kernel: a single chain over the
/// full data, thinned.  Output length is iters / thin.
template <typename Model>
std::vector<typename Model::State> run_mcmc(const typename Model::Data& data, Index iters,
                                            Index thin, const EngineConfig<typename Model::Scalar>& cfg,
                                            RngStream& rng) {
  if (thin < 1 || iters < thin) throw std::invalid_argument("run_mcmc: bad iters/thin");
  typename Model::State state = Model::init_chain_start(data, data.t(), cfg.prior, rng);
  std::vector<typename Model::State> out;
  out.reserve(size_t(iters / thin));
  for (Index r = 1; r <= iters; ++r) {
    Model::mcmc_round(state, data, cfg, rng);
    if (r % thin == 0) out.push_back(state);
  }
  return out;
}

}  // namespace seqgp

#endif  // SEQGP_PARTICLE_HPP
