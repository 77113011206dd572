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

#ifndef SEQGP_SNAPSHOT_HPP
#define SEQGP_SNAPSHOT_HPP

#include <fstream>
#include <string>

#include <json.hpp>

#include "seqgp/particle.hpp"

namespace seqgp {

/// Versioned structured-text snapshot of a particle set: config, time, data,
/// per-particle kernel parameters (and latents for classification) and the
/// RNG stream states.  Matrices are rebuilt on load rather than serialized.
inline constexpr int kSnapshotVersion = 1;

namespace detail {

template <typename Scalar>
nlohmann::json matrix_to_json(const Matrix<Scalar>& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename Scalar>
Matrix<Scalar> matrix_from_json(const nlohmann::json& j, Index cols_hint = 0) {
  const Index rows = Index(j.size());
  Index cols = cols_hint;
  if (rows > 0) cols = Index(j.at(0).size());
  Matrix<Scalar> m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index c = 0; c < cols; ++c) m(i, c) = j.at(size_t(i)).at(size_t(c)).get<Scalar>();
  return m;
}

}  // namespace detail

template <typename Scalar>
nlohmann::json config_to_json(const EngineConfig<Scalar>& cfg) {
  return nlohmann::json{
      {"n_particles", cfg.n_particles},
      {"t0", cfg.t0},
      {"init_mh_rounds", cfg.init_mh_rounds},
      {"init_thin", cfg.init_thin},
      {"rejuvenate", cfg.rejuvenate},
      {"window_u", cfg.window_u},
      {"window_l", cfg.window_l},
      {"window_gamma", cfg.window_gamma},
      {"prior", {{"a", cfg.prior.a},
                 {"b", cfg.prior.b},
                 {"lambda_range", cfg.prior.lambda_range},
                 {"lambda_nugget", cfg.prior.lambda_nugget}}},
      {"resample", cfg.resample_scheme == ResampleScheme::Multinomial ? "multinomial"
                                                                      : "systematic"},
      {"seed", cfg.seed},
      {"n_threads", cfg.n_threads},
      {"class_mc_samples", cfg.class_mc_samples},
      {"gibbs_fold", cfg.gibbs_fold}};
}

template <typename Scalar>
EngineConfig<Scalar> config_from_json(const nlohmann::json& j) {
  EngineConfig<Scalar> cfg;
  cfg.n_particles = j.at("n_particles").get<Index>();
  cfg.t0 = j.at("t0").get<Index>();
  cfg.init_mh_rounds = j.at("init_mh_rounds").get<Index>();
  cfg.init_thin = j.at("init_thin").get<Index>();
  cfg.rejuvenate = j.at("rejuvenate").get<bool>();
  cfg.window_u = j.at("window_u").get<Scalar>();
  cfg.window_l = j.at("window_l").get<Scalar>();
  cfg.window_gamma = j.at("window_gamma").get<Scalar>();
  cfg.prior.a = j.at("prior").at("a").get<Scalar>();
  cfg.prior.b = j.at("prior").at("b").get<Scalar>();
  cfg.prior.lambda_range = j.at("prior").at("lambda_range").get<Scalar>();
  cfg.prior.lambda_nugget = j.at("prior").at("lambda_nugget").get<Scalar>();
  cfg.resample_scheme = j.at("resample").get<std::string>() == "systematic"
                            ? ResampleScheme::Systematic
                            : ResampleScheme::Multinomial;
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.n_threads = j.at("n_threads").get<int>();
  cfg.class_mc_samples = j.at("class_mc_samples").get<Index>();
  cfg.gibbs_fold = j.at("gibbs_fold").get<Index>();
  return cfg;
}

template <typename Scalar>
nlohmann::json snapshot_to_json(const ParticleSet<RegressionModel<Scalar>>& ps) {
  nlohmann::json j;
  j["version"] = kSnapshotVersion;
  j["model"] = "regression";
  j["config"] = config_to_json(ps.config());
  j["t"] = ps.t();
  const auto& d = ps.data();
  j["data"]["x"] = detail::matrix_to_json(d.x);
  j["data"]["y"] = std::vector<Scalar>(d.y.data(), d.y.data() + d.y.size());
  nlohmann::json particles = nlohmann::json::array();
  for (const auto& s : ps.particles())
    particles.push_back({{"range", s.params.range}, {"nugget", s.params.nugget}});
  j["particles"] = std::move(particles);
  nlohmann::json rng = nlohmann::json::array();
  for (const auto& stream : ps.streams()) rng.push_back(stream.save_state());
  j["rng"] = std::move(rng);
  j["ess"] = ps.ess_trace();
  return j;
}

template <typename Scalar>
nlohmann::json snapshot_to_json(const ParticleSet<ClassifierModel<Scalar>>& ps) {
  nlohmann::json j;
  j["version"] = kSnapshotVersion;
  j["model"] = "classification";
  j["config"] = config_to_json(ps.config());
  j["t"] = ps.t();
  const auto& d = ps.data();
  j["data"]["x"] = detail::matrix_to_json(d.x);
  j["data"]["labels"] = d.labels;
  j["data"]["n_classes"] = d.n_classes;
  nlohmann::json particles = nlohmann::json::array();
  for (const auto& s : ps.particles()) {
    nlohmann::json classes = nlohmann::json::array();
    for (const auto& cls : s.per_class)
      classes.push_back({{"range", cls.params.range}, {"nugget", cls.params.nugget}});
    particles.push_back(
        {{"classes", std::move(classes)}, {"latents", detail::matrix_to_json(s.latents)}});
  }
  j["particles"] = std::move(particles);
  nlohmann::json rng = nlohmann::json::array();
  for (const auto& stream : ps.streams()) rng.push_back(stream.save_state());
  j["rng"] = std::move(rng);
  j["ess"] = ps.ess_trace();
  return j;
}

template <typename Scalar>
ParticleSet<RegressionModel<Scalar>> regression_from_json(const nlohmann::json& j) {
  if (j.at("version").get<int>() != kSnapshotVersion)
    throw std::runtime_error("snapshot: unsupported version");
  if (j.at("model").get<std::string>() != "regression")
    throw std::runtime_error("snapshot: wrong model kind");
  const auto cfg = config_from_json<Scalar>(j.at("config"));
  typename RegressionModel<Scalar>::Data data;
  data.x = detail::matrix_from_json<Scalar>(j.at("data").at("x"));
  const auto yvec = j.at("data").at("y").get<std::vector<Scalar>>();
  data.y = Eigen::Map<const Vector<Scalar>>(yvec.data(), Index(yvec.size()));
  const Index t = j.at("t").get<Index>();

  std::vector<RegressionSuffInfo<Scalar>> particles;
  particles.reserve(j.at("particles").size());
  for (const auto& pj : j.at("particles")) {
    const KernelParams<Scalar> params(pj.at("range").get<Scalar>(), pj.at("nugget").get<Scalar>());
    particles.push_back(RegressionModel<Scalar>::make_state(params, data, t, cfg.prior));
  }
  std::vector<RngStream> streams;
  for (const auto& sj : j.at("rng")) {
    streams.emplace_back();
    streams.back().load_state(sj.get<std::string>());
  }
  auto ess = j.at("ess").get<std::vector<Scalar>>();
  return ParticleSet<RegressionModel<Scalar>>::restore(std::move(data), cfg, std::move(particles),
                                                       t, std::move(streams), std::move(ess));
}

template <typename Scalar>
ParticleSet<ClassifierModel<Scalar>> classifier_from_json(const nlohmann::json& j) {
  if (j.at("version").get<int>() != kSnapshotVersion)
    throw std::runtime_error("snapshot: unsupported version");
  if (j.at("model").get<std::string>() != "classification")
    throw std::runtime_error("snapshot: wrong model kind");
  const auto cfg = config_from_json<Scalar>(j.at("config"));
  typename ClassifierModel<Scalar>::Data data;
  data.x = detail::matrix_from_json<Scalar>(j.at("data").at("x"));
  data.labels = j.at("data").at("labels").get<std::vector<int>>();
  data.n_classes = j.at("data").at("n_classes").get<int>();
  const Index t = j.at("t").get<Index>();

  std::vector<ClassSuffInfo<Scalar>> particles;
  particles.reserve(j.at("particles").size());
  for (const auto& pj : j.at("particles")) {
    std::vector<KernelParams<Scalar>> params;
    for (const auto& cj : pj.at("classes"))
      params.emplace_back(cj.at("range").get<Scalar>(), cj.at("nugget").get<Scalar>());
    const Matrix<Scalar> latents = detail::matrix_from_json<Scalar>(pj.at("latents"), t);
    particles.push_back(
        ClassifierModel<Scalar>::make_state(params, data, t, cfg.prior, &latents));
  }
  std::vector<RngStream> streams;
  for (const auto& sj : j.at("rng")) {
    streams.emplace_back();
    streams.back().load_state(sj.get<std::string>());
  }
  auto ess = j.at("ess").get<std::vector<Scalar>>();
  return ParticleSet<ClassifierModel<Scalar>>::restore(std::move(data), cfg, std::move(particles),
                                                       t, std::move(streams), std::move(ess));
}

template <typename ParticleSetT>
void save_snapshot(const ParticleSetT& ps, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_snapshot: cannot open " + path);
  out << snapshot_to_json(ps).dump(1) << "\n";
}

inline nlohmann::json load_snapshot_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_snapshot: cannot open " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

}  // namespace seqgp

#endif  // SEQGP_SNAPSHOT_HPP
