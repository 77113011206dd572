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

#ifndef SEQGP_EXPERIMENTS_CONFIG_HPP
#define SEQGP_EXPERIMENTS_CONFIG_HPP

#include <string>

#include <json.hpp>

#include "seqgp/particle.hpp"

namespace seqgp {

/// Everything one experiment run needs.  Defaults come from the preset
/// (desk = CI-speed sizes, paper = the full-size study), explicit CLI flags
/// override the preset, and a JSON config file overrides the flags.
struct RunConfig {
  std::string experiment;  // sinusoid | class-static | class-al | ei-opt | fit
  std::string preset{"desk"};
  EngineConfig<double> engine;

  Index t_total{50};  // design size T
  Index reps{20};     // replications / paired seeds
  Index ei_candidates{40};
  Index pool_size{300};
  Index test_size{500};
  double noise_sd{0.1};
  Index mcmc_iters{2000};
  Index mcmc_thin{10};
  std::uint64_t seed{1};
  std::string out_dir{"out"};
  std::string format{"csv"};  // csv | json table output
  bool smooth_entropy{false};

  // fit-specific
  std::string fit_data;
  std::string fit_label_col;
  std::string fit_response_col;
  std::string fit_predict;

  void validate() const;
};

/// Fill experiment-dependent defaults for a preset.  Call before applying
/// explicit flag values.
void apply_preset(RunConfig& cfg, const std::string& experiment, const std::string& preset);

/// Overlay values from a JSON config file; unknown keys are an error.
void apply_config_file(RunConfig& cfg, const std::string& path);

/// Echo of the full effective configuration for reports.
nlohmann::json config_echo(const RunConfig& cfg);

}  // namespace seqgp

#endif  // SEQGP_EXPERIMENTS_CONFIG_HPP
