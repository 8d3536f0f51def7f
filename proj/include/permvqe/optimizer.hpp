// Copyright 2026 The permvqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace permvqe {

enum class OptimizerKind { cobyla, nelder_mead };

std::string to_string(OptimizerKind k);
OptimizerKind parse_optimizer_kind(const std::string& s);

using Objective = std::function<double(std::span<const double>)>;

struct OptimizerOptions {
  OptimizerKind kind = OptimizerKind::cobyla;
  int max_evals = 10000;
  /// Initial and final trust-region radius (simplex scale for Nelder-Mead).
  double rho_begin = 1.0;
  double rho_end = 1e-8;
  /// Stop as soon as f <= f_target.
  double f_target = -std::numeric_limits<double>::infinity();

  void validate() const;
};

struct OptimizeResult {
  std::vector<double> x;
  double fx = 0.0;
  int evals = 0;
  /// Internal convergence (radius or simplex collapse, or target) rather
  /// than running out of evaluations.
  bool converged = false;
};

/// Derivative-free local minimization. The result is always the best point
/// evaluated.
///
/// cobyla: Powell-style linear-interpolation trust region without
/// constraints. A simplex of n+1 points defines a linear model; each step
/// moves the best vertex a distance rho down the model gradient, and rho is
/// halved whenever a step on a well-shaped simplex predicts poorly.
/// nelder_mead: adaptive-coefficient simplex search.
OptimizeResult minimize_local(const Objective& f, std::vector<double> x0, const OptimizerOptions& options);

}  // namespace permvqe
