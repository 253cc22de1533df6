/* Copyright 2026 The mapcs Authors
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

#pragma once

// Greedy sparse recovery. Each MAP-* algorithm shares its loop with the
// conventional counterpart and differs only in how candidate indices are
// scored: log-MAP ratio instead of |correlation|.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mapcs/ensemble.hpp"

namespace mapcs {

enum class Algorithm { MapMp, MapOmp, MapGomp, MapCosamp, MapSp, Omp, Gomp, Cosamp, Sp };

std::string_view to_string(Algorithm a);
/// Accepts the CLI spelling, e.g. "map-gomp", "sp".
Algorithm parse_algorithm(std::string_view name);
bool is_map(Algorithm a);
bool is_gomp_family(Algorithm a);
bool is_two_stage(Algorithm a);
/// MAP variant -> its conventional loop (MapMp maps to Omp); identity otherwise.
Algorithm conventional_counterpart(Algorithm a);

/// How the two-stage algorithms build the candidate set each iteration.
enum class MergePolicy {
  /// S^k = S^{k-1} ∪ Ω^k, truncated to the M best-scored members once it
  /// exceeds M.
  Accumulate,
  /// S^k = G^{k-1} ∪ Ω^k, the classic CoSaMP/SP merge with the pruned set.
  Pruned,
};

/// Any rule that fires stops the run. Caps implied by the algorithm (K for
/// OMP, min(K, M/L) for gOMP, 2K for CoSaMP/SP, M-3 overall) always apply.
struct StoppingRule {
  std::optional<double> residual_eps;
  std::optional<double> oracle_eps;
  Vector oracle_truth;
  std::optional<int> max_iterations;
  /// Two-stage loops halt once the residual stops shrinking. Clear to keep
  /// iterating up to the cap, e.g. under an oracle rule.
  bool halt_on_stall = true;

  static StoppingRule none() { return {}; }
  static StoppingRule residual(double eps);
  static StoppingRule oracle(double eps, Vector truth);
  static StoppingRule iterations(int n);
};

struct AlgorithmConfig {
  Algorithm algorithm = Algorithm::MapOmp;
  Index K = 1;
  /// gOMP selection width.
  Index L = 2;
  SignalPrior prior = SignalPrior::binary();
  NoiseModel noise;
  StoppingRule stopping;
  /// Enables the ridge estimator (Phi^T Phi + I/snr)^{-1} Phi^T y.
  std::optional<double> ridge_snr;
  MergePolicy merge = MergePolicy::Pruned;
};

/// Throws config_error naming the offending field.
void validate(const AlgorithmConfig& cfg, Index M, Index N);

enum class Termination { Stopped, MaxIter, ScheduleGuard, Singular };
std::string_view to_string(Termination t);

struct RecoveryTrace {
  int ls_solves = 0;
  int truncations = 0;
  /// Indices picked by the detector each iteration.
  std::vector<Support> selections;
};

struct RecoveryResult {
  Support support;
  Vector xhat;
  std::vector<double> residual_norms;
  int iterations = 0;
  Termination termination = Termination::MaxIter;
  RecoveryTrace trace;
};

RecoveryResult map_mp(const Vector& y, const SensingMatrix& phi, const AlgorithmConfig& cfg);
RecoveryResult map_omp(const Vector& y, const SensingMatrix& phi, const AlgorithmConfig& cfg);
RecoveryResult map_gomp(const Vector& y, const SensingMatrix& phi, const AlgorithmConfig& cfg);
RecoveryResult map_cosamp(const Vector& y, const SensingMatrix& phi, const AlgorithmConfig& cfg);
RecoveryResult map_sp(const Vector& y, const SensingMatrix& phi, const AlgorithmConfig& cfg);
RecoveryResult omp(const Vector& y, const SensingMatrix& phi, const AlgorithmConfig& cfg);
RecoveryResult gomp(const Vector& y, const SensingMatrix& phi, const AlgorithmConfig& cfg);
RecoveryResult cosamp(const Vector& y, const SensingMatrix& phi, const AlgorithmConfig& cfg);
RecoveryResult sp(const Vector& y, const SensingMatrix& phi, const AlgorithmConfig& cfg);

/// Dispatches on cfg.algorithm.
RecoveryResult recover(const Vector& y, const SensingMatrix& phi, const AlgorithmConfig& cfg);

}  // namespace mapcs
