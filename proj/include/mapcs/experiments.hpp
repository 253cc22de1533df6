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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mapcs/ensemble.hpp"
#include "mapcs/recovery.hpp"

namespace mapcs {

/// Inclusive integer range "a:b:step" (or a single value).
struct IntRange {
  int start = 0;
  int stop = 0;
  int step = 1;

  static IntRange parse(const std::string& text, const std::string& field);
  std::vector<int> values() const;
};

/// Inclusive real range "a:b:step"; the literal "inf" is accepted as a
/// single extra point and means noise-free.
std::vector<double> parse_real_range(const std::string& text, const std::string& field);

std::vector<Algorithm> parse_algorithm_list(const std::string& text);

enum class Experiment { RecoveryProb, Nmse, Scaling, Image, Verify, Runtime };

struct ExperimentConfig {
  Experiment experiment = Experiment::RecoveryProb;
  Index M = 128;
  Index N = 256;
  std::vector<int> K_values{20};
  std::vector<int> M_values;
  int trials = 200;
  std::vector<Algorithm> algorithms;
  SignalPrior prior = SignalPrior::binary();
  double sigma_w2 = 0.0;
  std::vector<double> snr_db;
  Index L = 2;
  MergePolicy merge = MergePolicy::Pruned;
  std::uint64_t seed = 1;
  int threads = 0;
  std::optional<Algorithm> baseline;
};

/// Throws config_error naming the offending field.
void validate(const ExperimentConfig& cfg);

struct TrialRecord {
  std::string experiment;
  Algorithm algorithm = Algorithm::MapOmp;
  Index K = 0;
  Index M = 0;
  Index N = 0;
  std::optional<double> snr_db;
  int trial = 0;
  bool success = false;
  double sq_error_ratio = 0.0;
  double seconds = 0.0;
  int iterations = 0;
};

/// ||x - xhat||^2 <= 1e-12.
inline constexpr double kSuccessThreshold = 1e-12;

/// Stopping used for the exact-recovery experiments: oracle error 1e-12,
/// at most 2K iterations, no early halt on a residual plateau.
StoppingRule exact_recovery_stopping(Index K, Vector truth);

/// Seed of trial `trial` at sweep point `point`.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t point, std::uint64_t trial);

struct RecoveryRow {
  Algorithm algorithm;
  std::string prior;
  int K;
  Index M;
  Index N;
  int trials;
  double success_rate;
  double mean_runtime_s;
};

struct NmseRow {
  Algorithm algorithm;
  std::string prior;
  int K;
  Index M;
  Index N;
  double snr_db;
  int trials;
  double nmse_db;
  double mean_runtime_s;
};

struct ScalingRow {
  Index M;
  int K;
  Index N;
  double sigma_w2;
  double empirical_success;
  double theory_lower_bound;
};

struct RuntimeRow {
  Algorithm algorithm;
  Index M;
  Index N;
  int K;
  double sigma_w2;
  int trials;
  double median_runtime_s;
  double speedup;
  double success_rate;
};

struct ImageRow {
  Algorithm algorithm;
  Index M;
  Index N;
  Index K;
  double sigma_w2;
  std::uint64_t seed;
  double precision;
  double recall;
  bool exact;
};

/// Per-trial records in (point, trial, algorithm) order. `parallel` selects
/// the OpenMP trial runner; the records are identical either way apart from
/// timings.
std::vector<TrialRecord> run_recovery_trials(const ExperimentConfig& cfg, bool parallel = true);
std::vector<TrialRecord> run_nmse_trials(const ExperimentConfig& cfg, bool parallel = true);

std::vector<RecoveryRow> run_recovery_prob(const ExperimentConfig& cfg);
std::vector<NmseRow> run_nmse(const ExperimentConfig& cfg);
std::vector<ScalingRow> run_scaling(const ExperimentConfig& cfg);
std::vector<RuntimeRow> run_runtime_table(const ExperimentConfig& cfg);

struct ImageDemoResult {
  std::vector<ImageRow> rows;
  std::vector<std::string> written;
};

/// Recovers the image in `input_pbm` with each algorithm and writes one P1
/// file per algorithm next to `out_csv` (or into the working directory when
/// out_csv is empty). Returns the metrics rows.
ImageDemoResult run_image_demo(const std::string& input_pbm, Index M, double sigma_w2,
                               const std::vector<Algorithm>& algorithms, std::uint64_t seed,
                               const std::string& out_csv, std::ostream* warn = nullptr);

/// Metrics for one recovery of a binary image vector.
ImageRow score_image(Algorithm a, const Vector& truth, const Vector& xhat, Index M,
                     double sigma_w2, std::uint64_t seed);

/// All four lemma verifiers at default sizes. Writes one line per check to
/// `out` and returns true when every check passes.
bool run_verify(std::uint64_t seed, int trials, int threads, std::ostream& out);

std::string recovery_csv(const std::vector<RecoveryRow>& rows);
std::string nmse_csv(const std::vector<NmseRow>& rows);
std::string scaling_csv(const std::vector<ScalingRow>& rows);
std::string runtime_csv(const std::vector<RuntimeRow>& rows);
std::string image_csv(const std::vector<ImageRow>& rows);

/// Writes to `path`, or to stdout when path is empty or "-".
void write_text(const std::string& path, const std::string& text);

std::string format_number(double v);

}  // namespace mapcs
