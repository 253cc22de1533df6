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

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "mapcs/ensemble.hpp"

namespace mapcs {

struct MomentReport {
  double sample_mean = 0.0;
  double sample_var = 0.0;
  double expected_mean = 0.0;
  double expected_var = 0.0;
  std::size_t n_samples = 0;
  /// (sample_mean - expected_mean) / sqrt(expected_var / n_samples).
  double z_score_mean = 0.0;
  bool passed = false;
};

/// Trials below this are rejected by the verify front end.
inline constexpr int kMinVerifyTrials = 1000;
inline constexpr int kDefaultVerifyTrials = 10000;

/// Normalized inner product a_n^T a_l / ||a_n|| of independent columns;
/// expected N(0, 1/M). Passes when |z| <= 4 and, from 1e4 trials on, the
/// sample variance lies in [0.9, 1.1] / M.
MomentReport verify_lemma1(int M, int trials, std::uint64_t seed, int threads = 0);

/// Column norm ||a_n||; expected mean from the gamma ratio, variance
/// 1 - mean^2. Passes when |z| <= 4.
MomentReport verify_lemma2(int M, int trials, std::uint64_t seed, int threads = 0);

/// Second moment of ||a_n|| (expected 1) from the same draws as verify_lemma2.
double sample_norm_second_moment(int M, int trials, std::uint64_t seed, int threads = 0);

inline constexpr double kLemma3Epsilon = 0.1;

/// Empirical P[| ||a|| - 1 | >= 0.1] per M. M_list must be increasing.
std::vector<std::pair<int, double>> verify_lemma3(const std::vector<int>& M_list, int trials,
                                                  std::uint64_t seed, int threads = 0);

/// Nonincreasing within two standard errors and last < first.
bool lemma3_passes(const std::vector<std::pair<int, double>>& rows, int trials);

/// Per-coordinate least-squares error on a correct partial support of size k
/// out of K, entries N(0, m2), noise variance sigma_w2 per measurement.
/// Expected variance (m2 (K - k) + M sigma_w2) / (M - k - 2). Needs
/// M - k - 2 >= 8. Passes when |z| <= 4 and the variance is within 10%.
MomentReport verify_lemma4(int M, int K, int k, double m2, double sigma_w2, int trials,
                           std::uint64_t seed, int threads = 0);

/// (1 - exp(-M / (2 (2K - 1 + 2 s))))^{K (N - K)}, evaluated in log domain.
double theorem1_lower_bound(int M, int K, int N, double sigma_w2_norm);

struct ExhaustiveResult {
  Support support;
  double residual_norm = 0.0;
  std::size_t candidates = 0;
};

inline constexpr double kExhaustiveBudget = 1e6;

/// Size-K support minimizing ||y - Phi_S x_S|| over all C(N, K) supports,
/// ties to the lexicographically smallest. Throws invalid_argument when
/// C(N, K) > 1e6.
ExhaustiveResult exhaustive_support_search(const Vector& y, const SensingMatrix& phi, Index K);

}  // namespace mapcs
