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

// Log-MAP support detection. For each column the correlation z_n is scored
// by the log posterior odds that n is in the support, using Gaussian models
// of z_n under "not in support" (variance sigma0^2) and "in support"
// (mean x_n, variance sigma1^2). The variances shrink as the greedy
// iteration count grows, so the schedule is recomputed every iteration.
//
// All densities are handled in the log domain.

#include <vector>

#include "mapcs/ensemble.hpp"

namespace mapcs {

/// Binary-signal variances for MAP-MP: interference from the K - k + 1 (null)
/// or K - k (alternative) unrecovered unit entries, plus noise.
struct VarianceSchedule {
  double sigma0_sq = 0.0;
  double sigma1_sq = 0.0;
  int k = 1;
  int L = 1;
};

/// Moment-matched variances for the least-squares greedy family, where the
/// residual also carries the estimation error of already-selected entries.
struct GeneralVarianceSchedule {
  double sigma0t_sq = 0.0;
  double sigma1t_sq = 0.0;
  int k = 1;
  int L = 1;
  int M = 0;
  int K = 0;
  double m2 = 0.0;
  double sigma_w2_norm = 0.0;
};

struct LlrContext {
  Index N = 0;
  Index K = 0;
  Index M = 0;
  SignalPrior prior = SignalPrior::binary();
  NoiseModel noise;
  /// ln(K / (N - K)), with N - K floored at 1.
  double prior_log_odds = 0.0;

  static LlrContext make(Index N, Index K, Index M, SignalPrior prior, NoiseModel noise);
};

/// sigma0^2 = (K-k+1)/M + sigma_w2, sigma1^2 = (K-k)/M + sigma_w2.
/// Throws invalid_iteration unless 1 <= k <= K.
VarianceSchedule binary_schedule(int K, int k, int M, double sigma_w2);

/// With found = L(k-1) entries already estimated and R = K - found missing:
///   sigma0t^2 = (R m2 + s)/M * (1 + found/(M - found - 2))
///   sigma1t^2 = ((R - L)+ m2 + s)/M + (found/M) (m2 R + s)/(M - found - 2)
/// where s is the normalized noise variance. R is floored at 1 once the
/// nominal count of selected entries reaches K (the residual is then known to
/// hold at least one miss). Throws schedule_overflow when M - found - 2 <= 0.
GeneralVarianceSchedule general_schedule(int K, int k, int L, int M, double m2,
                                         double sigma_w2_norm);

/// Exact binary log-MAP ratio. Throws must_use_last_iteration if sigma1^2 == 0.
double llr_binary(double z, const VarianceSchedule& sched, const LlrContext& ctx);

/// Noise-free last iteration, where the alternative density collapses:
/// M z^2 / 2 + ln(K/(N-K)).
double llr_binary_last(double z, int M, int K, int N);

/// High-noise limit (2z - 1) / (2 sigma_w2). Throws domain_error if sigma_w2 <= 0.
double llr_highnoise(double z, double sigma_w2);

/// Binary ratio under a moment-matched schedule (alphabet {1}); falls back to
/// the last-iteration form z^2/(2 sigma0t^2) + prior when sigma1t^2 == 0.
double llr_binary_general(double z, const GeneralVarianceSchedule& sched, const LlrContext& ctx);

/// Uniform[0,1] prior: ln int_0^1 N(z; u, sigma1t^2) du - ln N(z; 0, sigma0t^2) + prior.
double llr_uniform(double z, const GeneralVarianceSchedule& sched, const LlrContext& ctx);

/// Equiprobable finite alphabet: log-sum-exp mixture over the symbols.
double llr_finite_alphabet(double z, const std::vector<double>& alphabet,
                           const GeneralVarianceSchedule& sched, const LlrContext& ctx);

/// Gaussian N(mu, var) prior; the alternative marginal is N(mu, var + sigma1t^2).
double llr_gaussian(double z, double mu, double var, const GeneralVarianceSchedule& sched,
                    const LlrContext& ctx);

/// Dispatches on ctx.prior.
double llr_general(double z, const GeneralVarianceSchedule& sched, const LlrContext& ctx);

/// Element-wise llr_general.
Vector llr_general(const Vector& z, const GeneralVarianceSchedule& sched, const LlrContext& ctx);

/// The L indices outside `exclude` with the largest lambda, largest first;
/// ties go to the lower index. Throws invalid_argument if fewer than L remain.
Support select_top_L(const Vector& lambda, Index L, const Support& exclude);

}  // namespace mapcs
