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

#include "mapcs/map_detector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mapcs/error.hpp"
#include "mapcs/special.hpp"

namespace mapcs {
namespace {

// Floor applied to sigma1t^2 by the continuous-prior ratios, relative to
// sigma0t^2, so a collapsed alternative density stays finite in log space.
constexpr double kMinAltVarianceRatio = 1e-12;

double alt_variance(const GeneralVarianceSchedule& s) {
  return std::max(s.sigma1t_sq, kMinAltVarianceRatio * s.sigma0t_sq);
}

}  // namespace

LlrContext LlrContext::make(Index N, Index K, Index M, SignalPrior prior, NoiseModel noise) {
  require(K >= 1 && K < N + 1, Errc::invalid_argument, "llr context needs 1 <= K <= N");
  LlrContext ctx;
  ctx.N = N;
  ctx.K = K;
  ctx.M = M;
  ctx.prior = std::move(prior);
  ctx.noise = noise;
  ctx.prior_log_odds = std::log(static_cast<double>(K) / static_cast<double>(std::max<Index>(N - K, 1)));
  return ctx;
}

VarianceSchedule binary_schedule(int K, int k, int M, double sigma_w2) {
  if (k < 1 || k > K) raise(Errc::invalid_iteration, "binary schedule needs 1 <= k <= K");
  require(M >= 1 && sigma_w2 >= 0.0, Errc::invalid_argument, "binary schedule: bad M or noise");
  VarianceSchedule s;
  s.k = k;
  s.sigma0_sq = static_cast<double>(K - k + 1) / M + sigma_w2;
  s.sigma1_sq = static_cast<double>(K - k) / M + sigma_w2;
  return s;
}

GeneralVarianceSchedule general_schedule(int K, int k, int L, int M, double m2,
                                         double sigma_w2_norm) {
  require(K >= 1 && k >= 1 && L >= 1 && M >= 1, Errc::invalid_argument,
          "general schedule: K, k, L, M must be positive");
  require(m2 > 0.0 && sigma_w2_norm >= 0.0, Errc::invalid_argument,
          "general schedule: bad moments");
  const int found = L * (k - 1);
  const int dof = M - found - 2;
  if (dof <= 0) raise(Errc::schedule_overflow, "M - L(k-1) - 2 must stay positive");

  const double remaining = std::max(K - found, 1);
  const double remaining_alt = std::max(remaining - L, 0.0);
  const double md = M;
  GeneralVarianceSchedule s;
  s.k = k;
  s.L = L;
  s.M = M;
  s.K = K;
  s.m2 = m2;
  s.sigma_w2_norm = sigma_w2_norm;
  s.sigma0t_sq = (remaining * m2 + sigma_w2_norm) / md * (1.0 + found / static_cast<double>(dof));
  s.sigma1t_sq = (remaining_alt * m2 + sigma_w2_norm) / md +
                 (found / md) * (m2 * remaining + sigma_w2_norm) / dof;
  return s;
}

double llr_binary(double z, const VarianceSchedule& sched, const LlrContext& ctx) {
  if (!(sched.sigma1_sq > 0.0))
    raise(Errc::must_use_last_iteration, "sigma1^2 == 0: use the last-iteration ratio");
  const double s0 = sched.sigma0_sq, s1 = sched.sigma1_sq;
  return z * z / (2.0 * s0) - (z - 1.0) * (z - 1.0) / (2.0 * s1) + 0.5 * std::log(s0 / s1) +
         ctx.prior_log_odds;
}

double llr_binary_last(double z, int M, int K, int N) {
  return 0.5 * M * z * z +
         std::log(static_cast<double>(K) / static_cast<double>(std::max(N - K, 1)));
}

double llr_highnoise(double z, double sigma_w2) {
  if (!(sigma_w2 > 0.0)) raise(Errc::domain_error, "high-noise ratio needs sigma_w2 > 0");
  return (2.0 * z - 1.0) / (2.0 * sigma_w2);
}

double llr_binary_general(double z, const GeneralVarianceSchedule& sched, const LlrContext& ctx) {
  const double s0 = sched.sigma0t_sq, s1 = sched.sigma1t_sq;
  if (!(s1 > 0.0)) return z * z / (2.0 * s0) + ctx.prior_log_odds;
  return z * z / (2.0 * s0) - (z - 1.0) * (z - 1.0) / (2.0 * s1) + 0.5 * std::log(s0 / s1) +
         ctx.prior_log_odds;
}

double llr_uniform(double z, const GeneralVarianceSchedule& sched, const LlrContext& ctx) {
  const double s1 = std::sqrt(alt_variance(sched));
  // int_0^1 N(z; u, s1^2) du = Phi((1 - z)/s1) - Phi(-z/s1)
  const double log_alt = log_normal_cdf_diff(-z / s1, (1.0 - z) / s1);
  return log_alt - log_normal_pdf(z, 0.0, sched.sigma0t_sq) + ctx.prior_log_odds;
}

double llr_finite_alphabet(double z, const std::vector<double>& alphabet,
                           const GeneralVarianceSchedule& sched, const LlrContext& ctx) {
  require(!alphabet.empty(), Errc::invalid_argument, "alphabet must be nonempty");
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    for (std::size_t j = i + 1; j < alphabet.size(); ++j)
      require(alphabet[i] != alphabet[j], Errc::invalid_argument, "alphabet values must be distinct");
  const double s1 = alt_variance(sched);
  double peak = -INFINITY;
  for (double c : alphabet) peak = std::max(peak, log_normal_pdf(z, c, s1));
  double acc = 0.0;
  for (double c : alphabet) acc += std::exp(log_normal_pdf(z, c, s1) - peak);
  const double log_alt = peak + std::log(acc / static_cast<double>(alphabet.size()));
  return log_alt - log_normal_pdf(z, 0.0, sched.sigma0t_sq) + ctx.prior_log_odds;
}

double llr_gaussian(double z, double mu, double var, const GeneralVarianceSchedule& sched,
                    const LlrContext& ctx) {
  require(var > 0.0, Errc::invalid_argument, "gaussian prior variance must be positive");
  const double s0 = sched.sigma0t_sq;
  const double s1 = var + sched.sigma1t_sq;
  return z * z / (2.0 * s0) - (z - mu) * (z - mu) / (2.0 * s1) + 0.5 * std::log(s0 / s1) +
         ctx.prior_log_odds;
}

double llr_general(double z, const GeneralVarianceSchedule& sched, const LlrContext& ctx) {
  switch (ctx.prior.kind()) {
    case SignalPrior::Kind::Binary:
      return llr_binary_general(z, sched, ctx);
    case SignalPrior::Kind::Uniform01:
      return llr_uniform(z, sched, ctx);
    case SignalPrior::Kind::FiniteAlphabet:
      return llr_finite_alphabet(z, ctx.prior.alphabet(), sched, ctx);
    case SignalPrior::Kind::Gaussian:
      return llr_gaussian(z, ctx.prior.gaussian_mu(), ctx.prior.gaussian_var(), sched, ctx);
  }
  return 0.0;
}

Vector llr_general(const Vector& z, const GeneralVarianceSchedule& sched, const LlrContext& ctx) {
  Vector out(z.size());
  for (Index n = 0; n < z.size(); ++n) out(n) = llr_general(z(n), sched, ctx);
  return out;
}

Support select_top_L(const Vector& lambda, Index L, const Support& exclude) {
  std::vector<char> skip(static_cast<std::size_t>(lambda.size()), 0);
  for (Index e : exclude) {
    require(e >= 0 && e < lambda.size(), Errc::invalid_argument, "exclude index out of range");
    skip[static_cast<std::size_t>(e)] = 1;
  }
  Support pool;
  pool.reserve(static_cast<std::size_t>(lambda.size()));
  for (Index n = 0; n < lambda.size(); ++n)
    if (!skip[static_cast<std::size_t>(n)]) pool.push_back(n);
  if (L < 1 || L > static_cast<Index>(pool.size()))
    raise(Errc::invalid_argument, "L exceeds the number of selectable indices");
  std::partial_sort(pool.begin(), pool.begin() + L, pool.end(), [&](Index a, Index b) {
    return lambda(a) > lambda(b) || (lambda(a) == lambda(b) && a < b);
  });
  pool.resize(static_cast<std::size_t>(L));
  return pool;
}

}  // namespace mapcs
