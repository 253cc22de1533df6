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

#include "mapcs/oracle.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "mapcs/error.hpp"
#include "mapcs/kernels.hpp"
#include "mapcs/linalg.hpp"
#include "mapcs/rng.hpp"
#include "mapcs/special.hpp"

namespace mapcs {

namespace {

void fill_normal(Rng& rng, double scale, Vector& v) {
  for (Index i = 0; i < v.size(); ++i) v(i) = scale * rng.normal();
}

// Mean and variance in index order so the report does not depend on the
// worker count.
MomentReport summarize(const std::vector<double>& xs, double expected_mean, double expected_var) {
  MomentReport rep;
  rep.n_samples = xs.size();
  rep.expected_mean = expected_mean;
  rep.expected_var = expected_var;
  const double n = static_cast<double>(xs.size());
  double sum = 0.0;
  for (double x : xs) sum += x;
  rep.sample_mean = sum / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - rep.sample_mean) * (x - rep.sample_mean);
  rep.sample_var = xs.size() > 1 ? ss / (n - 1.0) : 0.0;
  const double dev = rep.sample_mean - expected_mean;
  if (expected_var > 0.0)
    rep.z_score_mean = dev / std::sqrt(expected_var / n);
  else
    rep.z_score_mean = dev == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), dev);
  return rep;
}

std::vector<double> column_norms(int M, int trials, std::uint64_t seed, int threads) {
  std::vector<double> out(static_cast<std::size_t>(trials));
  const double scale = 1.0 / std::sqrt(static_cast<double>(M));
  kernels::for_each_trial_parallel(out.size(), threads, [&](std::size_t t) {
    Rng rng(derive_seed(seed, kStreamMatrix, t));
    Vector a(M);
    fill_normal(rng, scale, a);
    out[t] = a.norm();
  });
  return out;
}

}  // namespace

MomentReport verify_lemma1(int M, int trials, std::uint64_t seed, int threads) {
  require(M >= 1, Errc::invalid_argument, "verify_lemma1: M must be positive");
  require(trials >= 2, Errc::invalid_argument, "verify_lemma1: need at least two trials");
  std::vector<double> xs(static_cast<std::size_t>(trials));
  const double scale = 1.0 / std::sqrt(static_cast<double>(M));
  kernels::for_each_trial_parallel(xs.size(), threads, [&](std::size_t t) {
    Rng rng(derive_seed(seed, kStreamMatrix, t));
    Vector a(M), b(M);
    fill_normal(rng, scale, a);
    fill_normal(rng, scale, b);
    const double na = a.norm();
    xs[t] = na > 0.0 ? a.dot(b) / na : 0.0;
  });
  const double var = 1.0 / M;
  MomentReport rep = summarize(xs, 0.0, var);
  rep.passed = std::abs(rep.z_score_mean) <= 4.0;
  if (trials >= kDefaultVerifyTrials)
    rep.passed = rep.passed && rep.sample_var >= 0.9 * var && rep.sample_var <= 1.1 * var;
  return rep;
}

MomentReport verify_lemma2(int M, int trials, std::uint64_t seed, int threads) {
  require(M >= 1, Errc::invalid_argument, "verify_lemma2: M must be positive");
  require(trials >= 2, Errc::invalid_argument, "verify_lemma2: need at least two trials");
  const double mean = expected_column_norm(M);
  MomentReport rep = summarize(column_norms(M, trials, seed, threads), mean, 1.0 - mean * mean);
  rep.passed = std::abs(rep.z_score_mean) <= 4.0;
  return rep;
}

double sample_norm_second_moment(int M, int trials, std::uint64_t seed, int threads) {
  require(M >= 1 && trials >= 1, Errc::invalid_argument, "sample_norm_second_moment: bad sizes");
  double sum = 0.0;
  for (double v : column_norms(M, trials, seed, threads)) sum += v * v;
  return sum / trials;
}

std::vector<std::pair<int, double>> verify_lemma3(const std::vector<int>& M_list, int trials,
                                                  std::uint64_t seed, int threads) {
  require(!M_list.empty(), Errc::invalid_argument, "verify_lemma3: empty M list");
  require(trials >= 1, Errc::invalid_argument, "verify_lemma3: trials must be positive");
  for (std::size_t i = 0; i < M_list.size(); ++i) {
    require(M_list[i] >= 1, Errc::invalid_argument, "verify_lemma3: M must be positive");
    if (i > 0)
      require(M_list[i] > M_list[i - 1], Errc::invalid_argument,
              "verify_lemma3: M list must be increasing");
  }
  std::vector<std::pair<int, double>> rows;
  for (std::size_t i = 0; i < M_list.size(); ++i) {
    const auto norms = column_norms(M_list[i], trials, derive_seed(seed, i), threads);
    std::size_t hits = 0;
    for (double v : norms) hits += std::abs(v - 1.0) >= kLemma3Epsilon;
    rows.emplace_back(M_list[i], static_cast<double>(hits) / trials);
  }
  return rows;
}

bool lemma3_passes(const std::vector<std::pair<int, double>>& rows, int trials) {
  if (rows.size() < 2) return false;
  auto se = [&](double p) { return std::sqrt(p * (1.0 - p) / trials); };
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double a = rows[i - 1].second, b = rows[i].second;
    if (b > a + 2.0 * std::hypot(se(a), se(b))) return false;
  }
  return rows.back().second < rows.front().second;
}

MomentReport verify_lemma4(int M, int K, int k, double m2, double sigma_w2, int trials,
                           std::uint64_t seed, int threads) {
  require(M - k - 2 >= 8, Errc::invalid_argument, "verify_lemma4: need M - k - 2 >= 8");
  require(k >= 1 && K >= k, Errc::invalid_argument, "verify_lemma4: need 1 <= k <= K");
  require(m2 >= 0.0 && sigma_w2 >= 0.0, Errc::invalid_argument,
          "verify_lemma4: moments must be nonnegative");
  require(trials >= 2, Errc::invalid_argument, "verify_lemma4: need at least two trials");

  std::vector<double> errs(static_cast<std::size_t>(trials) * static_cast<std::size_t>(k));
  const double scale = 1.0 / std::sqrt(static_cast<double>(M));
  const double sx = std::sqrt(m2);
  const double sw = std::sqrt(sigma_w2);
  kernels::for_each_trial_parallel(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
    Rng rng(derive_seed(seed, kStreamMatrix, t));
    Matrix phi(M, K);
    for (Index j = 0; j < K; ++j)
      for (Index i = 0; i < M; ++i) phi(i, j) = scale * rng.normal();
    Vector x(K);
    fill_normal(rng, sx, x);
    Vector y = phi * x;
    for (Index i = 0; i < M; ++i) y(i) += sw * rng.normal();
    Support known(static_cast<std::size_t>(k));
    std::iota(known.begin(), known.end(), Index{0});
    const SensingMatrix sm(std::move(phi));
    const Vector xhat = least_squares(RestrictedSystem(sm, known), y);
    for (int i = 0; i < k; ++i)
      errs[t * static_cast<std::size_t>(k) + static_cast<std::size_t>(i)] = xhat(i) - x(i);
  });

  const double expected = (m2 * (K - k) + M * sigma_w2) / (M - k - 2);
  MomentReport rep = summarize(errs, 0.0, expected);
  if (expected > 0.0) {
    rep.passed = std::abs(rep.z_score_mean) <= 4.0 && rep.sample_var >= 0.9 * expected &&
                 rep.sample_var <= 1.1 * expected;
  } else {
    rep.passed = rep.sample_var <= 1e-20 && std::abs(rep.sample_mean) <= 1e-10;
    rep.z_score_mean = 0.0;
  }
  return rep;
}

double theorem1_lower_bound(int M, int K, int N, double sigma_w2_norm) {
  require(K > 0 && K < N, Errc::invalid_argument, "theorem1_lower_bound: need 0 < K < N");
  require(sigma_w2_norm >= 0.0, Errc::invalid_argument,
          "theorem1_lower_bound: noise variance must be nonnegative");
  const double inner = std::exp(-M / (2.0 * (2.0 * K - 1.0 + 2.0 * sigma_w2_norm)));
  if (inner >= 1.0) return 0.0;
  const double pairs = static_cast<double>(K) * static_cast<double>(N - K);
  return std::exp(pairs * std::log1p(-inner));
}

ExhaustiveResult exhaustive_support_search(const Vector& y, const SensingMatrix& phi, Index K) {
  const Index N = phi.cols();
  require(K >= 1 && K <= N, Errc::invalid_argument, "exhaustive_support_search: need 1 <= K <= N");
  require(y.size() == phi.rows(), Errc::dimension_mismatch,
          "exhaustive_support_search: y length must equal M");
  double count = 1.0;
  for (Index i = 0; i < K; ++i) count = count * static_cast<double>(N - i) / static_cast<double>(i + 1);
  require(std::round(count) <= kExhaustiveBudget, Errc::invalid_argument,
          "exhaustive_support_search: C(N, K) exceeds the 1e6 budget");

  ExhaustiveResult best;
  best.residual_norm = std::numeric_limits<double>::infinity();
  Support s(static_cast<std::size_t>(K));
  std::iota(s.begin(), s.end(), Index{0});
  while (true) {
    ++best.candidates;
    try {
      const RestrictedSystem sys(phi, s);
      const double r = residual(y, sys, least_squares(sys, y)).norm();
      if (r < best.residual_norm) {
        best.residual_norm = r;
        best.support = s;
      }
    } catch (const Error& e) {
      if (e.code() != Errc::singular_system) throw;
    }
    // Next combination in lexicographic order.
    Index i = K - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == N - K + i) --i;
    if (i < 0) break;
    ++s[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < K; ++j) s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
  }
  return best;
}

}  // namespace mapcs
