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

#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "mapcs/experiments.hpp"
#include "mapcs/kernels.hpp"
#include "mapcs/rng.hpp"

using namespace mapcs;

TEST_SUITE("kernels") {
  TEST_CASE("parallel correlation matches the serial reference bit for bit") {
    for (auto [M, N] : {std::pair<Index, Index>{8, 16}, {128, 256}, {300, 700}}) {
      const auto phi = gen_sensing_matrix(M, N, 4);
      Rng rng(5);
      Vector r(M);
      for (Index i = 0; i < M; ++i) r(i) = rng.normal();
      Vector a(N), b(N);
      kernels::correlate_serial(phi.entries(), phi.col_norms(), r, a);
      kernels::correlate_parallel(phi.entries(), phi.col_norms(), r, b);
      CHECK(a == b);
      for (Index n = 0; n < N; ++n)
        CHECK(a(n) == doctest::Approx(phi.entries().col(n).dot(r) / phi.entries().col(n).norm()));
    }
  }

  TEST_CASE("trial runners visit every index once") {
    std::vector<int> s(1000, 0), p(1000, 0);
    kernels::for_each_trial_serial(s.size(), [&](std::size_t i) { s[i] += static_cast<int>(i * i % 97); });
    kernels::for_each_trial_parallel(p.size(), 0, [&](std::size_t i) { p[i] += static_cast<int>(i * i % 97); });
    CHECK(s == p);
  }

  TEST_CASE("worker exceptions reach the caller") {
    CHECK_THROWS_AS(kernels::for_each_trial_parallel(50, 2,
                                                     [](std::size_t i) {
                                                       if (i == 17) throw std::runtime_error("x");
                                                     }),
                    std::runtime_error);
  }

  TEST_CASE("serial and parallel experiment runs agree") {
    ExperimentConfig cfg;
    cfg.M = 48;
    cfg.N = 96;
    cfg.K_values = {4, 8};
    cfg.trials = 12;
    cfg.algorithms = {Algorithm::MapSp, Algorithm::Omp, Algorithm::MapGomp};
    cfg.threads = 3;
    const auto a = run_recovery_trials(cfg, false);
    const auto b = run_recovery_trials(cfg, true);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].success == b[i].success);
      CHECK(a[i].sq_error_ratio == b[i].sq_error_ratio);
      CHECK(a[i].iterations == b[i].iterations);
    }
  }
}
