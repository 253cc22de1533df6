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

#include <algorithm>
#include <cmath>

#include "mapcs/error.hpp"
#include "mapcs/oracle.hpp"
#include "mapcs/recovery.hpp"
#include "mapcs/rng.hpp"
#include "mapcs/special.hpp"

using namespace mapcs;

namespace {

// Brute force over all pairs, visited in reverse, solving the normal equations.
Support best_pair_reversed(const Vector& y, const Matrix& a) {
  const Index N = a.cols();
  double best = INFINITY;
  Support arg;
  for (Index i = N - 1; i >= 0; --i)
    for (Index j = N - 1; j > i; --j) {
      Matrix s(a.rows(), 2);
      s.col(0) = a.col(i);
      s.col(1) = a.col(j);
      const Vector x = (s.transpose() * s).ldlt().solve(s.transpose() * y);
      const double r = (y - s * x).norm();
      if (r <= best) {
        best = r;
        arg = {i, j};
      }
    }
  return arg;
}

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("correlation of independent columns") {
    const auto rep = verify_lemma1(64, 10000, 1, 1);
    CHECK(rep.passed);
    CHECK(rep.n_samples == 10000);
    CHECK(rep.sample_var == doctest::Approx(1.0 / 64).epsilon(0.1));
  }

  TEST_CASE("column norm mean and second moment") {
    const auto rep = verify_lemma2(128, 10000, 2, 1);
    CHECK(rep.passed);
    CHECK(rep.expected_mean == doctest::Approx(1.0 - 1.0 / (4.0 * 128)).epsilon(1e-4));
    CHECK(std::abs(sample_norm_second_moment(128, 10000, 3, 1) - 1.0) < 0.03);
  }

  TEST_CASE("norm concentration improves with M") {
    const auto rows = verify_lemma3({4, 64, 1024}, 5000, 4, 1);
    REQUIRE(rows.size() == 3);
    CHECK(lemma3_passes(rows, 5000));
    CHECK(rows[0].second > 0.5);
    CHECK(rows[2].second < 0.01);
    CHECK_FALSE(lemma3_passes({{4, 0.1}, {64, 0.5}}, 5000));
  }

  TEST_CASE("least-squares error variance") {
    CHECK(verify_lemma4(64, 8, 4, 1.0, 0.0, 10000, 5, 1).passed);
    const auto noisy = verify_lemma4(64, 8, 4, 1.0, 2.0 / 64, 10000, 6, 1);
    CHECK(noisy.passed);
    CHECK(noisy.expected_var == doctest::Approx((4.0 + 2.0) / 58.0));
    const auto exact = verify_lemma4(64, 8, 8, 1.0, 0.0, 200, 7, 1);
    CHECK(exact.passed);
    CHECK(exact.sample_var < 1e-20);
    CHECK_THROWS_AS(verify_lemma4(12, 8, 4, 1.0, 0.0, 100, 1, 1), Error);
  }

  TEST_CASE("success lower bound") {
    const double direct = std::pow(1.0 - std::exp(-128.0 / 18.0), 5.0 * 251.0);
    CHECK(theorem1_lower_bound(128, 5, 256, 0.0) == doctest::Approx(direct).epsilon(1e-9));
    CHECK(theorem1_lower_bound(128, 5, 256, 0.0) == doctest::Approx(0.359).epsilon(2e-3));
    CHECK(theorem1_lower_bound(0, 5, 256, 0.0) == 0.0);
    double prev = 0.0;
    for (int M = 40; M <= 400; M += 20) {
      const double b = theorem1_lower_bound(M, 5, 256, 0.0);
      CHECK(b >= prev);
      CHECK(b <= 1.0);
      prev = b;
    }
    CHECK(theorem1_lower_bound(200, 5, 256, 1.0) < theorem1_lower_bound(200, 5, 256, 0.0));
    CHECK_THROWS_AS(theorem1_lower_bound(64, 0, 256, 0.0), Error);
  }

  TEST_CASE("exhaustive search visits every candidate") {
    const auto phi = gen_sensing_matrix(6, 6, 8);
    Vector x = Vector::Zero(6);
    x(1) = 1.0;
    x(4) = 1.0;
    const Vector y = phi.entries() * x;
    const auto r = exhaustive_support_search(y, phi, 2);
    CHECK(r.candidates == 15);
    CHECK(r.support == Support{1, 4});
    CHECK(r.residual_norm < 1e-10);
    CHECK_THROWS_AS(exhaustive_support_search(Vector::Zero(100), gen_sensing_matrix(100, 100, 1), 5),
                    Error);
  }

  TEST_CASE("exhaustive search matches a reversed brute force under noise") {
    for (int t = 0; t < 50; ++t) {
      const auto phi = gen_sensing_matrix(8, 10, derive_seed(9, t));
      Rng rng(derive_seed(10, t));
      Vector y(8);
      for (Index i = 0; i < 8; ++i) y(i) = rng.normal();
      CHECK(exhaustive_support_search(y, phi, 2).support == best_pair_reversed(y, phi.entries()));
    }
  }

  TEST_CASE("map-omp against exhaustive search on tiny systems") {
    int agree1 = 0, agree2 = 0, conv2 = 0;
    const int total = 300;
    for (int t = 0; t < total; ++t) {
      const auto phi = gen_sensing_matrix(12, 12, derive_seed(11, t));
      Support ex[2], got[2], conv;
      for (Index K = 1; K <= 2; ++K) {
        const auto sig = gen_sparse_signal(12, K, SignalPrior::binary(), derive_seed(12, t));
        const Vector y = measure(phi, sig, NoiseModel::noiseless(), 0);
        AlgorithmConfig c;
        c.algorithm = Algorithm::MapOmp;
        c.K = K;
        auto s = map_omp(y, phi, c).support;
        std::sort(s.begin(), s.end());
        ex[K - 1] = exhaustive_support_search(y, phi, K).support;
        CHECK(ex[K - 1] == sig.support);
        got[K - 1] = s;
        if (K == 2) {
          c.algorithm = Algorithm::Omp;
          conv = omp(y, phi, c).support;
          std::sort(conv.begin(), conv.end());
        }
      }
      agree1 += got[0] == ex[0];
      agree2 += got[1] == ex[1];
      conv2 += conv == ex[1];
    }
    CHECK(agree1 == total);
    CHECK(agree2 >= conv2);
    CHECK(agree2 >= 0.9 * total);
  }
}
