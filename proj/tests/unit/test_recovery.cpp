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

#include <set>

#include "mapcs/error.hpp"
#include "mapcs/recovery.hpp"
#include "mapcs/rng.hpp"

using namespace mapcs;

namespace {

const Algorithm kAll[] = {Algorithm::MapMp, Algorithm::MapOmp, Algorithm::MapGomp,
                          Algorithm::MapCosamp, Algorithm::MapSp, Algorithm::Omp,
                          Algorithm::Gomp, Algorithm::Cosamp, Algorithm::Sp};

struct Trial {
  SensingMatrix phi;
  Vector x;
  Vector y;
};

Trial draw(Index M, Index N, Index K, const SignalPrior& prior, std::uint64_t seed,
           double sigma_w2 = 0.0) {
  const auto phi = gen_sensing_matrix(M, N, seed);
  const auto sig = gen_sparse_signal(N, K, prior, seed);
  const Vector y = measure(phi, sig, NoiseModel::make(sigma_w2, M), seed);
  return {phi, sig.dense(), y};
}

AlgorithmConfig config(Algorithm a, Index K, const SignalPrior& prior = SignalPrior::binary()) {
  AlgorithmConfig c;
  c.algorithm = a;
  c.K = K;
  c.prior = prior;
  return c;
}

bool exact(const RecoveryResult& r, const Vector& x) { return (r.xhat - x).squaredNorm() <= 1e-12; }

double success_rate(Algorithm a, Index M, Index N, Index K, const SignalPrior& prior, int trials,
                    std::uint64_t seed) {
  int ok = 0;
  for (int t = 0; t < trials; ++t) {
    const auto tr = draw(M, N, K, prior, derive_seed(seed, t));
    ok += exact(recover(tr.y, tr.phi, config(a, K, prior)), tr.x);
  }
  return static_cast<double>(ok) / trials;
}

}  // namespace

TEST_SUITE("recovery") {
  TEST_CASE("algorithm names round trip") {
    for (Algorithm a : kAll) CHECK(parse_algorithm(to_string(a)) == a);
    CHECK_THROWS_AS(parse_algorithm("bp"), Error);
    CHECK(conventional_counterpart(Algorithm::MapSp) == Algorithm::Sp);
    CHECK(is_map(Algorithm::MapCosamp));
    CHECK_FALSE(is_map(Algorithm::Cosamp));
  }

  TEST_CASE("config validation") {
    CHECK_THROWS_AS(validate(config(Algorithm::MapMp, 3, SignalPrior::uniform01()), 32, 64), Error);
    auto g = config(Algorithm::Gomp, 20);
    g.L = 7;  // floor(128/20) = 6
    CHECK_THROWS_AS(validate(g, 128, 256), Error);
    g.L = 6;
    CHECK_NOTHROW(validate(g, 128, 256));
    CHECK_THROWS_AS(validate(config(Algorithm::Omp, 64), 32, 64), Error);
  }

  TEST_CASE("identity sensing recovers one-sparse signals in one iteration") {
    const auto id = SensingMatrix::identity(8);
    for (Algorithm a : kAll) {
      Vector x = Vector::Zero(8);
      x(4) = 1.0;
      const auto r = recover(x, id, config(a, 1));
      if (is_gomp_family(a))
        CHECK(r.support == Support{4, 0});  // width L = 2, ties to the lower index
      else
        CHECK(r.support == Support{4});
      CHECK(r.iterations == 1);
      CHECK(exact(r, x));
    }
    Vector x = Vector::Zero(8);
    x(2) = 1.0;
    const auto mp = map_mp(x, id, config(Algorithm::MapMp, 1));
    CHECK(mp.support == Support{2});
    CHECK(mp.residual_norms.front() == 0.0);

    Vector u = Vector::Zero(8);
    u(1) = 0.5;
    const auto r = map_omp(u, id, config(Algorithm::MapOmp, 1, SignalPrior::uniform01()));
    CHECK(exact(r, u));
    CHECK(r.iterations == 1);
  }

  TEST_CASE("map-mp success in an easy regime and no repeated indices") {
    int ok = 0;
    for (int t = 0; t < 100; ++t) {
      const auto tr = draw(64, 128, 4, SignalPrior::binary(), derive_seed(1, t));
      const auto r = map_mp(tr.y, tr.phi, config(Algorithm::MapMp, 4));
      ok += exact(r, tr.x);
      CHECK(std::set<Index>(r.support.begin(), r.support.end()).size() == r.support.size());
      CHECK(r.support.size() == static_cast<std::size_t>(r.iterations));
    }
    CHECK(ok >= 99);
  }

  TEST_CASE("map-omp on uniform signals well below breakdown") {
    CHECK(success_rate(Algorithm::MapOmp, 128, 256, 20, SignalPrior::uniform01(), 100, 2) >= 0.95);
  }

  TEST_CASE("least-squares loops have nonincreasing residuals and bounded growth") {
    for (Algorithm a : {Algorithm::MapOmp, Algorithm::Omp, Algorithm::MapGomp, Algorithm::Gomp}) {
      const auto tr = draw(96, 192, 15, SignalPrior::binary(), 3);
      const auto r = recover(tr.y, tr.phi, config(a, 15));
      for (std::size_t i = 1; i < r.residual_norms.size(); ++i)
        CHECK(r.residual_norms[i] <= r.residual_norms[i - 1] + 1e-10);
      const std::size_t width = is_gomp_family(a) ? 2 : 1;
      for (std::size_t k = 0; k < r.trace.selections.size(); ++k)
        CHECK(r.trace.selections[k].size() == width);
      CHECK(r.support.size() <= width * static_cast<std::size_t>(r.iterations));
      CHECK(r.residual_norms.size() == static_cast<std::size_t>(r.iterations));
    }
  }

  TEST_CASE("gomp with one index per iteration follows map-omp") {
    for (int t = 0; t < 20; ++t) {
      const auto tr = draw(64, 128, 10, SignalPrior::uniform01(), derive_seed(4, t));
      auto c = config(Algorithm::MapGomp, 10, SignalPrior::uniform01());
      c.L = 1;
      const auto a = map_gomp(tr.y, tr.phi, c);
      const auto b = map_omp(tr.y, tr.phi, config(Algorithm::MapOmp, 10, SignalPrior::uniform01()));
      CHECK(a.support == b.support);
      CHECK(a.trace.selections == b.trace.selections);
    }
  }

  TEST_CASE("map-gomp success at K=30 and advantage at K=42") {
    CHECK(success_rate(Algorithm::MapGomp, 128, 256, 30, SignalPrior::binary(), 100, 5) >= 0.95);
    const double m = success_rate(Algorithm::MapGomp, 128, 256, 42, SignalPrior::binary(), 100, 6);
    const double g = success_rate(Algorithm::Gomp, 128, 256, 42, SignalPrior::binary(), 100, 6);
    CHECK(m > g);
  }

  TEST_CASE("map-cosamp success and pruning contract") {
    CHECK(success_rate(Algorithm::MapCosamp, 128, 256, 30, SignalPrior::binary(), 100, 7) >= 0.90);
    for (int t = 0; t < 10; ++t) {
      const auto tr = draw(64, 128, 12, SignalPrior::uniform01(), derive_seed(8, t));
      for (Algorithm a : {Algorithm::MapCosamp, Algorithm::Cosamp, Algorithm::MapSp, Algorithm::Sp}) {
        const auto r = recover(tr.y, tr.phi, config(a, 12, SignalPrior::uniform01()));
        CHECK(r.support.size() == 12);
        CHECK((r.xhat.array() != 0.0).count() <= 12);
      }
    }
  }

  TEST_CASE("map-sp success at K=50 and two solves per iteration") {
    CHECK(success_rate(Algorithm::MapSp, 128, 256, 50, SignalPrior::uniform01(), 100, 9) >= 0.90);
    const auto tr = draw(64, 128, 10, SignalPrior::binary(), 10);
    const auto r = map_sp(tr.y, tr.phi, config(Algorithm::MapSp, 10));
    CHECK(r.trace.ls_solves == 2 * r.iterations);
    const auto c = map_cosamp(tr.y, tr.phi, config(Algorithm::MapCosamp, 10));
    CHECK(c.trace.ls_solves == c.iterations);
  }

  TEST_CASE("first-iteration hit terminates two-stage loops") {
    const auto id = SensingMatrix::identity(16);
    Vector x = Vector::Zero(16);
    x(3) = 1.0;
    x(9) = 1.0;
    for (Algorithm a : {Algorithm::MapCosamp, Algorithm::MapSp}) {
      const auto r = recover(x, id, config(a, 2));
      CHECK(r.iterations == 1);
      CHECK(r.residual_norms.front() == 0.0);
      CHECK(r.termination == Termination::Stopped);
    }
  }

  TEST_CASE("zero-mean gaussian prior adds nothing over omp") {
    const auto prior = SignalPrior::gaussian(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
      const auto tr = draw(64, 128, 8, prior, derive_seed(11, t));
      const auto a = omp(tr.y, tr.phi, config(Algorithm::Omp, 8, prior));
      const auto b = map_omp(tr.y, tr.phi, config(Algorithm::MapOmp, 8, prior));
      CHECK(a.support == b.support);
    }
  }

  TEST_CASE("every algorithm recovers one-sparse signals") {
    for (Algorithm a : kAll) {
      int ok = 0;
      for (int t = 0; t < 1000; ++t) {
        const auto tr = draw(8, 16, 1, SignalPrior::binary(), derive_seed(12, t));
        ok += exact(recover(tr.y, tr.phi, config(a, 1)), tr.x);
      }
      CHECK_MESSAGE(ok >= 990, to_string(a));
    }
  }

  TEST_CASE("results are deterministic") {
    const auto tr = draw(64, 128, 12, SignalPrior::uniform01(), 13, 0.001);
    for (Algorithm a : kAll) {
      if (a == Algorithm::MapMp) continue;
      auto c = config(a, 12, SignalPrior::uniform01());
      c.noise = NoiseModel::make(0.001, 64);
      const auto r1 = recover(tr.y, tr.phi, c);
      const auto r2 = recover(tr.y, tr.phi, c);
      CHECK(r1.support == r2.support);
      CHECK(r1.xhat == r2.xhat);
      CHECK(r1.residual_norms == r2.residual_norms);
    }
  }

  TEST_CASE("stopping rules") {
    const auto tr = draw(96, 192, 10, SignalPrior::binary(), 14);
    auto c = config(Algorithm::MapOmp, 10);
    c.stopping = StoppingRule::iterations(3);
    CHECK(map_omp(tr.y, tr.phi, c).iterations == 3);
    c.stopping = StoppingRule::oracle(1e-12, tr.x);
    const auto r = map_omp(tr.y, tr.phi, c);
    CHECK(r.termination == Termination::Stopped);
    CHECK(exact(r, tr.x));
    c.stopping = StoppingRule::residual(1e3);
    CHECK(map_omp(tr.y, tr.phi, c).iterations == 1);
  }

  TEST_CASE("oracle protocol lets omp run past K") {
    int plain = 0, extended = 0;
    for (int t = 0; t < 30; ++t) {
      const auto tr = draw(128, 256, 30, SignalPrior::binary(), derive_seed(15, t));
      auto c = config(Algorithm::Omp, 30);
      plain += exact(omp(tr.y, tr.phi, c), tr.x);
      c.stopping = StoppingRule::oracle(1e-12, tr.x);
      c.stopping.max_iterations = 60;
      const auto r = omp(tr.y, tr.phi, c);
      CHECK(r.iterations <= 60);
      extended += exact(r, tr.x);
    }
    CHECK(extended >= plain);
  }

  TEST_CASE("accumulating merge is truncated to M columns") {
    const auto tr = draw(40, 80, 8, SignalPrior::binary(), 16);
    auto c = config(Algorithm::Cosamp, 8);
    c.merge = MergePolicy::Accumulate;
    c.stopping.halt_on_stall = false;
    c.stopping.max_iterations = 16;
    const auto r = cosamp(tr.y, tr.phi, c);
    CHECK(r.support.size() <= 8);
    if (r.iterations >= 3) CHECK(r.trace.truncations >= 1);
  }

  TEST_CASE("singular merged system ends the loop") {
    Matrix m = Matrix::Zero(4, 5);
    m(0, 0) = 1;
    m(0, 1) = 1;
    m(1, 2) = 1;
    m(2, 3) = 1;
    m(3, 4) = 1;
    const SensingMatrix phi(m);
    Vector y = Vector::Zero(4);
    y(0) = 1;
    y(1) = 1;
    const auto r = sp(y, phi, config(Algorithm::Sp, 2));
    CHECK(r.termination == Termination::Singular);
  }

  TEST_CASE("ridge estimates under noise") {
    const auto tr = draw(128, 256, 10, SignalPrior::gaussian(1.0, 1.0 / (128.0 * 128.0)), 17, 1e-4);
    for (Algorithm a : {Algorithm::MapSp, Algorithm::Sp, Algorithm::MapGomp}) {
      auto c = config(a, 10, SignalPrior::gaussian(1.0, 1.0 / (128.0 * 128.0)));
      c.noise = NoiseModel::make(1e-4, 128);
      c.ridge_snr = (tr.phi.entries() * tr.x).squaredNorm() / 1e-4;
      const auto r = recover(tr.y, tr.phi, c);
      CHECK((r.xhat - tr.x).squaredNorm() / tr.x.squaredNorm() < 1e-2);
    }
  }
}
