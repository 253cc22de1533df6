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

#include <cmath>
#include <filesystem>
#include <sstream>

#include "mapcs/error.hpp"
#include "mapcs/experiments.hpp"
#include "mapcs/pbm.hpp"

using namespace mapcs;

namespace {

ExperimentConfig small_recovery() {
  ExperimentConfig c;
  c.M = 32;
  c.N = 64;
  c.K_values = {2, 4};
  c.trials = 10;
  c.algorithms = {Algorithm::MapOmp, Algorithm::Omp, Algorithm::MapSp};
  return c;
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("range parsing") {
    CHECK(IntRange::parse("10:30:10", "k").values() == std::vector<int>{10, 20, 30});
    CHECK(IntRange::parse("7", "k").values() == std::vector<int>{7});
    CHECK_THROWS_AS(IntRange::parse("5:1:1", "k"), Error);
    CHECK_THROWS_AS(IntRange::parse("1:5:0", "k"), Error);
    CHECK_THROWS_AS(IntRange::parse("a:5", "k"), Error);
    const auto snr = parse_real_range("0:20:10,inf", "snr");
    REQUIRE(snr.size() == 4);
    CHECK(snr[2] == 20.0);
    CHECK(std::isinf(snr[3]));
    CHECK(parse_algorithm_list("map-sp,gomp").size() == 2);
    CHECK_THROWS_AS(parse_algorithm_list("map-sp,,sp"), Error);
  }

  TEST_CASE("validation names the field") {
    auto c = small_recovery();
    c.K_values = {64};
    try {
      validate(c);
      FAIL("expected config_error");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::config_error);
    }
    c = small_recovery();
    c.algorithms = {Algorithm::MapMp};
    c.prior = SignalPrior::uniform01();
    CHECK_THROWS_AS(validate(c), Error);
  }

  TEST_CASE("recovery rows and csv") {
    const auto c = small_recovery();
    const auto rows = run_recovery_prob(c);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].K == 2);
    CHECK(rows[3].K == 4);
    for (const auto& r : rows) {
      CHECK(r.success_rate >= 0.0);
      CHECK(r.success_rate <= 1.0);
    }
    const auto csv = recovery_csv(rows);
    CHECK(csv.rfind("experiment,algorithm,prior,K,M,N,trials,success_rate,mean_runtime_s\n", 0) == 0);
    CHECK(count_lines(csv) == 7);
    CHECK(csv.find('\r') == std::string::npos);
  }

  TEST_CASE("serial and parallel trials agree") {
    const auto c = small_recovery();
    const auto a = run_recovery_trials(c, false);
    const auto b = run_recovery_trials(c, true);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].success == b[i].success);
      CHECK(a[i].sq_error_ratio == b[i].sq_error_ratio);
      CHECK(a[i].iterations == b[i].iterations);
    }
  }

  TEST_CASE("same seed same numbers") {
    auto c = small_recovery();
    c.experiment = Experiment::Nmse;
    c.prior = SignalPrior::gaussian(1.0, 1.0 / (32.0 * 32.0));
    c.snr_db = {10.0, 30.0};
    const auto a = run_nmse(c);
    const auto b = run_nmse(c);
    REQUIRE(a.size() == 12);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].nmse_db == b[i].nmse_db);
  }

  TEST_CASE("noise-free nmse is tiny") {
    ExperimentConfig c;
    c.experiment = Experiment::Nmse;
    c.M = 64;
    c.N = 128;
    c.K_values = {8};
    c.trials = 20;
    c.algorithms = {Algorithm::MapSp, Algorithm::Sp};
    c.prior = SignalPrior::gaussian(1.0, 1.0 / (64.0 * 64.0));
    c.snr_db = {std::numeric_limits<double>::infinity()};
    for (const auto& r : run_nmse(c)) CHECK(r.nmse_db <= -120.0);
  }

  TEST_CASE("scaling rows") {
    ExperimentConfig c;
    c.experiment = Experiment::Scaling;
    c.N = 64;
    c.K_values = {2};
    c.M_values = {16, 32};
    c.trials = 20;
    const auto rows = run_scaling(c);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].theory_lower_bound >= rows[0].theory_lower_bound);
    CHECK(rows[1].empirical_success >= rows[1].theory_lower_bound);
    CHECK(count_lines(scaling_csv(rows)) == 3);
  }

  TEST_CASE("runtime table") {
    ExperimentConfig c;
    c.experiment = Experiment::Runtime;
    c.M = 32;
    c.N = 64;
    c.K_values = {4};
    c.trials = 5;
    c.algorithms = {Algorithm::Omp, Algorithm::MapOmp};
    const auto rows = run_runtime_table(c);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].speedup == 1.0);
    CHECK(rows[1].speedup > 0.0);
    c.baseline = Algorithm::Sp;
    CHECK_THROWS_AS(run_runtime_table(c), Error);
  }

  TEST_CASE("image scoring") {
    Vector t = Vector::Zero(6), e = Vector::Zero(6);
    t(0) = t(1) = t(2) = 1;
    e(1) = e(2) = e(4) = 0.9;
    const auto r = score_image(Algorithm::Sp, t, e, 4, 0.0, 1);
    CHECK(r.precision == doctest::Approx(2.0 / 3));
    CHECK(r.recall == doctest::Approx(2.0 / 3));
    CHECK_FALSE(r.exact);
    CHECK(score_image(Algorithm::Sp, t, Vector::Zero(6), 4, 0.0, 1).precision == 0.0);
    CHECK(score_image(Algorithm::Sp, t, t, 4, 0.0, 1).exact);
  }

  TEST_CASE("image demo writes reconstructions") {
    const auto dir = std::filesystem::temp_directory_path() / "mapcs_image_demo";
    std::filesystem::create_directories(dir);
    const auto csv = (dir / "glyph.csv").string();
    std::ostringstream warn;
    const auto res = run_image_demo(std::string(MAPCS_TEST_DATA) + "/glyph16.pbm", 128, 0.0,
                                    {Algorithm::MapSp, Algorithm::Sp}, 3, csv, &warn);
    REQUIRE(res.rows.size() == 2);
    REQUIRE(res.written.size() == 2);
    for (const auto& f : res.written) CHECK(read_pbm(f).width == 16);
    CHECK(warn.str().empty());
    std::filesystem::remove_all(dir);

    const auto blank = (std::filesystem::temp_directory_path() / "mapcs_blank.pbm").string();
    write_text(blank, "P1 2 2 0 0 0 0\n");
    try {
      run_image_demo(blank, 8, 0.0, {Algorithm::Sp}, 1, "-", nullptr);
      FAIL("expected empty_signal");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::empty_signal);
    }
    std::filesystem::remove(blank);
  }

  TEST_CASE("verify needs enough trials") {
    std::ostringstream out;
    CHECK_THROWS_AS(run_verify(1, 999, 1, out), Error);
  }

  TEST_CASE("number formatting") {
    CHECK(format_number(0.25) == "0.25");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  }
}
