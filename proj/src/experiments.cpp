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

#include "mapcs/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "mapcs/error.hpp"
#include "mapcs/kernels.hpp"
#include "mapcs/oracle.hpp"
#include "mapcs/pbm.hpp"
#include "mapcs/rng.hpp"

namespace mapcs {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

int parse_int(const std::string& s, const std::string& field) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
      throw std::out_of_range(s);
    return static_cast<int>(v);
  } catch (const std::exception&) {
    raise(Errc::config_error, field + ": '" + s + "' is not an integer");
  }
}

double parse_double(const std::string& s, const std::string& field) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    raise(Errc::config_error, field + ": '" + s + "' is not a number");
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Instance {
  SensingMatrix phi;
  SparseSignal x;
  Vector truth;
};

Instance draw_instance(Index M, Index N, Index K, const SignalPrior& prior, std::uint64_t seed) {
  Instance inst{gen_sensing_matrix(M, N, seed), gen_sparse_signal(N, K, prior, seed), {}};
  inst.truth = inst.x.dense();
  return inst;
}

AlgorithmConfig base_config(Algorithm a, const ExperimentConfig& cfg, Index K) {
  AlgorithmConfig c;
  c.algorithm = a;
  c.K = K;
  c.L = cfg.L;
  c.prior = cfg.prior;
  c.merge = cfg.merge;
  return c;
}

template <class Fn>
void run_trials(std::size_t n, bool parallel, int threads, Fn&& fn) {
  if (parallel)
    kernels::for_each_trial_parallel(n, threads, fn);
  else
    kernels::for_each_trial_serial(n, fn);
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

std::string csv_join(std::initializer_list<std::string> cells) {
  std::string line;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) line += ',';
    line += c;
    first = false;
  }
  line += '\n';
  return line;
}

std::string str(Algorithm a) { return std::string(to_string(a)); }
std::string num(double v) { return format_number(v); }
std::string num(Index v) { return std::to_string(v); }
std::string num(int v) { return std::to_string(v); }

}  // namespace

IntRange IntRange::parse(const std::string& text, const std::string& field) {
  const auto parts = split(text, ':');
  IntRange r;
  if (parts.size() == 1) {
    r.start = r.stop = parse_int(parts[0], field);
  } else if (parts.size() == 2 || parts.size() == 3) {
    r.start = parse_int(parts[0], field);
    r.stop = parse_int(parts[1], field);
    r.step = parts.size() == 3 ? parse_int(parts[2], field) : 1;
  } else {
    raise(Errc::config_error, field + ": expected a:b:step");
  }
  if (r.step <= 0) raise(Errc::config_error, field + ": step must be positive");
  if (r.stop < r.start) raise(Errc::config_error, field + ": empty range");
  return r;
}

std::vector<int> IntRange::values() const {
  std::vector<int> v;
  for (long x = start; x <= stop; x += step) v.push_back(static_cast<int>(x));
  return v;
}

std::vector<double> parse_real_range(const std::string& text, const std::string& field) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) {
    if (item == "inf") {
      out.push_back(std::numeric_limits<double>::infinity());
      continue;
    }
    const auto parts = split(item, ':');
    if (parts.size() == 1) {
      out.push_back(parse_double(parts[0], field));
      continue;
    }
    if (parts.size() != 3) raise(Errc::config_error, field + ": expected a:b:step");
    const double a = parse_double(parts[0], field);
    const double b = parse_double(parts[1], field);
    const double s = parse_double(parts[2], field);
    if (!(s > 0.0)) raise(Errc::config_error, field + ": step must be positive");
    if (b < a) raise(Errc::config_error, field + ": empty range");
    const auto n = static_cast<long>(std::floor((b - a) / s + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(a + static_cast<double>(i) * s);
  }
  if (out.empty()) raise(Errc::config_error, field + ": empty range");
  return out;
}

std::vector<Algorithm> parse_algorithm_list(const std::string& text) {
  std::vector<Algorithm> out;
  for (const auto& name : split(text, ',')) {
    if (name.empty()) raise(Errc::config_error, "algos: empty entry");
    out.push_back(parse_algorithm(name));
  }
  if (out.empty()) raise(Errc::config_error, "algos: empty list");
  return out;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.M < 1) raise(Errc::config_error, "m: must be positive");
  if (cfg.N < 2) raise(Errc::config_error, "n: must be at least 2");
  if (cfg.trials < 1) raise(Errc::config_error, "trials: must be positive");
  if (!(cfg.sigma_w2 >= 0.0)) raise(Errc::config_error, "sigma-w2: must be nonnegative");
  if (cfg.threads < 0) raise(Errc::config_error, "threads: must be nonnegative");
  if (cfg.experiment == Experiment::Nmse && cfg.snr_db.empty())
    raise(Errc::config_error, "snr-db-range: required for nmse");
  if (cfg.experiment == Experiment::Scaling && cfg.M_values.empty())
    raise(Errc::config_error, "m-range: required for scaling");
  if (cfg.K_values.empty()) raise(Errc::config_error, "k: empty range");
  if (cfg.experiment != Experiment::Scaling && cfg.algorithms.empty())
    raise(Errc::config_error, "algos: empty list");
  const std::vector<Index> Ms = cfg.experiment == Experiment::Scaling
                                    ? std::vector<Index>(cfg.M_values.begin(), cfg.M_values.end())
                                    : std::vector<Index>{cfg.M};
  for (Index M : Ms) {
    if (M < 4) raise(Errc::config_error, "m: must be at least 4");
    for (int K : cfg.K_values) {
      if (K < 1 || K >= cfg.N) raise(Errc::config_error, "k: need 1 <= K < N");
      const auto algos = cfg.experiment == Experiment::Scaling
                             ? std::vector<Algorithm>{Algorithm::MapMp}
                             : cfg.algorithms;
      for (Algorithm a : algos) validate(base_config(a, cfg, K), M, cfg.N);
    }
  }
  if (cfg.experiment == Experiment::Runtime && cfg.baseline &&
      std::find(cfg.algorithms.begin(), cfg.algorithms.end(), *cfg.baseline) ==
          cfg.algorithms.end())
    raise(Errc::config_error, "baseline: must be one of the configured algorithms");
}

StoppingRule exact_recovery_stopping(Index K, Vector truth) {
  StoppingRule s = StoppingRule::oracle(kSuccessThreshold, std::move(truth));
  s.max_iterations = static_cast<int>(2 * K);
  s.halt_on_stall = false;
  return s;
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t point, std::uint64_t trial) {
  return derive_seed(master, point, trial);
}

std::vector<TrialRecord> run_recovery_trials(const ExperimentConfig& cfg, bool parallel) {
  validate(cfg);
  const std::size_t A = cfg.algorithms.size();
  const auto T = static_cast<std::size_t>(cfg.trials);
  const NoiseModel noise = NoiseModel::make(cfg.sigma_w2, cfg.M);
  std::vector<TrialRecord> out;
  for (int K : cfg.K_values) {
    std::vector<TrialRecord> recs(T * A);
    run_trials(T, parallel, cfg.threads, [&](std::size_t t) {
      const std::uint64_t s = trial_seed(cfg.seed, static_cast<std::uint64_t>(K), t);
      const Instance inst = draw_instance(cfg.M, cfg.N, K, cfg.prior, s);
      const Vector y = measure(inst.phi, inst.truth, noise, s);
      for (std::size_t a = 0; a < A; ++a) {
        AlgorithmConfig c = base_config(cfg.algorithms[a], cfg, K);
        c.noise = noise;
        c.stopping = exact_recovery_stopping(K, inst.truth);
        const auto t0 = std::chrono::steady_clock::now();
        const RecoveryResult r = recover(y, inst.phi, c);
        TrialRecord& rec = recs[t * A + a];
        rec.seconds = seconds_since(t0);
        rec.experiment = "recovery-prob";
        rec.algorithm = cfg.algorithms[a];
        rec.K = K;
        rec.M = cfg.M;
        rec.N = cfg.N;
        rec.trial = static_cast<int>(t);
        const double err = (r.xhat - inst.truth).squaredNorm();
        rec.success = err <= kSuccessThreshold;
        rec.sq_error_ratio = err / inst.truth.squaredNorm();
        rec.iterations = r.iterations;
      }
    });
    out.insert(out.end(), recs.begin(), recs.end());
  }
  return out;
}

std::vector<RecoveryRow> run_recovery_prob(const ExperimentConfig& cfg) {
  const auto recs = run_recovery_trials(cfg, true);
  const std::size_t A = cfg.algorithms.size();
  const auto T = static_cast<std::size_t>(cfg.trials);
  std::vector<RecoveryRow> rows;
  for (std::size_t ki = 0; ki < cfg.K_values.size(); ++ki) {
    for (std::size_t a = 0; a < A; ++a) {
      std::size_t ok = 0;
      double secs = 0.0;
      for (std::size_t t = 0; t < T; ++t) {
        const auto& r = recs[(ki * T + t) * A + a];
        ok += r.success;
        secs += r.seconds;
      }
      rows.push_back({cfg.algorithms[a], cfg.prior.label(), cfg.K_values[ki], cfg.M, cfg.N,
                      cfg.trials, static_cast<double>(ok) / static_cast<double>(T),
                      secs / static_cast<double>(T)});
    }
  }
  return rows;
}

std::vector<TrialRecord> run_nmse_trials(const ExperimentConfig& cfg, bool parallel) {
  validate(cfg);
  const std::size_t A = cfg.algorithms.size();
  const auto T = static_cast<std::size_t>(cfg.trials);
  std::vector<TrialRecord> out;
  for (int K : cfg.K_values) {
    for (std::size_t si = 0; si < cfg.snr_db.size(); ++si) {
      const double db = cfg.snr_db[si];
      const bool clean = std::isinf(db) && db > 0.0;
      const double snr = std::pow(10.0, db / 10.0);
      const std::uint64_t point = (static_cast<std::uint64_t>(K) << 32) | si;
      std::vector<TrialRecord> recs(T * A);
      run_trials(T, parallel, cfg.threads, [&](std::size_t t) {
        const std::uint64_t s = trial_seed(cfg.seed, point, t);
        const Instance inst = draw_instance(cfg.M, cfg.N, K, cfg.prior, s);
        const Vector clean_y = inst.phi.entries() * inst.truth;
        const NoiseModel noise =
            clean ? NoiseModel::noiseless() : NoiseModel::make(clean_y.squaredNorm() / snr, cfg.M);
        const Vector y = measure(inst.phi, inst.truth, noise, s);
        for (std::size_t a = 0; a < A; ++a) {
          AlgorithmConfig c = base_config(cfg.algorithms[a], cfg, K);
          c.noise = noise;
          if (!clean) c.ridge_snr = snr;
          const auto t0 = std::chrono::steady_clock::now();
          const RecoveryResult r = recover(y, inst.phi, c);
          TrialRecord& rec = recs[t * A + a];
          rec.seconds = seconds_since(t0);
          rec.experiment = "nmse";
          rec.algorithm = cfg.algorithms[a];
          rec.K = K;
          rec.M = cfg.M;
          rec.N = cfg.N;
          rec.snr_db = db;
          rec.trial = static_cast<int>(t);
          const double err = (r.xhat - inst.truth).squaredNorm();
          rec.success = err <= kSuccessThreshold;
          rec.sq_error_ratio = err / inst.truth.squaredNorm();
          rec.iterations = r.iterations;
        }
      });
      out.insert(out.end(), recs.begin(), recs.end());
    }
  }
  return out;
}

std::vector<NmseRow> run_nmse(const ExperimentConfig& cfg) {
  const auto recs = run_nmse_trials(cfg, true);
  const std::size_t A = cfg.algorithms.size();
  const auto T = static_cast<std::size_t>(cfg.trials);
  std::vector<NmseRow> rows;
  std::size_t block = 0;
  for (int K : cfg.K_values) {
    for (double db : cfg.snr_db) {
      for (std::size_t a = 0; a < A; ++a) {
        double ratio = 0.0, secs = 0.0;
        for (std::size_t t = 0; t < T; ++t) {
          const auto& r = recs[(block * T + t) * A + a];
          ratio += r.sq_error_ratio;
          secs += r.seconds;
        }
        rows.push_back({cfg.algorithms[a], cfg.prior.label(), K, cfg.M, cfg.N, db, cfg.trials,
                        10.0 * std::log10(ratio / static_cast<double>(T)),
                        secs / static_cast<double>(T)});
      }
      ++block;
    }
  }
  return rows;
}

std::vector<ScalingRow> run_scaling(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.prior.kind() != SignalPrior::Kind::Binary)
    raise(Errc::config_error, "prior: scaling requires the binary prior");
  const int K = cfg.K_values.front();
  const auto T = static_cast<std::size_t>(cfg.trials);
  std::vector<ScalingRow> rows;
  for (int M : cfg.M_values) {
    const NoiseModel noise = NoiseModel::make(cfg.sigma_w2, M);
    std::vector<char> ok(T, 0);
    kernels::for_each_trial_parallel(T, cfg.threads, [&](std::size_t t) {
      const std::uint64_t s = trial_seed(cfg.seed, static_cast<std::uint64_t>(M), t);
      const Instance inst = draw_instance(M, cfg.N, K, cfg.prior, s);
      const Vector y = measure(inst.phi, inst.truth, noise, s);
      AlgorithmConfig c = base_config(Algorithm::MapMp, cfg, K);
      c.noise = noise;
      c.stopping = exact_recovery_stopping(K, inst.truth);
      const RecoveryResult r = recover(y, inst.phi, c);
      ok[t] = (r.xhat - inst.truth).squaredNorm() <= kSuccessThreshold;
    });
    std::size_t hits = 0;
    for (char v : ok) hits += v != 0;
    rows.push_back({M, K, cfg.N, cfg.sigma_w2, static_cast<double>(hits) / static_cast<double>(T),
                    theorem1_lower_bound(M, K, static_cast<int>(cfg.N), noise.sigma_w2_norm)});
  }
  return rows;
}

std::vector<RuntimeRow> run_runtime_table(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.algorithms.size() < 2) raise(Errc::config_error, "algos: runtime needs at least two");
  const int K = cfg.K_values.front();
  const std::size_t A = cfg.algorithms.size();
  const auto T = static_cast<std::size_t>(cfg.trials);
  const NoiseModel noise = NoiseModel::make(cfg.sigma_w2, cfg.M);
  std::vector<std::vector<double>> secs(A, std::vector<double>(T));
  std::vector<std::size_t> ok(A, 0);
  // Timed on one thread so the medians are not skewed by contention.
  for (std::size_t t = 0; t < T; ++t) {
    const std::uint64_t s = trial_seed(cfg.seed, static_cast<std::uint64_t>(K), t);
    const Instance inst = draw_instance(cfg.M, cfg.N, K, cfg.prior, s);
    const Vector y = measure(inst.phi, inst.truth, noise, s);
    for (std::size_t a = 0; a < A; ++a) {
      AlgorithmConfig c = base_config(cfg.algorithms[a], cfg, K);
      c.noise = noise;
      if (cfg.sigma_w2 == 0.0) c.stopping = exact_recovery_stopping(K, inst.truth);
      const auto t0 = std::chrono::steady_clock::now();
      const RecoveryResult r = recover(y, inst.phi, c);
      secs[a][t] = seconds_since(t0);
      ok[a] += (r.xhat - inst.truth).squaredNorm() <= kSuccessThreshold;
    }
  }
  const Algorithm base = cfg.baseline.value_or(cfg.algorithms.front());
  const std::size_t bi = static_cast<std::size_t>(
      std::find(cfg.algorithms.begin(), cfg.algorithms.end(), base) - cfg.algorithms.begin());
  std::vector<double> med(A);
  for (std::size_t a = 0; a < A; ++a) med[a] = median(secs[a]);
  std::vector<RuntimeRow> rows;
  for (std::size_t a = 0; a < A; ++a)
    rows.push_back({cfg.algorithms[a], cfg.M, cfg.N, K, cfg.sigma_w2, cfg.trials, med[a],
                    a == bi ? 1.0 : med[bi] / med[a],
                    static_cast<double>(ok[a]) / static_cast<double>(T)});
  return rows;
}

ImageRow score_image(Algorithm a, const Vector& truth, const Vector& xhat, Index M,
                     double sigma_w2, std::uint64_t seed) {
  std::size_t tp = 0, fp = 0, fn = 0;
  for (Index n = 0; n < truth.size(); ++n) {
    const bool t = truth(n) >= 0.5;
    const bool e = xhat(n) >= 0.5;
    tp += t && e;
    fp += !t && e;
    fn += t && !e;
  }
  ImageRow row{a, M, truth.size(), static_cast<Index>(tp + fn), sigma_w2, seed, 0.0, 0.0, false};
  row.precision = tp + fp ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  row.recall = tp + fn ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  row.exact = fp == 0 && fn == 0 && tp > 0;
  return row;
}

ImageDemoResult run_image_demo(const std::string& input_pbm, Index M, double sigma_w2,
                               const std::vector<Algorithm>& algorithms, std::uint64_t seed,
                               const std::string& out_csv, std::ostream* warn) {
  if (algorithms.empty()) raise(Errc::config_error, "algos: empty list");
  if (!(sigma_w2 >= 0.0)) raise(Errc::config_error, "sigma-w2: must be nonnegative");
  const Bitmap img = read_pbm(input_pbm);
  const Vector truth = flatten_column_major(img);
  const Index N = truth.size();
  const auto K = static_cast<Index>(img.set_count());
  if (K == 0) raise(Errc::empty_signal, "image has no set pixels");
  if (M < 4) raise(Errc::config_error, "m: must be at least 4");
  if (warn && M >= N) *warn << "warning: M >= N, measurements are not compressive\n";
  if (warn && 2 * K >= M) *warn << "warning: K >= M/2, recovery is unlikely\n";

  const std::uint64_t s = trial_seed(seed, 0, 0);
  const SensingMatrix phi = gen_sensing_matrix(M, N, s);
  const NoiseModel noise = NoiseModel::make(sigma_w2, M);
  const Vector y = measure(phi, truth, noise, s);

  namespace fs = std::filesystem;
  const fs::path csv(out_csv.empty() || out_csv == "-" ? "image.csv" : out_csv);
  const fs::path dir = csv.has_parent_path() ? csv.parent_path() : fs::path(".");
  const std::string stem = csv.stem().string();

  ImageDemoResult res;
  for (Algorithm a : algorithms) {
    AlgorithmConfig c;
    c.algorithm = a;
    c.K = K;
    c.prior = SignalPrior::binary();
    c.noise = noise;
    validate(c, M, N);
    if (sigma_w2 == 0.0) {
      c.stopping = StoppingRule::residual(1e-9 * y.norm());
      c.stopping.max_iterations = static_cast<int>(2 * K);
      c.stopping.halt_on_stall = false;
    }
    const RecoveryResult r = recover(y, phi, c);
    res.rows.push_back(score_image(a, truth, r.xhat, M, sigma_w2, seed));
    const fs::path file = dir / (stem + "_" + str(a) + ".pbm");
    write_pbm(file.string(), unflatten_column_major(r.xhat, img.width, img.height));
    res.written.push_back(file.string());
  }
  return res;
}

bool run_verify(std::uint64_t seed, int trials, int threads, std::ostream& out) {
  if (trials < kMinVerifyTrials)
    raise(Errc::config_error, "trials: verify needs at least " + std::to_string(kMinVerifyTrials));
  bool all = true;
  auto line = [&](const std::string& name, const MomentReport& r) {
    out << name << " n=" << r.n_samples << " mean=" << num(r.sample_mean)
        << " expected_mean=" << num(r.expected_mean) << " var=" << num(r.sample_var)
        << " expected_var=" << num(r.expected_var) << " z=" << num(r.z_score_mean) << ' '
        << (r.passed ? "PASS" : "FAIL") << '\n';
    all = all && r.passed;
  };
  line("lemma1 M=64", verify_lemma1(64, trials, derive_seed(seed, 1), threads));
  line("lemma2 M=128", verify_lemma2(128, trials, derive_seed(seed, 2), threads));
  const double m2 = sample_norm_second_moment(128, trials, derive_seed(seed, 2), threads);
  const bool m2_ok = std::abs(m2 - 1.0) <= 0.03;
  out << "lemma2-second-moment M=128 n=" << trials << " mean=" << num(m2) << " expected_mean=1 "
      << (m2_ok ? "PASS" : "FAIL") << '\n';
  all = all && m2_ok;
  const auto l3 = verify_lemma3({4, 64, 1024}, trials, derive_seed(seed, 3), threads);
  const bool l3_ok = lemma3_passes(l3, trials);
  out << "lemma3 eps=" << num(kLemma3Epsilon) << " n=" << trials;
  for (const auto& [M, p] : l3) out << " M=" << M << ":" << num(p);
  out << ' ' << (l3_ok ? "PASS" : "FAIL") << '\n';
  all = all && l3_ok;
  line("lemma4 M=64 K=8 k=4 sigma_w2=0",
       verify_lemma4(64, 8, 4, 1.0, 0.0, trials, derive_seed(seed, 4), threads));
  line("lemma4 M=64 K=8 k=4 sigma_w2=0.03125",
       verify_lemma4(64, 8, 4, 1.0, 2.0 / 64.0, trials, derive_seed(seed, 5), threads));
  out << (all ? "verify: all checks passed" : "verify: FAILED") << '\n';
  return all;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string recovery_csv(const std::vector<RecoveryRow>& rows) {
  std::string s = "experiment,algorithm,prior,K,M,N,trials,success_rate,mean_runtime_s\n";
  for (const auto& r : rows)
    s += csv_join({"recovery-prob", str(r.algorithm), r.prior, num(r.K), num(r.M), num(r.N),
                   num(r.trials), num(r.success_rate), num(r.mean_runtime_s)});
  return s;
}

std::string nmse_csv(const std::vector<NmseRow>& rows) {
  std::string s = "experiment,algorithm,prior,K,M,N,snr_db,trials,nmse_db,mean_runtime_s\n";
  for (const auto& r : rows)
    s += csv_join({"nmse", str(r.algorithm), r.prior, num(r.K), num(r.M), num(r.N), num(r.snr_db),
                   num(r.trials), num(r.nmse_db), num(r.mean_runtime_s)});
  return s;
}

std::string scaling_csv(const std::vector<ScalingRow>& rows) {
  std::string s = "M,K,N,sigma_w2,empirical_success,theory_lower_bound\n";
  for (const auto& r : rows)
    s += csv_join({num(r.M), num(r.K), num(r.N), num(r.sigma_w2), num(r.empirical_success),
                   num(r.theory_lower_bound)});
  return s;
}

std::string runtime_csv(const std::vector<RuntimeRow>& rows) {
  std::string s = "algorithm,M,N,K,sigma_w2,trials,median_runtime_s,speedup,success_rate\n";
  for (const auto& r : rows)
    s += csv_join({str(r.algorithm), num(r.M), num(r.N), num(r.K), num(r.sigma_w2), num(r.trials),
                   num(r.median_runtime_s), num(r.speedup), num(r.success_rate)});
  return s;
}

std::string image_csv(const std::vector<ImageRow>& rows) {
  std::string s = "algorithm,M,N,K,sigma_w2,seed,precision,recall,exact\n";
  for (const auto& r : rows)
    s += csv_join({str(r.algorithm), num(r.M), num(r.N), num(r.K), num(r.sigma_w2),
                   std::to_string(r.seed), num(r.precision), num(r.recall), r.exact ? "1" : "0"});
  return s;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::io_error, "cannot write '" + path + "'");
  out << text;
  if (!out) raise(Errc::io_error, "write failed for '" + path + "'");
}

}  // namespace mapcs
