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

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mapcs/error.hpp"
#include "mapcs/experiments.hpp"
#include "mapcs/oracle.hpp"

namespace {

using namespace mapcs;

const char* kDefaultAlgos = "map-omp,map-gomp,map-cosamp,map-sp,omp,gomp,cosamp,sp";

struct Options {
  int m = 128;
  int n = 256;
  std::string k = "20";
  std::string m_range = "40:160:20";
  int trials = 200;
  std::uint64_t seed = 1;
  std::string algos;
  std::string prior = "binary";
  double sigma_w2 = 0.0;
  std::string snr = "5:30:5";
  int gomp_l = 2;
  std::string merge = "pruned";
  std::string out = "-";
  int threads = 0;
  std::string baseline;
  std::string input;
  std::string config;
};

void add_common(CLI::App* app, Options& o, bool with_snr) {
  app->add_option("--config", o.config, "key = value file; flags on the command line win");
  app->add_option("--m", o.m, "Measurements M")->capture_default_str();
  app->add_option("--n", o.n, "Signal length N")->capture_default_str();
  app->add_option("--k,--k-range", o.k, "Sparsity K or range a:b:step")->capture_default_str();
  app->add_option("--trials", o.trials, "Trials per point")->capture_default_str();
  app->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  app->add_option("--algos", o.algos, std::string("Comma list, default ") + kDefaultAlgos);
  app->add_option("--prior", o.prior,
                  "binary | uniform | alphabet:c1,c2,... | gaussian:mu,var")
      ->capture_default_str();
  app->add_option("--sigma-w2", o.sigma_w2, "Noise variance per measurement")
      ->capture_default_str();
  if (with_snr)
    app->add_option("--snr-db-range", o.snr, "SNR grid in dB a:b:step, 'inf' = noise-free")
        ->capture_default_str();
  app->add_option("--gomp-l", o.gomp_l, "Indices per gOMP iteration")->capture_default_str();
  app->add_option("--merge", o.merge, "Two-stage merge: pruned | accumulate")
      ->capture_default_str();
  app->add_option("--out", o.out, "Output CSV path, '-' = stdout")->capture_default_str();
  app->add_option("--threads", o.threads, "Trial workers, 0 = OpenMP default")
      ->capture_default_str();
}

bool given(const std::vector<std::string>& args, const std::string& flag) {
  for (const auto& a : args)
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  return false;
}

// Splices "--key value" pairs from the --config file in right after the
// --config flag, skipping keys that are also given on the command line.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::size_t at = args.size();
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      at = i + 2;
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      at = i + 1;
      break;
    }
  }
  if (path.empty()) return args;
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_file(path);
  } catch (const CLI::Error& e) {
    raise(Errc::io_error, "config: cannot read '" + path + "'");
  }
  std::vector<std::string> extra;
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;
    if (!item.parents.empty()) raise(Errc::config_error, "config: sections are not supported");
    const std::string flag = "--" + item.name;
    if (given(args, flag)) continue;
    std::string value;
    for (std::size_t i = 0; i < item.inputs.size(); ++i) value += (i ? "," : "") + item.inputs[i];
    extra.push_back(flag);
    extra.push_back(value);
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), extra.begin(), extra.end());
  return args;
}

ExperimentConfig to_config(const Options& o, Experiment e, const std::string& default_prior) {
  ExperimentConfig c;
  c.experiment = e;
  c.M = o.m;
  c.N = o.n;
  c.K_values = IntRange::parse(o.k, "k").values();
  c.trials = o.trials;
  c.seed = o.seed;
  c.prior = SignalPrior::parse(o.prior.empty() ? default_prior : o.prior);
  std::string algos = o.algos;
  if (algos.empty())
    algos = c.prior.kind() == SignalPrior::Kind::Binary ? std::string("map-mp,") + kDefaultAlgos
                                                        : kDefaultAlgos;
  c.algorithms = parse_algorithm_list(algos);
  c.sigma_w2 = o.sigma_w2;
  c.L = o.gomp_l;
  if (o.merge == "pruned")
    c.merge = MergePolicy::Pruned;
  else if (o.merge == "accumulate")
    c.merge = MergePolicy::Accumulate;
  else
    raise(Errc::config_error, "merge: expected pruned or accumulate");
  c.threads = o.threads;
  if (!o.baseline.empty()) c.baseline = parse_algorithm(o.baseline);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MAP support detection for greedy sparse recovery"};
  app.require_subcommand(1);

  Options rp, nm, sc, rt, im, vf;
  auto* bench = app.add_subcommand("bench", "Monte-Carlo experiments");
  bench->require_subcommand(1);
  auto* cmd_rp = bench->add_subcommand("recovery-prob", "Exact-recovery rate per K");
  add_common(cmd_rp, rp, false);

  auto* cmd_nm = bench->add_subcommand("nmse", "NMSE against SNR with ridge estimates");
  nm.k = "40";
  nm.prior.clear();
  add_common(cmd_nm, nm, true);

  auto* cmd_sc = bench->add_subcommand("scaling", "MAP-MP success against M with the analytic bound");
  sc.k = "5";
  sc.trials = 500;
  add_common(cmd_sc, sc, false);
  cmd_sc->add_option("--m-range", sc.m_range, "Measurement grid a:b:step")->capture_default_str();

  auto* cmd_rt = bench->add_subcommand("runtime", "Median runtime per algorithm");
  rt.k = "40";
  rt.trials = 50;
  add_common(cmd_rt, rt, false);
  cmd_rt->add_option("--baseline", rt.baseline, "Speedup reference, default first of --algos");

  auto* demo = app.add_subcommand("demo", "Demonstrations");
  demo->require_subcommand(1);
  auto* cmd_im = demo->add_subcommand("image", "Recover a binary PBM image");
  im.algos = "map-sp,map-gomp,sp,gomp";
  im.out = "image.csv";
  add_common(cmd_im, im, false);
  cmd_im->add_option("--input", im.input, "P1 or P4 bitmap")->required();

  auto* cmd_vf = app.add_subcommand("verify", "Monte-Carlo checks of the detector statistics");
  vf.trials = kDefaultVerifyTrials;
  cmd_vf->add_option("--config", vf.config, "key = value file; flags on the command line win");
  cmd_vf->add_option("--trials", vf.trials, "Trials per check (>= 1000)")->capture_default_str();
  cmd_vf->add_option("--seed", vf.seed, "Master seed")->capture_default_str();
  cmd_vf->add_option("--threads", vf.threads, "Workers, 0 = OpenMP default")->capture_default_str();
  cmd_vf->add_option("--out", vf.out, "Report path, '-' = stdout")->capture_default_str();

  try {
    auto args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == Errc::config_error ? 2 : 1;
  }

  try {
    if (cmd_rp->parsed()) {
      write_text(rp.out, recovery_csv(run_recovery_prob(to_config(rp, Experiment::RecoveryProb, "binary"))));
    } else if (cmd_nm->parsed()) {
      ExperimentConfig c = to_config(nm, Experiment::Nmse, "gaussian:1," + format_number(1.0 / (double(nm.m) * nm.m)));
      c.snr_db = parse_real_range(nm.snr, "snr-db-range");
      write_text(nm.out, nmse_csv(run_nmse(c)));
    } else if (cmd_sc->parsed()) {
      ExperimentConfig c = to_config(sc, Experiment::Scaling, "binary");
      c.M_values = IntRange::parse(sc.m_range, "m-range").values();
      write_text(sc.out, scaling_csv(run_scaling(c)));
    } else if (cmd_rt->parsed()) {
      write_text(rt.out, runtime_csv(run_runtime_table(to_config(rt, Experiment::Runtime, "binary"))));
    } else if (cmd_im->parsed()) {
      const auto res = run_image_demo(im.input, im.m, im.sigma_w2, parse_algorithm_list(im.algos),
                                      im.seed, im.out, &std::cerr);
      write_text(im.out, image_csv(res.rows));
      for (const auto& f : res.written) std::cerr << "wrote " << f << '\n';
    } else if (cmd_vf->parsed()) {
      std::ostringstream report;
      const bool ok = run_verify(vf.seed, vf.trials, vf.threads, report);
      write_text(vf.out, report.str());
      return ok ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == Errc::config_error ? 2 : 1;
  }
  return 0;
}
