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

#include "mapcs/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mapcs/error.hpp"
#include "mapcs/linalg.hpp"
#include "mapcs/map_detector.hpp"

namespace mapcs {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::MapMp: return "map-mp";
    case Algorithm::MapOmp: return "map-omp";
    case Algorithm::MapGomp: return "map-gomp";
    case Algorithm::MapCosamp: return "map-cosamp";
    case Algorithm::MapSp: return "map-sp";
    case Algorithm::Omp: return "omp";
    case Algorithm::Gomp: return "gomp";
    case Algorithm::Cosamp: return "cosamp";
    case Algorithm::Sp: return "sp";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::MapMp, Algorithm::MapOmp, Algorithm::MapGomp, Algorithm::MapCosamp,
                      Algorithm::MapSp, Algorithm::Omp, Algorithm::Gomp, Algorithm::Cosamp,
                      Algorithm::Sp})
    if (to_string(a) == name) return a;
  raise(Errc::config_error, "algos: unknown algorithm '" + std::string(name) + "'");
}

bool is_map(Algorithm a) {
  return a == Algorithm::MapMp || a == Algorithm::MapOmp || a == Algorithm::MapGomp ||
         a == Algorithm::MapCosamp || a == Algorithm::MapSp;
}

bool is_gomp_family(Algorithm a) { return a == Algorithm::MapGomp || a == Algorithm::Gomp; }

bool is_two_stage(Algorithm a) {
  return a == Algorithm::MapCosamp || a == Algorithm::Cosamp || a == Algorithm::MapSp ||
         a == Algorithm::Sp;
}

Algorithm conventional_counterpart(Algorithm a) {
  switch (a) {
    case Algorithm::MapMp:
    case Algorithm::MapOmp: return Algorithm::Omp;
    case Algorithm::MapGomp: return Algorithm::Gomp;
    case Algorithm::MapCosamp: return Algorithm::Cosamp;
    case Algorithm::MapSp: return Algorithm::Sp;
    default: return a;
  }
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::Stopped: return "stopped";
    case Termination::MaxIter: return "max-iter";
    case Termination::ScheduleGuard: return "schedule-guard";
    case Termination::Singular: return "singular";
  }
  return "unknown";
}

StoppingRule StoppingRule::residual(double eps) {
  StoppingRule r;
  r.residual_eps = eps;
  return r;
}

StoppingRule StoppingRule::oracle(double eps, Vector truth) {
  StoppingRule r;
  r.oracle_eps = eps;
  r.oracle_truth = std::move(truth);
  return r;
}

StoppingRule StoppingRule::iterations(int n) {
  StoppingRule r;
  r.max_iterations = n;
  return r;
}

void validate(const AlgorithmConfig& cfg, Index M, Index N) {
  if (cfg.K < 1 || cfg.K >= N) raise(Errc::config_error, "K: need 1 <= K < N");
  if (cfg.algorithm == Algorithm::MapMp && cfg.prior.kind() != SignalPrior::Kind::Binary)
    raise(Errc::config_error, "prior: map-mp requires the binary prior");
  if (is_gomp_family(cfg.algorithm)) {
    if (cfg.L < 1) raise(Errc::config_error, "gomp-l: must be positive");
    if (cfg.L > M / cfg.K) raise(Errc::config_error, "gomp-l: need L <= floor(M/K)");
  }
  if (is_two_stage(cfg.algorithm)) {
    const Index width = (cfg.algorithm == Algorithm::MapCosamp || cfg.algorithm == Algorithm::Cosamp)
                            ? 2 * cfg.K
                            : cfg.K;
    if (width > N) raise(Errc::config_error, "K: selection width exceeds N");
  }
  if (cfg.ridge_snr && !(*cfg.ridge_snr > 0.0))
    raise(Errc::config_error, "ridge_snr: must be positive");
  if (cfg.stopping.oracle_eps && cfg.stopping.oracle_truth.size() != N)
    raise(Errc::config_error, "stopping: oracle truth length must equal N");
  if (cfg.stopping.max_iterations && *cfg.stopping.max_iterations < 1)
    raise(Errc::config_error, "stopping: max_iterations must be positive");
}

namespace {

/// Scores every column for iteration k: |z| for the conventional loops,
/// the log-MAP ratio for the MAP variants.
class Scorer {
 public:
  Scorer(const AlgorithmConfig& cfg, Index M, Index N)
      : cfg_(cfg),
        M_(static_cast<int>(M)),
        ctx_(LlrContext::make(N, cfg.K, M, cfg.prior, cfg.noise)) {}

  Vector operator()(const Vector& z, int k) const {
    const int K = static_cast<int>(cfg_.K);
    switch (cfg_.algorithm) {
      case Algorithm::Omp:
      case Algorithm::Gomp:
      case Algorithm::Cosamp:
      case Algorithm::Sp:
        return z.cwiseAbs();
      case Algorithm::MapMp: {
        Vector out(z.size());
        if (cfg_.noise.sigma_w2 == 0.0 && k >= K) {
          for (Index n = 0; n < z.size(); ++n)
            out(n) = llr_binary_last(z(n), M_, K, static_cast<int>(ctx_.N));
          return out;
        }
        const auto sched = binary_schedule(K, std::min(k, K), M_, cfg_.noise.sigma_w2);
        for (Index n = 0; n < z.size(); ++n) out(n) = llr_binary(z(n), sched, ctx_);
        return out;
      }
      case Algorithm::MapGomp:
        return llr_general(z, schedule(k, static_cast<int>(cfg_.L)), ctx_);
      case Algorithm::MapOmp:
      case Algorithm::MapCosamp:
      case Algorithm::MapSp:
        return llr_general(z, schedule(k, 1), ctx_);
    }
    return z.cwiseAbs();
  }

 private:
  GeneralVarianceSchedule schedule(int k, int L) const {
    return general_schedule(static_cast<int>(cfg_.K), k, L, M_, cfg_.prior.second_moment(),
                            cfg_.noise.sigma_w2_norm);
  }

  const AlgorithmConfig& cfg_;
  int M_;
  LlrContext ctx_;
};

int iteration_cap(const AlgorithmConfig& cfg, Index M) {
  int cap = 0;
  const int K = static_cast<int>(cfg.K);
  switch (cfg.algorithm) {
    case Algorithm::MapMp:
      cap = K;
      break;
    case Algorithm::MapOmp:
    case Algorithm::Omp:
      cap = cfg.stopping.max_iterations ? 2 * K : K;
      break;
    case Algorithm::MapGomp:
    case Algorithm::Gomp:
      cap = std::min<int>(K, static_cast<int>(M / cfg.L));
      break;
    default:
      cap = 2 * K;
      break;
  }
  cap = std::min<int>(cap, static_cast<int>(M) - 3);
  if (cfg.stopping.max_iterations) cap = std::min(cap, *cfg.stopping.max_iterations);
  return std::max(cap, 1);
}

Vector scatter(Index N, const Support& s, const Vector& coeffs) {
  Vector x = Vector::Zero(N);
  for (std::size_t i = 0; i < s.size(); ++i) x(s[i]) = coeffs(static_cast<Index>(i));
  return x;
}

bool should_stop(const StoppingRule& rule, const Vector& xhat, double residual_norm) {
  if (residual_norm == 0.0) return true;
  if (rule.residual_eps && residual_norm <= *rule.residual_eps) return true;
  if (rule.oracle_eps && (rule.oracle_truth - xhat).squaredNorm() <= *rule.oracle_eps) return true;
  return false;
}

Vector estimate(const SensingMatrix& phi, const Support& s, const Vector& y,
                const AlgorithmConfig& cfg, RecoveryTrace& trace) {
  ++trace.ls_solves;
  RestrictedSystem sys(phi, s);
  return cfg.ridge_snr ? ridge_ls(sys, y, *cfg.ridge_snr) : least_squares(sys, y);
}

RecoveryResult finish(RecoveryResult res, Index N, const Support& s, const Vector& coeffs) {
  res.support = s;
  res.xhat = scatter(N, s, coeffs);
  return res;
}

// MAP-MP: binary entries, so the estimate on the support is fixed at one and
// no least-squares solve is needed.
RecoveryResult run_map_mp(const Vector& y, const SensingMatrix& phi, const AlgorithmConfig& cfg) {
  validate(cfg, phi.rows(), phi.cols());
  const Index N = phi.cols();
  const Scorer score(cfg, phi.rows(), N);
  RecoveryResult res;
  res.termination = Termination::MaxIter;
  Support s;
  Vector r = y;
  const int cap = std::min<int>(iteration_cap(cfg, phi.rows()), static_cast<int>(N));
  for (int k = 1; k <= cap; ++k) {
    const Vector lambda = score(column_correlations(phi, r), k);
    const Support pick = select_top_L(lambda, 1, s);
    res.trace.selections.push_back(pick);
    s.push_back(pick.front());
    r -= phi.entries().col(pick.front());
    res.residual_norms.push_back(r.norm());
    res.iterations = k;
    if (should_stop(cfg.stopping, scatter(N, s, Vector::Ones(static_cast<Index>(s.size()))),
                    res.residual_norms.back())) {
      res.termination = Termination::Stopped;
      break;
    }
  }
  return finish(std::move(res), N, s, Vector::Ones(static_cast<Index>(s.size())));
}

// OMP / gOMP and their MAP variants: grow the support by `width` per
// iteration, re-solve least squares on the whole support.
RecoveryResult run_orthogonal(const Vector& y, const SensingMatrix& phi, const AlgorithmConfig& cfg,
                              Index width) {
  validate(cfg, phi.rows(), phi.cols());
  const Index M = phi.rows();
  const Index N = phi.cols();
  const Scorer score(cfg, M, N);
  RecoveryResult res;
  res.termination = Termination::MaxIter;
  Support s;
  Vector coeffs;
  Vector r = y;
  const int cap = iteration_cap(cfg, M);
  for (int k = 1; k <= cap; ++k) {
    if (static_cast<Index>(s.size()) + width > std::min(M, N)) break;
    Vector lambda;
    try {
      lambda = score(column_correlations(phi, r), k);
    } catch (const Error& e) {
      if (e.code() != Errc::schedule_overflow) throw;
      res.termination = Termination::ScheduleGuard;
      break;
    }
    const Support pick = select_top_L(lambda, width, s);
    Support grown = s;
    grown.insert(grown.end(), pick.begin(), pick.end());
    Vector next;
    try {
      next = estimate(phi, grown, y, cfg, res.trace);
    } catch (const Error& e) {
      if (e.code() != Errc::singular_system) throw;
      res.termination = Termination::Singular;
      break;
    }
    res.trace.selections.push_back(pick);
    s = std::move(grown);
    coeffs = std::move(next);
    r = residual(y, RestrictedSystem(phi, s), coeffs);
    res.residual_norms.push_back(r.norm());
    res.iterations = k;
    if (should_stop(cfg.stopping, scatter(N, s, coeffs), res.residual_norms.back())) {
      res.termination = Termination::Stopped;
      break;
    }
  }
  return finish(std::move(res), N, s, coeffs);
}

// CoSaMP / SP and their MAP variants.
RecoveryResult run_two_stage(const Vector& y, const SensingMatrix& phi, const AlgorithmConfig& cfg,
                             Index width, bool refit) {
  validate(cfg, phi.rows(), phi.cols());
  const Index M = phi.rows();
  const Index N = phi.cols();
  const Index K = cfg.K;
  const Scorer score(cfg, M, N);

  RecoveryResult res;
  res.termination = Termination::MaxIter;
  Support merged;  // S^{k-1}
  Support pruned;  // G
  Support best;
  Vector best_coeffs;
  double best_norm = y.norm();
  double last_norm = y.norm();
  Vector r = y;

  const int cap = iteration_cap(cfg, M);
  for (int k = 1; k <= cap; ++k) {
    Vector lambda;
    try {
      lambda = score(column_correlations(phi, r), k);
    } catch (const Error& e) {
      if (e.code() != Errc::schedule_overflow) throw;
      res.termination = Termination::ScheduleGuard;
      break;
    }
    const Support omega = select_top_L(lambda, width, {});
    res.trace.selections.push_back(omega);

    // Candidate set: previous set first, then the new picks.
    Support cand = cfg.merge == MergePolicy::Accumulate ? merged : pruned;
    std::vector<char> in(static_cast<std::size_t>(N), 0);
    for (Index c : cand) in[static_cast<std::size_t>(c)] = 1;
    for (Index c : omega)
      if (!in[static_cast<std::size_t>(c)]) {
        in[static_cast<std::size_t>(c)] = 1;
        cand.push_back(c);
      }
    if (static_cast<Index>(cand.size()) > M) {
      // Keep the current pruned estimate, fill the rest by score.
      std::vector<char> keep(static_cast<std::size_t>(N), 0);
      for (Index c : pruned) keep[static_cast<std::size_t>(c)] = 1;
      std::stable_sort(cand.begin(), cand.end(), [&](Index a, Index b) {
        const bool ka = keep[static_cast<std::size_t>(a)], kb = keep[static_cast<std::size_t>(b)];
        if (ka != kb) return ka;
        return lambda(a) > lambda(b) || (lambda(a) == lambda(b) && a < b);
      });
      cand.resize(static_cast<std::size_t>(M));
      ++res.trace.truncations;
    }

    Vector b;
    Vector fit;
    Support g;
    try {
      b = estimate(phi, cand, y, cfg, res.trace);
      const Support local = top_k_by_magnitude(b, std::min<Index>(K, b.size()));
      g.reserve(local.size());
      for (Index i : local) g.push_back(cand[static_cast<std::size_t>(i)]);
      std::sort(g.begin(), g.end());
      if (refit) {
        fit = estimate(phi, g, y, cfg, res.trace);
      } else {
        fit.resize(static_cast<Index>(g.size()));
        for (std::size_t i = 0; i < g.size(); ++i) {
          const auto pos = std::find(cand.begin(), cand.end(), g[i]) - cand.begin();
          fit(static_cast<Index>(i)) = b(pos);
        }
      }
    } catch (const Error& e) {
      if (e.code() != Errc::singular_system) throw;
      res.termination = Termination::Singular;
      break;
    }

    const Vector r_next = residual(y, RestrictedSystem(phi, g), fit);
    const double norm_next = r_next.norm();
    res.residual_norms.push_back(norm_next);
    res.iterations = k;
    merged = std::move(cand);

    const bool shrank = norm_next <= last_norm * (1.0 - 1e-12);
    const bool repeat = g == pruned;
    if (norm_next < best_norm || best.empty()) {
      best = g;
      best_coeffs = fit;
      best_norm = norm_next;
    }
    if (!shrank && (cfg.stopping.halt_on_stall || repeat)) {
      res.termination = Termination::Stopped;
      break;
    }
    pruned = std::move(g);
    r = r_next;
    last_norm = norm_next;
    if (should_stop(cfg.stopping, scatter(N, pruned, fit), norm_next)) {
      best = pruned;
      best_coeffs = std::move(fit);
      res.termination = Termination::Stopped;
      break;
    }
  }
  return finish(std::move(res), N, best, best_coeffs);
}

}  // namespace

RecoveryResult map_mp(const Vector& y, const SensingMatrix& phi, const AlgorithmConfig& cfg) {
  AlgorithmConfig c = cfg;
  c.algorithm = Algorithm::MapMp;
  return run_map_mp(y, phi, c);
}

#define MAPCS_DEFINE_ORTHO(fn, algo, width)                                                  \
  RecoveryResult fn(const Vector& y, const SensingMatrix& phi, const AlgorithmConfig& cfg) { \
    AlgorithmConfig c = cfg;                                                                 \
    c.algorithm = algo;                                                                      \
    return run_orthogonal(y, phi, c, width);                                                 \
  }

MAPCS_DEFINE_ORTHO(map_omp, Algorithm::MapOmp, 1)
MAPCS_DEFINE_ORTHO(omp, Algorithm::Omp, 1)
MAPCS_DEFINE_ORTHO(map_gomp, Algorithm::MapGomp, cfg.L)
MAPCS_DEFINE_ORTHO(gomp, Algorithm::Gomp, cfg.L)
#undef MAPCS_DEFINE_ORTHO

#define MAPCS_DEFINE_TWO_STAGE(fn, algo, width, refit)                                       \
  RecoveryResult fn(const Vector& y, const SensingMatrix& phi, const AlgorithmConfig& cfg) { \
    AlgorithmConfig c = cfg;                                                                 \
    c.algorithm = algo;                                                                      \
    return run_two_stage(y, phi, c, width, refit);                                           \
  }

MAPCS_DEFINE_TWO_STAGE(map_cosamp, Algorithm::MapCosamp, 2 * cfg.K, false)
MAPCS_DEFINE_TWO_STAGE(cosamp, Algorithm::Cosamp, 2 * cfg.K, false)
MAPCS_DEFINE_TWO_STAGE(map_sp, Algorithm::MapSp, cfg.K, true)
MAPCS_DEFINE_TWO_STAGE(sp, Algorithm::Sp, cfg.K, true)
#undef MAPCS_DEFINE_TWO_STAGE

RecoveryResult recover(const Vector& y, const SensingMatrix& phi, const AlgorithmConfig& cfg) {
  require(y.size() == phi.rows(), Errc::dimension_mismatch, "y length must equal M");
  switch (cfg.algorithm) {
    case Algorithm::MapMp: return map_mp(y, phi, cfg);
    case Algorithm::MapOmp: return map_omp(y, phi, cfg);
    case Algorithm::MapGomp: return map_gomp(y, phi, cfg);
    case Algorithm::MapCosamp: return map_cosamp(y, phi, cfg);
    case Algorithm::MapSp: return map_sp(y, phi, cfg);
    case Algorithm::Omp: return omp(y, phi, cfg);
    case Algorithm::Gomp: return gomp(y, phi, cfg);
    case Algorithm::Cosamp: return cosamp(y, phi, cfg);
    case Algorithm::Sp: return sp(y, phi, cfg);
  }
  raise(Errc::invalid_argument, "unknown algorithm");
}

}  // namespace mapcs
