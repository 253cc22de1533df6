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

#include "mapcs/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "mapcs/error.hpp"
#include "mapcs/rng.hpp"

namespace mapcs {

SensingMatrix::SensingMatrix(Matrix entries) : entries_(std::move(entries)) {
  require(entries_.rows() >= 1 && entries_.cols() >= 1, Errc::invalid_argument,
          "sensing matrix must be non-empty");
  col_norms_ = entries_.colwise().norm().transpose();
}

SensingMatrix SensingMatrix::identity(Index n) {
  return SensingMatrix(Matrix::Identity(n, n));
}

SensingMatrix gen_sensing_matrix(Index M, Index N, std::uint64_t seed) {
  require(M >= 1 && N >= 1, Errc::invalid_argument, "M and N must be positive");
  Rng rng(derive_seed(seed, kStreamMatrix));
  const double scale = 1.0 / std::sqrt(static_cast<double>(M));
  Matrix a(M, N);
  // Column-major fill: column n is consumed as one contiguous block of draws.
  for (Index n = 0; n < N; ++n)
    for (Index m = 0; m < M; ++m) a(m, n) = scale * rng.normal();
  return SensingMatrix(std::move(a));
}

SignalPrior::SignalPrior(Kind kind, double mean, double m2, double var, std::vector<double> alphabet)
    : kind_(kind), mean_(mean), second_moment_(m2), variance_(var), alphabet_(std::move(alphabet)) {}

SignalPrior SignalPrior::binary() { return {Kind::Binary, 1.0, 1.0, 0.0}; }

SignalPrior SignalPrior::uniform01() { return {Kind::Uniform01, 0.5, 1.0 / 3.0, 1.0 / 12.0}; }

SignalPrior SignalPrior::finite_alphabet(std::vector<double> alphabet) {
  require(!alphabet.empty(), Errc::invalid_argument, "alphabet must be nonempty");
  std::set<double> distinct(alphabet.begin(), alphabet.end());
  require(distinct.size() == alphabet.size(), Errc::invalid_argument,
          "alphabet entries must be distinct");
  const double q = static_cast<double>(alphabet.size());
  double mean = 0.0, m2 = 0.0;
  for (double c : alphabet) {
    mean += c;
    m2 += c * c;
  }
  mean /= q;
  m2 /= q;
  require(m2 > 0.0, Errc::invalid_argument, "alphabet must contain a nonzero symbol");
  return {Kind::FiniteAlphabet, mean, m2, std::max(0.0, m2 - mean * mean), std::move(alphabet)};
}

SignalPrior SignalPrior::gaussian(double mu, double var) {
  require(var > 0.0 && std::isfinite(var) && std::isfinite(mu), Errc::invalid_argument,
          "gaussian prior needs finite mean and positive variance");
  return {Kind::Gaussian, mu, mu * mu + var, var};
}

namespace {

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      raise(Errc::config_error, "prior: bad number '" + item + "'");
    }
    if (used != item.size()) raise(Errc::config_error, "prior: bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

SignalPrior SignalPrior::parse(const std::string& text) {
  if (text == "binary") return binary();
  if (text == "uniform" || text == "uniform01") return uniform01();
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  try {
    if (head == "alphabet") return finite_alphabet(parse_number_list(rest));
    if (head == "gaussian") {
      const auto p = parse_number_list(rest);
      if (p.size() != 2) raise(Errc::config_error, "prior: gaussian needs mu,var");
      return gaussian(p[0], p[1]);
    }
  } catch (const Error& e) {
    if (e.code() == Errc::config_error) throw;
    raise(Errc::config_error, std::string("prior: ") + e.what());
  }
  raise(Errc::config_error, "prior: unknown prior '" + text + "'");
}

std::string SignalPrior::label() const {
  switch (kind_) {
    case Kind::Binary: return "binary";
    case Kind::Uniform01: return "uniform";
    case Kind::FiniteAlphabet: {
      std::string s = "alphabet:";
      for (std::size_t i = 0; i < alphabet_.size(); ++i) {
        if (i) s += ';';
        s += fmt_num(alphabet_[i]);
      }
      return s;
    }
    case Kind::Gaussian: return "gaussian:" + fmt_num(mean_) + ";" + fmt_num(variance_);
  }
  return "unknown";
}

Vector SparseSignal::dense() const {
  Vector x = Vector::Zero(dim);
  for (std::size_t i = 0; i < support.size(); ++i) x(support[i]) = values[i];
  return x;
}

SparseSignal gen_sparse_signal(Index N, Index K, const SignalPrior& prior, std::uint64_t seed) {
  if (K < 1 || K >= N) raise(Errc::invalid_sparsity, "need 1 <= K < N");
  Rng rng(derive_seed(seed, kStreamSignal));

  // Partial Fisher-Yates over [0, N).
  std::vector<Index> pool(static_cast<std::size_t>(N));
  std::iota(pool.begin(), pool.end(), Index{0});
  for (Index i = 0; i < K; ++i) {
    const auto j = i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(N - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }

  SparseSignal x;
  x.dim = N;
  x.prior = prior;
  x.support.assign(pool.begin(), pool.begin() + K);
  std::sort(x.support.begin(), x.support.end());
  x.values.reserve(static_cast<std::size_t>(K));
  for (Index i = 0; i < K; ++i) x.values.push_back(prior.sample(rng));
  return x;
}

NoiseModel NoiseModel::make(double sigma_w2, Index M) {
  require(sigma_w2 >= 0.0 && std::isfinite(sigma_w2), Errc::invalid_argument,
          "noise variance must be finite and nonnegative");
  return {sigma_w2, static_cast<double>(M) * sigma_w2};
}

Vector measure(const SensingMatrix& phi, const Vector& x, const NoiseModel& noise,
               std::uint64_t seed) {
  require(x.size() == phi.cols(), Errc::dimension_mismatch, "signal length must equal N");
  Vector y = phi.entries() * x;
  if (noise.sigma_w2 > 0.0) {
    Rng rng(derive_seed(seed, kStreamNoise));
    const double sd = std::sqrt(noise.sigma_w2);
    for (Index m = 0; m < y.size(); ++m) y(m) += sd * rng.normal();
  }
  return y;
}

Vector measure(const SensingMatrix& phi, const SparseSignal& x, const NoiseModel& noise,
               std::uint64_t seed) {
  require(x.dim == phi.cols(), Errc::dimension_mismatch, "signal length must equal N");
  return measure(phi, x.dense(), noise, seed);
}

}  // namespace mapcs
