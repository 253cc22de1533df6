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

#pragma once

// Random measurement ensemble: Gaussian sensing matrices, sparse signals drawn
// from a handful of priors, and additive white Gaussian measurement noise.
// Every generator is a pure function of its parameters and seed.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mapcs {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
/// Ordered list of 0-based column indices.
using Support = std::vector<Index>;

/// M x N measurement operator with cached Euclidean column norms.
class SensingMatrix {
 public:
  explicit SensingMatrix(Matrix entries);

  static SensingMatrix identity(Index n);

  Index rows() const noexcept { return entries_.rows(); }
  Index cols() const noexcept { return entries_.cols(); }
  const Matrix& entries() const noexcept { return entries_; }
  const Vector& col_norms() const noexcept { return col_norms_; }

 private:
  Matrix entries_;
  Vector col_norms_;
};

/// Entries IID N(0, 1/M), bit-identical for identical (M, N, seed).
SensingMatrix gen_sensing_matrix(Index M, Index N, std::uint64_t seed);

/// Distribution of the nonzero entries. `second_moment` is E[x^2], which is
/// the quantity every variance schedule consumes.
class SignalPrior {
 public:
  enum class Kind { Binary, Uniform01, FiniteAlphabet, Gaussian };

  static SignalPrior binary();
  static SignalPrior uniform01();
  /// Alphabet entries must be distinct and the list nonempty.
  static SignalPrior finite_alphabet(std::vector<double> alphabet);
  static SignalPrior gaussian(double mu, double var);

  /// Parses the CLI spelling: binary | uniform | alphabet:c1,c2,... |
  /// gaussian:mu,var.
  static SignalPrior parse(const std::string& text);

  Kind kind() const noexcept { return kind_; }
  double mean() const noexcept { return mean_; }
  double second_moment() const noexcept { return second_moment_; }
  double variance() const noexcept { return variance_; }
  const std::vector<double>& alphabet() const noexcept { return alphabet_; }
  double gaussian_mu() const noexcept { return mean_; }
  double gaussian_var() const noexcept { return variance_; }

  /// CSV-safe label (no commas), e.g. "alphabet:0;1;2".
  std::string label() const;

  template <class Gen>
  double sample(Gen& rng) const;

 private:
  SignalPrior(Kind kind, double mean, double m2, double var, std::vector<double> alphabet = {});

  Kind kind_;
  double mean_;
  double second_moment_;
  double variance_;
  std::vector<double> alphabet_;
};

struct SparseSignal {
  Index dim = 0;
  Support support;
  std::vector<double> values;
  SignalPrior prior = SignalPrior::binary();

  Index sparsity() const noexcept { return static_cast<Index>(support.size()); }
  Vector dense() const;
};

/// Support uniform without replacement over [0, N), values IID from `prior`.
/// Requires 1 <= K < N.
SparseSignal gen_sparse_signal(Index N, Index K, const SignalPrior& prior, std::uint64_t seed);

/// Per-component noise variance and its normalized form M * sigma_w2.
struct NoiseModel {
  double sigma_w2 = 0.0;
  double sigma_w2_norm = 0.0;

  static NoiseModel make(double sigma_w2, Index M);
  static NoiseModel noiseless() { return {}; }
};

/// y = Phi x + w, w IID N(0, sigma_w2). sigma_w2 == 0 gives w == 0 exactly.
Vector measure(const SensingMatrix& phi, const SparseSignal& x, const NoiseModel& noise,
               std::uint64_t seed);
Vector measure(const SensingMatrix& phi, const Vector& x, const NoiseModel& noise,
               std::uint64_t seed);

}  // namespace mapcs

#include "mapcs/rng.hpp"

namespace mapcs {

template <class Gen>
double SignalPrior::sample(Gen& rng) const {
  switch (kind_) {
    case Kind::Binary:
      return 1.0;
    case Kind::Uniform01:
      return rng.uniform();
    case Kind::FiniteAlphabet:
      return alphabet_[static_cast<std::size_t>(rng.below(alphabet_.size()))];
    case Kind::Gaussian:
      return mean_ + std::sqrt(variance_) * rng.normal();
  }
  return 0.0;
}

}  // namespace mapcs
