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

#include "mapcs/ensemble.hpp"

namespace mapcs {

/// Columns `cols` of a sensing matrix, in the given order. Indices are
/// checked for range and duplicates at construction.
class RestrictedSystem {
 public:
  RestrictedSystem(const SensingMatrix& base, Support cols);

  const SensingMatrix& base() const noexcept { return *base_; }
  const Support& cols() const noexcept { return cols_; }
  Index size() const noexcept { return static_cast<Index>(cols_.size()); }

  /// Dense M x |S| copy of the selected columns.
  Matrix gather() const;

 private:
  const SensingMatrix* base_;
  Support cols_;
};

/// z_n = a_n^T r / ||a_n||. Throws degenerate_column on a zero-norm column.
Vector column_correlations(const SensingMatrix& phi, const Vector& r);

/// argmin ||Phi_S x - y|| by column-pivoted Householder QR. Throws
/// singular_system when a pivot falls below 1e-12 of the largest one.
Vector least_squares(const RestrictedSystem& sys, const Vector& y);

/// (Phi_S^T Phi_S + I/snr)^{-1} Phi_S^T y, solved as the stacked least-squares
/// problem [Phi_S; I/sqrt(snr)] x = [y; 0].
Vector ridge_ls(const RestrictedSystem& sys, const Vector& y, double snr);

/// y - Phi_S xhat.
Vector residual(const Vector& y, const RestrictedSystem& sys, const Vector& xhat);

/// Indices of the k largest |v|, largest first, ties to the lower index.
Support top_k_by_magnitude(const Vector& v, Index k);

inline constexpr double kRankTolerance = 1e-12;

}  // namespace mapcs
