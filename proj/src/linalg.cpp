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

#include "mapcs/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mapcs/error.hpp"
#include "mapcs/kernels.hpp"

namespace mapcs {

RestrictedSystem::RestrictedSystem(const SensingMatrix& base, Support cols)
    : base_(&base), cols_(std::move(cols)) {
  std::vector<char> seen(static_cast<std::size_t>(base.cols()), 0);
  for (Index c : cols_) {
    require(c >= 0 && c < base.cols(), Errc::invalid_argument, "column index out of range");
    require(!seen[static_cast<std::size_t>(c)], Errc::invalid_argument, "duplicate column index");
    seen[static_cast<std::size_t>(c)] = 1;
  }
}

Matrix RestrictedSystem::gather() const {
  Matrix out(base_->rows(), size());
  for (Index j = 0; j < size(); ++j) out.col(j) = base_->entries().col(cols_[static_cast<std::size_t>(j)]);
  return out;
}

Vector column_correlations(const SensingMatrix& phi, const Vector& r) {
  require(r.size() == phi.rows(), Errc::dimension_mismatch, "residual length must equal M");
  if ((phi.col_norms().array() <= 0.0).any()) raise(Errc::degenerate_column, "zero-norm column");
  Vector z;
  kernels::correlate_parallel(phi.entries(), phi.col_norms(), r, z);
  return z;
}

namespace {

Vector solve_qr(const Matrix& a, const Vector& b) {
  Eigen::ColPivHouseholderQR<Matrix> qr(a);
  qr.setThreshold(kRankTolerance);
  if (qr.rank() < a.cols()) raise(Errc::singular_system, "restricted system is rank deficient");
  return qr.solve(b);
}

}  // namespace

Vector least_squares(const RestrictedSystem& sys, const Vector& y) {
  require(y.size() == sys.base().rows(), Errc::dimension_mismatch, "y length must equal M");
  if (sys.size() == 0) return Vector();
  if (sys.size() > sys.base().rows()) raise(Errc::singular_system, "more columns than rows");
  return solve_qr(sys.gather(), y);
}

Vector ridge_ls(const RestrictedSystem& sys, const Vector& y, double snr) {
  require(y.size() == sys.base().rows(), Errc::dimension_mismatch, "y length must equal M");
  require(snr > 0.0, Errc::invalid_argument, "ridge snr must be positive");
  const Index m = sys.base().rows();
  const Index s = sys.size();
  if (s == 0) return Vector();
  Matrix a = Matrix::Zero(m + s, s);
  a.topRows(m) = sys.gather();
  a.bottomRows(s).diagonal().setConstant(1.0 / std::sqrt(snr));
  Vector b = Vector::Zero(m + s);
  b.head(m) = y;
  return solve_qr(a, b);
}

Vector residual(const Vector& y, const RestrictedSystem& sys, const Vector& xhat) {
  require(y.size() == sys.base().rows() && xhat.size() == sys.size(), Errc::dimension_mismatch,
          "residual: dimension mismatch");
  Vector r = y;
  for (Index j = 0; j < sys.size(); ++j)
    r -= xhat(j) * sys.base().entries().col(sys.cols()[static_cast<std::size_t>(j)]);
  return r;
}

Support top_k_by_magnitude(const Vector& v, Index k) {
  if (k < 0 || k > v.size()) raise(Errc::invalid_argument, "k exceeds vector length");
  Support idx(static_cast<std::size_t>(v.size()));
  std::iota(idx.begin(), idx.end(), Index{0});
  auto first = idx.begin();
  std::partial_sort(first, first + k, idx.end(), [&](Index a, Index b) {
    const double fa = std::abs(v(a)), fb = std::abs(v(b));
    return fa > fb || (fa == fb && a < b);
  });
  idx.resize(static_cast<std::size_t>(k));
  return idx;
}

}  // namespace mapcs
