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

#include "mapcs/kernels.hpp"

namespace mapcs::kernels {
namespace {

inline double column_dot(const double* col, const double* r, Index m) {
  double acc = 0.0;
  for (Index i = 0; i < m; ++i) acc += col[i] * r[i];
  return acc;
}

}  // namespace

void correlate_serial(const Matrix& phi, const Vector& norms, const Vector& r, Vector& z) {
  const Index m = phi.rows();
  const Index n = phi.cols();
  z.resize(n);
  for (Index j = 0; j < n; ++j) z(j) = column_dot(phi.col(j).data(), r.data(), m) / norms(j);
}

void correlate_parallel(const Matrix& phi, const Vector& norms, const Vector& r, Vector& z) {
  const Index m = phi.rows();
  const Index n = phi.cols();
  z.resize(n);
  const bool go_wide = m * n >= kParallelWorkThreshold && !omp_in_parallel();
#pragma omp parallel for schedule(static) if (go_wide)
  for (Index j = 0; j < n; ++j) z(j) = column_dot(phi.col(j).data(), r.data(), m) / norms(j);
}

}  // namespace mapcs::kernels
