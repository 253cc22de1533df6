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

namespace mapcs {

/// Error function.
double erf(double x);

/// ln Gamma(x) for x > 0; throws domain_error otherwise.
double ln_gamma(double x);

/// ln erfc(x), finite for every finite x (asymptotic series past the point
/// where erfc underflows).
double log_erfc(double x);

/// ln of the standard normal upper tail Q(x) = P[Z > x].
double log_normal_tail(double x);

/// ln(Phi(b) - Phi(a)) for a < b, accurate when both ends sit deep in the
/// same tail.
double log_normal_cdf_diff(double a, double b);

/// ln N(x; mean, var).
double log_normal_pdf(double x, double mean, double var);

/// E||a|| for a with M IID N(0, 1/M) entries: sqrt(2/M) Gamma((M+1)/2) / Gamma(M/2).
double expected_column_norm(int M);

}  // namespace mapcs
