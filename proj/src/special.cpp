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

#include "mapcs/special.hpp"

#include <cmath>
#include <numbers>

#include "mapcs/error.hpp"

namespace mapcs {

double erf(double x) { return std::erf(x); }

double ln_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) raise(Errc::domain_error, "ln_gamma needs x > 0");
  // x > 0 so the sign output of lgamma_r is always +1; the reentrant form
  // avoids the global signgam write of lgamma.
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

double log_erfc(double x) {
  if (x < 25.0) return std::log(std::erfc(x));
  // erfc(x) ~ exp(-x^2) / (x sqrt(pi)) * (1 - 1/(2x^2) + 3/(4x^4) - 15/(8x^6))
  const double inv2 = 1.0 / (x * x);
  const double series = 1.0 - 0.5 * inv2 + 0.75 * inv2 * inv2 - 1.875 * inv2 * inv2 * inv2;
  return -x * x - std::log(x * std::sqrt(std::numbers::pi)) + std::log(series);
}

double log_normal_tail(double x) { return std::log(0.5) + log_erfc(x / std::numbers::sqrt2); }

double log_normal_cdf_diff(double a, double b) {
  if (!(a < b)) raise(Errc::invalid_argument, "log_normal_cdf_diff needs a < b");
  if (a >= 0.0) {
    // Q(a) - Q(b), both upper tails.
    const double la = log_normal_tail(a);
    const double lb = log_normal_tail(b);
    return la + std::log(-std::expm1(lb - la));
  }
  if (b <= 0.0) {
    // Q(-b) - Q(-a), both lower tails mirrored.
    const double lb = log_normal_tail(-b);
    const double la = log_normal_tail(-a);
    return lb + std::log(-std::expm1(la - lb));
  }
  // Straddles zero: the mass is at least Phi(b) - 1/2 + 1/2 - Phi(a), no cancellation.
  const double lower = 0.5 * std::erfc(-a / std::numbers::sqrt2);  // Phi(a)
  const double upper = 0.5 * std::erfc(b / std::numbers::sqrt2);   // Q(b)
  return std::log1p(-(lower + upper));
}

double log_normal_pdf(double x, double mean, double var) {
  const double d = x - mean;
  return -0.5 * std::log(2.0 * std::numbers::pi * var) - d * d / (2.0 * var);
}

double expected_column_norm(int M) {
  const double m = static_cast<double>(M);
  return std::sqrt(2.0 / m) * std::exp(ln_gamma(0.5 * (m + 1.0)) - ln_gamma(0.5 * m));
}

}  // namespace mapcs
