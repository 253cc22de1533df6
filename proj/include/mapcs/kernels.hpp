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

// Data-parallel inner kernels. Each kernel has a serial reference that the
// OpenMP variant must match bit-for-bit: the parallel split is over output
// elements only, and every element is reduced in the same order as in the
// serial path.

#include <cstddef>
#include <exception>
#include <mutex>

#include <omp.h>

#include "mapcs/ensemble.hpp"

namespace mapcs::kernels {

/// z(n) = <a_n, r> / norms(n).
void correlate_serial(const Matrix& phi, const Vector& norms, const Vector& r, Vector& z);
void correlate_parallel(const Matrix& phi, const Vector& norms, const Vector& r, Vector& z);

/// Below this many multiply-adds the parallel kernel runs inline.
inline constexpr std::ptrdiff_t kParallelWorkThreshold = 1 << 16;

/// Runs fn(i) for i in [0, n) on the calling thread.
template <class Fn>
void for_each_trial_serial(std::size_t n, Fn&& fn) {
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

/// Runs fn(i) for i in [0, n) across `threads` OpenMP workers (0 = runtime
/// default) with dynamic scheduling. fn must only write to slot i of its
/// outputs; then the result is independent of the schedule. The first
/// exception thrown by any worker is rethrown on the caller.
template <class Fn>
void for_each_trial_parallel(std::size_t n, int threads, Fn&& fn) {
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const int workers = threads > 0 ? threads : omp_get_max_threads();
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace mapcs::kernels
