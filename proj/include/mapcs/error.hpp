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

#include <stdexcept>
#include <string>
#include <string_view>

namespace mapcs {

enum class Errc {
  invalid_argument,
  invalid_sparsity,
  dimension_mismatch,
  degenerate_column,
  singular_system,
  schedule_overflow,
  invalid_iteration,
  must_use_last_iteration,
  domain_error,
  empty_signal,
  parse_error,
  io_error,
  config_error,
};

std::string_view to_string(Errc code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and tests) can branch on the category instead of the message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& what);

inline void require(bool cond, Errc code, const char* what) {
  if (!cond) raise(code, what);
}

}  // namespace mapcs
