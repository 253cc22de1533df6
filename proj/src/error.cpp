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

#include "mapcs/error.hpp"

namespace mapcs {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::invalid_sparsity: return "invalid-sparsity";
    case Errc::dimension_mismatch: return "dimension-mismatch";
    case Errc::degenerate_column: return "degenerate-column";
    case Errc::singular_system: return "singular-system";
    case Errc::schedule_overflow: return "schedule-overflow";
    case Errc::invalid_iteration: return "invalid-iteration";
    case Errc::must_use_last_iteration: return "must-use-last-iteration";
    case Errc::domain_error: return "domain-error";
    case Errc::empty_signal: return "empty-signal";
    case Errc::parse_error: return "parse-error";
    case Errc::io_error: return "io-error";
    case Errc::config_error: return "config-error";
  }
  return "unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace mapcs
