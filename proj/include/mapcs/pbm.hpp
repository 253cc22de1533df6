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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mapcs/ensemble.hpp"

namespace mapcs {

/// 1 = set (black) pixel. Row-major storage.
struct Bitmap {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;

  std::uint8_t at(int row, int col) const {
    return bits[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                static_cast<std::size_t>(col)];
  }
  std::size_t set_count() const;
};

/// Parses P1 (ASCII) or P4 (packed) data. Errors are parse_error with the
/// byte offset of the problem.
Bitmap parse_pbm(std::string_view data);
Bitmap read_pbm(const std::string& path);

/// Canonical P1: "P1\n<w> <h>\n", then digits without separators, lines
/// wrapped at 70 characters, one row starting on a fresh line.
std::string to_p1(const Bitmap& img);
void write_pbm(const std::string& path, const Bitmap& img);

/// Column-major flattening to {0,1}^N.
Vector flatten_column_major(const Bitmap& img);

/// Inverse of flatten_column_major; entries >= threshold become set pixels.
Bitmap unflatten_column_major(const Vector& x, int width, int height, double threshold = 0.5);

}  // namespace mapcs
