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

#include <doctest.h>

#include <filesystem>
#include <string>

#include "mapcs/error.hpp"
#include "mapcs/pbm.hpp"

using namespace mapcs;

namespace {

Errc code_of(std::string_view data) {
  try {
    parse_pbm(data);
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::invalid_argument;
}

std::string message_of(std::string_view data) {
  try {
    parse_pbm(data);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("pbm") {
  TEST_CASE("ascii with comments") {
    const auto img = parse_pbm("P1\n# comment\n3 2\n1 0 1\n0 1 0\n");
    CHECK(img.width == 3);
    CHECK(img.height == 2);
    CHECK(img.at(0, 0) == 1);
    CHECK(img.at(0, 1) == 0);
    CHECK(img.at(1, 1) == 1);
    CHECK(img.set_count() == 3);
    CHECK(parse_pbm("P1 3 2 101010").bits == img.bits);
  }

  TEST_CASE("raw raster with row padding") {
    std::string raw = "P4\n10 2\n";
    raw += static_cast<char>(0b10000000);
    raw += static_cast<char>(0b01000000);
    raw += static_cast<char>(0b00000001);
    raw += static_cast<char>(0b11000000);
    const auto img = parse_pbm(raw);
    CHECK(img.width == 10);
    CHECK(img.at(0, 0) == 1);
    CHECK(img.at(0, 9) == 1);
    CHECK(img.at(1, 7) == 1);
    CHECK(img.at(1, 8) == 1);
    CHECK(img.at(1, 9) == 1);
    CHECK(img.set_count() == 5);
  }

  TEST_CASE("p1 output round trips") {
    Bitmap img;
    img.width = 75;
    img.height = 3;
    img.bits.assign(75 * 3, 0);
    for (std::size_t i = 0; i < img.bits.size(); i += 7) img.bits[i] = 1;
    const auto text = to_p1(img);
    CHECK(text.rfind("P1\n75 3\n", 0) == 0);
    CHECK(text.find('\r') == std::string::npos);
    CHECK(parse_pbm(text).bits == img.bits);

    const auto path = (std::filesystem::temp_directory_path() / "mapcs_pbm_roundtrip.pbm").string();
    write_pbm(path, img);
    CHECK(read_pbm(path).bits == img.bits);
    std::filesystem::remove(path);
  }

  TEST_CASE("column-major flattening") {
    const auto img = parse_pbm("P1 2 3 10 01 11");
    const Vector x = flatten_column_major(img);
    REQUIRE(x.size() == 6);
    // column 0 = (1,0,1), column 1 = (0,1,1)
    CHECK(x(0) == 1);
    CHECK(x(1) == 0);
    CHECK(x(2) == 1);
    CHECK(x(3) == 0);
    CHECK(x(4) == 1);
    CHECK(x(5) == 1);
    Vector soft = x * 0.6;
    soft(1) = 0.49;
    const auto back = unflatten_column_major(soft, 2, 3);
    CHECK(back.bits == img.bits);
  }

  TEST_CASE("malformed input") {
    CHECK(code_of("P2 1 1 0") == Errc::parse_error);
    CHECK(code_of("P1 2 2 1 0 1") == Errc::parse_error);
    CHECK(code_of("P1 1 1 2") == Errc::parse_error);
    CHECK(code_of("P1 0 1") == Errc::parse_error);
    CHECK(code_of("P4\n8 2\n\xff") == Errc::parse_error);
    CHECK(message_of("P1 1 1 2").find("at byte 7") != std::string::npos);
    CHECK_THROWS_AS(read_pbm("/nonexistent/x.pbm"), Error);
  }

  TEST_CASE("bundled test image") {
    const auto img = read_pbm(std::string(MAPCS_TEST_DATA) + "/glyph16.pbm");
    CHECK(img.width == 16);
    CHECK(img.height == 16);
    CHECK(img.set_count() == 20);
  }
}
