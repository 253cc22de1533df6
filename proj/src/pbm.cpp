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

#include "mapcs/pbm.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>

#include "mapcs/error.hpp"

namespace mapcs {

namespace {

[[noreturn]] void fail_at(std::size_t pos, const std::string& what) {
  raise(Errc::parse_error, "pbm: " + what + " at byte " + std::to_string(pos));
}

class Cursor {
 public:
  explicit Cursor(std::string_view d) : d_(d) {}

  std::size_t pos() const { return pos_; }
  bool done() const { return pos_ >= d_.size(); }
  char peek() const { return d_[pos_]; }
  char take() { return d_[pos_++]; }

  // Whitespace and '#' comments.
  void skip_blank() {
    while (!done()) {
      const char c = peek();
      if (c == '#') {
        while (!done() && peek() != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  int read_dim(const char* name) {
    skip_blank();
    if (done()) fail_at(pos_, std::string("unexpected end of data reading ") + name);
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      fail_at(pos_, std::string("expected ") + name);
    long v = 0;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (take() - '0');
      if (v > 1 << 20) fail_at(pos_, std::string(name) + " too large");
    }
    if (v <= 0) fail_at(pos_, std::string(name) + " must be positive");
    return static_cast<int>(v);
  }

 private:
  std::string_view d_;
  std::size_t pos_ = 0;
};

}  // namespace

std::size_t Bitmap::set_count() const {
  std::size_t n = 0;
  for (auto b : bits) n += b != 0;
  return n;
}

Bitmap parse_pbm(std::string_view data) {
  Cursor cur(data);
  if (data.size() < 2 || data[0] != 'P' || (data[1] != '1' && data[1] != '4'))
    fail_at(0, "missing P1/P4 magic");
  const bool ascii = data[1] == '1';
  cur.take();
  cur.take();
  if (!cur.done() && !std::isspace(static_cast<unsigned char>(cur.peek())) && cur.peek() != '#')
    fail_at(cur.pos(), "malformed magic");

  Bitmap img;
  img.width = cur.read_dim("width");
  img.height = cur.read_dim("height");
  const std::size_t total = static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
  img.bits.assign(total, 0);

  if (ascii) {
    for (std::size_t i = 0; i < total; ++i) {
      cur.skip_blank();
      if (cur.done()) fail_at(cur.pos(), "truncated pixel data");
      const char c = cur.take();
      if (c != '0' && c != '1') fail_at(cur.pos() - 1, "invalid pixel character");
      img.bits[i] = static_cast<std::uint8_t>(c - '0');
    }
    cur.skip_blank();
    if (!cur.done()) fail_at(cur.pos(), "trailing data");
  } else {
    if (cur.done() || !std::isspace(static_cast<unsigned char>(cur.peek())))
      fail_at(cur.pos(), "expected whitespace before raster");
    cur.take();
    const std::size_t stride = (static_cast<std::size_t>(img.width) + 7) / 8;
    if (data.size() - cur.pos() < stride * static_cast<std::size_t>(img.height))
      fail_at(data.size(), "truncated raster");
    for (int r = 0; r < img.height; ++r) {
      const std::size_t base = cur.pos();
      for (int c = 0; c < img.width; ++c) {
        const auto byte = static_cast<unsigned char>(data[base + static_cast<std::size_t>(c) / 8]);
        img.bits[static_cast<std::size_t>(r) * static_cast<std::size_t>(img.width) +
                 static_cast<std::size_t>(c)] =
            static_cast<std::uint8_t>((byte >> (7 - c % 8)) & 1u);
      }
      for (std::size_t k = 0; k < stride; ++k) cur.take();
    }
  }
  return img;
}

Bitmap read_pbm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::io_error, "cannot open '" + path + "'");
  const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_pbm(data);
}

std::string to_p1(const Bitmap& img) {
  std::ostringstream out;
  out << "P1\n" << img.width << ' ' << img.height << '\n';
  for (int r = 0; r < img.height; ++r) {
    int col = 0;
    for (int c = 0; c < img.width; ++c) {
      if (col == 70) {
        out << '\n';
        col = 0;
      }
      out << (img.at(r, c) ? '1' : '0');
      ++col;
    }
    out << '\n';
  }
  return out.str();
}

void write_pbm(const std::string& path, const Bitmap& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::io_error, "cannot write '" + path + "'");
  out << to_p1(img);
  if (!out) raise(Errc::io_error, "write failed for '" + path + "'");
}

Vector flatten_column_major(const Bitmap& img) {
  Vector x(static_cast<Index>(img.width) * img.height);
  Index n = 0;
  for (int c = 0; c < img.width; ++c)
    for (int r = 0; r < img.height; ++r) x(n++) = img.at(r, c);
  return x;
}

Bitmap unflatten_column_major(const Vector& x, int width, int height, double threshold) {
  require(width > 0 && height > 0 && x.size() == static_cast<Index>(width) * height,
          Errc::dimension_mismatch, "unflatten: length must equal width * height");
  Bitmap img;
  img.width = width;
  img.height = height;
  img.bits.assign(static_cast<std::size_t>(x.size()), 0);
  Index n = 0;
  for (int c = 0; c < width; ++c)
    for (int r = 0; r < height; ++r)
      img.bits[static_cast<std::size_t>(r) * static_cast<std::size_t>(width) +
               static_cast<std::size_t>(c)] = x(n++) >= threshold ? 1 : 0;
  return img;
}

}  // namespace mapcs
