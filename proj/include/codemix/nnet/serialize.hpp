// Copyright 2026 The codemix Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "codemix/nnet/sequence_model.hpp"

namespace codemix::nnet {

// Little-endian binary model container:
//   magic "CMXNN\0\0\0", u32 format version, length-prefixed kind string,
//   then the kind-specific payload.
// Doubles are stored as their IEEE-754 bit patterns, so a round trip is exact.
inline constexpr std::uint32_t kModelFormatVersion = 1;

class BinaryWriter {
 public:
  explicit BinaryWriter(std::ostream& out) : out_(out) {}

  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void f64(double v);
  void str(std::string_view s);
  void vector(std::span<const double> values);
  void matrix(const Matrix& m);

 private:
  std::ostream& out_;
};

// All reads throw ModelError on truncated or inconsistent input.
class BinaryReader {
 public:
  explicit BinaryReader(std::istream& in) : in_(in) {}

  std::uint32_t u32();
  std::uint64_t u64();
  double f64();
  std::string str();
  Vector vector();
  Matrix matrix();

 private:
  void read_bytes(char* dst, std::size_t n);
  std::istream& in_;
};

void write_header(BinaryWriter& w, std::string_view kind);
// Throws ModelError if the magic, version or kind do not match.
void read_header(BinaryReader& r, std::string_view expected_kind);

void write_params(BinaryWriter& w, const SequenceModelParams& params);
SequenceModelParams read_params(BinaryReader& r);

}  // namespace codemix::nnet
