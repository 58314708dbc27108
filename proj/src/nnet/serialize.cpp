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

#include "codemix/nnet/serialize.hpp"

#include <array>
#include <bit>
#include <istream>
#include <ostream>

#include "codemix/types.hpp"

namespace codemix::nnet {
namespace {

// "CMXNN\0\0\0" read as a little-endian u64.
constexpr std::uint64_t kMagic = 0x0000004E4E584D43ULL;
// Guards allocations against corrupt length fields.
constexpr std::uint64_t kMaxElements = std::uint64_t{1} << 32;

}  // namespace

void BinaryWriter::u32(std::uint32_t v) {
  std::array<char, 4> bytes{};
  for (std::size_t i = 0; i < 4; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out_.write(bytes.data(), bytes.size());
}

void BinaryWriter::u64(std::uint64_t v) {
  std::array<char, 8> bytes{};
  for (std::size_t i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out_.write(bytes.data(), bytes.size());
}

void BinaryWriter::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

void BinaryWriter::str(std::string_view s) {
  u64(s.size());
  out_.write(s.data(), static_cast<std::streamsize>(s.size()));
}

void BinaryWriter::vector(std::span<const double> values) {
  u64(values.size());
  for (double v : values) f64(v);
}

void BinaryWriter::matrix(const Matrix& m) {
  u64(m.rows());
  u64(m.cols());
  for (double v : m.values()) f64(v);
}

void BinaryReader::read_bytes(char* dst, std::size_t n) {
  in_.read(dst, static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in_.gcount()) != n) throw ModelError("model file is truncated");
}

std::uint32_t BinaryReader::u32() {
  std::array<unsigned char, 4> bytes{};
  read_bytes(reinterpret_cast<char*>(bytes.data()), bytes.size());
  std::uint32_t v = 0;
  for (std::size_t i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes[i]) << (8 * i);
  return v;
}

std::uint64_t BinaryReader::u64() {
  std::array<unsigned char, 8> bytes{};
  read_bytes(reinterpret_cast<char*>(bytes.data()), bytes.size());
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return v;
}

double BinaryReader::f64() { return std::bit_cast<double>(u64()); }

std::string BinaryReader::str() {
  const std::uint64_t n = u64();
  if (n > kMaxElements) throw ModelError("model file: string length out of range");
  std::string s(static_cast<std::size_t>(n), '\0');
  read_bytes(s.data(), s.size());
  return s;
}

Vector BinaryReader::vector() {
  const std::uint64_t n = u64();
  if (n > kMaxElements) throw ModelError("model file: vector length out of range");
  Vector v(static_cast<std::size_t>(n));
  for (double& x : v) x = f64();
  return v;
}

Matrix BinaryReader::matrix() {
  const std::uint64_t rows = u64();
  const std::uint64_t cols = u64();
  if (rows > kMaxElements || cols > kMaxElements || (cols != 0 && rows > kMaxElements / cols)) {
    throw ModelError("model file: matrix shape out of range");
  }
  Matrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (double& x : m.values()) x = f64();
  return m;
}

void write_header(BinaryWriter& w, std::string_view kind) {
  w.u64(kMagic);
  w.u32(kModelFormatVersion);
  w.str(kind);
}

void read_header(BinaryReader& r, std::string_view expected_kind) {
  if (r.u64() != kMagic) throw ModelError("not a codemix model file");
  const std::uint32_t version = r.u32();
  if (version != kModelFormatVersion) {
    throw ModelError("unsupported model format version " + std::to_string(version));
  }
  const std::string kind = r.str();
  if (kind != expected_kind) {
    throw ModelError("expected a '" + std::string(expected_kind) + "' model, found '" + kind + "'");
  }
}

void write_params(BinaryWriter& w, const SequenceModelParams& params) {
  const auto& chars = params.vocab.chars();
  w.u64(chars.size());
  for (char32_t cp : chars) w.u32(static_cast<std::uint32_t>(cp));
  w.matrix(params.embedding);
  w.u64(params.layers.size());
  for (const auto& layer : params.layers) {
    w.u64(layer.input_dim);
    w.u64(layer.hidden_dim);
    for (std::size_t k = 0; k < kNumGates; ++k) {
      w.matrix(layer.w[k]);
      w.matrix(layer.u[k]);
      w.vector(layer.b[k]);
    }
  }
  w.matrix(params.output.weight);
  w.vector(params.output.bias);
}

SequenceModelParams read_params(BinaryReader& r) {
  SequenceModelParams p;
  const std::uint64_t n_chars = r.u64();
  if (n_chars > kMaxElements) throw ModelError("model file: vocab size out of range");
  std::vector<char32_t> chars;
  chars.reserve(static_cast<std::size_t>(n_chars));
  for (std::uint64_t i = 0; i < n_chars; ++i) chars.push_back(static_cast<char32_t>(r.u32()));
  p.vocab = CharVocab(chars);
  p.embedding = r.matrix();
  const std::uint64_t n_layers = r.u64();
  if (n_layers > 64) throw ModelError("model file: layer count out of range");
  for (std::uint64_t l = 0; l < n_layers; ++l) {
    LstmLayerParams layer;
    layer.input_dim = static_cast<std::size_t>(r.u64());
    layer.hidden_dim = static_cast<std::size_t>(r.u64());
    for (std::size_t k = 0; k < kNumGates; ++k) {
      layer.w[k] = r.matrix();
      layer.u[k] = r.matrix();
      layer.b[k] = r.vector();
    }
    p.layers.push_back(std::move(layer));
  }
  p.output.weight = r.matrix();
  p.output.bias = r.vector();
  p.validate();
  return p;
}

}  // namespace codemix::nnet
