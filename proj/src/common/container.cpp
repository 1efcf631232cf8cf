// src/common/container.cpp

// Copyright 2026  the vcnorm authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "common/container.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include "common/error.hpp"

namespace vcn {

namespace {
constexpr char kVcdbMagic[4] = {'V', 'C', 'D', 'B'};
constexpr uint8_t kVcdbVersion = 1;
}  // namespace

void write_be32(std::ostream &os, uint32_t v) {
  uint8_t b[4] = {static_cast<uint8_t>(v >> 24), static_cast<uint8_t>(v >> 16),
                  static_cast<uint8_t>(v >> 8), static_cast<uint8_t>(v)};
  os.write(reinterpret_cast<const char *>(b), 4);
}

uint32_t read_be32(std::istream &is) {
  uint8_t b[4];
  is.read(reinterpret_cast<char *>(b), 4);
  VCN_CHECK(is.good(), kIo) << "truncated read (be32)";
  return (uint32_t{b[0]} << 24) | (uint32_t{b[1]} << 16) |
         (uint32_t{b[2]} << 8) | uint32_t{b[3]};
}

void write_be64(std::ostream &os, uint64_t v) {
  write_be32(os, static_cast<uint32_t>(v >> 32));
  write_be32(os, static_cast<uint32_t>(v));
}

uint64_t read_be64(std::istream &is) {
  const uint64_t hi = read_be32(is);
  const uint64_t lo = read_be32(is);
  return (hi << 32) | lo;
}

void put_be32(std::vector<uint8_t> &buf, uint32_t v) {
  buf.push_back(static_cast<uint8_t>(v >> 24));
  buf.push_back(static_cast<uint8_t>(v >> 16));
  buf.push_back(static_cast<uint8_t>(v >> 8));
  buf.push_back(static_cast<uint8_t>(v));
}

uint32_t get_be32(const uint8_t *p) {
  return (uint32_t{p[0]} << 24) | (uint32_t{p[1]} << 16) |
         (uint32_t{p[2]} << 8) | uint32_t{p[3]};
}

void write_vcdb(std::ostream &os, const Matrix &m) {
  os.write(kVcdbMagic, 4);
  os.put(static_cast<char>(kVcdbVersion));
  write_be32(os, static_cast<uint32_t>(m.rows()));
  write_be32(os, static_cast<uint32_t>(m.cols()));
  for (double v : m.data()) {
    uint64_t bits;
    std::memcpy(&bits, &v, 8);
    uint8_t b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<uint8_t>(bits >> (8 * i));
    os.write(reinterpret_cast<const char *>(b), 8);
  }
  VCN_CHECK(os.good(), kIo) << "VCDB write failed";
}

Matrix read_vcdb(std::istream &is) {
  char magic[4];
  is.read(magic, 4);
  VCN_CHECK(is.good() && std::memcmp(magic, kVcdbMagic, 4) == 0, kIo)
      << "bad VCDB magic";
  const int version = is.get();
  VCN_CHECK(version == kVcdbVersion, kIo) << "VCDB version " << version;
  const uint32_t rows = read_be32(is);
  const uint32_t cols = read_be32(is);
  Matrix m(rows, cols);
  for (size_t i = 0; i < m.data().size(); ++i) {
    uint8_t b[8];
    is.read(reinterpret_cast<char *>(b), 8);
    VCN_CHECK(is.good(), kIo) << "truncated VCDB payload";
    uint64_t bits = 0;
    for (int k = 0; k < 8; ++k) bits |= uint64_t{b[k]} << (8 * k);
    double v;
    std::memcpy(&v, &bits, 8);
    m.data()[i] = v;
  }
  return m;
}

void write_vcdb_vec(std::ostream &os, const Vec &v) {
  Matrix m(1, v.size());
  for (size_t i = 0; i < v.size(); ++i) m.at(0, i) = v[i];
  write_vcdb(os, m);
}

Vec read_vcdb_vec(std::istream &is) {
  Matrix m = read_vcdb(is);
  VCN_CHECK(m.rows() == 1, kIo) << "expected vector block, got " << m.rows()
                                << " rows";
  return m.data();
}

uint64_t fnv1a64(const uint8_t *data, size_t len) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (size_t i = 0; i < len; ++i) {
    h ^= data[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

uint64_t fnv1a64(const std::string &s) {
  return fnv1a64(reinterpret_cast<const uint8_t *>(s.data()), s.size());
}

static std::string trim(const std::string &s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::map<std::string, std::string> parse_kv(std::istream &is) {
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(is, line)) {
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (!key.empty()) kv[key] = val;
  }
  return kv;
}

std::map<std::string, std::string> read_kv_file(const std::string &path) {
  std::ifstream is(path);
  VCN_CHECK(is.good(), kIo) << "cannot open " << path;
  return parse_kv(is);
}

void write_kv_file(
    const std::string &path,
    const std::vector<std::pair<std::string, std::string>> &kv) {
  std::ofstream os(path);
  VCN_CHECK(os.good(), kIo) << "cannot write " << path;
  for (const auto &[k, v] : kv) os << k << " = " << v << "\n";
}

std::string read_text_file(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  VCN_CHECK(is.good(), kIo) << "cannot open " << path;
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_text_file(const std::string &path, const std::string &content) {
  std::ofstream os(path, std::ios::binary);
  VCN_CHECK(os.good(), kIo) << "cannot write " << path;
  os << content;
  VCN_CHECK(os.good(), kIo) << "write failed for " << path;
}

std::ifstream open_in(const std::string &path, bool binary) {
  std::ifstream is(path, binary ? std::ios::binary : std::ios::in);
  VCN_CHECK(is.good(), kIo) << "cannot open " << path;
  return is;
}

std::ofstream open_out(const std::string &path, bool binary) {
  std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
  VCN_CHECK(os.good(), kIo) << "cannot write " << path;
  return os;
}

std::vector<std::string> split_fields(const std::string &line, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

}  // namespace vcn
