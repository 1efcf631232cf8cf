// src/common/container.hpp

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

#ifndef VCNORM_COMMON_CONTAINER_HPP_
#define VCNORM_COMMON_CONTAINER_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "common/matrix.hpp"

namespace vcn {

// Big-endian scalar helpers for the binary containers and the wire format.
void write_be32(std::ostream &os, uint32_t v);
uint32_t read_be32(std::istream &is);
void write_be64(std::ostream &os, uint64_t v);
uint64_t read_be64(std::istream &is);
void put_be32(std::vector<uint8_t> &buf, uint32_t v);
uint32_t get_be32(const uint8_t *p);

// Matrix container block: magic "VCDB", version byte 0x01, rows and cols as
// 4-byte big-endian unsigned integers, then rows*cols IEEE-754 float64 values
// little-endian, row major.  Files may hold several consecutive blocks.
void write_vcdb(std::ostream &os, const Matrix &m);
Matrix read_vcdb(std::istream &is);
void write_vcdb_vec(std::ostream &os, const Vec &v);  // as a 1 x n block
Vec read_vcdb_vec(std::istream &is);

// FNV-1a 64-bit; used for sample-id hashes in record files.
uint64_t fnv1a64(const std::string &s);
uint64_t fnv1a64(const uint8_t *data, size_t len);

// Plain `key = value` config text; '#' starts a comment.
std::map<std::string, std::string> read_kv_file(const std::string &path);
std::map<std::string, std::string> parse_kv(std::istream &is);
void write_kv_file(const std::string &path,
                   const std::vector<std::pair<std::string, std::string>> &kv);

std::string read_text_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &content);

// Fails with vcn::Error(kIo) carrying the path in the message.
std::ifstream open_in(const std::string &path, bool binary = true);
std::ofstream open_out(const std::string &path, bool binary = true);

std::vector<std::string> split_fields(const std::string &line, char sep);

}  // namespace vcn

#endif  // VCNORM_COMMON_CONTAINER_HPP_
