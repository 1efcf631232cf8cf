// src/common/error.hpp

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

#ifndef VCNORM_COMMON_ERROR_HPP_
#define VCNORM_COMMON_ERROR_HPP_

#include <sstream>
#include <stdexcept>
#include <string>

namespace vcn {

enum class ErrorCode {
  kInvalidArgument,
  kDimension,
  kDegenerate,
  kIo,
  kCrypto,
  kProtocol,
  kOverflow,
  kState,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

namespace detail {
class ErrorStream {
 public:
  explicit ErrorStream(ErrorCode code) : code_(code) {}
  template <typename T>
  ErrorStream &operator<<(const T &v) {
    os_ << v;
    return *this;
  }
  [[noreturn]] void raise() const { throw Error(code_, os_.str()); }

 private:
  ErrorCode code_;
  std::ostringstream os_;
};
}  // namespace detail

// VCN_CHECK(cond, code) << "message";  -- throws vcn::Error when cond fails.
#define VCN_THROW(code_enum)                                            \
  for (::vcn::detail::ErrorStream vcn_es(::vcn::ErrorCode::code_enum); \
       ; vcn_es.raise())                                                \
  vcn_es

#define VCN_CHECK(cond, code_enum)             \
  if (cond) {                                  \
  } else                                       \
    VCN_THROW(code_enum) << #cond << " failed: "

}  // namespace vcn

#endif  // VCNORM_COMMON_ERROR_HPP_
