// Copyright 2026 The hardylab Authors
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

#ifndef HARDYLAB_ERROR_HPP
#define HARDYLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hardy {

// Numeric values are part of the C API (see hardylab.h) and must not change.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kSizeMismatch = 2,
  kNotAnalytic = 3,
  kNotReal = 4,
  kDomain = 5,
  kDegenerate = 6,
  kRegression = 7,
  kContract = 8,
  kIo = 9,
  kParse = 10,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) throw Error(code, msg);
}

}  // namespace hardy

#endif  // HARDYLAB_ERROR_HPP
