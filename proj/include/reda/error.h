//
// Copyright 2026 The REDA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef REDA_ERROR_H_
#define REDA_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace reda {

enum class ErrorCode {
  kEmptyText,
  kIo,
  kParse,
  kInsufficientExamples,
  kOddSize,
  kIndexOutOfRange,
  kEmptyCorpus,
  kInvalidArgument,
};

const char* ErrorCodeName(ErrorCode code);

// The single exception type thrown by the library. `line()` is the 1-based
// input line for parse errors and 0 otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::size_t line = 0);

  ErrorCode code() const { return code_; }
  std::size_t line() const { return line_; }

 private:
  ErrorCode code_;
  std::size_t line_;
};

}  // namespace reda

#endif  // REDA_ERROR_H_
