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

#include "reda/error.h"

#include <string>

namespace reda {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyText:
      return "EmptyText";
    case ErrorCode::kIo:
      return "IoError";
    case ErrorCode::kParse:
      return "ParseError";
    case ErrorCode::kInsufficientExamples:
      return "InsufficientExamples";
    case ErrorCode::kOddSize:
      return "OddSize";
    case ErrorCode::kIndexOutOfRange:
      return "IndexOutOfRange";
    case ErrorCode::kEmptyCorpus:
      return "EmptyCorpus";
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

std::string Describe(ErrorCode code, const std::string& message,
                     std::size_t line) {
  std::string out = ErrorCodeName(code);
  if (line > 0) out += " at line " + std::to_string(line);
  out += ": " + message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::size_t line)
    : std::runtime_error(Describe(code, message, line)),
      code_(code),
      line_(line) {}

}  // namespace reda
