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

#ifndef REDA_TESTS_ORACLES_ROUNDING_ORACLE_H_
#define REDA_TESTS_ORACLES_ROUNDING_ORACLE_H_

#include <cstddef>
#include <cstdint>
#include <string>

namespace reda::oracle {

// Rounds rate * length half to even, with rate given as a decimal literal
// such as "0.1". The literal becomes the exact fraction digits / 10^places and
// the tie test is done on integers.
inline std::size_t RoundedEdits(const std::string& rate, std::size_t length) {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;
  bool fractional = false;
  for (char c : rate) {
    if (c == '.') {
      fractional = true;
      continue;
    }
    numerator = numerator * 10 + static_cast<std::uint64_t>(c - '0');
    if (fractional) denominator *= 10;
  }
  const std::uint64_t product = numerator * length;
  const std::uint64_t quotient = product / denominator;
  const std::uint64_t twice_remainder = 2 * (product % denominator);
  if (twice_remainder > denominator) return quotient + 1;
  if (twice_remainder < denominator) return quotient;
  return quotient % 2 == 0 ? quotient : quotient + 1;
}

}  // namespace reda::oracle

#endif  // REDA_TESTS_ORACLES_ROUNDING_ORACLE_H_
