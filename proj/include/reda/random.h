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

#ifndef REDA_RANDOM_H_
#define REDA_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace reda {

// Source of the discrete choices made by the edit operations. Every random
// decision in the engine is a single Below(n) call, which lets tests replay
// or enumerate all decision paths.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  // Uniform integer in [0, n). n must be positive.
  virtual std::size_t Below(std::size_t n) = 0;
};

// Seedable deterministic generator. The bounded draw is implemented here
// rather than with std::uniform_int_distribution so sequences are identical
// across standard library implementations. Single-owner; not thread-safe.
class Rng final : public RandomSource {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::size_t Below(std::size_t n) override;
  std::uint64_t NextU64() { return engine_(); }
  // Uniform double in [0, 1) with 53 random bits.
  double Uniform01();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform01(); }

  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[Below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Mixes a master seed with a work-unit index (splitmix64 finalizer), so
// every unit gets an independent stream regardless of scheduling.
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t index);

}  // namespace reda

#endif  // REDA_RANDOM_H_
