// Copyright 2026 The drsub Authors.
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

// Portable seeded generator used by every instance generator.
//
// The state is xoshiro256** seeded by four successive outputs of splitmix64
// started at the user seed. Uniform doubles take the top 53 bits of a draw.
// Gaussians use the Box-Muller cosine branch on two uniforms (u1 mapped to
// (0,1]); the sine branch is discarded so each Gaussian costs two draws. The
// standard library distributions are avoided because their algorithms are
// implementation-defined.

#ifndef DRSUB_RNG_H_
#define DRSUB_RNG_H_

#include <array>
#include <cstdint>

namespace drsub {

class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t Next();
  // [0, 1).
  double Uniform();
  // [lo, hi).
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  double Gaussian();

 private:
  std::array<std::uint64_t, 4> s_;
};

std::uint64_t SplitMix64(std::uint64_t& state);

}  // namespace drsub

#endif  // DRSUB_RNG_H_
