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

// Empirical checks of objective properties.

#ifndef DRSUB_VERIFY_H_
#define DRSUB_VERIFY_H_

#include <cstdint>
#include <vector>

#include "drsub/oracle.h"

namespace drsub {

struct DrViolation {
  std::size_t trial;
  std::size_t coord;
  double grad_at_lower;  // ∇_i f(x)
  double grad_at_upper;  // ∇_i f(y)
};

struct DrReport {
  std::size_t trials = 0;
  std::vector<DrViolation> violations;
};

// Samples `trials` pairs x <= y (y uniform on the box, x = y ∘ u with u
// uniform) and reports every coordinate where ∇f(x) < ∇f(y) - tol. Each trial
// is one ledger round of two gradient queries.
DrReport VerifyDr(const OracleHandle& oracle, std::size_t trials,
                  std::uint64_t seed, double tol);

struct GradientCheckReport {
  std::size_t points = 0;
  // max over points and coordinates of |analytic - fd| / max(1, |fd|).
  double max_rel_error = 0.0;
};

// Compares the oracle gradient with central differences of the oracle value at
// `points` uniform samples of [lo, hi]^n. Callers keep [lo - step, hi + step]
// inside the box.
GradientCheckReport CheckGradient(const OracleHandle& oracle,
                                  std::size_t points, std::uint64_t seed,
                                  double step, double lo, double hi);

}  // namespace drsub

#endif  // DRSUB_VERIFY_H_
