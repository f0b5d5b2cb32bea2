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

// Reference algorithms for the same problem: a sequential continuous greedy
// and a multiplicative-weights solver specialised to one cardinality
// constraint. Both report through the same SolveResult / ledger types as the
// parallel solver so rounds and queries are directly comparable.

#ifndef DRSUB_BASELINES_H_
#define DRSUB_BASELINES_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "drsub/oracle.h"
#include "drsub/parallel_solver.h"
#include "drsub/vector.h"

namespace drsub {

// argmax { <grad, d> : 0 <= d <= cap, ||d||_1 <= k } by fractional knapsack.
// Coordinates are taken by decreasing gradient (lower index first on ties),
// each filled to its cap until the budget runs out; coordinates with
// non-positive gradient stay at zero.
Point LinearMaximizer(const Gradient& grad, const Point& cap, double k);

struct GreedyConfig {
  double epsilon = 0.05;
  double k = 10.0;
  // Explicit step; otherwise ε/n, or ε/n^3 with conservative_step.
  std::optional<double> step;
  bool conservative_step = false;
};

// x <- 0, then ceil(1/η) steps x <- x + η d with d = LinearMaximizer(∇f(x),
// 1 - x, k). The final step is shortened so the step lengths sum to exactly
// 1. Each step is one round {∇f(x), f(x)}; one more round evaluates the final
// point.
SolveResult ContinuousGreedy(const OracleHandle& oracle,
                             const GreedyConfig& config);

// MWU bookkeeping. Weights are held as logarithms:
// log w_i = z_i / η for i < n and log w_n = ||z||_1 / (η k).
struct MwuState {
  Point x;
  std::vector<double> z;
  std::vector<double> log_weights;  // n + 1 entries
  double log_weight_sum = 0.0;      // ln ||w||_1, via log-sum-exp
  double t = 0.0;                   // η ln ||w||_1
  double eta = 0.0;
  double k = 0.0;
};

// η = ε / (2 ln(n+1)), x = z = (ε/n) 1, weights and t from z.
MwuState MwuInitialState(std::size_t n, double k, double epsilon);
void RefreshWeights(MwuState& state);

// m_i = clamp(1 - λ (w_i + w_n / k) / (c_i ||w||_1), 0, 1) where c_i > 0, and
// m_i = 0 where c_i = 0.
std::vector<double> MwuMultipliers(const MwuState& state,
                                   std::span<const double> c, double lambda);

// Loop while t < 1 - ε: λ = M(e^-t - 2ε) - f(x),
// c = ((1 - x) ∘ ∇f((1+η) x)) ∨ 0, d = η x ∘ m; stop early when d = 0;
// x <- x + d ∘ (1 - x), z <- z + d. One round per loop iteration plus one for
// the final value.
//
// When M exceeds what the dynamics can reach, λ stays positive and the
// multipliers decay towards zero without ever becoming exactly zero, so the
// loop would not terminate. The run therefore also stops ("stalled") once t
// has advanced by less than kMwuStallProgress over kMwuStallWindow
// consecutive iterations.
inline constexpr std::size_t kMwuStallWindow = 1000;
inline constexpr double kMwuStallProgress = 1e-9;

SolveResult MwuSolve(const OracleHandle& oracle, double k, double epsilon,
                     double m);

}  // namespace drsub

#endif  // DRSUB_BASELINES_H_
