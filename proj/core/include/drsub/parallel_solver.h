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

// Low-adaptivity threshold algorithm for
//
//     max f(x)  s.t.  x in [0,1]^n, ||x||_1 <= k
//
// with f non-negative DR-submodular. The run is split into J phases. Phase j
// has a value target ((1-ε)^j - 2ε)M and an ℓ1 budget εjk for the auxiliary
// vector z. Inside a phase the solver repeatedly collects the coordinates
// whose masked gradient (1-z)∘∇f(z) clears the current threshold v and moves
// all of them at once by the largest step η for which most of them (a
// (1-ε) fraction) would still clear it. That step is found by a t-ary search
// whose probes form one parallel round per level. The solution x trails z and
// only moves on coordinates with positive masked gradient, and is replaced by
// z whenever z is better.

#ifndef DRSUB_PARALLEL_SOLVER_H_
#define DRSUB_PARALLEL_SOLVER_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "drsub/ledger.h"
#include "drsub/oracle.h"
#include "drsub/vector.h"

namespace drsub {

enum class DecayMode {
  kGuarantee,   // v <- (1-ε) v
  kExperiment,  // v <- 0.75 v
};

std::string_view DecayModeName(DecayMode mode);
DecayMode ParseDecayMode(std::string_view name);

inline constexpr double kExperimentDecay = 0.75;

struct SolverConfig {
  double epsilon = 0.05;
  double k = 10.0;
  DecayMode decay_mode = DecayMode::kGuarantee;
  // Overrides the decay implied by decay_mode.
  std::optional<double> threshold_decay;
  std::size_t arity = 8;
  // Search resolution. Defaults to 0.1 ε^4 / (max(ln n, 1) ln(1/ε)),
  // floored at 1e-12.
  std::optional<double> delta;
  double l1_tol = 1e-12;
  // Scales the upper end m1 of the M-guessing grid. 1 keeps the grid inside
  // the provable bound OPT <= m1; larger values extend the search above it.
  double m_grid_factor = 1.0;

  static SolverConfig Guarantee(double epsilon, double k);
  static SolverConfig Experiment(double epsilon, double k);
};

// SolverConfig with every default filled in for a dimension n. The phase
// count is J = ceil(1/ε) and ε is replaced by 1/J throughout.
struct ResolvedConfig {
  std::size_t n = 0;
  std::size_t phases = 0;
  double epsilon = 0.0;
  double k = 0.0;
  double decay = 0.0;
  std::size_t arity = 0;
  double delta = 0.0;
  double eta_cap = 0.0;  // ε^2
  double l1_tol = 0.0;
  // Levels of a full t-ary search: least m with ε^2 / t^m <= δ.
  std::size_t search_levels = 0;
  // Hard cap on trace length:
  // J ceil(log_γ ε) (ceil(2/ε) + ceil(2 ln(n)/ε) + 1).
  std::size_t iteration_cap = 0;
};

// ValidationError for ε outside (0, 0.25], arity < 2, decay outside (0,1) or
// δ outside (0, ε^2]; InvalidBudget for k <= 0 or k > n.
ResolvedConfig Resolve(const SolverConfig& config, std::size_t n);

std::size_t IterationCap(std::size_t phases, double epsilon, double decay,
                         std::size_t n);

// Sorted coordinate list.
using IndexSet = std::vector<std::size_t>;

// { i : g_i >= v, z_i <= 1 - (1-ε)^j, z_i - zs_i < ε (1 - zs_i) }.
IndexSet CandidateSet(const Point& z, const Point& z_start, const Gradient& g,
                      double v, std::size_t phase, double epsilon);

// z(η) = z + η (1 - z) ∘ 1_S.
Point StepPoint(const Point& z, const IndexSet& s, double eta);

struct StepFamily {
  Point z;          // z(η)
  Gradient g;       // (1 - z(η)) ∘ ∇f(z(η))
  IndexSet s_eta;   // { i in S : g(η)_i >= v }
  IndexSet t_eta;   // { i in S : g(η)_i > 0 }
};

// The objects attached to step η, given ∇f(z(η)).
StepFamily EvaluateStep(const Point& z, const IndexSet& s, double eta,
                        double v, const Gradient& grad_at_step);

// min{ ε^2, (εjk - ||z||_1) / (|S| - ||z ∘ 1_S||_1) }. BudgetExhausted when
// ||z||_1 >= εjk - l1_tol.
double Eta2(const Point& z, const IndexSet& s, double epsilon,
            std::size_t phase, double k, double l1_tol = 1e-12);

// ceil((1-ε)|S|), computed with a 1e-9 guard against representation error in
// (1-ε)|S|.
std::size_t RequiredSetSize(std::size_t set_size, double epsilon);

struct Eta1Result {
  double eta1 = 0.0;
  // |S(ε^2)| already met the requirement; no search ran.
  bool at_cap = false;
  std::size_t levels = 0;
  // |S(η1)|.
  std::size_t size_at_eta1 = 0;
  // ∇f(z(ε^2)), the first probe of every search.
  Gradient grad_at_cap;
};

// δ-approximate largest η in [0, ε^2] with |S(η)| >= ceil((1-ε)|S|). One
// round probes ε^2; if that fails, every search level probes its t-1
// interior points as one round, keeping |S(lo)| >= required > |S(hi)|, and
// the search returns hi once hi - lo <= δ.
Eta1Result FindEta1(const OracleHandle& oracle, const Point& z,
                    const IndexSet& s, double v, const ResolvedConfig& config);

// kGreedy and kMwu tag trace rows emitted by the baselines.
enum class StepKind { kLarge, kSmaller, kThresholdDrop, kGreedy, kMwu };

std::string_view StepKindName(StepKind kind);

struct IterationRecord {
  std::size_t phase = 0;
  double v = 0.0;
  std::size_t set_size = 0;
  double eta = 0.0;
  double eta1 = 0.0;
  double eta2 = 0.0;
  StepKind kind = StepKind::kThresholdDrop;
  double z_l1 = 0.0;
  double z_linf = 0.0;
  // max_i (x_i - z_i); <= 0 while x <= z.
  double max_x_minus_z = 0.0;
  double f_x = 0.0;
  double f_z = 0.0;
  std::int64_t round = 0;
  // |S(η1)| and ceil((1-ε)|S|) for step iterations.
  std::size_t size_at_eta1 = 0;
  std::size_t required_size = 0;
};

struct SolveResult {
  Point x;
  double value = 0.0;
  std::vector<IterationRecord> trace;
  EvalLedger ledger;
  double m_used = 0.0;
  // Smallest objective value observed at x or z during the run.
  double min_value_seen = 0.0;
  // Why the run ended: "completed" (loop condition), "zero-step" (MWU step
  // d = 0) or "stalled" (MWU made no measurable progress; see MwuSolve).
  std::string stop_reason = "completed";
};

// One run with target value M > 0. The run's rounds are charged to a private
// ledger (returned in the result) and appended to the caller's ledger.
SolveResult Solve(const OracleHandle& oracle, const SolverConfig& config,
                  double m);

struct MGrid {
  double lower = 0.0;  // m0
  double upper = 0.0;  // m1
  std::vector<double> candidates;  // m0 (1+ε)^t, t = 0..ceil(log_{1+ε}(m1/m0))
};

// One round: f(min(1,k) 1_i) for every i, f(0) and ∇f(0).
// m0 = max_i f(min(1,k) 1_i) floored at 1e-12,
// m1 = max(m0, f(0) + k max_i max(∇_i f(0), 0)) * m_grid_factor.
// DegenerateObjective when both raw bounds are <= 0.
MGrid BuildMGrid(const OracleHandle& oracle, const SolverConfig& config);

// Runs Solve for every grid candidate and keeps the best value (earliest
// candidate on ties). The candidate runs are independent, so their ledgers are
// merged round by round after the grid round.
SolveResult GuessMAndSolve(const OracleHandle& oracle,
                           const SolverConfig& config);

}  // namespace drsub

#endif  // DRSUB_PARALLEL_SOLVER_H_
