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

#include "drsub/baselines.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <variant>

#include "drsub/errors.h"

namespace drsub {
namespace {

// MWU runs past this many iterations are treated as stuck.
constexpr std::size_t kMwuIterationLimit = 10'000'000;

void CheckFinite(double v) {
  if (!std::isfinite(v)) throw NonFiniteValue("non-finite objective value");
}

}  // namespace

Point LinearMaximizer(const Gradient& grad, const Point& cap, double k) {
  const std::size_t n = grad.size();
  if (cap.size() != n) throw DimensionError(n, cap.size());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return grad[a] > grad[b];
  });
  std::vector<double> d(n, 0.0);
  double budget = k;
  for (std::size_t i : order) {
    if (grad[i] <= 0.0 || budget <= 0.0) break;
    d[i] = std::min(cap[i], budget);
    budget -= d[i];
  }
  return Point(std::move(d));
}

SolveResult ContinuousGreedy(const OracleHandle& oracle,
                             const GreedyConfig& config) {
  const std::size_t n = oracle.dim();
  if (!(config.k > 0.0) || config.k > static_cast<double>(n)) {
    throw InvalidBudget("budget k must satisfy 0 < k <= n");
  }
  const double nd = static_cast<double>(n);
  const double eta = config.step.value_or(
      config.conservative_step ? config.epsilon / (nd * nd * nd)
                               : config.epsilon / nd);
  if (!(eta > 0.0 && eta <= 1.0)) throw ValidationError("greedy step must lie in (0, 1]");
  const auto steps = static_cast<std::size_t>(std::ceil(1.0 / eta - 1e-9));

  const OracleHandle local = oracle.WithFreshLedger();
  SolveResult result;
  Point x = Point::Zeros(n);
  result.min_value_seen = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < steps; ++s) {
    const Query batch[] = {Query::Grad(x), Query::Value(x)};
    const auto r = local.BatchEval(batch);
    const Gradient& grad = std::get<Gradient>(r[0]);
    const double fx = std::get<double>(r[1]);
    CheckFinite(fx);
    result.min_value_seen = std::min(result.min_value_seen, fx);

    const Point d = LinearMaximizer(grad, Complement(x), config.k);
    const double step = std::min(eta, 1.0 - static_cast<double>(s) * eta);
    std::vector<double> next(x.values().begin(), x.values().end());
    std::size_t support = 0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] += step * d[i];
      if (d[i] > 0.0) ++support;
    }
    x = Point(std::move(next));

    IterationRecord rec;
    rec.phase = 0;
    rec.set_size = support;
    rec.eta = step;
    rec.kind = StepKind::kGreedy;
    const Norms xn = ComputeNorms(x);
    rec.z_l1 = xn.l1;
    rec.z_linf = xn.linf;
    rec.f_x = fx;
    rec.round = local.rounds();
    result.trace.push_back(rec);
  }
  result.value = local.Value(x);
  CheckFinite(result.value);
  result.min_value_seen = std::min(result.min_value_seen, result.value);
  result.x = std::move(x);
  result.ledger = local.ledger();
  oracle.mutable_ledger().Append(result.ledger);
  return result;
}

MwuState MwuInitialState(std::size_t n, double k, double epsilon) {
  if (n == 0) throw ValidationError("objective dimension must be >= 1");
  MwuState s;
  s.eta = epsilon / (2.0 * std::log(static_cast<double>(n) + 1.0));
  s.k = k;
  const double start = epsilon / static_cast<double>(n);
  s.x = Point::Filled(n, start);
  s.z.assign(n, start);
  s.log_weights.resize(n + 1);
  RefreshWeights(s);
  return s;
}

void RefreshWeights(MwuState& state) {
  const std::size_t n = state.z.size();
  double l1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    state.log_weights[i] = state.z[i] / state.eta;
    l1 += state.z[i];
  }
  state.log_weights[n] = l1 / (state.eta * state.k);
  const double top =
      *std::max_element(state.log_weights.begin(), state.log_weights.end());
  double sum = 0.0;
  for (double lw : state.log_weights) sum += std::exp(lw - top);
  state.log_weight_sum = top + std::log(sum);
  state.t = state.eta * state.log_weight_sum;
}

std::vector<double> MwuMultipliers(const MwuState& state,
                                   std::span<const double> c, double lambda) {
  const std::size_t n = state.z.size();
  if (c.size() != n) throw DimensionError(n, c.size());
  const double shared =
      std::exp(state.log_weights[n] - state.log_weight_sum) / state.k;
  std::vector<double> m(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (c[i] == 0.0) continue;
    const double share =
        std::exp(state.log_weights[i] - state.log_weight_sum) + shared;
    m[i] = std::clamp(1.0 - lambda * share / c[i], 0.0, 1.0);
  }
  return m;
}

SolveResult MwuSolve(const OracleHandle& oracle, double k, double epsilon,
                     double m) {
  const std::size_t n = oracle.dim();
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw ValidationError("target value M must be positive and finite");
  }
  if (!(k > 0.0) || k > static_cast<double>(n)) {
    throw InvalidBudget("budget k must satisfy 0 < k <= n");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ValidationError("epsilon must lie in (0, 1)");
  }

  const OracleHandle local = oracle.WithFreshLedger();
  MwuState state = MwuInitialState(n, k, epsilon);
  SolveResult result;
  result.m_used = m;
  result.min_value_seen = std::numeric_limits<double>::infinity();

  std::size_t iterations = 0;
  double window_start_t = state.t;
  while (state.t < 1.0 - epsilon) {
    if (++iterations > kMwuIterationLimit) {
      throw IterationCapExceeded("MWU exceeded " +
                                 std::to_string(kMwuIterationLimit) + " iterations");
    }
    std::vector<double> lifted(n);
    for (std::size_t i = 0; i < n; ++i) lifted[i] = (1.0 + state.eta) * state.x[i];
    const Query batch[] = {Query::Value(state.x), Query::Grad(Point(std::move(lifted)))};
    const auto r = local.BatchEval(batch);
    const double fx = std::get<double>(r[0]);
    CheckFinite(fx);
    result.min_value_seen = std::min(result.min_value_seen, fx);
    const Gradient& grad = std::get<Gradient>(r[1]);

    const double lambda = m * (std::exp(-state.t) - 2.0 * epsilon) - fx;
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = std::max((1.0 - state.x[i]) * grad[i], 0.0);
    }
    const std::vector<double> mult = MwuMultipliers(state, c, lambda);

    std::vector<double> d(n);
    bool moved = false;
    std::size_t support = 0;
    for (std::size_t i = 0; i < n; ++i) {
      d[i] = state.eta * state.x[i] * mult[i];
      if (d[i] != 0.0) {
        moved = true;
        ++support;
      }
    }
    if (!moved) {
      result.stop_reason = "zero-step";
      break;
    }

    std::vector<double> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = state.x[i] + d[i] * (1.0 - state.x[i]);
      state.z[i] += d[i];
    }
    state.x = Point(std::move(next));
    RefreshWeights(state);

    IterationRecord rec;
    rec.phase = 0;
    rec.v = lambda;
    rec.set_size = support;
    rec.eta = state.eta;
    rec.kind = StepKind::kMwu;
    const Norms zn = ComputeNorms(state.z);
    rec.z_l1 = zn.l1;
    rec.z_linf = zn.linf;
    rec.f_x = fx;
    rec.round = local.rounds();
    result.trace.push_back(rec);

    if (iterations % kMwuStallWindow == 0) {
      if (state.t - window_start_t < kMwuStallProgress) {
        result.stop_reason = "stalled";
        break;
      }
      window_start_t = state.t;
    }
  }

  result.value = local.Value(state.x);
  CheckFinite(result.value);
  result.min_value_seen = std::min(result.min_value_seen, result.value);
  result.x = std::move(state.x);
  result.ledger = local.ledger();
  oracle.mutable_ledger().Append(result.ledger);
  return result;
}

}  // namespace drsub
