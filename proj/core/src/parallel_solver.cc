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

#include "drsub/parallel_solver.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "drsub/errors.h"

namespace drsub {
namespace {

constexpr double kDeltaConstant = 0.1;
constexpr double kDeltaFloor = 1e-12;
constexpr double kTargetFloor = 1e-12;

// |{ i in S : (1 - z_i(η)) ∇_i f(z(η)) >= v }| for z(η) built from z.
std::size_t CountAboveThreshold(const Point& z, const IndexSet& s, double eta,
                                double v, const Gradient& grad) {
  std::size_t count = 0;
  for (std::size_t i : s) {
    const double zi = z[i] + eta * (1.0 - z[i]);
    if ((1.0 - zi) * grad[i] >= v) ++count;
  }
  return count;
}

IndexSet PositiveSet(const Point& z, const IndexSet& s, double eta,
                     const Gradient& grad) {
  IndexSet t;
  for (std::size_t i : s) {
    const double zi = z[i] + eta * (1.0 - z[i]);
    if ((1.0 - zi) * grad[i] > 0.0) t.push_back(i);
  }
  return t;
}

double MaxDifference(const Point& a, const Point& b) {
  double d = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, a[i] - b[i]);
  return a.size() == 0 ? 0.0 : d;
}

// x + η (1 - x) ∘ 1_set, written in place.
void MeasuredStep(Point& x, const IndexSet& set, double eta) {
  for (std::size_t i : set) x.Set(i, x[i] + eta * (1.0 - x[i]));
}

void CheckFinite(double v, const char* what) {
  if (!std::isfinite(v)) throw NonFiniteValue(std::string("non-finite ") + what);
}

}  // namespace

std::string_view DecayModeName(DecayMode mode) {
  return mode == DecayMode::kGuarantee ? "guarantee" : "experiment";
}

DecayMode ParseDecayMode(std::string_view name) {
  std::string lower(name);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "guarantee") return DecayMode::kGuarantee;
  if (lower == "experiment") return DecayMode::kExperiment;
  throw ValidationError("unknown decay mode '" + std::string(name) + "'");
}

std::string_view StepKindName(StepKind kind) {
  switch (kind) {
    case StepKind::kLarge:
      return "large";
    case StepKind::kSmaller:
      return "smaller";
    case StepKind::kThresholdDrop:
      return "threshold-drop";
    case StepKind::kGreedy:
      return "greedy";
    case StepKind::kMwu:
      return "mwu";
  }
  return "unknown";
}

SolverConfig SolverConfig::Guarantee(double epsilon, double k) {
  SolverConfig c;
  c.epsilon = epsilon;
  c.k = k;
  c.decay_mode = DecayMode::kGuarantee;
  return c;
}

SolverConfig SolverConfig::Experiment(double epsilon, double k) {
  SolverConfig c = Guarantee(epsilon, k);
  c.decay_mode = DecayMode::kExperiment;
  return c;
}

std::size_t IterationCap(std::size_t phases, double epsilon, double decay,
                         std::size_t n) {
  const double thresholds = std::ceil(std::log(epsilon) / std::log(decay));
  const double large = std::ceil(2.0 / epsilon);
  const double small =
      std::ceil(2.0 * std::log(static_cast<double>(n)) / epsilon) + 1.0;
  return static_cast<std::size_t>(static_cast<double>(phases) * thresholds *
                                  (large + small));
}

ResolvedConfig Resolve(const SolverConfig& config, std::size_t n) {
  if (n == 0) throw ValidationError("objective dimension must be >= 1");
  if (!(config.epsilon > 0.0 && config.epsilon <= 0.25)) {
    throw ValidationError("epsilon must lie in (0, 0.25]");
  }
  if (!(config.k > 0.0) || config.k > static_cast<double>(n)) {
    throw InvalidBudget("budget k must satisfy 0 < k <= n");
  }
  if (config.arity < 2) throw ValidationError("search arity must be >= 2");
  if (!(config.l1_tol >= 0.0)) throw ValidationError("l1_tol must be >= 0");

  ResolvedConfig rc;
  rc.n = n;
  // Guard against 1/ε landing a hair above an integer.
  rc.phases = static_cast<std::size_t>(std::ceil(1.0 / config.epsilon - 1e-9));
  rc.epsilon = 1.0 / static_cast<double>(rc.phases);
  rc.k = config.k;
  rc.arity = config.arity;
  rc.l1_tol = config.l1_tol;
  rc.eta_cap = rc.epsilon * rc.epsilon;

  if (config.threshold_decay) {
    rc.decay = *config.threshold_decay;
  } else {
    rc.decay = config.decay_mode == DecayMode::kGuarantee ? 1.0 - rc.epsilon
                                                          : kExperimentDecay;
  }
  if (!(rc.decay > 0.0 && rc.decay < 1.0)) {
    throw ValidationError("threshold decay must lie in (0, 1)");
  }

  if (config.delta) {
    rc.delta = *config.delta;
  } else {
    const double log_n = std::max(std::log(static_cast<double>(n)), 1.0);
    rc.delta = std::max(kDeltaConstant * std::pow(rc.epsilon, 4) /
                            (log_n * std::log(1.0 / rc.epsilon)),
                        kDeltaFloor);
  }
  if (!(rc.delta > 0.0 && rc.delta <= rc.eta_cap)) {
    throw ValidationError("delta must lie in (0, epsilon^2]");
  }

  double width = rc.eta_cap;
  while (width > rc.delta) {
    width /= static_cast<double>(rc.arity);
    ++rc.search_levels;
  }
  rc.iteration_cap = IterationCap(rc.phases, rc.epsilon, rc.decay, n);
  return rc;
}

IndexSet CandidateSet(const Point& z, const Point& z_start, const Gradient& g,
                      double v, std::size_t phase, double epsilon) {
  if (z.size() != z_start.size()) throw DimensionError(z.size(), z_start.size());
  if (z.size() != g.size()) throw DimensionError(z.size(), g.size());
  const double cap = 1.0 - std::pow(1.0 - epsilon, static_cast<double>(phase));
  IndexSet s;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (g[i] >= v && z[i] <= cap &&
        z[i] - z_start[i] < epsilon * (1.0 - z_start[i])) {
      s.push_back(i);
    }
  }
  return s;
}

Point StepPoint(const Point& z, const IndexSet& s, double eta) {
  Point out = z;
  MeasuredStep(out, s, eta);
  return out;
}

StepFamily EvaluateStep(const Point& z, const IndexSet& s, double eta,
                        double v, const Gradient& grad_at_step) {
  StepFamily fam{StepPoint(z, s, eta), {}, {}, {}};
  fam.g = MaskedGradient(fam.z, grad_at_step);
  for (std::size_t i : s) {
    if (fam.g[i] >= v) fam.s_eta.push_back(i);
    if (fam.g[i] > 0.0) fam.t_eta.push_back(i);
  }
  return fam;
}

double Eta2(const Point& z, const IndexSet& s, double epsilon,
            std::size_t phase, double k, double l1_tol) {
  const double budget = epsilon * static_cast<double>(phase) * k;
  const double used = L1Norm(z);
  if (used >= budget - l1_tol) {
    throw BudgetExhausted("phase budget already spent");
  }
  double room = 0.0;
  for (std::size_t i : s) room += 1.0 - z[i];
  return std::min(epsilon * epsilon, (budget - used) / room);
}

std::size_t RequiredSetSize(std::size_t set_size, double epsilon) {
  return static_cast<std::size_t>(
      std::ceil((1.0 - epsilon) * static_cast<double>(set_size) - 1e-9));
}

Eta1Result FindEta1(const OracleHandle& oracle, const Point& z,
                    const IndexSet& s, double v, const ResolvedConfig& config) {
  const std::size_t required = RequiredSetSize(s.size(), config.epsilon);
  Eta1Result out;
  out.grad_at_cap = oracle.Grad(StepPoint(z, s, config.eta_cap));
  const std::size_t at_cap =
      CountAboveThreshold(z, s, config.eta_cap, v, out.grad_at_cap);
  if (at_cap >= required) {
    out.eta1 = config.eta_cap;
    out.at_cap = true;
    out.size_at_eta1 = at_cap;
    return out;
  }

  double lo = 0.0;
  double hi = config.eta_cap;
  std::size_t hi_count = at_cap;
  const std::size_t t = config.arity;
  std::vector<Query> batch(t - 1, Query::Grad(z));
  std::vector<double> probes(t - 1);
  for (std::size_t level = 0; level < config.search_levels; ++level) {
    for (std::size_t i = 1; i < t; ++i) {
      probes[i - 1] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(t);
      batch[i - 1] = Query::Grad(StepPoint(z, s, probes[i - 1]));
    }
    const auto results = oracle.BatchEval(batch);
    // Move to the bracket around the first probe that fails the requirement.
    double new_lo = lo;
    double new_hi = hi;
    std::size_t new_hi_count = hi_count;
    for (std::size_t i = 0; i + 1 < t; ++i) {
      const std::size_t c = CountAboveThreshold(
          z, s, probes[i], v, std::get<Gradient>(results[i]));
      if (c >= required) {
        new_lo = probes[i];
      } else {
        new_hi = probes[i];
        new_hi_count = c;
        break;
      }
    }
    lo = new_lo;
    hi = new_hi;
    hi_count = new_hi_count;
    ++out.levels;
  }
  out.eta1 = hi;
  out.size_at_eta1 = hi_count;
  return out;
}

SolveResult Solve(const OracleHandle& oracle, const SolverConfig& config,
                  double m) {
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw ValidationError("target value M must be positive and finite");
  }
  const ResolvedConfig rc = Resolve(config, oracle.dim());
  const OracleHandle local = oracle.WithFreshLedger();
  const std::size_t n = rc.n;
  const double eps = rc.epsilon;

  SolveResult result;
  result.m_used = m;
  Point x = Point::Zeros(n);
  Point z = Point::Zeros(n);

  double fx = 0.0;
  double fz = 0.0;
  Gradient grad_z;
  {
    const Query start[] = {Query::Value(x), Query::Grad(z)};
    auto r = local.BatchEval(start);
    fx = fz = std::get<double>(r[0]);
    grad_z = std::get<Gradient>(std::move(r[1]));
  }
  result.min_value_seen = fx;

  for (std::size_t j = 1; j <= rc.phases; ++j) {
    const Point z_start = z;
    const double budget = eps * static_cast<double>(j) * rc.k;
    const double target =
        (std::pow(1.0 - eps, static_cast<double>(j)) - 2.0 * eps) * m;
    const double v_start = (target - fx) / rc.k;
    CheckFinite(v_start, "phase threshold");
    // Nothing to gain against this phase's target.
    if (v_start <= 0.0) continue;

    double v = v_start;
    while (v > eps * v_start && L1Norm(z) < budget - rc.l1_tol) {
      if (result.trace.size() >= rc.iteration_cap) {
        throw IterationCapExceeded(
            "parallel solver exceeded its iteration bound of " +
            std::to_string(rc.iteration_cap) + " in phase " + std::to_string(j));
      }
      IterationRecord rec;
      rec.phase = j;
      rec.v = v;

      const Gradient g = MaskedGradient(z, grad_z);
      const IndexSet s = CandidateSet(z, z_start, g, v, j, eps);
      rec.set_size = s.size();
      if (s.empty()) {
        v *= rc.decay;
        rec.kind = StepKind::kThresholdDrop;
        const Norms zn = ComputeNorms(z);
        rec.z_l1 = zn.l1;
        rec.z_linf = zn.linf;
        rec.max_x_minus_z = MaxDifference(x, z);
        rec.f_x = fx;
        rec.f_z = fz;
        rec.round = local.rounds();
        result.trace.push_back(rec);
        continue;
      }

      const Eta1Result e1 = FindEta1(local, z, s, v, rc);
      const double e2 = Eta2(z, s, eps, j, rc.k, rc.l1_tol);
      const double eta = std::min(e1.eta1, e2);

      // x moves on T(η - δ); at η = ε^2 found without search, T(η) itself.
      IndexSet t;
      if (e1.at_cap && eta == rc.eta_cap) {
        t = PositiveSet(z, s, eta, e1.grad_at_cap);
      } else {
        const double back = eta - rc.delta;
        if (back <= 0.0) {
          t = PositiveSet(z, s, 0.0, grad_z);
        } else {
          t = PositiveSet(z, s, back, local.Grad(StepPoint(z, s, back)));
        }
      }

      MeasuredStep(x, t, eta);
      MeasuredStep(z, s, eta);
      {
        const Query after[] = {Query::Value(x), Query::Value(z), Query::Grad(z)};
        auto r = local.BatchEval(after);
        fx = std::get<double>(r[0]);
        fz = std::get<double>(r[1]);
        grad_z = std::get<Gradient>(std::move(r[2]));
      }
      result.min_value_seen = std::min({result.min_value_seen, fx, fz});
      if (fz > fx) {
        x = z;
        fx = fz;
      }

      rec.eta = eta;
      rec.eta1 = e1.eta1;
      rec.eta2 = e2;
      rec.kind = eta == rc.eta_cap ? StepKind::kLarge : StepKind::kSmaller;
      const Norms zn = ComputeNorms(z);
      rec.z_l1 = zn.l1;
      rec.z_linf = zn.linf;
      rec.max_x_minus_z = MaxDifference(x, z);
      rec.f_x = fx;
      rec.f_z = fz;
      rec.round = local.rounds();
      rec.size_at_eta1 = e1.size_at_eta1;
      rec.required_size = RequiredSetSize(s.size(), eps);
      result.trace.push_back(rec);
    }
  }

  result.x = std::move(x);
  result.value = fx;
  result.ledger = local.ledger();
  oracle.mutable_ledger().Append(result.ledger);
  return result;
}

MGrid BuildMGrid(const OracleHandle& oracle, const SolverConfig& config) {
  const std::size_t n = oracle.dim();
  if (!(config.epsilon > 0.0)) throw ValidationError("epsilon must be positive");
  if (!(config.k > 0.0)) throw InvalidBudget("budget k must be positive");
  if (!(config.m_grid_factor >= 1.0) || !std::isfinite(config.m_grid_factor)) {
    throw ValidationError("m_grid_factor must be a finite value >= 1");
  }
  const double unit = std::min(1.0, config.k);

  std::vector<Query> batch;
  batch.reserve(n + 2);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> e(n, 0.0);
    e[i] = unit;
    batch.push_back(Query::Value(Point(std::move(e))));
  }
  batch.push_back(Query::Value(Point::Zeros(n)));
  batch.push_back(Query::Grad(Point::Zeros(n)));
  const auto r = oracle.BatchEval(batch);

  double raw_lower = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    raw_lower = std::max(raw_lower, std::get<double>(r[i]));
  }
  const double f0 = std::get<double>(r[n]);
  const Gradient& g0 = std::get<Gradient>(r[n + 1]);
  double best_slope = 0.0;
  for (std::size_t i = 0; i < n; ++i) best_slope = std::max(best_slope, g0[i]);
  const double raw_upper = std::max(raw_lower, f0 + config.k * best_slope);
  if (!(raw_upper > 0.0)) {
    throw DegenerateObjective("objective has no positive value or direction");
  }

  MGrid grid;
  grid.lower = std::max(raw_lower, kTargetFloor);
  grid.upper = std::max(grid.lower, raw_upper * config.m_grid_factor);
  const double steps = std::ceil(
      std::log(grid.upper / grid.lower) / std::log1p(config.epsilon) - 1e-9);
  const auto count = static_cast<std::size_t>(std::max(steps, 0.0)) + 1;
  grid.candidates.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    grid.candidates.push_back(grid.lower *
                              std::pow(1.0 + config.epsilon, static_cast<double>(t)));
  }
  return grid;
}

SolveResult GuessMAndSolve(const OracleHandle& oracle,
                           const SolverConfig& config) {
  Resolve(config, oracle.dim());  // validate before spending a round
  const OracleHandle local = oracle.WithFreshLedger();
  const MGrid grid = BuildMGrid(local, config);

  std::vector<EvalLedger> runs;
  runs.reserve(grid.candidates.size());
  std::optional<SolveResult> best;
  double min_seen = std::numeric_limits<double>::infinity();
  for (double m : grid.candidates) {
    SolveResult r = Solve(oracle.WithFreshLedger(), config, m);
    runs.push_back(r.ledger);
    min_seen = std::min(min_seen, r.min_value_seen);
    if (!best || r.value > best->value) best = std::move(r);
  }

  EvalLedger total = local.ledger();
  total.AppendSequential(EvalLedger::MergeParallel(runs));
  best->ledger = total;
  best->min_value_seen = min_seen;
  oracle.mutable_ledger().Append(total);
  return std::move(*best);
}

}  // namespace drsub
