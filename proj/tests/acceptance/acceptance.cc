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

// Acceptance suite. Each criterion prints its evidence followed by one
// "criterion N: PASS|FAIL" line. Usage:
//
//   drsub_acceptance [--workers W] [--csv PATH] [N ...]
//
// With no N every criterion runs. The exit code is 0 iff every selected
// criterion passed. --csv saves the experiment CSV of criterion 7.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "drsub/baselines.h"
#include "drsub/harness.h"
#include "drsub/instances.h"
#include "drsub/oracle.h"
#include "drsub/parallel_solver.h"
#include "drsub/verify.h"
#include "support/oracles.h"

namespace drsub {
namespace {

using testing::Mat;
using testing::Vec;

constexpr double kEpsilon = 0.05;
constexpr double kBudget = 10.0;
const double kInvE = 1.0 / std::exp(1.0);

struct Options {
  std::size_t workers = 1;
  std::string csv_path;
};

// Collects failures of one criterion and prints a bounded number of them.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 20) std::cout << "  violation: " << what << '\n';
  }
  bool ok() const { return failures_ == 0; }
  std::size_t checks() const { return checks_; }
  std::size_t failures() const { return failures_; }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
};

std::string Num(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

std::string CellName(Family f, std::size_t n) {
  return std::string(FamilyName(f)) + "-" + std::to_string(n);
}

Mat WeightsOf(const CutInstance& inst) {
  Mat w(inst.n, Vec(inst.n));
  for (std::size_t i = 0; i < inst.n; ++i) {
    for (std::size_t j = 0; j < inst.n; ++j) w[i][j] = inst.weights(i, j);
  }
  return w;
}

// Largest relative error of the analytic gradient against central
// differences of the value oracle, computed in this file.
double GradientError(const Objective& obj, std::size_t points, double lo, double hi,
                     double step, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const auto f = [&obj](const Vec& v) { return obj.Value(Point(v)); };
  double worst = 0.0;
  for (std::size_t p = 0; p < points; ++p) {
    const Vec x = testing::RandomVec(gen, obj.dim(), lo, hi);
    const Gradient g = obj.Grad(Point(x));
    for (std::size_t i = 0; i < obj.dim(); ++i) {
      const double fd = testing::CentralDifference(f, x, i, step);
      worst = std::max(worst, std::abs(g[i] - fd) / std::max(1.0, std::abs(fd)));
    }
  }
  return worst;
}

// ------------------------------------------------------------------- 1 ----
// Final ||x||_1 <= k + 1e-9 for every run of every algorithm. CUT instances
// are brute-force sized (n <= 16), so CUT uses n in {10, 13, 16}.
bool Criterion1(const Options& opt) {
  Check check;
  ExperimentSpec spec;
  spec.workers = opt.workers;
  std::vector<ResultRow> rows;
  spec.families = {Family::kNqp, Family::kDpp};
  spec.n_values = {25, 50, 100};
  rows = RunCells(spec);
  spec.families = {Family::kCut};
  spec.n_values = {10, 13, 16};
  for (ResultRow& r : RunCells(spec)) rows.push_back(std::move(r));
  double worst = 0.0;
  for (const ResultRow& r : rows) {
    const std::string name = CellName(r.family, r.n) + " seed " + std::to_string(r.seed) +
                             " " + std::string(AlgorithmName(r.algorithm));
    check.Expect(r.ok(), name + " failed: " + r.status);
    check.Expect(r.x_l1 <= kBudget + 1e-9, name + " ||x||_1 = " + Num(r.x_l1));
    if (r.ok()) worst = std::max(worst, r.x_l1);
  }
  std::cout << "  " << rows.size() << " runs, largest final ||x||_1 = " << Num(worst)
            << " (k = " << kBudget << ")\n";
  return check.ok();
}

// ------------------------------------------------------------------- 2 ----
// Per-iteration invariants of every parallel-solver run (every M on the
// guessing grid) on the instances of criterion 1.
bool Criterion2(const Options&) {
  Check check;
  std::size_t runs = 0;
  std::size_t iterations = 0;
  struct Cell {
    Family family;
    std::size_t n;
  };
  std::vector<Cell> cells;
  for (Family f : {Family::kNqp, Family::kDpp}) {
    for (std::size_t n : {25, 50, 100}) cells.push_back({f, n});
  }
  for (std::size_t n : {10, 13, 16}) cells.push_back({Family::kCut, n});
  for (const Cell& cell : cells) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const OracleHandle oracle(MakeObjective(GenerateInstance({cell.family, cell.n, seed})));
      const SolverConfig config = SolverConfig::Experiment(kEpsilon, kBudget);
      const ResolvedConfig rc = Resolve(config, cell.n);
      const MGrid grid = BuildMGrid(oracle, config);
      for (double m : grid.candidates) {
        const SolveResult r = Solve(oracle.WithFreshLedger(), config, m);
        ++runs;
        for (const IterationRecord& rec : r.trace) {
          ++iterations;
          const double j = static_cast<double>(rec.phase);
          const std::string where = CellName(cell.family, cell.n) + " seed " +
                                    std::to_string(seed) + " M " + Num(m) + " phase " +
                                    std::to_string(rec.phase) + ": ";
          check.Expect(rec.max_x_minus_z <= 0.0,
                       where + "x > z by " + Num(rec.max_x_minus_z));
          check.Expect(rec.z_linf <= 1.0 - std::pow(1.0 - rc.epsilon, j) + rc.eta_cap,
                       where + "||z||_inf = " + Num(rec.z_linf));
          check.Expect(rec.z_l1 <= rc.epsilon * j * rc.k + 1e-12,
                       where + "||z||_1 = " + Num(rec.z_l1));
          check.Expect(rec.f_x >= rec.f_z, where + "f(x) < f(z) after swap");
        }
      }
    }
  }
  std::cout << "  " << runs << " solver runs, " << iterations << " iterations, "
            << check.checks() << " invariant checks, " << check.failures()
            << " violations\n";
  return check.ok();
}

// ------------------------------------------------------------------- 3 ----
bool Criterion3(const Options&) {
  Check check;
  double worst_ratio = std::numeric_limits<double>::infinity();
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const CutInstance inst = GenerateCut(10, seed);
    const double best = testing::BestCutUpToK(WeightsOf(inst), 3);
    const OracleHandle oracle(MakeObjective(inst));
    const SolveResult r = GuessMAndSolve(oracle, SolverConfig::Guarantee(kEpsilon, 3.0));
    const double ratio = r.value / best;
    worst_ratio = std::min(worst_ratio, ratio);
    std::cout << "  seed " << seed << ": value " << Num(r.value) << ", best |S|<=3 cut "
              << Num(best) << ", ratio " << Num(ratio) << '\n';
    check.Expect(r.value >= (kInvE - 0.25) * best,
                 "seed " + std::to_string(seed) + " ratio " + Num(ratio));
  }
  std::cout << "  worst ratio " << Num(worst_ratio) << " vs required " << Num(kInvE - 0.25)
            << '\n';
  return check.ok();
}

// ------------------------------------------------------------------- 4 ----
bool Criterion4(const Options&) {
  Check check;
  std::map<std::size_t, std::size_t> longest;
  for (std::size_t n : {50, 200, 800}) {
    const OracleHandle oracle(MakeObjective(GenerateInstance({Family::kNqp, n, 1})));
    const SolverConfig config = SolverConfig::Experiment(kEpsilon, kBudget);
    const ResolvedConfig rc = Resolve(config, n);
    const double thresholds = std::ceil(std::log(rc.epsilon) / std::log(rc.decay));
    const double cap =
        static_cast<double>(rc.phases) * thresholds *
        (std::ceil(2.0 / rc.epsilon) +
         std::ceil(2.0 * std::log(static_cast<double>(n)) / rc.epsilon) + 1.0);
    const MGrid grid = BuildMGrid(oracle, config);
    std::size_t worst = 0;
    std::int64_t rounds = 0;
    for (double m : grid.candidates) {
      const SolveResult r = Solve(oracle.WithFreshLedger(), config, m);
      worst = std::max(worst, r.trace.size());
      rounds = std::max(rounds, r.ledger.rounds);
    }
    longest[n] = worst;
    std::cout << "  nqp-" << n << ": longest trace " << worst << " over "
              << grid.candidates.size() << " grid runs (cap " << Num(cap)
              << "), most rounds " << rounds << '\n';
    check.Expect(static_cast<double>(worst) <= cap, "n " + std::to_string(n) + " exceeds cap");
  }
  const double growth =
      static_cast<double>(longest[800]) / static_cast<double>(std::max<std::size_t>(longest[50], 1));
  std::cout << "  trace growth 50 -> 800: x" << Num(growth) << " (linear would be x16)\n";
  check.Expect(growth < 16.0, "trace growth is not sub-linear");
  return check.ok();
}

// ------------------------------------------------------------------- 5 ----
bool Criterion5(const Options&) {
  Check check;
  struct Case {
    Family family;
    std::size_t n;
    double lo, hi, step, tol;
  };
  const Case cases[] = {
      {Family::kNqp, 50, 1e-4, 1 - 1e-4, 1e-5, 1e-6},
      {Family::kDpp, 50, 1e-4, 1 - 1e-4, 1e-5, 1e-4},
      {Family::kCut, 12, 0.3, 0.7, 1e-3, 1e-9},
  };
  for (const Case& c : cases) {
    const auto obj = MakeObjective(GenerateInstance({c.family, c.n, 1}));
    const double err = GradientError(*obj, 20, c.lo, c.hi, c.step, 2024);
    std::cout << "  " << CellName(c.family, c.n) << ": max relative error " << Num(err)
              << " (tolerance " << Num(c.tol) << ")\n";
    check.Expect(err <= c.tol, CellName(c.family, c.n) + " gradient error " + Num(err));
  }
  return check.ok();
}

// ------------------------------------------------------------------- 6 ----
bool Criterion6(const Options&) {
  Check check;
  struct Case {
    Family family;
    std::size_t n;
    double tol;
  };
  for (const Case& c : {Case{Family::kNqp, 50, 1e-9}, Case{Family::kDpp, 50, 1e-7},
                        Case{Family::kCut, 12, 1e-9}}) {
    const OracleHandle oracle(MakeObjective(GenerateInstance({c.family, c.n, 1})));
    const DrReport r = VerifyDr(oracle, 100, 1, c.tol);
    std::cout << "  " << CellName(c.family, c.n) << ": " << r.violations.size()
              << " violations in " << r.trials << " pairs (tol " << Num(c.tol) << ")\n";
    check.Expect(r.violations.empty() && r.trials == 100, CellName(c.family, c.n));
  }
  const auto convex = std::make_shared<FunctionObjective>(
      3, [](const Point& x) { return x[1] * x[1]; },
      [](const Point& x) { return std::vector<double>{0.0, 2.0 * x[1], 0.0}; });
  const DrReport control = VerifyDr(OracleHandle(convex), 100, 1, 1e-9);
  std::cout << "  convex control: " << control.violations.size() << " violations\n";
  check.Expect(!control.violations.empty(), "convex control not detected");
  return check.ok();
}

// ------------------------------------------------------------------- 7 ----
bool Criterion7(const Options& opt) {
  Check check;
  ExperimentSpec spec;  // NQP/DPP, n in {25,50,100,200}, 5 seeds, ε 0.05, k 10, 0.75
  spec.workers = opt.workers;
  const std::vector<ResultRow> rows = RunCells(spec);
  if (!opt.csv_path.empty()) {
    std::ofstream out(opt.csv_path);
    WriteResultsCsv(out, rows);
    std::cout << "  wrote " << opt.csv_path << '\n';
  }
  const std::vector<SummaryRow> summary = Summarize(rows);
  WriteSummary(std::cout, summary);
  std::map<std::pair<Family, std::size_t>, std::map<Algorithm, SummaryRow>> cells;
  for (const SummaryRow& s : summary) cells[{s.family, s.n}][s.algorithm] = s;
  for (const auto& [key, algos] : cells) {
    const std::string name = CellName(key.first, key.second);
    const SummaryRow& par = algos.at(Algorithm::kParallel);
    const SummaryRow& mwu = algos.at(Algorithm::kMwu);
    check.Expect(par.failed == 0 && mwu.failed == 0 &&
                     algos.at(Algorithm::kGreedy).failed == 0,
                 name + ": failed runs");
    const bool value_ok = par.value_mean >= mwu.value_mean;
    const bool rounds_ok = par.rounds_mean < mwu.rounds_mean;
    const bool ratio_ok = par.ratio_count > 0 && par.ratio_mean >= 0.90;
    std::cout << "  " << name << ": value parallel " << Num(par.value_mean) << " vs mwu "
              << Num(mwu.value_mean) << (value_ok ? " ok" : " FAIL") << "; rounds "
              << Num(par.rounds_mean) << " vs " << Num(mwu.rounds_mean)
              << (rounds_ok ? " ok" : " FAIL") << "; ratio vs greedy "
              << Num(par.ratio_mean) << (ratio_ok ? " ok" : " FAIL") << '\n';
    check.Expect(value_ok, name + ": parallel value below mwu");
    check.Expect(rounds_ok, name + ": parallel rounds not below mwu");
    check.Expect(ratio_ok, name + ": parallel ratio below 0.90");
  }
  return check.ok();
}

// ------------------------------------------------------------------- 8 ----
bool Criterion8(const Options&) {
  Check check;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    std::mt19937_64 gen(seed);
    const Vec c = testing::RandomVec(gen, 100, 0.0, 1.0);
    const double opt = testing::TopKSum(c, 10);
    const OracleHandle oracle(MakeModularObjective(c));
    const SolveResult greedy = ContinuousGreedy(oracle, {kEpsilon, kBudget, {}, false});
    const SolveResult par = GuessMAndSolve(oracle, SolverConfig::Guarantee(kEpsilon, kBudget));
    std::cout << "  modular seed " << seed << ": top-10 sum " << Num(opt) << ", greedy "
              << Num(greedy.value) << " (" << Num(100.0 * greedy.value / opt)
              << "%), parallel " << Num(par.value) << " (" << Num(100.0 * par.value / opt)
              << "%)\n";
    check.Expect(greedy.value >= 0.99 * opt,
                 "seed " + std::to_string(seed) + ": greedy not within 1% of top-k");
    check.Expect(par.value >= (kInvE - 6 * kEpsilon) * opt,
                 "seed " + std::to_string(seed) + ": parallel below (1/e - 6 eps)");
  }
  std::mt19937_64 gen(99);
  std::uniform_int_distribution<int> size_dist(1, 8);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = static_cast<std::size_t>(size_dist(gen));
    const Vec g = testing::RandomVec(gen, n, -1.0, 2.0);
    const Vec cap = testing::RandomVec(gen, n, 0.0, 1.0);
    const double k = std::uniform_real_distribution<double>(0.1, static_cast<double>(n))(gen);
    const Point d = LinearMaximizer(Gradient(g), Point(cap), k);
    double value = 0.0;
    for (std::size_t i = 0; i < n; ++i) value += g[i] * d[i];
    const double gap = std::abs(value - testing::BruteForceLp(g, cap, k));
    worst = std::max(worst, gap);
    check.Expect(gap <= 1e-9, "linear maximizer trial " + std::to_string(trial));
  }
  std::cout << "  linear maximizer vs vertex enumeration: 1000 LPs, worst gap " << Num(worst)
            << '\n';
  return check.ok();
}

int Main(int argc, char** argv) {
  Options opt;
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--workers" && i + 1 < argc) {
      opt.workers = static_cast<std::size_t>(std::stoul(argv[++i]));
    } else if (arg == "--csv" && i + 1 < argc) {
      opt.csv_path = argv[++i];
    } else if (!arg.empty() && std::all_of(arg.begin(), arg.end(), ::isdigit) &&
               std::stoi(arg) >= 1 && std::stoi(arg) <= 8) {
      selected.insert(std::stoi(arg));
    } else {
      std::cerr << "usage: drsub_acceptance [--workers W] [--csv PATH] [1-8 ...]\n";
      return 1;
    }
  }
  if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8};

  const std::map<int, std::pair<const char*, std::function<bool(const Options&)>>> criteria = {
      {1, {"feasibility of every run", Criterion1}},
      {2, {"per-iteration invariants", Criterion2}},
      {3, {"approximation vs brute force (CUT)", Criterion3}},
      {4, {"iteration bound and sub-linear growth", Criterion4}},
      {5, {"gradient correctness", Criterion5}},
      {6, {"DR-submodularity check", Criterion6}},
      {7, {"experiment ordering vs MWU and greedy", Criterion7}},
      {8, {"baseline sanity on modular objectives", Criterion8}},
  };
  bool all_ok = true;
  for (int id : selected) {
    const auto& [title, fn] = criteria.at(id);
    std::cout << "== criterion " << id << ": " << title << '\n';
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = fn(opt);
    } catch (const std::exception& e) {
      std::cout << "  exception: " << e.what() << '\n';
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "criterion " << id << ": " << (ok ? "PASS" : "FAIL") << " (" << Num(secs)
              << " s)" << std::endl;
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}

}  // namespace
}  // namespace drsub

int main(int argc, char** argv) { return drsub::Main(argc, argv); }
