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

#include "cli.h"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "drsub/baselines.h"
#include "drsub/csv.h"
#include "drsub/errors.h"
#include "drsub/harness.h"
#include "drsub/instances.h"
#include "drsub/parallel_solver.h"
#include "drsub/verify.h"

namespace drsub {
namespace {

struct RunArgs {
  std::string config;
  std::string out = "results.csv";
  std::vector<std::string> families;
  std::vector<std::size_t> n_values;
  std::vector<std::uint64_t> seeds;
  double epsilon = 0.0;
  double k = 0.0;
  std::vector<std::string> algorithms;
  std::string decay;
  double m_grid_factor = 1.0;
  std::size_t workers = 1;
};

struct InstanceArgs {
  std::string family = "nqp";
  std::size_t n = 25;
  std::uint64_t seed = 1;
};

struct VerifyArgs {
  std::size_t trials = 100;
  std::size_t points = 20;
  double tol = 1e-9;
};

struct TraceArgs {
  std::string algorithm = "parallel";
  double epsilon = 0.05;
  double k = 10.0;
  std::string decay = "experiment";
  std::optional<double> m;
  std::string out;
};

// Gradient-check settings per family: sampling box, finite-difference step
// and pass threshold on the relative error.
struct GradCheckPlan {
  double lo, hi, step, tol;
};

GradCheckPlan PlanFor(Family f) {
  switch (f) {
    case Family::kNqp:
      return {0.0 + 1e-4, 1.0 - 1e-4, 1e-5, 1e-6};
    case Family::kDpp:
      return {0.0 + 1e-4, 1.0 - 1e-4, 1e-5, 1e-4};
    case Family::kCut:
      return {0.3, 0.7, 1e-3, 1e-9};
  }
  return {0.3, 0.7, 1e-5, 1e-6};
}

// Writes through `path` or, when empty, through `fallback`.
template <typename Fn>
void WithOutput(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open '" + path + "' for writing");
  fn(file);
  file.flush();
  if (!file) throw Error("failed writing '" + path + "'");
}

void AddInstanceOptions(CLI::App* cmd, InstanceArgs& a) {
  cmd->add_option("--family", a.family, "nqp, dpp or cut")->capture_default_str();
  cmd->add_option("--n", a.n, "dimension")->capture_default_str();
  cmd->add_option("--seed", a.seed, "generator seed")->capture_default_str();
}

int DoRun(const RunArgs& a, CLI::App* cmd, std::ostream& out) {
  ExperimentSpec spec = a.config.empty() ? ExperimentSpec{} : LoadExperimentSpec(a.config);
  // Flags override the config file.
  if (cmd->count("--families") > 0) {
    spec.families.clear();
    for (const auto& f : a.families) {
      if (!f.empty()) spec.families.push_back(ParseFamily(f));
    }
  }
  if (cmd->count("--n") > 0) spec.n_values = a.n_values;
  if (cmd->count("--seeds") > 0) spec.seeds = a.seeds;
  if (cmd->count("--epsilon") > 0) spec.epsilon = a.epsilon;
  if (cmd->count("--k") > 0) spec.k = a.k;
  if (cmd->count("--algorithms") > 0) {
    spec.algorithms.clear();
    for (const auto& s : a.algorithms) {
      if (!s.empty()) spec.algorithms.push_back(ParseAlgorithm(s));
    }
  }
  if (cmd->count("--decay") > 0) spec.decay_mode = ParseDecayMode(a.decay);
  if (cmd->count("--m-grid-factor") > 0) spec.m_grid_factor = a.m_grid_factor;
  if (cmd->count("--workers") > 0) spec.workers = a.workers;
  spec.Validate();

  const ExperimentResult result = RunExperiment(spec, a.out, &out);
  const auto failed = std::count_if(result.rows.begin(), result.rows.end(),
                                    [](const ResultRow& r) { return !r.ok(); });
  out << "wrote " << result.rows.size() << " rows to " << a.out;
  if (failed > 0) out << " (" << failed << " failed)";
  out << '\n';
  return kExitOk;
}

int DoGen(const InstanceArgs& a, const std::string& path, std::ostream& out) {
  const Instance inst = GenerateInstance({ParseFamily(a.family), a.n, a.seed});
  WithOutput(path, out, [&](std::ostream& o) { o << InstanceToJson(inst) << '\n'; });
  return kExitOk;
}

int DoVerify(const InstanceArgs& ia, const VerifyArgs& va, std::ostream& out) {
  const Family family = ParseFamily(ia.family);
  const OracleHandle oracle(MakeObjective(GenerateInstance({family, ia.n, ia.seed})));
  const DrReport dr = VerifyDr(oracle, va.trials, ia.seed, va.tol);
  const GradCheckPlan plan = PlanFor(family);
  const GradientCheckReport gc =
      CheckGradient(oracle, va.points, ia.seed, plan.step, plan.lo, plan.hi);
  out << dr.violations.size() << " DR violations in " << dr.trials << " trials\n";
  for (const DrViolation& v : dr.violations) {
    out << "  trial " << v.trial << " coord " << v.coord << ": grad(x)="
        << FormatDouble(v.grad_at_lower) << " < grad(y)="
        << FormatDouble(v.grad_at_upper) << '\n';
  }
  const bool grad_ok = gc.max_rel_error <= plan.tol;
  out << "gradient check: max relative error " << FormatDouble(gc.max_rel_error)
      << " over " << gc.points << " points (tolerance " << FormatDouble(plan.tol)
      << ") " << (grad_ok ? "ok" : "FAILED") << '\n';
  return dr.violations.empty() && grad_ok ? kExitOk : kExitRuntime;
}

int DoTrace(const InstanceArgs& ia, const TraceArgs& ta, std::ostream& out) {
  const Algorithm algorithm = ParseAlgorithm(ta.algorithm);
  const OracleHandle oracle(
      MakeObjective(GenerateInstance({ParseFamily(ia.family), ia.n, ia.seed})));
  SolverConfig config = ParseDecayMode(ta.decay) == DecayMode::kExperiment
                            ? SolverConfig::Experiment(ta.epsilon, ta.k)
                            : SolverConfig::Guarantee(ta.epsilon, ta.k);
  SolveResult result;
  switch (algorithm) {
    case Algorithm::kParallel:
      result = ta.m ? Solve(oracle, config, *ta.m) : GuessMAndSolve(oracle, config);
      break;
    case Algorithm::kGreedy: {
      GreedyConfig gc;
      gc.epsilon = ta.epsilon;
      gc.k = ta.k;
      result = ContinuousGreedy(oracle, gc);
      break;
    }
    case Algorithm::kMwu: {
      const double m = ta.m ? *ta.m
                            : GuessMAndSolve(OracleHandle(MakeObjective(GenerateInstance(
                                                 {ParseFamily(ia.family), ia.n, ia.seed}))),
                                             config)
                                  .m_used;
      result = MwuSolve(oracle, ta.k, ta.epsilon, m);
      break;
    }
  }
  WithOutput(ta.out, out, [&](std::ostream& o) { WriteTraceCsv(o, result.trace); });
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"DR-submodular maximization toolkit", "drsub"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "run an experiment sweep and write a CSV");
  run->add_option("--config", run_args.config, "JSON experiment config");
  run->add_option("--out", run_args.out, "output CSV path")->capture_default_str();
  run->add_option("--families", run_args.families, "families (nqp,dpp,cut)")
      ->delimiter(',');
  run->add_option("--n", run_args.n_values, "dimensions")->delimiter(',');
  run->add_option("--seeds", run_args.seeds, "seeds")->delimiter(',');
  run->add_option("--epsilon", run_args.epsilon, "error parameter");
  run->add_option("--k", run_args.k, "budget");
  run->add_option("--algorithms", run_args.algorithms, "parallel,greedy,mwu")
      ->delimiter(',');
  run->add_option("--decay", run_args.decay, "guarantee or experiment");
  run->add_option("--m-grid-factor", run_args.m_grid_factor,
                  "scale the upper end of the M grid (1 = provable OPT bound)");
  run->add_option("--workers", run_args.workers, "concurrent instance cells");

  InstanceArgs gen_args;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen", "emit a generated instance as JSON");
  AddInstanceOptions(gen, gen_args);
  gen->add_option("--out", gen_out, "output path (default stdout)");

  InstanceArgs verify_inst;
  VerifyArgs verify_args;
  CLI::App* verify =
      app.add_subcommand("verify", "check DR-submodularity and gradients of an instance");
  AddInstanceOptions(verify, verify_inst);
  verify->add_option("--trials", verify_args.trials, "sampled pairs x <= y")
      ->capture_default_str();
  verify->add_option("--points", verify_args.points, "gradient-check points")
      ->capture_default_str();
  verify->add_option("--tol", verify_args.tol, "DR violation tolerance")
      ->capture_default_str();

  InstanceArgs trace_inst;
  TraceArgs trace_args;
  CLI::App* trace = app.add_subcommand("trace", "single run; emit the iteration trace CSV");
  AddInstanceOptions(trace, trace_inst);
  trace->add_option("--algorithm", trace_args.algorithm, "parallel, greedy or mwu")
      ->capture_default_str();
  trace->add_option("--epsilon", trace_args.epsilon, "error parameter")
      ->capture_default_str();
  trace->add_option("--k", trace_args.k, "budget")->capture_default_str();
  trace->add_option("--decay", trace_args.decay, "guarantee or experiment")
      ->capture_default_str();
  trace->add_option("--m", trace_args.m, "target value M (default: grid search)");
  trace->add_option("--out", trace_args.out, "output path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  try {
    if (run->parsed()) return DoRun(run_args, run, out);
    if (gen->parsed()) return DoGen(gen_args, gen_out, out);
    if (verify->parsed()) return DoVerify(verify_inst, verify_args, out);
    if (trace->parsed()) return DoTrace(trace_inst, trace_args, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "runtime failure: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitValidation;
}

}  // namespace drsub
