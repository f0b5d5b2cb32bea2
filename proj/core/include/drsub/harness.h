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

// Experiment runner: sweeps (family, n, seed), runs the requested algorithms
// on each generated instance, and writes one CSV row per run.
//
// CSV schema (first line is the version comment):
//   # drsub-csv v1
//   family,n,seed,algorithm,value,value_ratio,rounds,queries,iterations,
//   min_f_seen,wall_ms,x_l1,m_used,stop_reason,status
// Rows are sorted by (family, n, seed, algorithm). value_ratio is empty unless
// greedy succeeded on the same instance with a positive value. status is "ok"
// or "failed:<reason>"; failed rows carry "nan" in the numeric result columns.

#ifndef DRSUB_HARNESS_H_
#define DRSUB_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "drsub/instances.h"
#include "drsub/parallel_solver.h"

namespace drsub {

enum class Algorithm { kParallel, kGreedy, kMwu };

std::string_view AlgorithmName(Algorithm algorithm);
// Case-insensitive "parallel" / "greedy" / "mwu"; ValidationError otherwise.
Algorithm ParseAlgorithm(std::string_view name);

inline constexpr std::string_view kResultsCsvVersionLine = "# drsub-csv v1";
inline constexpr std::string_view kResultsCsvHeader =
    "family,n,seed,algorithm,value,value_ratio,rounds,queries,iterations,"
    "min_f_seen,wall_ms,x_l1,m_used,stop_reason,status";

struct ExperimentSpec {
  std::vector<Family> families = {Family::kNqp, Family::kDpp};
  std::vector<std::size_t> n_values = {25, 50, 100, 200};
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  double epsilon = 0.05;
  double k = 10.0;
  std::vector<Algorithm> algorithms = {Algorithm::kParallel, Algorithm::kGreedy,
                                       Algorithm::kMwu};
  DecayMode decay_mode = DecayMode::kExperiment;
  // SolverConfig::m_grid_factor for the parallel runs (1 = documented grid).
  double m_grid_factor = 1.0;
  // Concurrent (family, n, seed) cells.
  std::size_t workers = 1;

  // ValidationError on empty lists, n = 0, ε outside (0,1), k <= 0,
  // workers = 0 or m_grid_factor < 1.
  void Validate() const;
};

// JSON object with any of the keys "families", "n", "seeds", "epsilon", "k",
// "algorithms", "decay", "m_grid_factor", "workers"; missing keys keep their
// defaults. The result is validated. ValidationError on malformed input,
// unknown keys or invalid values.
ExperimentSpec ExperimentSpecFromJson(std::string_view text);
// As above, reading from a file; Error if the file cannot be read.
ExperimentSpec LoadExperimentSpec(const std::filesystem::path& path);

struct ResultRow {
  Family family = Family::kNqp;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::kParallel;
  double value = 0.0;
  std::optional<double> value_ratio;
  std::int64_t rounds = 0;
  std::int64_t queries = 0;
  std::int64_t iterations = 0;
  double min_f_seen = 0.0;
  double wall_ms = 0.0;
  double x_l1 = 0.0;
  double m_used = 0.0;
  std::string stop_reason;
  std::string status = "ok";

  bool ok() const { return status == "ok"; }
};

// Runs every cell of the spec and returns rows in sorted order. Solver errors
// become failed rows; the sweep continues.
std::vector<ResultRow> RunCells(const ExperimentSpec& spec);

void WriteResultsCsv(std::ostream& out, const std::vector<ResultRow>& rows);
// Inverse of WriteResultsCsv; ValidationError on a schema mismatch.
std::vector<ResultRow> ReadResultsCsv(std::istream& in);

struct SummaryRow {
  Family family = Family::kNqp;
  std::size_t n = 0;
  Algorithm algorithm = Algorithm::kParallel;
  std::size_t runs = 0;    // successful runs
  std::size_t failed = 0;  // failed runs
  double value_mean = 0.0;
  double value_std = 0.0;
  std::size_t ratio_count = 0;
  double ratio_mean = 0.0;
  double ratio_std = 0.0;
  double rounds_mean = 0.0;
  double rounds_std = 0.0;
};

// Per-(family, n, algorithm) mean and sample standard deviation (zero for a
// single run) over successful rows.
std::vector<SummaryRow> Summarize(const std::vector<ResultRow>& rows);
void WriteSummary(std::ostream& out, const std::vector<SummaryRow>& summary);

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<SummaryRow> summary;
};

// RunCells, then writes the CSV to out_path (Error if it cannot be written)
// and the summary table to `summary_out` when given.
ExperimentResult RunExperiment(const ExperimentSpec& spec,
                               const std::filesystem::path& out_path,
                               std::ostream* summary_out = nullptr);

}  // namespace drsub

#endif  // DRSUB_HARNESS_H_
