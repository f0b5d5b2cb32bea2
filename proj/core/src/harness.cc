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

#include "drsub/harness.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <map>
#include <sstream>
#include <tuple>
#include <utility>

#include <nlohmann/json.hpp>

#include "drsub/baselines.h"
#include "drsub/csv.h"
#include "drsub/errors.h"

namespace drsub {
namespace {

using Clock = std::chrono::steady_clock;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Keeps failure reasons on one CSV field.
std::string FailureStatus(std::string_view what) {
  std::string out = "failed:";
  for (char c : what) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
    out.push_back(c);
  }
  return out;
}

ResultRow FailedRow(const InstanceSpec& is, Algorithm algorithm,
                    std::string_view what) {
  ResultRow row;
  row.family = is.family;
  row.n = is.n;
  row.seed = is.seed;
  row.algorithm = algorithm;
  row.value = kNan;
  row.min_f_seen = kNan;
  row.x_l1 = kNan;
  row.m_used = kNan;
  row.status = FailureStatus(what);
  return row;
}

ResultRow RowFromResult(const InstanceSpec& is, Algorithm algorithm,
                        const SolveResult& r, double wall_ms) {
  ResultRow row;
  row.family = is.family;
  row.n = is.n;
  row.seed = is.seed;
  row.algorithm = algorithm;
  row.value = r.value;
  row.rounds = r.ledger.rounds;
  row.queries = r.ledger.total_queries();
  row.iterations = static_cast<std::int64_t>(r.trace.size());
  row.min_f_seen = r.min_value_seen;
  row.wall_ms = wall_ms;
  row.x_l1 = L1Norm(r.x);
  row.m_used = algorithm == Algorithm::kGreedy ? kNan : r.m_used;
  row.stop_reason = r.stop_reason;
  return row;
}

bool Requested(const ExperimentSpec& spec, Algorithm a) {
  return std::find(spec.algorithms.begin(), spec.algorithms.end(), a) !=
         spec.algorithms.end();
}

SolverConfig ParallelConfig(const ExperimentSpec& spec) {
  SolverConfig config = spec.decay_mode == DecayMode::kExperiment
                            ? SolverConfig::Experiment(spec.epsilon, spec.k)
                            : SolverConfig::Guarantee(spec.epsilon, spec.k);
  config.m_grid_factor = spec.m_grid_factor;
  return config;
}

// Runs one algorithm, timing it and turning errors into a failed row.
template <typename Fn>
ResultRow Timed(const InstanceSpec& is, Algorithm algorithm, Fn&& fn,
                SolveResult* out = nullptr) {
  const auto start = Clock::now();
  try {
    SolveResult r = fn();
    const double ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    ResultRow row = RowFromResult(is, algorithm, r, ms);
    if (out != nullptr) *out = std::move(r);
    return row;
  } catch (const std::exception& e) {
    return FailedRow(is, algorithm, e.what());
  }
}

std::vector<ResultRow> RunCell(const ExperimentSpec& spec, const InstanceSpec& is) {
  std::vector<ResultRow> rows;
  std::shared_ptr<const Objective> objective;
  try {
    objective = MakeObjective(GenerateInstance(is));
  } catch (const std::exception& e) {
    for (Algorithm a : spec.algorithms) rows.push_back(FailedRow(is, a, e.what()));
    return rows;
  }

  const SolverConfig config = ParallelConfig(spec);
  std::optional<double> m_for_mwu;
  if (Requested(spec, Algorithm::kParallel)) {
    SolveResult r;
    rows.push_back(Timed(
        is, Algorithm::kParallel,
        [&] { return GuessMAndSolve(OracleHandle(objective), config); }, &r));
    if (rows.back().ok()) m_for_mwu = r.m_used;
  }
  if (Requested(spec, Algorithm::kMwu)) {
    rows.push_back(Timed(is, Algorithm::kMwu, [&] {
      // Without a parallel row the target comes from an unrecorded grid run.
      const double m = m_for_mwu.has_value()
                           ? *m_for_mwu
                           : GuessMAndSolve(OracleHandle(objective), config).m_used;
      return MwuSolve(OracleHandle(objective), spec.k, spec.epsilon, m);
    }));
  }
  if (Requested(spec, Algorithm::kGreedy)) {
    GreedyConfig gc;
    gc.epsilon = spec.epsilon;
    gc.k = spec.k;
    rows.push_back(Timed(is, Algorithm::kGreedy, [&] {
      return ContinuousGreedy(OracleHandle(objective), gc);
    }));
  }

  const auto greedy = std::find_if(rows.begin(), rows.end(), [](const ResultRow& r) {
    return r.algorithm == Algorithm::kGreedy;
  });
  if (greedy != rows.end() && greedy->ok() && greedy->value > 0.0) {
    const double base = greedy->value;
    for (ResultRow& r : rows) {
      if (r.ok()) r.value_ratio = r.value / base;
    }
  }
  return rows;
}

auto SortKey(const ResultRow& r) {
  return std::make_tuple(static_cast<int>(r.family), r.n, r.seed,
                         static_cast<int>(r.algorithm));
}

double ParseDouble(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ValidationError("bad numeric CSV field '" + s + "'");
  }
  return v;
}

template <typename Int>
Int ParseInt(const std::string& s) {
  Int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ValidationError("bad integer CSV field '" + s + "'");
  }
  return v;
}

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

MeanStd Stats(const std::vector<double>& xs) {
  MeanStd out;
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return out;
}

}  // namespace

std::string_view AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kParallel:
      return "parallel";
    case Algorithm::kGreedy:
      return "greedy";
    case Algorithm::kMwu:
      return "mwu";
  }
  return "unknown";
}

Algorithm ParseAlgorithm(std::string_view name) {
  const std::string s = Lower(name);
  if (s == "parallel") return Algorithm::kParallel;
  if (s == "greedy") return Algorithm::kGreedy;
  if (s == "mwu") return Algorithm::kMwu;
  throw ValidationError("unknown algorithm '" + std::string(name) + "'");
}

void ExperimentSpec::Validate() const {
  if (families.empty()) throw ValidationError("families must be non-empty");
  if (n_values.empty()) throw ValidationError("n values must be non-empty");
  if (seeds.empty()) throw ValidationError("seeds must be non-empty");
  if (algorithms.empty()) throw ValidationError("algorithms must be non-empty");
  for (std::size_t n : n_values) {
    if (n == 0) throw ValidationError("n values must be >= 1");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ValidationError("epsilon must lie in (0, 1)");
  }
  if (!(k > 0.0) || !std::isfinite(k)) throw InvalidBudget("k must be positive");
  if (workers == 0) throw ValidationError("workers must be >= 1");
  if (!(m_grid_factor >= 1.0) || !std::isfinite(m_grid_factor)) {
    throw ValidationError("m_grid_factor must be a finite value >= 1");
  }
}

ExperimentSpec ExperimentSpecFromJson(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("config must be a JSON object");

  ExperimentSpec spec;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "families") {
        spec.families.clear();
        for (const auto& f : value) spec.families.push_back(ParseFamily(f.get<std::string>()));
      } else if (key == "n") {
        spec.n_values = value.get<std::vector<std::size_t>>();
      } else if (key == "seeds") {
        spec.seeds = value.get<std::vector<std::uint64_t>>();
      } else if (key == "epsilon") {
        spec.epsilon = value.get<double>();
      } else if (key == "k") {
        spec.k = value.get<double>();
      } else if (key == "algorithms") {
        spec.algorithms.clear();
        for (const auto& a : value) {
          spec.algorithms.push_back(ParseAlgorithm(a.get<std::string>()));
        }
      } else if (key == "decay") {
        spec.decay_mode = ParseDecayMode(value.get<std::string>());
      } else if (key == "m_grid_factor") {
        spec.m_grid_factor = value.get<double>();
      } else if (key == "workers") {
        spec.workers = value.get<std::size_t>();
      } else {
        throw ValidationError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad config value: ") + e.what());
  }
  spec.Validate();
  return spec;
}

ExperimentSpec LoadExperimentSpec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read config '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ExperimentSpecFromJson(ss.str());
}

std::vector<ResultRow> RunCells(const ExperimentSpec& spec) {
  spec.Validate();
  std::vector<InstanceSpec> cells;
  for (Family f : spec.families) {
    for (std::size_t n : spec.n_values) {
      for (std::uint64_t seed : spec.seeds) cells.push_back({f, n, seed});
    }
  }

  std::vector<std::vector<ResultRow>> per_cell(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      per_cell[i] = RunCell(spec, cells[i]);
    }
  };
  const std::size_t threads = std::min(spec.workers, cells.size());
  std::vector<std::future<void>> pool;
  for (std::size_t t = 1; t < threads; ++t) {
    pool.push_back(std::async(std::launch::async, worker));
  }
  worker();
  for (auto& f : pool) f.get();

  std::vector<ResultRow> rows;
  for (auto& cell : per_cell) {
    for (auto& r : cell) rows.push_back(std::move(r));
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ResultRow& a, const ResultRow& b) {
                     return SortKey(a) < SortKey(b);
                   });
  return rows;
}

void WriteResultsCsv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kResultsCsvVersionLine << '\n' << kResultsCsvHeader << '\n';
  for (const ResultRow& r : rows) {
    out << FamilyName(r.family) << ',' << r.n << ',' << r.seed << ','
        << AlgorithmName(r.algorithm) << ',' << FormatDouble(r.value) << ','
        << (r.value_ratio ? FormatDouble(*r.value_ratio) : std::string()) << ','
        << r.rounds << ',' << r.queries << ',' << r.iterations << ','
        << FormatDouble(r.min_f_seen) << ',' << FormatDouble(r.wall_ms) << ','
        << FormatDouble(r.x_l1) << ',' << FormatDouble(r.m_used) << ','
        << r.stop_reason << ',' << r.status << '\n';
  }
}

std::vector<ResultRow> ReadResultsCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || SplitCsvLine(line)[0] != kResultsCsvVersionLine) {
    throw ValidationError("missing '" + std::string(kResultsCsvVersionLine) +
                          "' version line");
  }
  if (!std::getline(in, line)) throw ValidationError("missing CSV header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kResultsCsvHeader) throw ValidationError("unexpected CSV header");

  const std::size_t columns = SplitCsvLine(kResultsCsvHeader).size();
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = SplitCsvLine(line);
    if (f.size() != columns) throw ValidationError("CSV row has wrong field count");
    ResultRow r;
    r.family = ParseFamily(f[0]);
    r.n = ParseInt<std::size_t>(f[1]);
    r.seed = ParseInt<std::uint64_t>(f[2]);
    r.algorithm = ParseAlgorithm(f[3]);
    r.value = ParseDouble(f[4]);
    if (!f[5].empty()) r.value_ratio = ParseDouble(f[5]);
    r.rounds = ParseInt<std::int64_t>(f[6]);
    r.queries = ParseInt<std::int64_t>(f[7]);
    r.iterations = ParseInt<std::int64_t>(f[8]);
    r.min_f_seen = ParseDouble(f[9]);
    r.wall_ms = ParseDouble(f[10]);
    r.x_l1 = ParseDouble(f[11]);
    r.m_used = ParseDouble(f[12]);
    r.stop_reason = f[13];
    r.status = f[14];
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<SummaryRow> Summarize(const std::vector<ResultRow>& rows) {
  struct Acc {
    std::vector<double> values, ratios, rounds;
    std::size_t failed = 0;
  };
  std::map<std::tuple<int, std::size_t, int>, Acc> groups;
  for (const ResultRow& r : rows) {
    Acc& acc = groups[{static_cast<int>(r.family), r.n, static_cast<int>(r.algorithm)}];
    if (!r.ok()) {
      ++acc.failed;
      continue;
    }
    acc.values.push_back(r.value);
    acc.rounds.push_back(static_cast<double>(r.rounds));
    if (r.value_ratio) acc.ratios.push_back(*r.value_ratio);
  }
  std::vector<SummaryRow> out;
  for (const auto& [key, acc] : groups) {
    SummaryRow s;
    s.family = static_cast<Family>(std::get<0>(key));
    s.n = std::get<1>(key);
    s.algorithm = static_cast<Algorithm>(std::get<2>(key));
    s.runs = acc.values.size();
    s.failed = acc.failed;
    const MeanStd v = Stats(acc.values);
    const MeanStd q = Stats(acc.ratios);
    const MeanStd d = Stats(acc.rounds);
    s.value_mean = v.mean;
    s.value_std = v.std;
    s.ratio_count = acc.ratios.size();
    s.ratio_mean = q.mean;
    s.ratio_std = q.std;
    s.rounds_mean = d.mean;
    s.rounds_std = d.std;
    out.push_back(s);
  }
  return out;
}

void WriteSummary(std::ostream& out, const std::vector<SummaryRow>& summary) {
  char line[256];
  std::snprintf(line, sizeof(line), "%-6s %5s %-9s %4s %6s %24s %20s %24s\n",
                "family", "n", "algorithm", "runs", "failed", "value (mean±std)",
                "ratio (mean±std)", "rounds (mean±std)");
  out << line;
  for (const SummaryRow& s : summary) {
    char ratio[64] = "-";
    if (s.ratio_count > 0) {
      std::snprintf(ratio, sizeof(ratio), "%.4f±%.4f", s.ratio_mean, s.ratio_std);
    }
    char value[64];
    std::snprintf(value, sizeof(value), "%.4f±%.4f", s.value_mean, s.value_std);
    char rounds[64];
    std::snprintf(rounds, sizeof(rounds), "%.1f±%.1f", s.rounds_mean, s.rounds_std);
    std::snprintf(line, sizeof(line), "%-6s %5zu %-9s %4zu %6zu %24s %20s %24s\n",
                  std::string(FamilyName(s.family)).c_str(), s.n,
                  std::string(AlgorithmName(s.algorithm)).c_str(), s.runs,
                  s.failed, value, ratio, rounds);
    out << line;
  }
}

ExperimentResult RunExperiment(const ExperimentSpec& spec,
                               const std::filesystem::path& out_path,
                               std::ostream* summary_out) {
  ExperimentResult result;
  result.rows = RunCells(spec);
  result.summary = Summarize(result.rows);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error("cannot open '" + out_path.string() + "' for writing");
  WriteResultsCsv(out, result.rows);
  out.flush();
  if (!out) throw Error("failed writing '" + out_path.string() + "'");
  if (summary_out != nullptr) WriteSummary(*summary_out, result.summary);
  return result;
}

}  // namespace drsub
