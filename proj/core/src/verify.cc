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

#include "drsub/verify.h"

#include <algorithm>
#include <cmath>

#include "drsub/errors.h"
#include "drsub/rng.h"

namespace drsub {

DrReport VerifyDr(const OracleHandle& oracle, std::size_t trials,
                  std::uint64_t seed, double tol) {
  if (trials == 0) throw ValidationError("VerifyDr needs at least one trial");
  const std::size_t n = oracle.dim();
  Rng rng(seed);
  DrReport report;
  report.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<double> y(n), x(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = rng.Uniform();
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] * rng.Uniform();
    const Query batch[] = {Query::Grad(Point(x)), Query::Grad(Point(y))};
    const auto results = oracle.BatchEval(batch);
    const auto& gx = std::get<Gradient>(results[0]);
    const auto& gy = std::get<Gradient>(results[1]);
    for (std::size_t i = 0; i < n; ++i) {
      if (gx[i] < gy[i] - tol) report.violations.push_back({t, i, gx[i], gy[i]});
    }
  }
  return report;
}

GradientCheckReport CheckGradient(const OracleHandle& oracle,
                                  std::size_t points, std::uint64_t seed,
                                  double step, double lo, double hi) {
  const std::size_t n = oracle.dim();
  Rng rng(seed);
  GradientCheckReport report;
  report.points = points;
  for (std::size_t p = 0; p < points; ++p) {
    std::vector<double> x(n);
    for (double& xi : x) xi = rng.Uniform(lo, hi);
    // One round: the analytic gradient plus 2n probes.
    std::vector<Query> batch;
    batch.reserve(2 * n + 1);
    batch.push_back(Query::Grad(Point(x)));
    for (std::size_t i = 0; i < n; ++i) {
      auto up = x, down = x;
      up[i] += step;
      down[i] -= step;
      batch.push_back(Query::Value(Point(std::move(up))));
      batch.push_back(Query::Value(Point(std::move(down))));
    }
    const auto results = oracle.BatchEval(batch);
    const auto& g = std::get<Gradient>(results[0]);
    for (std::size_t i = 0; i < n; ++i) {
      const double fd = (std::get<double>(results[1 + 2 * i]) -
                         std::get<double>(results[2 + 2 * i])) /
                        (2.0 * step);
      const double rel = std::abs(g[i] - fd) / std::max(1.0, std::abs(fd));
      report.max_rel_error = std::max(report.max_rel_error, rel);
    }
  }
  return report;
}

}  // namespace drsub
