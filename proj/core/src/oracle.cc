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

#include "drsub/oracle.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <future>
#include <utility>

#include "drsub/errors.h"

namespace drsub {
namespace {

QueryResult EvaluateOne(const Objective& f, const Query& q) {
  if (q.kind == Query::Kind::kGrad) return f.Grad(q.point);
  const double v = f.Value(q.point);
  if (!std::isfinite(v)) throw NonFiniteValue("objective returned a non-finite value");
  return v;
}

}  // namespace

std::shared_ptr<const Objective> MakeModularObjective(std::vector<double> c) {
  const std::size_t n = c.size();
  auto value = [c](const Point& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * x[i];
    return s;
  };
  auto grad = [c](const Point&) { return c; };
  return std::make_shared<FunctionObjective>(n, value, grad);
}

OracleHandle::OracleHandle(std::shared_ptr<const Objective> objective,
                           std::size_t workers)
    : objective_(std::move(objective)),
      ledger_(std::make_shared<Ledger>()),
      workers_(std::max<std::size_t>(workers, 1)) {}

std::vector<QueryResult> OracleHandle::BatchEval(
    std::span<const Query> queries) const {
  if (queries.empty()) return {};
  std::int64_t values = 0;
  for (const Query& q : queries) {
    if (q.point.size() != dim()) throw DimensionError(dim(), q.point.size());
    if (q.kind == Query::Kind::kValue) ++values;
  }
  ledger_->RecordRound(values, static_cast<std::int64_t>(queries.size()) - values);

  std::vector<QueryResult> results(queries.size());
  const std::size_t workers = std::min(workers_, queries.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < queries.size(); ++i) {
      results[i] = EvaluateOne(*objective_, queries[i]);
    }
    return results;
  }

  // Strided split; each task writes disjoint slots. Failures are rethrown in
  // input order.
  std::vector<std::exception_ptr> errors(queries.size());
  std::vector<std::future<void>> tasks;
  tasks.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    tasks.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < queries.size(); i += workers) {
        try {
          results[i] = EvaluateOne(*objective_, queries[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    }));
  }
  for (auto& t : tasks) t.get();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

double OracleHandle::Value(const Point& x) const {
  const Query q = Query::Value(x);
  return std::get<double>(BatchEval(std::span(&q, 1)).front());
}

Gradient OracleHandle::Grad(const Point& x) const {
  const Query q = Query::Grad(x);
  return std::get<Gradient>(std::move(BatchEval(std::span(&q, 1)).front()));
}

OracleHandle OracleHandle::WithFreshLedger() const {
  return OracleHandle(objective_, workers_);
}

}  // namespace drsub
