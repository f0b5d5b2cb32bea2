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

#ifndef DRSUB_ORACLE_H_
#define DRSUB_ORACLE_H_

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "drsub/ledger.h"
#include "drsub/vector.h"

namespace drsub {

// A differentiable objective on [0,1]^n. Implementations must be safe to
// evaluate concurrently and deterministic in their input.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual std::size_t dim() const = 0;
  virtual double Value(const Point& x) const = 0;
  virtual Gradient Grad(const Point& x) const = 0;
};

// Objective backed by a pair of callables; used for ad-hoc test functions.
class FunctionObjective : public Objective {
 public:
  using ValueFn = std::function<double(const Point&)>;
  using GradFn = std::function<std::vector<double>(const Point&)>;

  FunctionObjective(std::size_t dim, ValueFn value, GradFn grad)
      : dim_(dim), value_(std::move(value)), grad_(std::move(grad)) {}

  std::size_t dim() const override { return dim_; }
  double Value(const Point& x) const override { return value_(x); }
  Gradient Grad(const Point& x) const override { return Gradient(grad_(x)); }

 private:
  std::size_t dim_;
  ValueFn value_;
  GradFn grad_;
};

// f(x) = <c, x>.
std::shared_ptr<const Objective> MakeModularObjective(std::vector<double> c);

struct Query {
  enum class Kind { kValue, kGrad };

  Kind kind;
  Point point;

  static Query Value(Point p) { return {Kind::kValue, std::move(p)}; }
  static Query Grad(Point p) { return {Kind::kGrad, std::move(p)}; }
};

using QueryResult = std::variant<double, Gradient>;

// All access to an objective goes through a handle, which charges every batch
// of queries to a ledger as one adaptive round. Copies share the objective and
// the ledger.
class OracleHandle {
 public:
  explicit OracleHandle(std::shared_ptr<const Objective> objective,
                        std::size_t workers = 1);

  std::size_t dim() const { return objective_->dim(); }
  const Objective& objective() const { return *objective_; }

  // Evaluates every query (concurrently when workers > 1) and returns results
  // in input order. A non-empty batch costs exactly one round; an empty batch
  // is free. Throws DimensionError before evaluating anything if a point has
  // the wrong length, and NonFiniteValue for a non-finite value.
  std::vector<QueryResult> BatchEval(std::span<const Query> queries) const;

  // Single-query rounds.
  double Value(const Point& x) const;
  Gradient Grad(const Point& x) const;

  // Same objective, new empty ledger.
  OracleHandle WithFreshLedger() const;

  EvalLedger ledger() const { return ledger_->Snapshot(); }
  std::int64_t rounds() const { return ledger_->rounds(); }
  Ledger& mutable_ledger() const { return *ledger_; }

 private:
  std::shared_ptr<const Objective> objective_;
  std::shared_ptr<Ledger> ledger_;
  std::size_t workers_;
};

// Free-function spelling of OracleHandle::BatchEval.
inline std::vector<QueryResult> BatchEval(const OracleHandle& oracle,
                                          std::span<const Query> queries) {
  return oracle.BatchEval(queries);
}

}  // namespace drsub

#endif  // DRSUB_ORACLE_H_
