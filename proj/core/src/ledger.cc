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

#include "drsub/ledger.h"

#include <algorithm>
#include <numeric>

namespace drsub {

bool EvalLedger::Consistent() const {
  const std::int64_t sum = std::accumulate(per_round_sizes.begin(),
                                           per_round_sizes.end(),
                                           std::int64_t{0});
  return rounds == static_cast<std::int64_t>(per_round_sizes.size()) &&
         sum == total_queries();
}

void EvalLedger::AppendSequential(const EvalLedger& later) {
  rounds += later.rounds;
  total_value_queries += later.total_value_queries;
  total_grad_queries += later.total_grad_queries;
  per_round_sizes.insert(per_round_sizes.end(), later.per_round_sizes.begin(),
                         later.per_round_sizes.end());
}

EvalLedger EvalLedger::MergeParallel(std::span<const EvalLedger> runs) {
  EvalLedger out;
  for (const EvalLedger& run : runs) {
    out.total_value_queries += run.total_value_queries;
    out.total_grad_queries += run.total_grad_queries;
    if (run.per_round_sizes.size() > out.per_round_sizes.size()) {
      out.per_round_sizes.resize(run.per_round_sizes.size(), 0);
    }
    for (std::size_t r = 0; r < run.per_round_sizes.size(); ++r) {
      out.per_round_sizes[r] += run.per_round_sizes[r];
    }
  }
  out.rounds = static_cast<std::int64_t>(out.per_round_sizes.size());
  return out;
}

void Ledger::RecordRound(std::int64_t value_queries, std::int64_t grad_queries) {
  if (value_queries + grad_queries == 0) return;
  std::lock_guard<std::mutex> lock(mu_);
  ++data_.rounds;
  data_.total_value_queries += value_queries;
  data_.total_grad_queries += grad_queries;
  data_.per_round_sizes.push_back(value_queries + grad_queries);
}

void Ledger::Append(const EvalLedger& later) {
  std::lock_guard<std::mutex> lock(mu_);
  data_.AppendSequential(later);
}

EvalLedger Ledger::Snapshot() const {
  std::lock_guard<std::mutex> lock(mu_);
  return data_;
}

std::int64_t Ledger::rounds() const {
  std::lock_guard<std::mutex> lock(mu_);
  return data_.rounds;
}

}  // namespace drsub
