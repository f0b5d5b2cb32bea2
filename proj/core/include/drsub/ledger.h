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

// Adaptivity accounting. A "round" is one batch of oracle queries that may be
// issued in parallel; the adaptivity of a run is its round count.

#ifndef DRSUB_LEDGER_H_
#define DRSUB_LEDGER_H_

#include <cstdint>
#include <mutex>
#include <span>
#include <vector>

namespace drsub {

struct EvalLedger {
  std::int64_t rounds = 0;
  std::int64_t total_value_queries = 0;
  std::int64_t total_grad_queries = 0;
  std::vector<std::int64_t> per_round_sizes;

  std::int64_t total_queries() const {
    return total_value_queries + total_grad_queries;
  }

  // rounds == |per_round_sizes| and the sizes add up to the query totals.
  bool Consistent() const;

  // Runs `later` after everything recorded here.
  void AppendSequential(const EvalLedger& later);

  // Ledger of independent runs executed side by side: round r of the result
  // holds round r of every input, so rounds is the maximum over inputs and
  // query totals are sums.
  static EvalLedger MergeParallel(std::span<const EvalLedger> runs);

  friend bool operator==(const EvalLedger&, const EvalLedger&) = default;
};

// Thread-safe owner of an EvalLedger.
class Ledger {
 public:
  // One round carrying the given query counts. Empty rounds are ignored.
  void RecordRound(std::int64_t value_queries, std::int64_t grad_queries);
  void Append(const EvalLedger& later);
  EvalLedger Snapshot() const;
  std::int64_t rounds() const;

 private:
  mutable std::mutex mu_;
  EvalLedger data_;
};

}  // namespace drsub

#endif  // DRSUB_LEDGER_H_
