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

#include "drsub/csv.h"

#include <charconv>
#include <cmath>

namespace drsub {

std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> SplitCsvLine(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      return fields;
    }
    fields.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

void WriteTraceCsv(std::ostream& out, std::span<const IterationRecord> trace) {
  out << kTraceCsvVersionLine << '\n' << kTraceCsvHeader << '\n';
  for (const IterationRecord& r : trace) {
    out << r.phase << ',' << FormatDouble(r.v) << ',' << r.set_size << ','
        << FormatDouble(r.eta) << ',' << FormatDouble(r.eta1) << ','
        << FormatDouble(r.eta2) << ',' << StepKindName(r.kind) << ','
        << FormatDouble(r.z_l1) << ',' << FormatDouble(r.f_x) << ','
        << FormatDouble(r.f_z) << ',' << r.round << '\n';
  }
}

}  // namespace drsub
