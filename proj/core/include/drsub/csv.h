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

// CSV output shared by the iteration trace and the experiment harness.

#ifndef DRSUB_CSV_H_
#define DRSUB_CSV_H_

#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "drsub/parallel_solver.h"

namespace drsub {

inline constexpr std::string_view kTraceCsvVersionLine = "# drsub-trace v1";
inline constexpr std::string_view kTraceCsvHeader =
    "phase,v,setsize,eta,eta1,eta2,kind,z_l1,f_x,f_z,round";

// Shortest decimal string that parses back to the same double; "nan", "inf"
// and "-inf" for non-finite values.
std::string FormatDouble(double v);

// Splits one CSV line on commas. Fields never contain quotes or commas in the
// files this library writes.
std::vector<std::string> SplitCsvLine(std::string_view line);

// Version comment line, header, one row per iteration.
void WriteTraceCsv(std::ostream& out, std::span<const IterationRecord> trace);

}  // namespace drsub

#endif  // DRSUB_CSV_H_
