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

#ifndef DRSUB_TOOLS_CLI_H_
#define DRSUB_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace drsub {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

// Entry point of the `drsub` tool. `args` excludes the program name.
// Subcommands: run, gen, verify, trace. Returns 0 on success, 1 on a
// validation error (including unknown flags, which also print usage) and 2 on
// a runtime failure.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace drsub

#endif  // DRSUB_TOOLS_CLI_H_
