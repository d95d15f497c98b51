// Copyright 2026 The qpkkt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QPKKT_CLI_COMMANDS_HPP_
#define QPKKT_CLI_COMMANDS_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace qpkkt::cli {

// Exit-code contract shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;      // verdict false / no convergence
inline constexpr int kExitInputError = 2;  // malformed input, unmet precondition

// Runs one invocation. `args` excludes the program name. Reports go to `out`,
// diagnostics to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace qpkkt::cli

#endif  // QPKKT_CLI_COMMANDS_HPP_
