// Copyright 2026 The epinet Authors
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

#ifndef EPINET_TOOLS_COMMANDS_H_
#define EPINET_TOOLS_COMMANDS_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace epinet::cli {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;      // schema, data or argument errors
inline constexpr int kExitInvariant = 2;  // parameter or structural invariants

// Entry point behind main(); args excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace epinet::cli

#endif  // EPINET_TOOLS_COMMANDS_H_
