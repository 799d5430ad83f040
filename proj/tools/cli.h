// Copyright 2026 The Whodunit Authors.
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

#ifndef WHODUNIT_TOOLS_CLI_H_
#define WHODUNIT_TOOLS_CLI_H_

#include <ostream>

#include "settings.h"

namespace whodunit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Every key at its built-in default.
Settings DefaultSettings();

// Entry point of the `whodunit` tool. Progress goes to `out`, diagnostics to
// `err`. Returns 0 on success, 1 on runtime failure, 2 on usage or
// configuration errors.
int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace whodunit::cli

#endif  // WHODUNIT_TOOLS_CLI_H_
