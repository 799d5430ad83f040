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

#ifndef WHODUNIT_TOOLS_COMMANDS_H_
#define WHODUNIT_TOOLS_COMMANDS_H_

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "settings.h"

namespace whodunit::cli {

// What a subcommand reads and where its manifest goes.
struct CommandPlan {
  std::vector<std::string> input_keys;
  std::string manifest_key;  // the settings key naming the output directory
};

// Throws ConfigError for unknown commands.
CommandPlan PlanFor(const std::string& command);

// Each command writes its outputs and reports progress on `log`.
void RunParse(const Settings& s, std::ostream& log);
void RunAlign(const Settings& s, std::ostream& log);
void RunFeaturize(const Settings& s, std::ostream& log);
void RunSynth(const Settings& s, std::ostream& log);
void RunTrain(const Settings& s, std::ostream& log);
void RunEval(const Settings& s, std::ostream& log);
void RunReport(const Settings& s, std::ostream& log);

}  // namespace whodunit::cli

#endif  // WHODUNIT_TOOLS_COMMANDS_H_
