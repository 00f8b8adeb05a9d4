// Copyright 2026 The errtel Authors
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace errtel {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Parses `args` (without the program name), runs the command and writes its
/// records to `out` or to --output. Diagnostics go to `err`. Returns 0 on
/// success, 2 for bad flags or parameters (nothing is run), 1 when the run
/// itself fails.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace errtel
