// Copyright 2026 The hyperlinear Authors
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


#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hyperlinear::cli {

enum ExitCode : int {
  kPass = 0,
  kCertificationFailed = 1,
  kConfigError = 2,
  kGammaOutOfRange = 3,
  kDefectBudgetExceeded = 4,
  kExhausted = 5,
};

/// Runs the command line `args` (without the program name). Summaries go to
/// `out`, diagnostics to `err`; artifacts go to --out when given, else to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperlinear::cli
