//
// Copyright 2026 The REDA Authors
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
//

#ifndef REDA_CLI_H_
#define REDA_CLI_H_

#include <ostream>
#include <span>
#include <string>

namespace reda::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

// Runs one invocation. args excludes the program name, e.g.
// {"stats", "--in", "train.tsv"}. Subcommands: augment, stats, split, train,
// eval, sweep, ablate, toygen. Usage errors return 2 and data errors return 1,
// each with a one-line diagnostic on err.
int Run(std::span<const std::string> args, std::ostream& out,
        std::ostream& err);

}  // namespace reda::cli

#endif  // REDA_CLI_H_
