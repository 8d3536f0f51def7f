// Copyright 2026 The permvqe Authors
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

#include <string>
#include <vector>

namespace permvqe::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kIo = 3,
  kParse = 4,
  kDimension = 5,
  kLimit = 6,
};

/// Parses argv, runs one subcommand and returns the process exit code.
int run(int argc, char** argv);

/// "3", "1,2,5", "1-8" or a mix ("1-3,6").
std::vector<int> parse_int_list(const std::string& text);

}  // namespace permvqe::cli
