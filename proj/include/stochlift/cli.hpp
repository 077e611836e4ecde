// Copyright 2026 The stochlift Authors
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

// Command-line front end. All commands write one JSON report to `out` and a
// short summary to `err`. Exit codes: 0 pass, 1 domain failure, 2 usage or
// parse failure.

#ifndef STOCHLIFT_CLI_HPP
#define STOCHLIFT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace stochlift::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stochlift::cli

#endif  // STOCHLIFT_CLI_HPP
