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

// JSON file formats shared by the CLI commands.
//
//  real matrix     {"n": N, "rows": [[x, ...], ...]}  or the bare rows array
//  complex matrix  as above with entries [re, im] (plain reals allowed)
//  Kraus map       {"ops": [complex matrix, ...]}
//  generator       {"h": complex matrix, "jumps": [complex matrix, ...]}

#ifndef STOCHLIFT_CLI_IO_HPP
#define STOCHLIFT_CLI_IO_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"
#include "stochlift/dynamics.hpp"
#include "stochlift/lifts.hpp"

namespace stochlift::cli {

using json = nlohmann::json;

/// Malformed input or bad invocation; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadedFile {
  std::string path;
  std::string digest;
  json doc;
};

std::string fnv1a64_hex(std::string_view bytes);
LoadedFile load_json(const std::string& path);

bool has_complex_entries(const json& matrix);
RMat parse_real_matrix(const json& matrix);
CMat parse_complex_matrix(const json& matrix);
RVec parse_real_vector(const json& vector);

KrausMap parse_kraus(const json& doc);
/// Kraus file or complex superoperator file.
SuperOperator parse_map(const json& doc);
GkslGenerator parse_generator(const json& doc);

json to_json(const RMat& m);
json to_json(const CMat& m);
json to_json(const RVec& v);
json to_json(const KrausMap& map);

}  // namespace stochlift::cli

#endif  // STOCHLIFT_CLI_IO_HPP
