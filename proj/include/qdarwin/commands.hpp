// Copyright 2026 The qdarwin Authors
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

namespace qdarwin::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

inline constexpr const char* kVersion = "0.1.0";

/// Entry point of the `qdarwin` tool. Returns the process exit code:
/// 0 success, 2 usage or validation error, 3 numeric failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "5,6" or "2-3-4-6,5" into fragments (comma between fragments,
/// dash between members).
std::vector<std::vector<int>> parse_fragment_list(const std::string& text);

/// Parses "56234" (single-digit qubits) or "5,6,2,3,4".
std::vector<int> parse_order(const std::string& text);

}  // namespace qdarwin::cli
