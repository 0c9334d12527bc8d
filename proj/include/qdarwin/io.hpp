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

// JSON and CSV interchange formats. Every reader validates the type
// invariants of what it returns and raises ValidationError naming the
// offending field.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdarwin/darwinism.hpp"
#include "qdarwin/information.hpp"
#include "qdarwin/tomography.hpp"

namespace qdarwin::io {

using nlohmann::json;

/// {"n_qubits", "kind": "pure"|"density", "bit_order", "data": [[re, im], ...]}
json state_to_json(const AnyState& state);
AnyState state_from_json(const json& j);

/// {"alpha": [re, im], "beta": [re, im], "thetas_deg": [...],
///  "noise": {"kind", "p" | "target_purity"}, "seed"}
json config_to_json(const DarwinismConfig& cfg);
DarwinismConfig config_from_json(const json& j);

json report_to_json(const CorrelationReport& report);
std::string report_to_csv(const CorrelationReport& report);
std::string prefix_curve_to_csv(const std::vector<FragmentCorrelation>& rows);

/// {"n_qubits", "shots_per_setting", "seed", "counts": {"XXZ": [...], ...}}
json dataset_to_json(const TomographyDataset& dataset);
TomographyDataset dataset_from_json(const json& j);

json read_json_file(const std::filesystem::path& path);
/// Writes `j` with two-space indentation and a trailing newline.
void write_json_file(const std::filesystem::path& path, const json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Fixed 12-decimal rendering used by every CSV writer.
std::string format_number(double v);

/// 64-bit FNV-1a over the compact dump of `j`, as 16 hex digits.
std::string content_hash(const json& j);

}  // namespace qdarwin::io
