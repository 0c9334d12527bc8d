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

#include <algorithm>
#include <string>
#include <vector>

#include "qdarwin/core.hpp"

namespace qdarwin {

/// The system is always qubit 1; environment qubits are 2..n.
inline constexpr int kSystemQubit = 1;

/// Nonempty sorted set of environment qubit indices (1-based, all >= 2).
class Fragment {
 public:
  explicit Fragment(std::vector<int> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    if (members_.empty()) throw ValidationError("fragment: must contain at least one environment qubit");
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
      throw ValidationError("fragment: duplicate qubit index");
    if (members_.front() <= kSystemQubit)
      throw ValidationError("fragment: index " + std::to_string(members_.front()) +
                            " is not an environment qubit (environment indices start at 2)");
  }

  const std::vector<int>& members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool contains(int q) const { return std::binary_search(members_.begin(), members_.end(), q); }

  /// Throws if any member lies beyond an `n_qubits` register.
  void check_range(int n_qubits) const {
    if (members_.back() > n_qubits)
      throw ValidationError("fragment: index " + std::to_string(members_.back()) + " exceeds register of " +
                            std::to_string(n_qubits) + " qubits");
  }

  /// "2-3-5"
  std::string label() const {
    std::string s;
    for (std::size_t i = 0; i < members_.size(); ++i) s += (i ? "-" : "") + std::to_string(members_[i]);
    return s;
  }

  friend bool operator==(const Fragment&, const Fragment&) = default;

 private:
  std::vector<int> members_;
};

}  // namespace qdarwin
