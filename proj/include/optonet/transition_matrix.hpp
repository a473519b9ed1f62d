// Copyright 2026 The Optonet Authors
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

#include <cstddef>
#include <vector>

namespace optonet {

// Square matrix of connection weights between states (cortical layers).
// Entry (i, j) is the weight of a connection from presynaptic state i to
// postsynaptic state j. Rows need not sum to one; the diagonal is ignored.
class TransitionMatrix {
 public:
  TransitionMatrix() = default;
  TransitionMatrix(std::size_t n, std::vector<double> row_major);

  // Inter-layer connection weights for L2/3, L4, L5, L6.
  static TransitionMatrix cortical_column();
  static TransitionMatrix uniform(std::size_t n, double value);

  std::size_t size() const noexcept { return n_; }
  double at(std::size_t from, std::size_t to) const;
  const std::vector<double>& values() const noexcept { return values_; }

  TransitionMatrix scaled(double factor) const;

  friend bool operator==(const TransitionMatrix&, const TransitionMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

}  // namespace optonet
