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

#include "optonet/transition_matrix.hpp"

#include <stdexcept>

namespace optonet {

TransitionMatrix::TransitionMatrix(std::size_t n, std::vector<double> row_major)
    : n_(n), values_(std::move(row_major)) {
  if (n < 2) throw std::invalid_argument("transition matrix needs at least 2 states");
  if (values_.size() != n * n) throw std::invalid_argument("transition matrix must be n x n");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = values_[i * n + j];
      if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument("transition weights must lie in [0, 1]");
      }
    }
    values_[i * n + i] = 0.0;
  }
}

TransitionMatrix TransitionMatrix::cortical_column() {
  // Rows: presynaptic L2/3, L4, L5, L6. Columns: postsynaptic, same order.
  return TransitionMatrix(4, {
                                 0.0,   0.2,  0.27,  0.055,
                                 0.25,  0.0,  0.325, 0.095,
                                 0.175, 0.15, 0.0,   0.325,
                                 0.055, 0.2,  0.225, 0.0,
                             });
}

TransitionMatrix TransitionMatrix::uniform(std::size_t n, double value) {
  return TransitionMatrix(n, std::vector<double>(n * n, value));
}

double TransitionMatrix::at(std::size_t from, std::size_t to) const {
  if (from >= n_ || to >= n_) throw std::out_of_range("transition index out of range");
  return values_[from * n_ + to];
}

TransitionMatrix TransitionMatrix::scaled(double factor) const {
  std::vector<double> v = values_;
  for (auto& x : v) x *= factor;
  return TransitionMatrix(n_, std::move(v));
}

}  // namespace optonet
