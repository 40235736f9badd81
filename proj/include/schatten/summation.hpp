// Copyright 2026 The schatten authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>

namespace schatten {

/// Neumaier-compensated accumulator. The compensation term also catches the
/// case |value| > |sum|, which plain Kahan summation loses, so spectral
/// tails and partition functions keep full relative accuracy regardless of
/// summation order.
template <typename T = double>
struct CompensatedSum {
  T sum{0};
  T compensation{0};

  void add(T value) {
    const T t = sum + value;
    if (std::abs(sum) >= std::abs(value)) {
      compensation += (sum - t) + value;
    } else {
      compensation += (value - t) + sum;
    }
    sum = t;
  }

  CompensatedSum& operator+=(T value) {
    add(value);
    return *this;
  }

  T value() const { return sum + compensation; }
};

}  // namespace schatten
