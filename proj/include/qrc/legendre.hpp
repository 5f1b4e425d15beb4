// Copyright 2026 The qrc-ipc Authors
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

#include <cmath>
#include <concepts>
#include <span>
#include <sstream>
#include <string>

#include "qrc/errors.hpp"

namespace qrc {

inline constexpr int kMaxLegendreDegree = 64;

namespace detail {

template <std::floating_point T>
void check_legendre_args(int degree, T x) {
  if (degree < 0 || degree > kMaxLegendreDegree) {
    throw ValidationError("legendre: degree " + std::to_string(degree) + " out of range");
  }
  if (!(std::abs(x) <= T(1))) {
    std::ostringstream msg;
    msg << "legendre: x = " << x << " is outside [-1, 1]";
    throw ValidationError(msg.str());
  }
}

}  // namespace detail

/// Fills out[d] = P_d(x) for d = 0 .. out.size()-1 using
/// (n+1) P_{n+1} = (2n+1) x P_n − n P_{n−1}.
template <std::floating_point T>
void legendre_all(T x, std::span<T> out) {
  if (out.empty()) return;
  detail::check_legendre_args(static_cast<int>(out.size()) - 1, x);
  out[0] = T(1);
  if (out.size() == 1) return;
  out[1] = x;
  for (std::size_t n = 1; n + 1 < out.size(); ++n) {
    const T nn = static_cast<T>(n);
    out[n + 1] = ((T(2) * nn + T(1)) * x * out[n] - nn * out[n - 1]) / (nn + T(1));
  }
}

/// Unnormalized Legendre polynomial P_d(x) on [−1, 1].
template <std::floating_point T>
T legendre(int degree, T x) {
  detail::check_legendre_args(degree, x);
  T prev = T(1);
  if (degree == 0) return prev;
  T cur = x;
  for (int n = 1; n < degree; ++n) {
    const T nn = static_cast<T>(n);
    const T next = ((T(2) * nn + T(1)) * x * cur - nn * prev) / (nn + T(1));
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace qrc
