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


#include <doctest.h>

#include <array>
#include <cmath>
#include <span>

#include "qrc/errors.hpp"
#include "qrc/legendre.hpp"
#include "qrc/random.hpp"

using namespace qrc;

TEST_CASE("low-order Legendre values") {
  for (double x : {-1.0, -0.3, 0.0, 0.42, 1.0}) {
    CHECK(legendre(0, x) == 1.0);
    CHECK(legendre(1, x) == x);
    CHECK(legendre(3, x) == doctest::Approx((5 * x * x * x - 3 * x) / 2));
  }
  CHECK(legendre(2, 0.5) == doctest::Approx(-0.125));
  CHECK(legendre(9, 1.0) == doctest::Approx(1.0));
  CHECK(legendre(9, -1.0) == doctest::Approx(-1.0));
}

TEST_CASE("table fill agrees with single evaluation") {
  std::array<double, 12> table{};
  for (double x : {-0.99, -0.5, 0.1, 0.77}) {
    legendre_all(x, std::span<double>(table));
    for (int d = 0; d < 12; ++d) CHECK(table[static_cast<std::size_t>(d)] == doctest::Approx(legendre(d, x)).epsilon(1e-14));
  }
}

TEST_CASE("Legendre arguments are validated") {
  CHECK_THROWS_AS(legendre(2, 1.0001), ValidationError);
  CHECK_THROWS_AS(legendre(-1, 0.0), ValidationError);
  CHECK_THROWS_AS(legendre(kMaxLegendreDegree + 1, 0.0), ValidationError);
  CHECK_THROWS_AS(legendre(1, std::nan("")), ValidationError);
}

TEST_CASE("Legendre polynomials average to zero under uniform input") {
  constexpr int kDraws = 1'000'000;
  Rng rng(2024);
  std::array<double, 10> sum{};
  std::array<double, 10> table{};
  for (int i = 0; i < kDraws; ++i) {
    legendre_all(rng.uniform(-1.0, 1.0), std::span<double>(table));
    for (std::size_t d = 0; d < table.size(); ++d) sum[d] += table[d];
  }
  for (int d = 1; d < 10; ++d) {
    // standard deviation of P_d is 1/sqrt(2d+1); allow four of them
    const double bound = 4.0 / std::sqrt(2.0 * d + 1) / std::sqrt(double(kDraws));
    CHECK(std::abs(sum[static_cast<std::size_t>(d)] / kDraws) < bound);
  }
}
