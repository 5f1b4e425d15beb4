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


#include "qrc/text.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "qrc/errors.hpp"

namespace qrc {

namespace {

[[noreturn]] void bad_number(std::string_view text, std::string_view what, const char* kind) {
  throw ValidationError(std::string(what) + ": '" + std::string(text) + "' is not " + kind);
}

template <typename T>
T parse_integral(std::string_view text, std::string_view what, const char* kind) {
  const std::string_view t = trim(text);
  T value{};
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc{} || end != t.data() + t.size()) bad_number(text, what, kind);
  return value;
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), end);
}

double parse_double(std::string_view text, std::string_view what) {
  const std::string_view t = trim(text);
  double value = 0.0;
  const char* first = t.data();
  if (!t.empty() && t.front() == '+') ++first;
  const auto [end, ec] = std::from_chars(first, t.data() + t.size(), value);
  if (t.empty() || ec != std::errc{} || end != t.data() + t.size()) {
    bad_number(text, what, "a number");
  }
  return value;
}

long long parse_int(std::string_view text, std::string_view what) {
  return parse_integral<long long>(text, what, "an integer");
}

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  return parse_integral<std::uint64_t>(text, what, "an unsigned 64-bit integer");
}

bool parse_bool(std::string_view text, std::string_view what) {
  const std::string_view t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  bad_number(text, what, "a boolean");
}

std::string_view trim(std::string_view text) noexcept {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto b = text.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = text.find_last_not_of(ws);
  return text.substr(b, e - b + 1);
}

}  // namespace qrc
