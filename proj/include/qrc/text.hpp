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


// Locale-independent number formatting and strict parsing.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace qrc {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

/// Whole-string parses; throw ValidationError naming `what` on failure.
double parse_double(std::string_view text, std::string_view what);
long long parse_int(std::string_view text, std::string_view what);
std::uint64_t parse_u64(std::string_view text, std::string_view what);
bool parse_bool(std::string_view text, std::string_view what);

/// Leading and trailing ASCII whitespace removed.
std::string_view trim(std::string_view text) noexcept;

}  // namespace qrc
