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


// Command-line front end of the qrc-ipc tool.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qrc/config.hpp"

namespace qrc {

inline constexpr const char* kOutEnv = "QRC_IPC_OUT";
inline constexpr const char* kDefaultOut = "qrc-out";

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // run failed or oracle out of tolerance
inline constexpr int kExitUsage = 2;    // bad arguments or configuration

struct DispatchOptions {
  bool design_csv = false;
  double oracle_tolerance = 1e-3;
};

/// Runs one subcommand, writing outputs and manifest.json under out_dir.
int dispatch(const RunManifest& manifest, const DispatchOptions& options, std::ostream& out,
             std::ostream& err);

/// Full argument handling; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qrc
