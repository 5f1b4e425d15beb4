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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qrc/cli.hpp"
#include "qrc/config.hpp"
#include "qrc/errors.hpp"
#include "qrc/output.hpp"
#include "qrc/text.hpp"

using namespace qrc;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qrc-unit-" + name);
  fs::remove_all(p);
  return p;
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream f(p);
  return nlohmann::json::parse(f);
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string config_error_key(const std::string& text) {
  try {
    resolve_settings(parse_config_text(text, "t"), {});
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}

}  // namespace

TEST_CASE("shortest round-trip formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(10.0) == "10");
  CHECK(format_double(-2.5e-7) == "-2.5e-07");
  for (double v : {1.0 / 3, 6.02214076e23, 1e-300, 0.9999999999999999}) {
    CHECK(parse_double(format_double(v), "v") == v);
  }
  CHECK_THROWS_AS(parse_double("1.5x", "v"), ValidationError);
  CHECK_THROWS_AS(parse_int("3.0", "n"), ValidationError);
  CHECK(parse_bool(" yes ", "b"));
}

TEST_CASE("empty config gives benchmark defaults") {
  const RunSettings s = resolve_settings({}, {});
  CHECK(s.reservoir.n_qubits == 5);
  CHECK(s.reservoir.field_h == 1.0);
  CHECK(s.reservoir.coupling_scale == 1.0);
  CHECK(s.reservoir.dt == 10.0);
  CHECK(s.reservoir.virtual_nodes == 1);
  CHECK(s.reservoir.observables.to_string() == "z");
  CHECK(s.lengths.length == 100'000);
  CHECK(s.lengths.washout == 10'000);
  CHECK(s.ipc.d_max == 9);
  CHECK(s.realizations == 10);
}

TEST_CASE("config text with sections and comments") {
  const auto settings = parse_config_text(
      "# header\n[reservoir]\ndt = 4   # inline\nobservables = xy+z\n\n[ipc.window]\ndegree2_max_delay=12\n"
      "run.length = 500\n",
      "t");
  REQUIRE(settings.size() == 4);
  CHECK(settings[0].key == "reservoir.dt");
  CHECK(settings[0].origin == "t:3");
  CHECK(settings[2].key == "ipc.window.degree2_max_delay");
  CHECK(settings[3].key == "ipc.window.run.length");

  const RunSettings s = resolve_settings(
      parse_config_text("[reservoir]\ndt = 4\nobservables = xy+z\n[ipc.window]\ndegree2_max_delay=12\n", "t"), {});
  CHECK(s.reservoir.dt == 4.0);
  CHECK(s.reservoir.n_vars() == 25);
  CHECK(s.ipc.windows.degree2_max_delay == 12);
}

TEST_CASE("config errors name the key") {
  CHECK(config_error_key("reservoir.dt = -1") == "reservoir.dt");
  CHECK(config_error_key("[reservoir]\nspin = 3") == "reservoir.spin");
  CHECK(config_error_key("run.length = ten") == "run.length");
  CHECK(config_error_key("ipc.d_max = 0") == "ipc.d_max");
  CHECK(config_error_key("reservoir.observables = q") == "reservoir.observables");
  CHECK(config_error_key("reservoir.n_qubits = 13") == "reservoir.n_qubits");
  CHECK(config_error_key("sweep.axis = dt\nsweep.values = 1, -2") == "sweep.values");
  CHECK(config_error_key("[reservoir\n") == "t:1");
  CHECK(config_error_key("just words") == "t:1");
  try {
    resolve_settings(parse_config_text("reservoir.dt = -1", "t"), {});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("reservoir.dt") != std::string::npos);
  }
}

TEST_CASE("precedence: defaults, preset, file, flags") {
  const auto file = parse_config_text("run.preset = paper\nrun.length = 5000\nreservoir.dt = 2\n", "f");
  const std::vector<Setting> flags = {{"run.preset", "desk", "--preset"}, {"reservoir.dt", "3", "--dt"}};
  const RunSettings s = resolve_settings(file, flags);
  CHECK(s.preset == "desk");
  CHECK(s.lengths.washout == 1'000);  // from the preset
  CHECK(s.lengths.length == 5'000);   // file beats preset
  CHECK(s.reservoir.dt == 3.0);       // flag beats file
}

TEST_CASE("manifest hash follows the resolved config") {
  const RunManifest a = make_manifest("ipc", resolve_settings({}, {}), "out");
  const RunManifest b = make_manifest("ipc", resolve_settings({}, {}), "elsewhere");
  const RunManifest c = make_manifest("ipc", resolve_settings({}, {{"run.seed", "2", "--seed"}}), "out");
  CHECK(a.config_hash == b.config_hash);
  CHECK(a.config_hash != c.config_hash);
  const nlohmann::json j = manifest_json(a);
  CHECK(j["schema"] == kManifestSchema);
  CHECK(j["config_hash"].get<std::string>().size() == 16);
  CHECK(j["config"]["reservoir"]["n_qubits"] == 5);
  for (std::string_view key : config_keys()) CHECK(key.find('.') != std::string_view::npos);
}

TEST_CASE("unknown subcommand prints usage and fails") {
  std::ostringstream out, err;
  CHECK(run_cli({"bogus"}, out, err) == kExitUsage);
  CHECK(err.str().find("Usage") != std::string::npos);
  std::ostringstream out2, err2;
  CHECK(run_cli({}, out2, err2) == kExitUsage);
}

TEST_CASE("bad flag values are rejected before running") {
  std::ostringstream out, err;
  CHECK(run_cli({"ipc", "--dt", "-1", "--out", scratch("bad").string()}, out, err) == kExitUsage);
  CHECK(err.str().find("reservoir.dt") != std::string::npos);
}

TEST_CASE("oracle subcommand writes a complete run") {
  const fs::path dir = scratch("oracle");
  std::ostringstream out, err;
  const int rc = run_cli({"oracle", "--length", "20000", "--washout", "1000", "--out", dir.string()}, out, err);
  CHECK(rc == kExitOk);
  CHECK(out.str().find("PASS") != std::string::npos);
  const nlohmann::json m = read_json(dir / "manifest.json");
  CHECK(m["complete"] == true);
  CHECK(m["config"]["reservoir"]["n_qubits"] == 1);
  const nlohmann::json r = read_json(dir / "report.json");
  CHECK(r["schema"] == kReportSchema);
  CHECK(std::abs(r["total"].get<double>() - 1.0) < 1e-3);
  CHECK(slurp(dir / "records.csv").starts_with("degree,n_terms,delays,degrees,capacity,above_threshold\n"));
}

TEST_CASE("ipc outputs are byte-stable") {
  const fs::path a = scratch("ipc-a"), b = scratch("ipc-b");
  const std::vector<std::string> common = {"--n-qubits", "3", "--length", "3000", "--washout", "300", "--dmax", "3"};
  auto args = [&](const fs::path& dir) {
    std::vector<std::string> v = {"ipc", "--design-csv", "--out", dir.string()};
    v.insert(v.end(), common.begin(), common.end());
    return v;
  };
  std::ostringstream out, err;
  REQUIRE(run_cli(args(a), out, err) == kExitOk);
  REQUIRE(run_cli(args(b), out, err) == kExitOk);
  CHECK(slurp(a / "records.csv") == slurp(b / "records.csv"));
  CHECK(slurp(a / "design.csv") == slurp(b / "design.csv"));
  CHECK(slurp(a / "design.csv").starts_with("z_1_v1,z_2_v1,z_3_v1,bias\n"));
  const nlohmann::json r = read_json(a / "report.json");
  CHECK(r["n_vars"] == 3);
  CHECK(r["within_bound"] == true);
}

TEST_CASE("sweep, converge and memory-curve subcommands") {
  const fs::path dir = scratch("sweep");
  std::ostringstream out, err;
  CHECK(run_cli({"sweep", "--out", dir.string(), "--n-qubits", "2", "--axis", "dt", "--values", "1,4",
                 "--realizations", "2", "--length", "1500", "--washout", "200", "--dmax", "2"},
                out, err) == kExitOk);
  const nlohmann::json s = read_json(dir / "sweep.json");
  CHECK(s["schema"] == kSweepSchema);
  CHECK(s["points"].size() == 2);
  CHECK(s["points"][1]["value"] == "4");
  const std::string csv = slurp(dir / "sweep.csv");
  CHECK(csv.starts_with("dt,degree,mean,std,"));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 2);

  const fs::path conv = scratch("conv");
  CHECK(run_cli({"converge", "--out", conv.string(), "--config", "/nonexistent.cfg"}, out, err) == kExitUsage);
  {
    std::ofstream cfg(conv.string() + ".cfg");
    cfg << "[converge]\ndt_values = 1, 10\ninputs = 50\n";
  }
  CHECK(run_cli({"converge", "--out", conv.string(), "--config", conv.string() + ".cfg"}, out, err) == kExitOk);
  CHECK(read_json(conv / "convergence.json")["curves"].size() == 2);
  CHECK(slurp(conv / "convergence.csv").starts_with("dt,inputs,time,distance\n"));

  const fs::path mem = scratch("mem");
  CHECK(run_cli({"memory-curve", "--out", mem.string(), "--n-qubits", "2", "--length", "2000", "--washout",
                 "200", "--dmax", "2"},
                out, err) == kExitOk);
  CHECK(read_json(mem / "memory_curve.json")["points"].size() >= 151);

  const fs::path none = scratch("noaxis");
  CHECK(run_cli({"sweep", "--out", none.string(), "--length", "100", "--washout", "20"}, out, err) == kExitUsage);
  CHECK(read_json(none / "manifest.json")["complete"] == false);
}
