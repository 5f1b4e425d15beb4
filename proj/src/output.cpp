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


#include "qrc/output.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "qrc/errors.hpp"
#include "qrc/text.hpp"

namespace qrc {

using nlohmann::json;

namespace {

json per_degree_json(const std::map<int, double>& totals) {
  json out = json::object();
  for (const auto& [d, v] : totals) out[std::to_string(d)] = v;
  return out;
}

json mean_std_json(const MeanStd& m) { return {{"mean", m.mean}, {"std", m.stddev}}; }

json record_json(const CapacityRecord& r) {
  return {{"spec", r.spec.to_string()},
          {"degree", r.spec.total_degree()},
          {"capacity", r.capacity},
          {"above_threshold", r.above_threshold}};
}

json report_body(const CapacityReport& report) {
  json records = json::array();
  json degree1 = json::array();
  for (const CapacityRecord& r : report.records) {
    if (r.above_threshold) records.push_back(record_json(r));
  }
  for (const MemoryPoint& p : linear_memory_curve(report)) {
    degree1.push_back({{"delay", p.delay}, {"capacity", p.capacity}, {"raw_capacity", p.raw_capacity}});
  }
  return {
      {"config", to_json(report.metadata.config)},
      {"input_seed", report.metadata.input_seed},
      {"washout", report.metadata.washout},
      {"length", report.metadata.length},
      {"realization", report.metadata.realization},
      {"threshold", report.threshold},
      {"per_degree_totals", per_degree_json(report.per_degree_totals)},
      {"total", report.total},
      {"n_vars", report.n_vars},
      {"normalized_total", report.normalized_total},
      {"within_bound", report.within_bound()},
      {"degree1_max_delay", report.degree1_max_delay},
      {"truncated_degrees", report.truncated_degrees},
      {"evaluated_targets", report.records.size()},
      {"records", std::move(records)},
      {"degree1_curve", std::move(degree1)},
  };
}

json provenance_json(const Provenance& p) {
  return {{"version", p.version},
          {"config_hash", p.config_hash},
          {"started", p.started},
          {"finished", p.finished}};
}

std::string csv_bool(bool b) { return b ? "true" : "false"; }

}  // namespace

json to_json(const ReservoirConfig& c) {
  return {{"n_qubits", c.n_qubits},
          {"field_h", c.field_h},
          {"coupling_scale", c.coupling_scale},
          {"dt", c.dt},
          {"virtual_nodes", c.virtual_nodes},
          {"coupling_seed", c.coupling_seed},
          {"observables", c.observables.to_string()},
          {"n_vars", c.n_vars()}};
}

json to_json(const IpcOptions& o) {
  const WindowPolicy& w = o.windows;
  return {{"d_max", o.d_max},
          {"surrogates", o.surrogates},
          {"threshold_factor", o.threshold_factor},
          {"samples_per_degree", o.samples_per_degree},
          {"anchored_surrogates", o.anchored_surrogates},
          {"windows",
           {{"delay_origin", w.delay_origin},
            {"degree1_max_delay", w.degree1_max_delay},
            {"degree1_block", w.degree1_block},
            {"degree1_extend", w.degree1_extend},
            {"degree2_max_delay", w.degree2_max_delay},
            {"degree3_4_max_delay", w.degree3_4_max_delay},
            {"high_degree_max_delay", w.high_degree_max_delay},
            {"high_degree_max_terms", w.high_degree_max_terms}}}};
}

json to_json(const RunLengths& l) { return {{"washout", l.washout}, {"length", l.length}}; }

json to_json(const RealizationSummary& s) {
  json per_degree = json::object();
  for (const auto& [d, m] : s.per_degree) per_degree[std::to_string(d)] = mean_std_json(m);
  return {{"count", s.count},
          {"n_vars", s.n_vars},
          {"per_degree", std::move(per_degree)},
          {"total", mean_std_json(s.total)},
          {"normalized_total", mean_std_json(s.normalized_total)}};
}

json report_json(const CapacityReport& report) {
  json doc = report_body(report);
  doc["schema"] = kReportSchema;
  return doc;
}

json sweep_json(const FigureDataset& data, const Provenance& provenance) {
  json points = json::array();
  for (const SweepPoint& p : data.points) {
    json point = {{"value", p.value}, {"ok", p.ok()}};
    if (!p.ok()) {
      point["error"] = p.error;
    } else {
      point["config"] = to_json(p.config);
      if (p.summary) point["summary"] = to_json(*p.summary);
      json runs = json::array();
      for (const CapacityReport& r : p.reports) {
        runs.push_back({{"realization", r.metadata.realization},
                        {"config", to_json(r.metadata.config)},
                        {"input_seed", r.metadata.input_seed},
                        {"threshold", r.threshold},
                        {"per_degree_totals", per_degree_json(r.per_degree_totals)},
                        {"total", r.total},
                        {"normalized_total", r.normalized_total},
                        {"within_bound", r.within_bound()},
                        {"truncated_degrees", r.truncated_degrees}});
      }
      point["realizations"] = std::move(runs);
    }
    points.push_back(std::move(point));
  }
  return {{"schema", kSweepSchema},
          {"axis", std::string(axis_name(data.axis))},
          {"master_seed", data.master_seed},
          {"realizations", data.realizations},
          {"lengths", to_json(data.lengths)},
          {"ipc", to_json(data.ipc)},
          {"complete", data.complete()},
          {"provenance", provenance_json(provenance)},
          {"points", std::move(points)}};
}

json convergence_json(const ConvergenceDataset& data, const Provenance& provenance) {
  json curves = json::array();
  for (const ConvergenceCurve& c : data.curves) {
    json inputs = json::array();
    json distance = json::array();
    for (const ConvergencePoint& p : c.points) {
      inputs.push_back(p.inputs);
      distance.push_back(p.distance);
    }
    json to = json::object();
    for (double eps : {1e-2, 1e-4, 1e-6}) {
      const auto n = c.inputs_to(eps);
      to[format_double(eps)] = n ? json(*n) : json(nullptr);
    }
    curves.push_back({{"dt", c.dt},
                      {"inputs", std::move(inputs)},
                      {"distance", std::move(distance)},
                      {"inputs_to", std::move(to)}});
  }
  return {{"schema", kConvergenceSchema},
          {"config", to_json(data.base)},
          {"master_seed", data.master_seed},
          {"n_inputs", data.n_inputs},
          {"initial_states", {"all_zeros", "all_ones"}},
          {"provenance", provenance_json(provenance)},
          {"curves", std::move(curves)}};
}

json memory_curve_json(const std::vector<MemoryPoint>& curve, const CapacityReport& report) {
  json points = json::array();
  double sum = 0.0;
  for (const MemoryPoint& p : curve) {
    points.push_back({{"delay", p.delay}, {"capacity", p.capacity}, {"raw_capacity", p.raw_capacity}});
    sum += p.capacity;
  }
  return {{"schema", kMemorySchema},
          {"config", to_json(report.metadata.config)},
          {"input_seed", report.metadata.input_seed},
          {"threshold", report.threshold},
          {"degree1_total", sum},
          {"points", std::move(points)}};
}

void write_records_csv(std::ostream& out, const CapacityReport& report) {
  out << "degree,n_terms,delays,degrees,capacity,above_threshold\n";
  for (const CapacityRecord& r : report.records) {
    out << r.spec.total_degree() << ',' << r.spec.size() << ',' << r.spec.delay_list() << ','
        << r.spec.degree_list() << ',' << format_double(r.capacity) << ','
        << csv_bool(r.above_threshold) << '\n';
  }
}

void write_design_csv(std::ostream& out, const DesignMatrix& design) {
  for (std::size_t j = 0; j < design.labels.size(); ++j) out << (j ? "," : "") << design.labels[j];
  out << '\n';
  for (Eigen::Index i = 0; i < design.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < design.values.cols(); ++j) {
      out << (j ? "," : "") << format_double(design.values(i, j));
    }
    out << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const FigureDataset& data) {
  out << axis_name(data.axis)
      << ",degree,mean,std,total_mean,total_std,normalized_mean,normalized_std,n_vars,realizations\n";
  for (const SweepPoint& p : data.points) {
    if (!p.ok() || !p.summary) continue;
    const RealizationSummary& s = *p.summary;
    for (const auto& [d, m] : s.per_degree) {
      out << p.value << ',' << d << ',' << format_double(m.mean) << ',' << format_double(m.stddev)
          << ',' << format_double(s.total.mean) << ',' << format_double(s.total.stddev) << ','
          << format_double(s.normalized_total.mean) << ','
          << format_double(s.normalized_total.stddev) << ',' << s.n_vars << ',' << s.count << '\n';
    }
  }
}

void write_convergence_csv(std::ostream& out, const ConvergenceDataset& data) {
  out << "dt,inputs,time,distance\n";
  for (const ConvergenceCurve& c : data.curves) {
    for (const ConvergencePoint& p : c.points) {
      out << format_double(c.dt) << ',' << p.inputs << ',' << format_double(p.time) << ','
          << format_double(p.distance) << '\n';
    }
  }
}

void write_memory_csv(std::ostream& out, const std::vector<MemoryPoint>& curve) {
  out << "delay,capacity,raw_capacity\n";
  for (const MemoryPoint& p : curve) {
    out << p.delay << ',' << format_double(p.capacity) << ',' << format_double(p.raw_capacity) << '\n';
  }
}

std::string hex64(std::uint64_t value) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, value >>= 4) s[static_cast<std::size_t>(i)] = digits[value & 0xf];
  return s;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + tmp.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw IoError("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

void write_json(const std::filesystem::path& path, const json& doc) {
  write_file(path, doc.dump(2) + "\n");
}

}  // namespace qrc
