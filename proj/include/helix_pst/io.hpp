#pragma once

// Machine-readable outputs: CSV with a fixed header and %.12g numbers, JSON
// documents tagged "schema": 1, and gnuplot scripts that plot the CSVs.

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "helix_pst/attainability.hpp"
#include "helix_pst/scan.hpp"
#include "helix_pst/spectral.hpp"
#include "helix_pst/transfer.hpp"

namespace helix_pst::io {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline json node_json(const Node& n) { return json::array({n.site, n.channel}); }

inline void write_profile_csv(std::ostream& os, const std::string& time_column,
                              const std::vector<std::pair<double, double>>& rows) {
  os << time_column << ",p\n";
  for (const auto& [t, p] : rows) os << num(t) << ',' << num(p) << '\n';
}

inline void write_spectrum_csv(std::ostream& os, const SpectralDecomposition& d) {
  os << "group,eigenvalue,multiplicity\n";
  for (std::size_t k = 0; k < d.groups.size(); ++k) {
    os << k << ',' << num(d.groups[k].eigenvalue) << ',' << d.groups[k].multiplicity() << '\n';
  }
}

inline json spectrum_json(const SpectralDecomposition& d) {
  json groups = json::array();
  for (std::size_t k = 0; k < d.groups.size(); ++k) {
    groups.push_back({{"group", k}, {"eigenvalue", d.groups[k].eigenvalue}, {"multiplicity", d.groups[k].multiplicity()}});
  }
  return {{"schema", kSchemaVersion}, {"grouping_tol", d.grouping_tol}, {"groups", groups}};
}

inline json pmax_json(const TransferReport& r) {
  return {{"schema", kSchemaVersion}, {"input", node_json(r.input)}, {"output", node_json(r.output)},
          {"p_max", r.p_max},         {"signs", r.signs},               {"dark_groups", r.dark_groups}};
}

inline void write_dark_csv(std::ostream& os, const TransferReport& r) {
  os << "group,eigenvalue,overlap,sign\n";
  for (std::size_t k = 0; k < r.overlaps.size(); ++k) {
    os << k << ',' << num(r.eigenvalues[k]) << ',' << num(r.overlaps[k]) << ',' << r.signs[k] << '\n';
  }
}

inline json dark_json(const TransferReport& r) {
  json rows = json::array();
  for (std::size_t k = 0; k < r.overlaps.size(); ++k) {
    rows.push_back({{"group", k}, {"eigenvalue", r.eigenvalues[k]}, {"overlap", r.overlaps[k]}, {"sign", r.signs[k]}});
  }
  return {{"schema", kSchemaVersion}, {"input", node_json(r.input)}, {"output", node_json(r.output)},
          {"groups", rows},           {"dark_groups", r.dark_groups}};
}

inline json attain_json(const CheckReport& report) {
  json cs = json::array();
  for (const auto& e : report.entries) {
    cs.push_back({{"left_group", e.constraint.left_group},
                  {"right_group", e.constraint.right_group},
                  {"delta_lambda", e.constraint.delta_lambda},
                  {"offset", e.constraint.offset},
                  {"k", e.constraint.witness.value_or(0)},
                  {"residual", e.residual}});
  }
  return {{"schema", kSchemaVersion}, {"tau", report.t}, {"constraints", cs}, {"all_satisfied", report.all_satisfied}};
}

/// Missing tau_min is an empty field.
inline void write_sweep_csv(std::ostream& os, const std::string& param_column, const std::string& time_column,
                            const std::vector<SweepRow>& rows) {
  os << param_column << ',' << time_column << '\n';
  for (const auto& r : rows) {
    os << num(r.parameter) << ',';
    if (r.tau_min) os << num(*r.tau_min);
    os << '\n';
  }
}

inline json sweep_json(const std::string& param_column, const std::string& time_column,
                       const std::vector<SweepRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    json row = {{param_column, r.parameter}, {time_column, nullptr}};
    if (r.tau_min) row[time_column] = *r.tau_min;
    out.push_back(row);
  }
  return {{"schema", kSchemaVersion}, {"rows", out}};
}

inline json events_json(const std::vector<PstEvent>& events) {
  json out = json::array();
  for (const auto& e : events) out.push_back({{"t", e.t}, {"p", e.p}});
  return {{"schema", kSchemaVersion}, {"pst_events", out}};
}

struct PlotSeries {
  std::string csv_path;
  std::string title;
  std::string style = "lines";
};

/// gnuplot script drawing column 2 against column 1 of each CSV.
inline void write_plot_script(std::ostream& os, const std::string& xlabel, const std::string& ylabel,
                              const std::vector<PlotSeries>& series, const std::string& png_path = "") {
  os << "set datafile separator ','\n";
  os << "set key autotitle columnhead\n";
  if (!png_path.empty()) {
    os << "set terminal pngcairo size 900,600\n";
    os << "set output '" << png_path << "'\n";
  }
  os << "set xlabel '" << xlabel << "'\n";
  os << "set ylabel '" << ylabel << "'\n";
  os << "plot ";
  for (std::size_t k = 0; k < series.size(); ++k) {
    if (k) os << ", \\\n     ";
    os << "'" << series[k].csv_path << "' using 1:2 with " << series[k].style << " title '" << series[k].title << "'";
  }
  os << '\n';
}

}  // namespace helix_pst::io
