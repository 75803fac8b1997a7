#pragma once

// Command-line front end. run_command never exits the process: it returns 0 on
// success, 2 on usage errors and 1 on numerical failures.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "helix_pst/attainability.hpp"
#include "helix_pst/core.hpp"
#include "helix_pst/hamiltonian.hpp"
#include "helix_pst/io.hpp"
#include "helix_pst/scan.hpp"
#include "helix_pst/spectral.hpp"
#include "helix_pst/transfer.hpp"

namespace helix_pst::cli {

struct Options {
  int n = 0;
  std::string site_bc = "closed";
  std::string channel_bc = "closed";
  std::optional<double> gamma, J, L;
  std::string in, out;
  std::optional<double> horizon, step;
  double epsilon = 1e-3;
  std::string format = "csv";
  std::string output;
  std::string plot_script;
  std::string gamma_grid, J_grid;
  std::optional<double> tau;
  double tol = kFigureAttainTol;
  double dark_tol = kDefaultDarkTol;
  std::string dump_matrix;
  std::string figure;
};

inline Node parse_node(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ValidationError("node must be 'n,alpha', got '" + text + "'");
  try {
    std::size_t used_a = 0, used_b = 0;
    const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
    Node node{std::stoi(a, &used_a), std::stoi(b, &used_b)};
    if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument(text);
    return node;
  } catch (const std::logic_error&) {
    throw ValidationError("node must be 'n,alpha', got '" + text + "'");
  }
}

/// "start:stop:step", inclusive of stop.
inline std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw ValidationError("grid must be 'start:stop:step', got '" + text + "'");
    }
  }
  if (parts.size() != 3) throw ValidationError("grid must be 'start:stop:step', got '" + text + "'");
  return arithmetic_grid(parts[0], parts[1], parts[2]);
}

inline BoundaryConditions boundaries(const Options& o) {
  return {parse_boundary(o.site_bc), parse_boundary(o.channel_bc)};
}

inline NetworkSpec network(const Options& o) {
  const bool scaled = o.gamma.has_value();
  const bool raw = o.J.has_value() || o.L.has_value();
  if (scaled == raw || (raw && !(o.J && o.L))) {
    throw ValidationError("give exactly one of --gamma or (--J and --L)");
  }
  const auto spec = scaled ? scaled_spec(o.n, boundaries(o), *o.gamma) : raw_spec(o.n, boundaries(o), *o.J, *o.L);
  return validate_spec(spec);
}

inline ScanConfig scan_config(const Options& o, const NetworkSpec& spec) {
  ScanConfig cfg;
  if (o.horizon) cfg.horizon = *o.horizon;
  cfg.epsilon = o.epsilon;
  if (o.step) {
    cfg.coarse_step = *o.step;
  } else if (spec.units == Units::Raw) {
    cfg.coarse_step = raw_step(cfg.coarse_step, spec.couplings.J);
  }
  cfg.validate();
  return cfg;
}

inline const char* time_label(Units u) { return u == Units::Scaled ? "tau" : "t"; }

/// Writes to --output when given, else to the fallback stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw ValidationError("cannot open output file '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& os() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

inline void require_format(const Options& o, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (o.format == f) return;
  }
  throw ValidationError("--format " + o.format + " is not supported by this subcommand");
}

inline void maybe_plot(const Options& o, const std::string& xlabel, const std::string& ylabel,
                       const std::string& style = "lines") {
  if (o.plot_script.empty()) return;
  std::ofstream ps(o.plot_script, std::ios::binary);
  if (!ps) throw ValidationError("cannot open plot script '" + o.plot_script + "'");
  const std::string data = o.output.empty() ? "data.csv" : o.output;
  io::write_plot_script(ps, xlabel, ylabel, {{data, data, style}});
}

inline void cmd_spectrum(const Options& o, std::ostream& out) {
  require_format(o, {"csv", "json"});
  const auto spec = network(o);
  const auto H = build_hamiltonian(spec);
  if (!o.dump_matrix.empty()) {
    std::ofstream dm(o.dump_matrix, std::ios::binary);
    if (!dm) throw ValidationError("cannot open matrix dump '" + o.dump_matrix + "'");
    write_matrix(dm, H);
  }
  const auto d = eigendecompose_numeric(H);
  Sink sink(o.output, out);
  if (o.format == "json") {
    sink.os() << io::spectrum_json(d).dump(2) << '\n';
  } else {
    io::write_spectrum_csv(sink.os(), d);
  }
}

inline void cmd_evolve(const Options& o, std::ostream& out) {
  require_format(o, {"csv"});
  const auto spec = network(o);
  const auto cfg = scan_config(o, spec);
  const auto d = decompose(spec);
  const auto rows = probability_profile(d, parse_node(o.in), parse_node(o.out), uniform_grid(cfg.horizon, cfg.coarse_step));
  Sink sink(o.output, out);
  io::write_profile_csv(sink.os(), "t", rows);
  maybe_plot(o, time_label(spec.units), "p");
}

inline void cmd_pmax(const Options& o, std::ostream& out) {
  require_format(o, {"json"});
  const auto spec = network(o);
  const auto d = decompose(spec);
  const auto report = make_transfer_report(d, parse_node(o.in), parse_node(o.out), o.dark_tol);
  Sink sink(o.output, out);
  sink.os() << io::pmax_json(report).dump(2) << '\n';
}

inline void cmd_dark(const Options& o, std::ostream& out) {
  require_format(o, {"csv", "json"});
  const auto spec = network(o);
  const auto d = decompose(spec);
  const auto report = make_transfer_report(d, parse_node(o.in), parse_node(o.out), o.dark_tol);
  Sink sink(o.output, out);
  if (o.format == "json") {
    sink.os() << io::dark_json(report).dump(2) << '\n';
  } else {
    io::write_dark_csv(sink.os(), report);
  }
}

inline void cmd_attain(const Options& o, std::ostream& out) {
  require_format(o, {"json"});
  if (!o.tau) throw ValidationError("attain needs --tau");
  const auto spec = network(o);
  const auto d = decompose(spec);
  const auto report = make_transfer_report(d, parse_node(o.in), parse_node(o.out), o.dark_tol);
  const auto check = check_attainability(independent_constraints(report, d), *o.tau, o.tol);
  Sink sink(o.output, out);
  sink.os() << io::attain_json(check).dump(2) << '\n';
}

inline void cmd_scan(const Options& o, std::ostream& out, std::ostream& err) {
  require_format(o, {"csv", "json"});
  const auto spec = network(o);
  const auto cfg = scan_config(o, spec);
  const auto d = decompose(spec);
  const Node in = parse_node(o.in), to = parse_node(o.out);
  const auto events = find_pst_events(d, in, to, cfg);
  Sink sink(o.output, out);
  if (o.format == "json") {
    sink.os() << io::events_json(events).dump(2) << '\n';
  } else {
    io::write_profile_csv(sink.os(), "tau", probability_profile(d, in, to, uniform_grid(cfg.horizon, cfg.coarse_step)));
  }
  err << "PST times (p >= " << io::num(1.0 - cfg.epsilon) << "):";
  if (events.empty()) err << " none";
  for (const auto& e : events) err << ' ' << io::num(e.t) << " (p=" << io::num(e.p) << ')';
  err << '\n';
  maybe_plot(o, time_label(spec.units), "p");
}

inline void cmd_sweep(const Options& o, std::ostream& out) {
  require_format(o, {"csv", "json"});
  if (o.gamma_grid.empty() == o.J_grid.empty()) throw ValidationError("sweep needs exactly one of --gamma-grid or --J-grid");
  if (o.gamma || o.J || o.L) throw ValidationError("sweep takes its couplings from the grid");
  const auto bc = boundaries(o);
  const Node in = parse_node(o.in), to = parse_node(o.out);
  ScanConfig cfg;
  if (o.horizon) cfg.horizon = *o.horizon;
  if (o.step) cfg.coarse_step = *o.step;
  cfg.epsilon = o.epsilon;
  cfg.validate();

  const bool by_gamma = !o.gamma_grid.empty();
  const auto rows = by_gamma ? gamma_sweep(o.n, bc, in, to, parse_grid(o.gamma_grid), cfg)
                             : coupling_sweep_L0(o.n, bc, in, to, parse_grid(o.J_grid), cfg);
  const std::string param = by_gamma ? "gamma" : "J";
  const std::string time = by_gamma ? "tau_min" : "t_min";
  Sink sink(o.output, out);
  if (o.format == "json") {
    sink.os() << io::sweep_json(param, time, rows).dump(2) << '\n';
  } else {
    io::write_sweep_csv(sink.os(), param, time, rows);
  }
  maybe_plot(o, param, time, "points pt 7 ps 0.5");
}

struct FigureConfig {
  std::string name;
  int N;
  BoundaryConditions bc;
  Node in, out;
  std::vector<double> gammas;  // panel a
  double profile_horizon;
  bool gamma_panel;  // panel b: tau_min vs gamma
};

inline std::optional<FigureConfig> figure_config(const std::string& name) {
  using B = Boundary;
  if (name == "fig2") return FigureConfig{name, 8, {B::Closed, B::Closed}, {0, 1}, {4, 1}, {3.0, 5.0}, 150.0, true};
  if (name == "fig3") return FigureConfig{name, 5, {B::Open, B::Open}, {0, 1}, {4, 1}, {4.0, 15.0}, 100.0, true};
  if (name == "fig4") return FigureConfig{name, 4, {B::Open, B::Closed}, {0, 1}, {3, 1}, {4.0, 9.4}, 60.0, true};
  if (name == "fig5") return FigureConfig{name, 6, {B::Closed, B::Open}, {0, 1}, {3, 1}, {4.0, 8.25}, 100.0, false};
  return std::nullopt;
}

inline void cmd_reproduce(const Options& o, std::ostream& out, std::ostream& err) {
  const auto fig = figure_config(o.figure);
  if (!fig) throw ValidationError("unknown figure '" + o.figure + "' (expected fig2, fig3, fig4 or fig5)");
  const std::filesystem::path dir = o.output.empty() ? std::filesystem::path(".") : std::filesystem::path(o.output);
  std::filesystem::create_directories(dir);
  auto open = [&](const std::string& file) {
    std::ofstream os(dir / file, std::ios::binary);
    if (!os) throw ValidationError("cannot write '" + (dir / file).string() + "'");
    return os;
  };

  ScanConfig cfg;  // defaults: horizon 200, step 0.005, eps 1e-3
  std::vector<io::PlotSeries> panel_a;
  for (double g : fig->gammas) {
    const auto d = decompose(scaled_spec(fig->N, fig->bc, g));
    const std::string file = fig->name + "_a_gamma" + io::num(g) + ".csv";
    auto os = open(file);
    io::write_profile_csv(os, "tau", probability_profile(d, fig->in, fig->out, uniform_grid(fig->profile_horizon, cfg.coarse_step)));
    ScanConfig a_cfg = cfg;
    a_cfg.horizon = fig->profile_horizon;
    const auto events = find_pst_events(d, fig->in, fig->out, a_cfg);
    err << fig->name << " gamma=" << io::num(g) << " PST times:";
    if (events.empty()) err << " none";
    for (const auto& e : events) err << ' ' << io::num(e.t);
    err << '\n';
    panel_a.push_back({file, "gamma=" + io::num(g)});
  }
  {
    auto ps = open(fig->name + "_a.gp");
    io::write_plot_script(ps, "tau", "p", panel_a, fig->name + "_a.png");
  }

  const auto grid = arithmetic_grid(0.5, 20.0, 0.05);
  if (fig->gamma_panel) {
    const auto rows = gamma_sweep(fig->N, fig->bc, fig->in, fig->out, grid, cfg);
    const std::string file = fig->name + "_b_tau_min.csv";
    auto os = open(file);
    io::write_sweep_csv(os, "gamma", "tau_min", rows);
    auto ps = open(fig->name + "_b.gp");
    io::write_plot_script(ps, "gamma", "tau_min", {{file, "tau_min", "points pt 7 ps 0.5"}}, fig->name + "_b.png");
  }
  const auto rows = coupling_sweep_L0(fig->N, fig->bc, fig->in, fig->out, grid, cfg);
  const std::string panel = fig->gamma_panel ? "c" : "b";
  const std::string file = fig->name + "_" + panel + "_t_min.csv";
  {
    auto os = open(file);
    io::write_sweep_csv(os, "J", "t_min", rows);
    auto ps = open(fig->name + "_" + panel + ".gp");
    io::write_plot_script(ps, "J", "t_min", {{file, "t_min", "points pt 7 ps 0.5"}}, fig->name + "_" + panel + ".png");
  }
  out << "wrote " << fig->name << " data to " << dir.string() << '\n';
}

inline void add_network_options(CLI::App* sub, Options& o, bool with_couplings = true) {
  sub->add_option("--n", o.n, "number of sites")->required();
  sub->add_option("--site-bc", o.site_bc, "closed|open")->check(CLI::IsMember({"closed", "open"}));
  sub->add_option("--channel-bc", o.channel_bc, "closed|open")->check(CLI::IsMember({"closed", "open"}));
  if (with_couplings) {
    sub->add_option("--gamma", o.gamma, "J/L (scaled units, time tau = L t)");
    sub->add_option("--J", o.J, "intra-channel coupling (raw units)");
    sub->add_option("--L", o.L, "inter-channel coupling (raw units)");
  }
  sub->add_option("--format", o.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--output", o.output, "output file (default stdout)");
}

inline void add_pair_options(CLI::App* sub, Options& o) {
  sub->add_option("--in", o.in, "input node n,alpha")->required();
  sub->add_option("--out", o.out, "output node n,alpha")->required();
}

inline void add_scan_options(CLI::App* sub, Options& o) {
  sub->add_option("--horizon", o.horizon, "time horizon (default 200)");
  sub->add_option("--step", o.step, "coarse grid step");
  sub->add_option("--epsilon", o.epsilon, "PST threshold: p >= 1 - epsilon");
  sub->add_option("--plot-script", o.plot_script, "write a gnuplot script for the CSV");
}

inline int run_command(const std::vector<std::string>& argv, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
  Options o;
  CLI::App app{"Single-excitation transfer on the three-channel helix network", "helix_pst"};
  app.require_subcommand(1);

  auto* spectrum = app.add_subcommand("spectrum", "distinct eigenvalues and multiplicities");
  add_network_options(spectrum, o);
  spectrum->add_option("--dump-matrix", o.dump_matrix, "write the Hamiltonian as plain text");

  auto* evolve = app.add_subcommand("evolve", "p(t) on a uniform grid");
  add_network_options(evolve, o);
  add_pair_options(evolve, o);
  add_scan_options(evolve, o);

  auto* pmax = app.add_subcommand("pmax", "upper bound p_max, signs and dark groups");
  add_network_options(pmax, o);
  add_pair_options(pmax, o);
  pmax->add_option("--dark-tol", o.dark_tol, "overlaps below this are dark");

  auto* dark = app.add_subcommand("dark", "per-group overlaps and signs");
  add_network_options(dark, o);
  add_pair_options(dark, o);
  dark->add_option("--dark-tol", o.dark_tol, "overlaps below this are dark");

  auto* attain = app.add_subcommand("attain", "check the phase-alignment chain at one time");
  add_network_options(attain, o);
  add_pair_options(attain, o);
  attain->add_option("--tau", o.tau, "time to check")->required();
  attain->add_option("--tol", o.tol, "residual tolerance in radians");
  attain->add_option("--dark-tol", o.dark_tol, "overlaps below this are dark");

  auto* scan = app.add_subcommand("scan", "p(t) profile and refined PST times");
  add_network_options(scan, o);
  add_pair_options(scan, o);
  add_scan_options(scan, o);

  auto* sweep = app.add_subcommand("sweep", "first PST time across gamma or J (L = 0)");
  add_network_options(sweep, o, false);
  add_pair_options(sweep, o);
  add_scan_options(sweep, o);
  sweep->add_option("--gamma-grid", o.gamma_grid, "start:stop:step in gamma");
  sweep->add_option("--J-grid", o.J_grid, "start:stop:step in J, with L = 0");
  // Rejected with a usage error if given; kept so the message is specific.
  sweep->add_option("--gamma", o.gamma);
  sweep->add_option("--J", o.J);
  sweep->add_option("--L", o.L);

  auto* reproduce = app.add_subcommand("reproduce", "regenerate a figure's CSVs and gnuplot scripts");
  reproduce->add_option("figure", o.figure, "fig2|fig3|fig4|fig5")->required();
  reproduce->add_option("--output", o.output, "output directory (default .)");

  std::vector<std::string> args(argv.rbegin(), argv.rend());  // CLI11 consumes from the back
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*spectrum) cmd_spectrum(o, out);
    else if (*evolve) cmd_evolve(o, out);
    else if (*pmax) cmd_pmax(o, out);
    else if (*dark) cmd_dark(o, out);
    else if (*attain) cmd_attain(o, out);
    else if (*scan) cmd_scan(o, out, err);
    else if (*sweep) cmd_sweep(o, out);
    else if (*reproduce) cmd_reproduce(o, out, err);
  } catch (const ValidationError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace helix_pst::cli
