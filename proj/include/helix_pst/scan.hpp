#pragma once

// Time-domain search for perfect-state-transfer events and parameter sweeps.
//
// A scan samples p(t) on a uniform grid, picks local maxima above 1 - 2 eps
// and refines each by golden-section search on the bracketing grid interval.
// Refined times with p >= 1 - eps are PST events.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "helix_pst/core.hpp"
#include "helix_pst/parallel.hpp"
#include "helix_pst/spectral.hpp"
#include "helix_pst/transfer.hpp"

namespace helix_pst {

struct ScanConfig {
  double horizon = 200.0;
  double coarse_step = 0.005;
  double epsilon = 1e-3;
  int refine_iters = 100;
  double refine_step = 1e-6;
  unsigned workers = 0;  // 0: worker_count()

  void validate() const {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ValidationError("horizon must be > 0");
    if (!(coarse_step > 0.0) || !std::isfinite(coarse_step)) throw ValidationError("step must be > 0");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("epsilon must lie in (0, 1)");
    if (refine_iters < 0) throw ValidationError("refine_iters must be >= 0");
    if (!(refine_step > 0.0)) throw ValidationError("refine_step must be > 0");
  }
  unsigned resolved_workers() const { return workers ? workers : worker_count(); }
};

/// Raw-time step for intra-channel coupling J: the base step stretched for
/// weak couplings, whose dynamics are slower.
inline double raw_step(double base_step, double J) {
  return J > 0.0 ? base_step * std::max(1.0, 1.0 / J) : base_step;
}

struct PstEvent {
  double t = 0.0;
  double p = 0.0;
};

struct SweepRow {
  double parameter = 0.0;          // gamma or J
  std::optional<double> tau_min;   // scaled tau or raw t
};

inline std::vector<double> uniform_grid(double horizon, double step) {
  const auto count = static_cast<std::size_t>(std::floor(horizon / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k) grid[k] = static_cast<double>(k) * step;
  return grid;
}

/// Maximises p on [lo, hi]; returns the best of the golden-section point, the
/// seed and both ends, earliest time on ties.
inline PstEvent refine_peak(const PairPropagator& prop, double lo, double hi, double seed, const ScanConfig& cfg) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = prop.probability(c), fd = prop.probability(d);
  for (int it = 0; it < cfg.refine_iters && (b - a) > cfg.refine_step; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = prop.probability(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = prop.probability(d);
    }
  }
  const double mid = 0.5 * (a + b);
  PstEvent best{lo, prop.probability(lo)};
  for (double t : {seed, mid, hi}) {
    const double p = prop.probability(t);
    if (p > best.p || (p == best.p && t < best.t)) best = {t, p};
  }
  return best;
}

inline std::vector<double> sample_profile(const PairPropagator& prop, const std::vector<double>& grid,
                                          unsigned workers) {
  std::vector<double> p(grid.size());
  parallel_for(grid.size(), [&](std::size_t k) { p[k] = prop.probability(grid[k]); }, workers);
  return p;
}

/// Refined local maxima of p with coarse value >= floor, ascending in time.
inline std::vector<PstEvent> refined_maxima(const PairPropagator& prop, const ScanConfig& cfg, double floor) {
  const auto grid = uniform_grid(cfg.horizon, cfg.coarse_step);
  const auto p = sample_profile(prop, grid, cfg.resolved_workers());
  const std::size_t last = grid.size() - 1;
  std::vector<PstEvent> out;
  for (std::size_t k = 0; k <= last; ++k) {
    if (p[k] < floor) continue;
    const bool rises = k == 0 || p[k] >= p[k - 1];
    const bool falls = k == last || p[k] > p[k + 1];
    if (!rises || !falls) continue;
    const double lo = k == 0 ? grid[0] : grid[k - 1];
    const double hi = k == last ? grid[last] : grid[k + 1];
    const auto ev = refine_peak(prop, lo, hi, grid[k], cfg);
    if (!out.empty() && ev.t - out.back().t < 10.0 * cfg.refine_step) {
      if (ev.p > out.back().p) out.back() = ev;
      continue;
    }
    out.push_back(ev);
  }
  return out;
}

inline std::vector<PstEvent> find_pst_events(const SpectralDecomposition& decomp, const Node& input,
                                             const Node& output, const ScanConfig& cfg) {
  cfg.validate();
  const auto prop = pair_propagator(decomp, input, output);
  auto events = refined_maxima(prop, cfg, 1.0 - 2.0 * cfg.epsilon);
  std::erase_if(events, [&](const PstEvent& e) { return e.p < 1.0 - cfg.epsilon; });
  return events;
}

inline std::vector<double> find_pst_times(const SpectralDecomposition& decomp, const Node& input,
                                          const Node& output, const ScanConfig& cfg) {
  std::vector<double> out;
  for (const auto& e : find_pst_events(decomp, input, output, cfg)) out.push_back(e.t);
  return out;
}

inline std::optional<double> tau_min(const SpectralDecomposition& decomp, const Node& input, const Node& output,
                                     const ScanConfig& cfg) {
  const auto times = find_pst_times(decomp, input, output, cfg);
  if (times.empty()) return std::nullopt;
  return times.front();
}

/// Highest refined p on [0, horizon]. Every coarse local maximum within 0.05
/// of the best coarse sample is refined.
inline PstEvent peak_probability(const SpectralDecomposition& decomp, const Node& input, const Node& output,
                                 const ScanConfig& cfg) {
  cfg.validate();
  const auto prop = pair_propagator(decomp, input, output);
  const auto grid = uniform_grid(cfg.horizon, cfg.coarse_step);
  const auto p = sample_profile(prop, grid, cfg.resolved_workers());
  const double coarse_best = *std::max_element(p.begin(), p.end());
  PstEvent best{0.0, -1.0};
  for (const auto& e : refined_maxima(prop, cfg, coarse_best - 0.05)) {
    if (e.p > best.p) best = e;
  }
  return best;
}

/// tau_min for each gamma in scaled units (J = gamma, L = 1). Rows follow the
/// input order; grid points are evaluated independently.
inline std::vector<SweepRow> gamma_sweep(int N, BoundaryConditions bc, const Node& input, const Node& output,
                                         const std::vector<double>& gamma_grid, const ScanConfig& cfg) {
  cfg.validate();
  for (double g : gamma_grid) validate_spec(scaled_spec(N, bc, g));
  std::vector<SweepRow> rows(gamma_grid.size());
  ScanConfig inner = cfg;
  inner.workers = 1;
  parallel_for(
      gamma_grid.size(),
      [&](std::size_t k) {
        const auto decomp = decompose(scaled_spec(N, bc, gamma_grid[k]));
        rows[k] = {gamma_grid[k], tau_min(decomp, input, output, inner)};
      },
      cfg.resolved_workers());
  return rows;
}

/// t_min for each J with L = 0 (raw units), where the three channels decouple.
/// cfg.coarse_step is the base step, stretched per J by raw_step.
inline std::vector<SweepRow> coupling_sweep_L0(int N, BoundaryConditions bc, const Node& input, const Node& output,
                                               const std::vector<double>& J_grid, const ScanConfig& cfg) {
  cfg.validate();
  for (double J : J_grid) validate_spec(raw_spec(N, bc, J, 0.0));
  std::vector<SweepRow> rows(J_grid.size());
  parallel_for(
      J_grid.size(),
      [&](std::size_t k) {
        ScanConfig inner = cfg;
        inner.workers = 1;
        inner.coarse_step = raw_step(cfg.coarse_step, J_grid[k]);
        const auto decomp = decompose(raw_spec(N, bc, J_grid[k], 0.0));
        rows[k] = {J_grid[k], tau_min(decomp, input, output, inner)};
      },
      cfg.resolved_workers());
  return rows;
}

/// Inclusive arithmetic grid start:stop:step, robust to rounding at the end.
inline std::vector<double> arithmetic_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop) || stop < start) {
    throw ValidationError("grid needs start <= stop and step > 0");
  }
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = start + static_cast<double>(k) * step;
  return out;
}

}  // namespace helix_pst
