#pragma once

// Transition probabilities between two lattice nodes, the phase-alignment
// upper bound p_max, sign factors and dark eigenspaces.
//
// For a grouped decomposition H = sum_k lambda_k Pi_k the amplitude is
//   <in| exp(-i H t) |out> = sum_k <in|Pi_k|out> exp(-i lambda_k t),
// with every <in|Pi_k|out> real because H is real symmetric.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "helix_pst/core.hpp"
#include "helix_pst/parallel.hpp"
#include "helix_pst/spectral.hpp"

namespace helix_pst {

inline constexpr double kDefaultDarkTol = 1e-10;
inline constexpr double kOverlapImagTol = 1e-9;

inline int sites_of(const SpectralDecomposition& decomp) {
  return static_cast<int>(decomp.dim / kChannels);
}

/// <in|Pi_k|out> for every group k. A sizeable imaginary part means a
/// degenerate eigenspace was split across groups.
inline std::vector<double> projector_overlaps(const SpectralDecomposition& decomp, const Node& input,
                                              const Node& output) {
  const int N = sites_of(decomp);
  const int a = flat_index(input, N);
  const int b = flat_index(output, N);
  std::vector<double> out;
  out.reserve(decomp.groups.size());
  for (std::size_t k = 0; k < decomp.groups.size(); ++k) {
    const cplx v = decomp.groups[k].element(a, b);
    if (std::abs(v.imag()) > kOverlapImagTol) {
      throw NumericError("projector overlap of group " + std::to_string(k) +
                         " has imaginary part " + std::to_string(v.imag()) +
                         "; degenerate eigenvalues were not grouped");
    }
    out.push_back(v.real());
  }
  return out;
}

/// Eigenvalues and overlaps for one node pair; evaluates p(t) in O(groups).
struct PairPropagator {
  std::vector<double> eigenvalues;
  std::vector<double> overlaps;

  cplx amplitude(double t) const {
    cplx acc{0.0, 0.0};
    for (std::size_t k = 0; k < overlaps.size(); ++k) acc += overlaps[k] * std::polar(1.0, -eigenvalues[k] * t);
    return acc;
  }
  double probability(double t) const { return std::norm(amplitude(t)); }
};

inline PairPropagator pair_propagator(const SpectralDecomposition& decomp, const Node& input, const Node& output) {
  return PairPropagator{decomp.eigenvalues(), projector_overlaps(decomp, input, output)};
}

inline double transition_probability(const SpectralDecomposition& decomp, const Node& input, const Node& output,
                                     double t) {
  return pair_propagator(decomp, input, output).probability(t);
}

inline std::vector<std::pair<double, double>> probability_profile(const SpectralDecomposition& decomp,
                                                                  const Node& input, const Node& output,
                                                                  const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw ValidationError("time grid is empty");
  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    if (t_grid[k] < t_grid[k - 1]) throw ValidationError("time grid must be sorted ascending");
  }
  const auto prop = pair_propagator(decomp, input, output);
  std::vector<std::pair<double, double>> out(t_grid.size());
  parallel_for(t_grid.size(), [&](std::size_t k) { out[k] = {t_grid[k], prop.probability(t_grid[k])}; });
  return out;
}

inline double p_max_from_overlaps(const std::vector<double>& overlaps) {
  double s = 0.0;
  for (double v : overlaps) s += std::abs(v);
  return s * s;
}

inline double p_max(const SpectralDecomposition& decomp, const Node& input, const Node& output) {
  return p_max_from_overlaps(projector_overlaps(decomp, input, output));
}

inline std::vector<int> sign_factors(const std::vector<double>& overlaps, double dark_tol = kDefaultDarkTol) {
  std::vector<int> out;
  out.reserve(overlaps.size());
  for (double v : overlaps) out.push_back(std::abs(v) < dark_tol ? 0 : (v > 0 ? 1 : -1));
  return out;
}

struct TransferReport {
  Node input;
  Node output;
  std::vector<double> eigenvalues;  // per group, for reporting
  std::vector<double> overlaps;
  double p_max = 0.0;
  std::vector<int> signs;
  std::vector<int> dark_groups;  // ascending group indices with sign 0
};

inline TransferReport make_transfer_report(const SpectralDecomposition& decomp, const Node& input,
                                           const Node& output, double dark_tol = kDefaultDarkTol) {
  TransferReport r;
  r.input = input;
  r.output = output;
  r.eigenvalues = decomp.eigenvalues();
  r.overlaps = projector_overlaps(decomp, input, output);
  r.p_max = p_max_from_overlaps(r.overlaps);
  r.signs = sign_factors(r.overlaps, dark_tol);
  for (std::size_t k = 0; k < r.signs.size(); ++k) {
    if (r.signs[k] == 0) r.dark_groups.push_back(static_cast<int>(k));
  }
  return r;
}

inline std::vector<int> dark_eigenspaces(const TransferReport& report) { return report.dark_groups; }

/// Doubly closed network, paired eigenvalue index n (lambda_n = lambda_{N-n}):
/// the pair is dark for sites i -> j iff cos(2 pi n (j - i) / N) = 0, i.e.
/// 4 n (j - i) / N is an odd integer.
inline bool dark_predicate_closed_closed(int N, int i, int j, int n) {
  if (N < 3) throw ValidationError("closed ring needs N >= 3");
  const int n_max = (N - 3 + 1) / 2;  // ceil((N-3)/2)
  if (n < 1 || n > n_max) {
    throw ValidationError("paired eigenvalue index n=" + std::to_string(n) + " outside [1, " +
                          std::to_string(n_max) + "]");
  }
  const long num = 4L * n * std::labs(static_cast<long>(j) - i);
  return num % N == 0 && (num / N) % 2 == 1;
}

}  // namespace helix_pst
