#pragma once

// Test-only reference implementations. None of these go through the
// library's spectral path: the Hamiltonian is rebuilt from an adjacency
// predicate and time evolution uses a truncated Taylor series with scaling
// and squaring.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "helix_pst/core.hpp"

namespace helix_pst::oracle {

using cplx = std::complex<double>;

/// Edge test straight from the lattice geometry.
inline bool site_edge(int n, int m, int N, Boundary bc) {
  if (std::abs(n - m) == 1) return true;
  return bc == Boundary::Closed && N >= 3 && ((n == 0 && m == N - 1) || (m == 0 && n == N - 1));
}

inline bool channel_edge(int a, int b, Boundary bc) {
  if (a == b) return false;
  return bc == Boundary::Closed || std::abs(a - b) == 1;
}

/// Dense Hamiltonian from the adjacency predicate, in the units J, L given.
inline Eigen::MatrixXd predicate_hamiltonian(int N, BoundaryConditions bc, double J, double L) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(3 * N, 3 * N);
  for (int n = 0; n < N; ++n)
    for (int a = 1; a <= 3; ++a)
      for (int m = 0; m < N; ++m)
        for (int b = 1; b <= 3; ++b) {
          const int r = 3 * n + a - 1, c = 3 * m + b - 1;
          if (a == b && site_edge(n, m, N, bc.site)) h(r, c) = J;
          if (n == m && channel_edge(a, b, bc.channel)) h(r, c) = L;
        }
  return h;
}

/// exp(-i H t) by scaling and squaring a 30-term Taylor series.
inline Eigen::MatrixXcd series_propagator(const Eigen::MatrixXd& H, double t) {
  const Eigen::Index d = H.rows();
  const Eigen::MatrixXcd A = cplx(0.0, -t) * H.cast<cplx>();
  const double norm = A.cwiseAbs().rowwise().sum().maxCoeff();
  int s = 0;
  while (norm / std::ldexp(1.0, s) > 0.25) ++s;
  const Eigen::MatrixXcd B = A / std::ldexp(1.0, s);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(d, d);
  Eigen::MatrixXcd sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * B / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < s; ++k) sum = sum * sum;
  return sum;
}

inline double series_probability(const Eigen::MatrixXd& H, int from, int to, double t) {
  return std::norm(series_propagator(H, t)(to, from));
}

/// N-site ring (or chain) with coupling J: the L = 0 single-channel model.
inline Eigen::MatrixXd ring_hamiltonian(int N, double J, Boundary bc = Boundary::Closed) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(N, N);
  for (int n = 0; n < N; ++n)
    for (int m = 0; m < N; ++m)
      if (site_edge(n, m, N, bc)) h(n, m) = J;
  return h;
}

/// Grouped p_max of the doubly closed network at couplings where no
/// eigenvalue of the alpha = 1 class meets one of the alpha = 2,3 class.
/// The projectors factor as (ring projector) x (channel projector): channel
/// class 1 contributes 1/3, class 2+3 contributes delta_pq - 1/3, and the ring
/// groups sum |cos(2 pi n d / N)| / N over all n.
inline double closed_closed_pmax_generic(int N, int i, int p, int j, int q) {
  double ring = 0.0;
  for (int n = 0; n < N; ++n) ring += std::abs(std::cos(2.0 * std::numbers::pi * n * (j - i) / N));
  ring /= N;
  const double channel = 1.0 / 3.0 + std::abs((p == q ? 1.0 : 0.0) - 1.0 / 3.0);
  return std::pow(ring * channel, 2);
}

/// Eigenvalues of the doubly closed network whose paired groups (n, N-n) are
/// dark for sites i -> j by direct cosine evaluation, both channel classes.
inline std::vector<double> dark_eigenvalues_by_cosine(int N, double J, double L, int i, int j) {
  std::vector<double> out;
  for (int n = 1; 2 * n < N; ++n) {
    if (std::abs(std::cos(2.0 * std::numbers::pi * n * (j - i) / N)) > 1e-12) continue;
    const double ring = 2.0 * J * std::cos(2.0 * std::numbers::pi * n / N);
    out.push_back(ring + 2.0 * L);
    out.push_back(ring - L);
  }
  return out;
}

inline std::vector<double> random_times(int count, double lo, double hi, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> out(count);
  for (auto& t : out) t = dist(rng);
  return out;
}

inline const BoundaryConditions kAllTopologies[4] = {
    {Boundary::Closed, Boundary::Closed},
    {Boundary::Open, Boundary::Open},
    {Boundary::Open, Boundary::Closed},
    {Boundary::Closed, Boundary::Open},
};

}  // namespace helix_pst::oracle
