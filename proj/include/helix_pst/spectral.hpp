#pragma once

// Spectral decomposition of the single-excitation Hamiltonian.
//
// Two routes produce the same object: a dense numeric eigensolve (any
// topology) and the closed-form Fourier eigenpairs of the doubly closed
// network. Degenerate eigenvalues are grouped into one orthogonal projector
// per distinct eigenvalue; only grouped projectors are basis independent, so
// everything downstream works on groups.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "helix_pst/core.hpp"
#include "helix_pst/hamiltonian.hpp"

namespace helix_pst {

using cplx = std::complex<double>;

/// Quantum numbers (n, alpha) of an analytic closed/closed eigenpair.
struct Label {
  int n = 0;
  int alpha = 1;
  friend bool operator==(const Label&, const Label&) = default;
};

struct EigenPair {
  double value = 0.0;
  Eigen::VectorXcd vector;
  std::optional<Label> label;
};

/// One distinct eigenvalue together with an orthonormal basis of its
/// eigenspace. The projector is basis * basis^dagger; it is materialised only
/// on request because scans need a single matrix element per group.
struct SpectralGroup {
  double eigenvalue = 0.0;
  Eigen::MatrixXcd basis;     // dim x multiplicity, orthonormal columns
  std::vector<Label> labels;  // empty for numeric groups

  int multiplicity() const { return static_cast<int>(basis.cols()); }
  cplx element(Eigen::Index a, Eigen::Index b) const {
    return basis.row(b).dot(basis.row(a));  // sum_v v_a conj(v_b); dot conjugates its left operand
  }
  Eigen::MatrixXcd projector() const { return basis * basis.adjoint(); }
};

struct SpectralDecomposition {
  std::vector<SpectralGroup> groups;  // ascending eigenvalue
  double grouping_tol = 0.0;
  Eigen::Index dim = 0;
  Units units = Units::Raw;

  std::vector<double> eigenvalues() const {
    std::vector<double> out;
    out.reserve(groups.size());
    for (const auto& g : groups) out.push_back(g.eigenvalue);
    return out;
  }
};

inline constexpr double kRelativeGroupingTol = 1e-8;

/// Sorts pairs ascending and merges runs whose consecutive gaps are <= tol.
/// A group's eigenvalue is the mean of its members.
inline SpectralDecomposition group_eigenpairs(std::vector<EigenPair> pairs, double grouping_tol,
                                              Units units = Units::Raw) {
  SpectralDecomposition out;
  out.grouping_tol = grouping_tol;
  out.units = units;
  if (pairs.empty()) return out;
  out.dim = pairs.front().vector.size();
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const EigenPair& a, const EigenPair& b) { return a.value < b.value; });

  std::size_t begin = 0;
  while (begin < pairs.size()) {
    std::size_t end = begin + 1;
    while (end < pairs.size() && pairs[end].value - pairs[end - 1].value <= grouping_tol) ++end;
    SpectralGroup g;
    g.basis.resize(out.dim, static_cast<Eigen::Index>(end - begin));
    double sum = 0.0;
    for (std::size_t k = begin; k < end; ++k) {
      if (pairs[k].vector.size() != out.dim) throw ValidationError("eigenvector length mismatch");
      g.basis.col(static_cast<Eigen::Index>(k - begin)) = pairs[k].vector;
      sum += pairs[k].value;
      if (pairs[k].label) g.labels.push_back(*pairs[k].label);
    }
    g.eigenvalue = sum / static_cast<double>(end - begin);
    out.groups.push_back(std::move(g));
    begin = end;
  }
  return out;
}

/// Full dense symmetric eigensolve, grouped. A negative tolerance selects the
/// default, 1e-8 times the spectral radius.
inline SpectralDecomposition eigendecompose_numeric(const SymmetricMatrix& H, double grouping_tol = -1.0) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H.entries());
  if (solver.info() != Eigen::Success) throw NumericError("symmetric eigensolver did not converge");
  const Eigen::VectorXd& values = solver.eigenvalues();
  const Eigen::MatrixXd& vectors = solver.eigenvectors();

  if (grouping_tol < 0.0) {
    const double radius = values.size() ? values.cwiseAbs().maxCoeff() : 0.0;
    grouping_tol = kRelativeGroupingTol * radius;
  }
  std::vector<EigenPair> pairs;
  pairs.reserve(static_cast<std::size_t>(values.size()));
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    pairs.push_back({values(k), vectors.col(k).cast<cplx>(), std::nullopt});
  }
  return group_eigenpairs(std::move(pairs), grouping_tol, H.units());
}

inline double analytic_eigenvalue(int N, double J, double L, Label label) {
  using std::numbers::pi;
  const double sign = label.alpha % 2 == 0 ? 1.0 : -1.0;  // (-1)^alpha
  return 2.0 * J * std::cos(2.0 * pi * label.n / N) - 2.0 * sign * L * std::cos(pi * (label.alpha - 1) / 3.0);
}

/// Closed-form eigenpairs of the doubly closed network: a Fourier mode along
/// the ring times a Fourier mode of the channel triangle.
inline std::vector<EigenPair> eigenpairs_closed_closed_analytic(const NetworkSpec& spec) {
  validate_spec(spec);
  if (spec.bc.site != Boundary::Closed || spec.bc.channel != Boundary::Closed) {
    throw ValidationError("analytic eigenpairs exist only for closed/closed boundaries");
  }
  using std::numbers::pi;
  const int N = spec.N;
  const double scale = spec.units == Units::Scaled ? 1.0 / spec.couplings.L : 1.0;
  const double J = spec.couplings.J * scale;
  const double L = spec.couplings.L * scale;

  const cplx omega = std::polar(1.0, 2.0 * pi / 3.0);
  const std::array<std::array<cplx, 3>, 3> channel_modes{{
      {cplx(1.0), cplx(1.0), cplx(1.0)},
      {std::conj(omega), cplx(1.0), omega},
      {omega, cplx(1.0), std::conj(omega)},
  }};
  const double norm = 1.0 / std::sqrt(static_cast<double>(kChannels * N));

  std::vector<EigenPair> out;
  out.reserve(static_cast<std::size_t>(kChannels * N));
  for (int n = 0; n < N; ++n) {
    for (int alpha = 1; alpha <= kChannels; ++alpha) {
      Eigen::VectorXcd v(kChannels * N);
      for (int m = 0; m < N; ++m) {
        const cplx rho_m = std::polar(1.0, 2.0 * pi * n * m / N);
        for (int c = 0; c < kChannels; ++c) {
          v(kChannels * m + c) = norm * rho_m * channel_modes[alpha - 1][c];
        }
      }
      const Label label{n, alpha};
      out.push_back({analytic_eigenvalue(N, J, L, label), std::move(v), label});
    }
  }
  return out;
}

/// Analytic eigenpairs grouped with the same default tolerance as the
/// numeric route.
inline SpectralDecomposition eigendecompose_closed_closed_analytic(const NetworkSpec& spec,
                                                                   double grouping_tol = -1.0) {
  auto pairs = eigenpairs_closed_closed_analytic(spec);
  if (grouping_tol < 0.0) {
    double radius = 0.0;
    for (const auto& p : pairs) radius = std::max(radius, std::abs(p.value));
    grouping_tol = kRelativeGroupingTol * radius;
  }
  return group_eigenpairs(std::move(pairs), grouping_tol, spec.units);
}

/// Number of distinct eigenvalues in each channel class (alpha = 1, and
/// alpha = 2,3 which coincide) of the doubly closed network at generic
/// couplings. The cosine 2J cos(2 pi n / N) pairs n with N - n, so the count
/// is floor(N/2) + 1 for every N.
inline std::pair<int, int> distinct_count_closed_closed(int N) {
  if (N < 3) throw ValidationError("closed ring needs N >= 3");
  const int count = N % 2 == 1 ? (N + 1) / 2 : N / 2 + 1;
  return {count, count};
}

/// Max entrywise |sum_k lambda_k Pi_k - H|.
inline double verify_reconstruction(const SpectralDecomposition& decomp, const SymmetricMatrix& H) {
  if (decomp.dim != H.dim()) throw ValidationError("decomposition and matrix dimensions differ");
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(H.dim(), H.dim());
  for (const auto& g : decomp.groups) acc += g.eigenvalue * g.projector();
  return (acc - H.entries().cast<cplx>()).cwiseAbs().maxCoeff();
}

inline SpectralDecomposition decompose(const NetworkSpec& spec) {
  return eigendecompose_numeric(build_hamiltonian(spec));
}

}  // namespace helix_pst
