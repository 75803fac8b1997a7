#pragma once

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "helix_pst/core.hpp"

namespace helix_pst {

enum class CouplingKind { SiteJ, ChannelL };

struct Neighbor {
  Node node;
  CouplingKind kind;
};

/// Real symmetric single-excitation Hamiltonian, 3N x 3N, zero diagonal.
/// Entries are energies in raw units, or multiples of L in scaled units.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  SymmetricMatrix(Eigen::MatrixXd entries, Units units) : entries_(std::move(entries)), units_(units) {
    if (entries_.rows() != entries_.cols()) throw ValidationError("matrix must be square");
  }

  Eigen::Index dim() const { return entries_.rows(); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  Units units() const { return units_; }
  double operator()(Eigen::Index a, Eigen::Index b) const { return entries_(a, b); }
  double max_abs() const { return dim() == 0 ? 0.0 : entries_.cwiseAbs().maxCoeff(); }

 private:
  Eigen::MatrixXd entries_;
  Units units_ = Units::Raw;
};

/// Nearest neighbours of a node: site neighbours along its own channel, then
/// channel neighbours at the same site. Closed channels form the triangle
/// 1-2-3-1, open channels the path 1-2-3.
inline std::vector<Neighbor> neighbors(const Node& node, const NetworkSpec& spec) {
  validate_spec(spec);
  validate_node(node, spec.N);
  std::vector<Neighbor> out;
  const int N = spec.N;
  for (int step : {+1, -1}) {
    int m = node.site + step;
    if (spec.bc.site == Boundary::Closed) {
      m = (m + N) % N;
    } else if (m < 0 || m >= N) {
      continue;
    }
    out.push_back({Node{m, node.channel}, CouplingKind::SiteJ});
  }
  for (int beta = 1; beta <= kChannels; ++beta) {
    if (beta == node.channel) continue;
    const bool adjacent = std::abs(beta - node.channel) == 1;
    if (spec.bc.channel == Boundary::Closed || adjacent) {
      out.push_back({Node{node.site, beta}, CouplingKind::ChannelL});
    }
  }
  return out;
}

/// Site-major weighted adjacency matrix of the network. In scaled units every
/// entry is divided by L.
inline SymmetricMatrix build_hamiltonian(const NetworkSpec& spec) {
  validate_spec(spec);
  const int N = spec.N;
  const double scale = spec.units == Units::Scaled ? 1.0 / spec.couplings.L : 1.0;
  const double J = spec.couplings.J * scale;
  const double L = spec.couplings.L * scale;

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(kChannels * N, kChannels * N);
  for (int n = 0; n < N; ++n) {
    // Upper-triangular edges only, mirrored, so symmetry is exact.
    const int next = n + 1;
    const bool has_site_edge = next < N || (spec.bc.site == Boundary::Closed);
    for (int a = 1; a <= kChannels; ++a) {
      const int i = flat_index({n, a}, N);
      if (has_site_edge) {
        const int j = flat_index({next % N, a}, N);
        h(i, j) = h(j, i) = J;
      }
      for (int b = a + 1; b <= kChannels; ++b) {
        if (spec.bc.channel == Boundary::Open && b - a != 1) continue;
        const int j = flat_index({n, b}, N);
        h(i, j) = h(j, i) = L;
      }
    }
  }
  return SymmetricMatrix(std::move(h), spec.units);
}

/// Plain-text dump: `dim= D`, then D rows of space-separated %.17g values.
inline void write_matrix(std::ostream& os, const SymmetricMatrix& m) {
  os << "dim= " << m.dim() << '\n';
  char buf[32];
  for (Eigen::Index r = 0; r < m.dim(); ++r) {
    for (Eigen::Index c = 0; c < m.dim(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", m(r, c));
      if (c) os << ' ';
      os << buf;
    }
    os << '\n';
  }
}

inline SymmetricMatrix read_matrix(std::istream& is, Units units = Units::Raw) {
  std::string tag;
  Eigen::Index dim = -1;
  if (!(is >> tag >> dim) || tag != "dim=" || dim < 0) throw ValidationError("bad matrix header");
  Eigen::MatrixXd h(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      if (!(is >> h(r, c))) throw ValidationError("truncated matrix dump");
    }
  }
  return SymmetricMatrix(std::move(h), units);
}

}  // namespace helix_pst
