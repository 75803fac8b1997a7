#pragma once

// Domain types shared by every part of the library: lattice addressing,
// boundary conditions, couplings and the network description.
//
// Basis ordering is site-major: the three channels of site n occupy flat
// indices 3n, 3n+1, 3n+2. This makes the 3x3 coupling blocks of the
// Hamiltonian literal sub-blocks of the full matrix.

#include <cmath>
#include <stdexcept>
#include <string>

namespace helix_pst {

inline constexpr int kChannels = 3;

/// Raised for any input that violates a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical routine cannot honour its contract.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One spin of the 3 x N lattice: site along the chain, channel in {1,2,3}.
struct Node {
  int site = 0;
  int channel = 1;

  friend bool operator==(const Node&, const Node&) = default;
};

enum class Boundary { Closed, Open };

struct BoundaryConditions {
  Boundary site = Boundary::Closed;     // along n
  Boundary channel = Boundary::Closed;  // along alpha

  friend bool operator==(const BoundaryConditions&, const BoundaryConditions&) = default;
};

/// Raw mode keeps energies (J, L) and time t. Scaled mode measures energy in
/// units of L, so the matrix carries gamma = J/L and 1, and time is tau = L t.
enum class Units { Raw, Scaled };

struct CouplingParams {
  double J = 0.0;
  double L = 0.0;
  // Recorded for completeness. On the single-excitation subspace it only adds
  // a global phase, so it never enters the Hamiltonian.
  double E0 = 0.0;
};

struct NetworkSpec {
  int N = 0;
  BoundaryConditions bc{};
  CouplingParams couplings{};
  Units units = Units::Raw;
};

inline std::string to_string(Boundary b) { return b == Boundary::Closed ? "closed" : "open"; }

inline Boundary parse_boundary(const std::string& s) {
  if (s == "closed") return Boundary::Closed;
  if (s == "open") return Boundary::Open;
  throw ValidationError("boundary must be 'closed' or 'open', got '" + s + "'");
}

inline std::string to_string(const Node& node) {
  return std::to_string(node.site) + "," + std::to_string(node.channel);
}

inline int min_sites(Boundary site_bc) { return site_bc == Boundary::Closed ? 3 : 2; }

inline void validate_node(const Node& node, int N) {
  if (node.site < 0 || node.site >= N || node.channel < 1 || node.channel > kChannels) {
    throw ValidationError("node (" + to_string(node) + ") out of range for N=" + std::to_string(N));
  }
}

inline int flat_index(const Node& node, int N) {
  validate_node(node, N);
  return kChannels * node.site + (node.channel - 1);
}

inline Node node_from_index(int idx, int N) {
  if (N < 1 || idx < 0 || idx >= kChannels * N) {
    throw ValidationError("basis index " + std::to_string(idx) + " out of range for N=" +
                          std::to_string(N));
  }
  return Node{idx / kChannels, idx % kChannels + 1};
}

inline const NetworkSpec& validate_spec(const NetworkSpec& spec) {
  if (spec.N < min_sites(spec.bc.site)) {
    throw ValidationError("N=" + std::to_string(spec.N) + " too small for " +
                          to_string(spec.bc.site) + " site boundary (minimum " +
                          std::to_string(min_sites(spec.bc.site)) + ")");
  }
  const auto& c = spec.couplings;
  if (!std::isfinite(c.J) || !std::isfinite(c.L) || !std::isfinite(c.E0)) {
    throw ValidationError("couplings must be finite");
  }
  if (spec.units == Units::Scaled && c.L == 0.0) {
    throw ValidationError("scaled units need L != 0 (use raw units for the L -> 0 limit)");
  }
  return spec;
}

/// Network in scaled units: J = gamma, L = 1, time axis tau.
inline NetworkSpec scaled_spec(int N, BoundaryConditions bc, double gamma) {
  return NetworkSpec{N, bc, CouplingParams{gamma, 1.0, 0.0}, Units::Scaled};
}

inline NetworkSpec raw_spec(int N, BoundaryConditions bc, double J, double L) {
  return NetworkSpec{N, bc, CouplingParams{J, L, 0.0}, Units::Raw};
}

}  // namespace helix_pst
