#pragma once

// Phase-alignment conditions under which p_t reaches p_max.
//
// For every pair of non-dark groups (a, b) the bound is attained at time t iff
//   (lambda_a - lambda_b) t = 2 pi k + offset,  k integer,
// where offset is 0 for equal signs and +pi / -pi for sign pairs (+,-) / (-,+).
// The conditions are transitive, so a chain over consecutive non-dark groups
// is sufficient; chaining two satisfied links at tolerance tol satisfies the
// composite link at 2 tol.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "helix_pst/core.hpp"
#include "helix_pst/spectral.hpp"
#include "helix_pst/transfer.hpp"

namespace helix_pst {

inline constexpr double kFigureAttainTol = 0.05;
inline constexpr double kExactAttainTol = 1e-6;

struct Constraint {
  int left_group = 0;
  int right_group = 0;
  double delta_lambda = 0.0;  // lambda_left - lambda_right
  double offset = 0.0;        // 0, +pi or -pi
  std::optional<long> witness;
};

inline double sign_offset(int left_sign, int right_sign) {
  if (left_sign == right_sign) return 0.0;
  return left_sign > 0 ? std::numbers::pi : -std::numbers::pi;
}

inline std::vector<Constraint> independent_constraints(const TransferReport& report,
                                                       const SpectralDecomposition& decomp) {
  if (report.signs.size() != decomp.groups.size()) {
    throw ValidationError("transfer report and decomposition have different group counts");
  }
  std::vector<int> kept;
  for (std::size_t k = 0; k < report.signs.size(); ++k) {
    if (report.signs[k] != 0) kept.push_back(static_cast<int>(k));
  }
  std::vector<Constraint> out;
  for (std::size_t c = 1; c < kept.size(); ++c) {
    const int a = kept[c - 1];
    const int b = kept[c];
    out.push_back({a, b, decomp.groups[a].eigenvalue - decomp.groups[b].eigenvalue,
                   sign_offset(report.signs[a], report.signs[b]), std::nullopt});
  }
  return out;
}

struct CheckEntry {
  Constraint constraint;  // witness filled in
  double residual = 0.0;  // |r - 2 pi k| in radians
};

struct CheckReport {
  double t = 0.0;
  std::vector<CheckEntry> entries;
  bool all_satisfied = true;
};

inline CheckReport check_attainability(const std::vector<Constraint>& constraints, double t,
                                       double tol = kFigureAttainTol) {
  if (!(t > 0.0)) throw ValidationError("attainability is checked at t > 0");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  CheckReport report;
  report.t = t;
  for (const auto& c : constraints) {
    const double r = c.delta_lambda * t - c.offset;
    const double k = std::round(r / two_pi);
    CheckEntry e{c, std::abs(r - two_pi * k)};
    e.constraint.witness = static_cast<long>(k);
    report.all_satisfied = report.all_satisfied && e.residual < tol;
    report.entries.push_back(e);
  }
  return report;
}

struct ExampleConstraint {
  std::string description;
  double coefficient = 0.0;  // multiplies tau
};

/// Channel part of the closed/closed eigenvalue, in units of L:
/// 2 for alpha = 1, -1 for alpha = 2, 3.
inline double channel_term(int alpha) {
  const double sign = alpha % 2 == 0 ? 1.0 : -1.0;
  return -2.0 * sign * std::cos(std::numbers::pi * (alpha - 1) / 3.0);
}

/// (lambda_n^alpha - lambda_m^beta) / L for the doubly closed network.
inline double closed_closed_gap(int N, double gamma, int n, int alpha, int m, int beta) {
  using std::numbers::pi;
  return -4.0 * gamma * std::sin(pi * (n + m) / N) * std::sin(pi * (n - m) / N) + channel_term(alpha) -
         channel_term(beta);
}

/// Table of the independent congruence coefficients of the doubly closed
/// network in scaled units: consecutive labels within a channel class,
/// consecutive labels across classes, and the same label across classes.
/// Labels run over n = 0..N/2, the descending chain of distinct values.
inline std::vector<ExampleConstraint> closed_closed_example_constraints(int N, double gamma) {
  if (N < 3) throw ValidationError("closed ring needs N >= 3");
  if (!std::isfinite(gamma)) throw ValidationError("gamma must be finite");
  auto lam = [](int n, int a) { return "lambda[" + std::to_string(n) + "," + std::to_string(a) + "]"; };
  std::vector<ExampleConstraint> out;
  const int last = N / 2;
  for (int n = 0; n < last; ++n) {
    out.push_back({lam(n, 1) + "-" + lam(n + 1, 1), closed_closed_gap(N, gamma, n, 1, n + 1, 1)});
  }
  for (int n = 0; n < last; ++n) {
    out.push_back({lam(n, 1) + "-" + lam(n + 1, 2), closed_closed_gap(N, gamma, n, 1, n + 1, 2)});
  }
  for (int n = 0; n <= last; ++n) {
    out.push_back({lam(n, 1) + "-" + lam(n, 2), closed_closed_gap(N, gamma, n, 1, n, 2)});
  }
  return out;
}

}  // namespace helix_pst
