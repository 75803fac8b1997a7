#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "helix_pst/spectral.hpp"
#include "oracles.hpp"

using namespace helix_pst;
using std::numbers::pi;

namespace {

const BoundaryConditions kCC{Boundary::Closed, Boundary::Closed};
const BoundaryConditions kOO{Boundary::Open, Boundary::Open};
const BoundaryConditions kOC{Boundary::Open, Boundary::Closed};

std::vector<double> full_spectrum(const SpectralDecomposition& d) {
  std::vector<double> out;
  for (const auto& g : d.groups)
    for (int k = 0; k < g.multiplicity(); ++k) out.push_back(g.eigenvalue);
  return out;
}

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

void expect_projector_algebra(const SpectralDecomposition& d, double tol) {
  const Eigen::Index dim = d.dim;
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<Eigen::MatrixXcd> P;
  for (const auto& g : d.groups) P.push_back(g.projector());
  for (std::size_t k = 0; k < P.size(); ++k) {
    EXPECT_LT((P[k] * P[k] - P[k]).cwiseAbs().maxCoeff(), tol);
    EXPECT_LT((P[k] - P[k].adjoint()).cwiseAbs().maxCoeff(), tol);
    EXPECT_LT(P[k].imag().cwiseAbs().maxCoeff(), tol);
    for (std::size_t l = k + 1; l < P.size(); ++l) EXPECT_LT((P[k] * P[l]).cwiseAbs().maxCoeff(), tol);
    sum += P[k];
  }
  EXPECT_LT((sum - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff(), tol);
}

}  // namespace

TEST(Numeric, TriangleBlockSpectrum) {
  Eigen::Matrix3d k3;
  k3 << 0, 1, 1, 1, 0, 1, 1, 1, 0;
  const auto d = eigendecompose_numeric(SymmetricMatrix(k3, Units::Scaled));
  ASSERT_EQ(d.groups.size(), 2u);
  EXPECT_NEAR(d.groups[0].eigenvalue, -1.0, 1e-12);
  EXPECT_EQ(d.groups[0].multiplicity(), 2);
  EXPECT_NEAR(d.groups[1].eigenvalue, 2.0, 1e-12);
  EXPECT_EQ(d.groups[1].multiplicity(), 1);
}

TEST(Numeric, MatchesAnalyticN8Gamma3) {
  const auto spec = scaled_spec(8, kCC, 3.0);
  const auto numeric = eigendecompose_numeric(build_hamiltonian(spec));
  const auto analytic = eigendecompose_closed_closed_analytic(spec);
  ASSERT_EQ(numeric.groups.size(), analytic.groups.size());
  for (std::size_t k = 0; k < numeric.groups.size(); ++k) {
    EXPECT_NEAR(numeric.groups[k].eigenvalue, analytic.groups[k].eigenvalue, 1e-10);
  }
}

TEST(Numeric, OpenOpenTridiagonalFormula) {
  const int N = 5;
  const double J = 15.0, L = 1.0;
  std::vector<double> expected;
  for (int n = 0; n < N; ++n)
    for (int a = 1; a <= 3; ++a) expected.push_back(2 * J * std::cos((n + 1) * pi / (N + 1)) + 2 * L * std::cos(a * pi / 4));
  const auto got = full_spectrum(eigendecompose_numeric(build_hamiltonian(raw_spec(N, kOO, J, L))));
  const auto want = sorted(expected);
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t k = 0; k < got.size(); ++k) EXPECT_NEAR(got[k], want[k], 1e-9);
}

TEST(Numeric, OpenSitesClosedChannelsFormula) {
  const int N = 4;
  const double J = 9.4, L = 1.0;
  std::vector<double> expected;
  for (int n = 0; n < N; ++n)
    for (int a = 1; a <= 3; ++a) expected.push_back(2 * J * std::cos((n + 1) * pi / (N + 1)) + 2 * L * std::cos(2 * pi * a / 3));
  const auto got = full_spectrum(eigendecompose_numeric(build_hamiltonian(raw_spec(N, kOC, J, L))));
  const auto want = sorted(expected);
  for (std::size_t k = 0; k < got.size(); ++k) EXPECT_NEAR(got[k], want[k], 1e-9);
}

TEST(Analytic, PaperEigenvalues) {
  const auto pairs = eigenpairs_closed_closed_analytic(raw_spec(8, kCC, 3.0, 1.0));
  ASSERT_EQ(pairs.size(), 24u);
  auto value = [&](int n, int a) {
    for (const auto& p : pairs)
      if (p.label && *p.label == Label{n, a}) return p.value;
    return std::nan("");
  };
  EXPECT_NEAR(value(0, 1), 8.0, 1e-12);
  EXPECT_NEAR(value(0, 2), 5.0, 1e-12);
  EXPECT_NEAR(value(0, 3), 5.0, 1e-12);
  EXPECT_NEAR(value(4, 1), -4.0, 1e-12);
  EXPECT_NEAR(value(4, 2), -7.0, 1e-12);
}

TEST(Analytic, ZeroJ) {
  for (int N : {3, 4, 7}) {
    for (const auto& p : eigenpairs_closed_closed_analytic(raw_spec(N, kCC, 0.0, 1.5))) {
      EXPECT_NEAR(p.value, p.label->alpha == 1 ? 3.0 : -1.5, 1e-12);
    }
  }
}

TEST(Analytic, RejectsOtherTopologies) {
  EXPECT_THROW(eigenpairs_closed_closed_analytic(raw_spec(5, kOO, 1.0, 1.0)), ValidationError);
}

TEST(Analytic, EigenpairsSatisfyEigenEquationAndAreOrthonormal) {
  for (int N = 3; N <= 10; ++N) {
    const auto spec = raw_spec(N, kCC, 1.3, 0.8);
    const Eigen::MatrixXcd H = build_hamiltonian(spec).entries().cast<cplx>();
    const auto pairs = eigenpairs_closed_closed_analytic(spec);
    Eigen::MatrixXcd W(3 * N, 3 * N);
    for (int k = 0; k < 3 * N; ++k) {
      W.col(k) = pairs[k].vector;
      EXPECT_NEAR(pairs[k].vector.norm(), 1.0, 1e-12);
      EXPECT_LT((H * pairs[k].vector - pairs[k].value * pairs[k].vector).norm(), 1e-9 * H.cwiseAbs().maxCoeff());
    }
    EXPECT_LT((W.adjoint() * W - Eigen::MatrixXcd::Identity(3 * N, 3 * N)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Analytic, DegeneracyPattern) {
  for (int N = 3; N <= 12; ++N) {
    const double J = 2.2, L = 0.6;
    for (int n = 0; n < N; ++n) {
      for (int a = 1; a <= 3; ++a) {
        EXPECT_NEAR(analytic_eigenvalue(N, J, L, {n, a}), analytic_eigenvalue(N, J, L, {(N - n) % N, a}), 1e-12);
      }
      EXPECT_NEAR(analytic_eigenvalue(N, J, L, {n, 2}), analytic_eigenvalue(N, J, L, {n, 3}), 1e-12);
    }
  }
}

TEST(Analytic, ConjugatePairProjectorsAreReal) {
  const int N = 9;
  const auto pairs = eigenpairs_closed_closed_analytic(raw_spec(N, kCC, 1.0, 1.0));
  for (int n = 1; n < N; ++n) {
    const auto& v = pairs[3 * n].vector;           // (n, 1)
    const auto& w = pairs[3 * (N - n)].vector;     // (N-n, 1)
    const Eigen::MatrixXcd P = v * v.adjoint() + w * w.adjoint();
    EXPECT_LT(P.imag().cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(AnalyticVsNumeric, GridAgreement) {
  for (int N = 3; N <= 12; ++N) {
    for (double gamma : {0.5, 1.0, 3.0, 5.0}) {
      const auto spec = scaled_spec(N, kCC, gamma);
      const auto numeric = eigendecompose_numeric(build_hamiltonian(spec));
      const auto analytic = eigendecompose_closed_closed_analytic(spec);
      const auto a = full_spectrum(analytic), b = full_spectrum(numeric);
      ASSERT_EQ(a.size(), b.size());
      for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], 1e-9);
      ASSERT_EQ(numeric.groups.size(), analytic.groups.size()) << "N=" << N << " gamma=" << gamma;
      for (std::size_t k = 0; k < numeric.groups.size(); ++k) {
        EXPECT_EQ(numeric.groups[k].multiplicity(), analytic.groups[k].multiplicity());
        EXPECT_LT((numeric.groups[k].projector() - analytic.groups[k].projector()).cwiseAbs().maxCoeff(), 1e-8);
      }
    }
  }
}

TEST(DistinctCount, FormulaAgainstEnumeration) {
  // Enumerate 2 J cos(2 pi n / N) and count distinct values.
  for (int N = 3; N <= 40; ++N) {
    std::vector<double> values;
    for (int n = 0; n < N; ++n) values.push_back(std::cos(2 * pi * n / N));
    std::sort(values.begin(), values.end());
    int distinct = 1;
    for (std::size_t k = 1; k < values.size(); ++k)
      if (values[k] - values[k - 1] > 1e-9) ++distinct;
    const auto [c1, c2] = distinct_count_closed_closed(N);
    EXPECT_EQ(c1, distinct) << "N=" << N;
    EXPECT_EQ(c2, distinct) << "N=" << N;
  }
  EXPECT_EQ(distinct_count_closed_closed(5).first, 3);
  EXPECT_EQ(distinct_count_closed_closed(6).first, 4);
  EXPECT_EQ(distinct_count_closed_closed(8).first, 5);
  EXPECT_THROW(distinct_count_closed_closed(2), ValidationError);
}

TEST(DistinctCount, MatchesNumericGroupCount) {
  // gamma = sqrt(2) + 0.1 keeps the two channel classes apart for these N.
  for (int N = 3; N <= 16; ++N) {
    const auto d = decompose(scaled_spec(N, kCC, std::sqrt(2.0) + 0.1));
    const auto [c1, c2] = distinct_count_closed_closed(N);
    EXPECT_EQ(static_cast<int>(d.groups.size()), c1 + c2) << "N=" << N;
  }
}

TEST(Reconstruction, OwnDecompositionAllTopologies) {
  for (const auto& bc : oracle::kAllTopologies) {
    const auto H = build_hamiltonian(raw_spec(6, bc, 2.5, 1.0));
    const auto d = eigendecompose_numeric(H);
    EXPECT_LT(verify_reconstruction(d, H), 1e-9 * H.max_abs());
    expect_projector_algebra(d, 1e-10);
    int total = 0;
    for (const auto& g : d.groups) total += g.multiplicity();
    EXPECT_EQ(total, 18);
    for (std::size_t k = 1; k < d.groups.size(); ++k) {
      EXPECT_GT(d.groups[k].eigenvalue - d.groups[k - 1].eigenvalue, d.grouping_tol);
    }
  }
}

TEST(Reconstruction, DroppingAGroupCostsItsEigenvalue) {
  const auto H = build_hamiltonian(scaled_spec(5, kOO, 3.0));
  auto d = eigendecompose_numeric(H);
  const std::size_t victim = d.groups.size() - 1;  // largest eigenvalue, simple
  const double lambda = d.groups[victim].eigenvalue;
  const Eigen::MatrixXcd P = d.groups[victim].projector();
  d.groups[victim].basis.setZero();
  EXPECT_NEAR(verify_reconstruction(d, H), std::abs(lambda) * P.cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Reconstruction, AnalyticN8) {
  const auto spec = scaled_spec(8, kCC, 3.0);
  const auto d = eigendecompose_closed_closed_analytic(spec);
  EXPECT_LT(verify_reconstruction(d, build_hamiltonian(spec)), 1e-10);
  expect_projector_algebra(d, 1e-10);
}

TEST(Reconstruction, DimensionMismatch) {
  const auto d = decompose(scaled_spec(4, kCC, 1.0));
  EXPECT_THROW(verify_reconstruction(d, build_hamiltonian(scaled_spec(5, kCC, 1.0))), ValidationError);
}

TEST(Grouping, ZeroMatrixIsOneGroup) {
  const auto d = decompose(raw_spec(4, kOO, 0.0, 0.0));
  ASSERT_EQ(d.groups.size(), 1u);
  EXPECT_EQ(d.groups[0].multiplicity(), 12);
}
