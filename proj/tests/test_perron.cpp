#include <gtest/gtest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include "radixion/perron.hpp"

using namespace radixion;

namespace {

double eigen_radius(const NonnegativeMatrix& a) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return m.eigenvalues().cwiseAbs().maxCoeff();
}

// Acyclic graphs: A^n = 0 exactly, which the dense solver only resolves to
// about eps^(1/n).
bool nilpotent(const NonnegativeMatrix& a) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) != 0.0;
  Eigen::MatrixXd p = m;
  for (Eigen::Index k = 1; k < n; ++k) p = (p * m).cwiseMin(1.0);
  return p.isZero();
}

NonnegativeMatrix random_sparse(std::mt19937_64& rng, std::size_t n, double density) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> w(1, 4);
  NonnegativeMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (u(rng) < density) a(i, j) = w(rng);
  return a;
}

}  // namespace

TEST(SpectralRadius, NilpotentIsZero) {
  NonnegativeMatrix a(3);
  a(0, 1) = 2;
  a(1, 2) = 5;
  const auto r = spectral_radius(a);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_EQ(r.components, 0u);
}

TEST(SpectralRadius, PeriodicPermutation) {
  NonnegativeMatrix a(2);
  a(0, 1) = 1;
  a(1, 0) = 1;
  EXPECT_NEAR(spectral_radius(a).value, 1.0, 1e-12);
}

TEST(SpectralRadius, ReducibleTakesLargestComponent) {
  // {0,1}: 2-cycle of weight 3 (radius 3); {2}: self loop 2; edge 0 -> 2
  NonnegativeMatrix a(3);
  a(0, 1) = 3;
  a(1, 0) = 3;
  a(2, 2) = 2;
  a(0, 2) = 7;
  const auto r = spectral_radius(a);
  EXPECT_NEAR(r.value, 3.0, 1e-10);
  EXPECT_EQ(r.components, 2u);
}

TEST(SpectralRadius, GoldenRatio) {
  NonnegativeMatrix a(2);
  a(0, 0) = 1;
  a(0, 1) = 1;
  a(1, 0) = 1;
  EXPECT_NEAR(spectral_radius(a).value, (1 + std::sqrt(5.0)) / 2, 1e-10);
}

TEST(SpectralRadius, AgreesWithDenseEigensolver) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 25);
    const double density = trial % 3 == 0 ? 0.08 : (trial % 3 == 1 ? 0.2 : 0.5);
    const auto a = random_sparse(rng, n, density);
    const double got = spectral_radius(a).value;
    if (nilpotent(a)) {
      EXPECT_EQ(got, 0.0) << "trial " << trial;
      continue;
    }
    const double expected = eigen_radius(a);
    ASSERT_NEAR(got, expected, 1e-8 * std::max(1.0, expected)) << "trial " << trial;
  }
}

TEST(StronglyConnectedComponents, PartitionVertices) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_sparse(rng, 30, 0.05);
    const auto comps = strongly_connected_components(a);
    std::vector<int> seen(30, 0);
    for (const auto& c : comps)
      for (auto v : c) ++seen[v];
    for (int s : seen) EXPECT_EQ(s, 1);
  }
}
