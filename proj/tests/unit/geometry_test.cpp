#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "polydisc/constructions.hpp"
#include "polydisc/errors.hpp"
#include "polydisc/geometry.hpp"

using namespace polydisc;

namespace {

const double kSqrt3 = std::sqrt(3.0);

PointConfig square() { return {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}; }

}  // namespace

TEST(Discriminant, TwoPoints) {
  const Discriminant d = discriminant({{0, 0}, {2, 0}});
  EXPECT_DOUBLE_EQ(d.delta, 4.0);
  EXPECT_FALSE(d.log_only);
}

TEST(Discriminant, EquilateralTriangleSideTwo) {
  const PointConfig z{{0, 0}, {2, 0}, {1, kSqrt3}};
  EXPECT_NEAR(discriminant(z).delta, 64.0, 64.0 * 1e-14);
}

TEST(Discriminant, SquareEqualsNToTheN) { EXPECT_NEAR(discriminant(square()).delta, 256.0, 1e-12); }

TEST(Discriminant, CoincidentPointsGiveZero) {
  const Discriminant d = discriminant({{0, 0}, {1, 1}, {0, 0}});
  EXPECT_EQ(d.delta, 0.0);
  EXPECT_TRUE(std::isinf(d.log_delta) && d.log_delta < 0);
}

TEST(Discriminant, RejectsNonFinite) {
  EXPECT_THROW(discriminant({{0, 0}, {NAN, 1}}), InvalidInput);
  EXPECT_THROW(discriminant({{0, 0}, {1, INFINITY}}), InvalidInput);
}

TEST(Discriminant, LargeConfigurationIsLogOnly) {
  const Discriminant d = discriminant(regular_ngon(200));
  EXPECT_TRUE(d.log_only);
  EXPECT_NEAR(d.log_delta, 200 * std::log(200.0), 1e-9);
}

TEST(Discriminant, MatchesLongDoubleOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto z = oracle::random_points(rng, 3 + trial % 10);
    EXPECT_NEAR(discriminant(z).log_delta, static_cast<double>(oracle::log_delta(z)), 1e-11);
  }
}

TEST(NormalizedDiscriminant, KnownValues) {
  EXPECT_NEAR(normalized_discriminant(kite4()), 16.0 * (7.0 - 4.0 * kSqrt3), 1e-13);
  EXPECT_NEAR(normalized_discriminant(regular_ngon(6)), 1.0, 1e-13);
  const double pent = std::pow(0.8, 5) * std::pow(std::sqrt(5.0) - 1.0, 10);
  EXPECT_NEAR(normalized_discriminant(regular_ngon(5)), pent, 1e-12 * pent);
}

TEST(NormalizedDiscriminant, Errors) {
  EXPECT_THROW(normalized_discriminant({}), InvalidInput);
  EXPECT_THROW(normalized_discriminant({{1, 1}, {1, 1}}), InvalidInput);
}

TEST(Diameter, Basics) {
  EXPECT_DOUBLE_EQ(diameter({{0, 0}, {2, 0}}), 2.0);
  EXPECT_THROW(diameter({{0, 0}}), InvalidInput);
  EXPECT_NEAR(diameter(arc_polygon(2).Y), std::cos(std::numbers::pi / 24.0), 1e-14);
}

TEST(Normalize, ScalesToTarget) {
  const PointConfig z = normalize_to_diameter({{0, 0}, {1, 0}}, 2.0);
  EXPECT_DOUBLE_EQ(z[1].real(), 2.0);
  EXPECT_THROW(normalize_to_diameter({{1, 1}, {1, 1}}), InvalidInput);
}

TEST(Normalize, AlreadyNormalizedIsUnchanged) {
  const PointConfig k = kite4();
  const PointConfig z = normalize_to_diameter(k);
  for (std::size_t i = 0; i < k.size(); ++i) EXPECT_NEAR(std::abs(z[i] - k[i]), 0.0, 1e-14);
}

TEST(Properties, ScalingLaw) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto z = oracle::random_points(rng, 3 + trial % 8);
    const double base = discriminant(z).log_delta;
    const double n = static_cast<double>(z.size());
    for (double s : {0.5, 2.0, 3.0}) {
      PointConfig w;
      for (Point p : z) w.push_back(s * p);
      EXPECT_NEAR(discriminant(w).log_delta - base, n * (n - 1) * std::log(s), 1e-9);
    }
  }
}

TEST(Properties, RigidMotionInvariance) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto z = oracle::random_points(rng, 4 + trial % 6);
    const Point shift(u(rng), u(rng));
    const Point rot = std::polar(1.0, u(rng));
    PointConfig w;
    for (Point p : z) w.push_back(rot * p + shift);
    const double a = discriminant(z).delta, b = discriminant(w).delta;
    EXPECT_NEAR(a, b, 1e-12 * a);
  }
}

TEST(Properties, LogSpaceConsistency) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Discriminant d = discriminant(oracle::random_points(rng, 3 + trial % 9));
    EXPECT_NEAR(std::exp(d.log_delta), d.delta, 1e-10 * d.delta);
  }
}

TEST(ConvexPosition, Examples) {
  EXPECT_TRUE(is_convex_position(square()));
  PointConfig with_centre = square();
  with_centre.emplace_back(0, 0);
  EXPECT_FALSE(is_convex_position(with_centre));
  EXPECT_THROW(is_convex_position({{0, 0}, {1, 0}, {0, 0}}), InvalidInput);
  EXPECT_EQ(convex_hull(regular_ngon(9)).size(), 9u);
}

TEST(ConvexPosition, CollinearMidpointIsNotAVertex) {
  EXPECT_FALSE(is_convex_position({{0, 0}, {1, 0}, {2, 0}, {1, 1}}));
}

TEST(Gradient, TwoPointHandValue) {
  const std::vector<double> g = objective_gradient({{-1, 0}, {1, 0}});
  EXPECT_NEAR(g[0], -1.0, 1e-15);
  EXPECT_NEAR(g[1], 0.0, 1e-15);
  EXPECT_NEAR(g[2], 1.0, 1e-15);
  EXPECT_NEAR(g[3], 0.0, 1e-15);
}

TEST(Gradient, RadialOnRegularEvenPolygon) {
  for (int n : {4, 6, 10}) {
    const PointConfig z = regular_ngon(n);
    const std::vector<double> g = objective_gradient(z);
    for (int k = 0; k < n; ++k) {
      const Point gk(g[2 * k], g[2 * k + 1]);
      const Point r = z[k] / std::abs(z[k]);
      EXPECT_NEAR((gk * std::conj(r)).imag(), 0.0, 1e-10);
    }
  }
}

TEST(Gradient, MatchesFiniteDifferences) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 10;
    const auto z = oracle::random_points(rng, n);
    if (oracle::max_dist(z) <= 0) continue;
    const std::vector<double> g = objective_gradient(z);
    const std::vector<double> fd = oracle::fd_gradient(z);
    double num = 0, den = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      num = std::max(num, std::abs(g[i] - fd[i]));
      den = std::max(den, std::abs(fd[i]));
    }
    EXPECT_LT(num / den, 1e-5) << "n=" << n;
  }
}

TEST(Gradient, RejectsCoincidentPoints) {
  EXPECT_THROW(objective_gradient({{0, 0}, {0, 0}, {1, 0}}), SingularConfiguration);
}

TEST(Evaluate, ReportsFields) {
  const EvalReport r = evaluate(kite4());
  EXPECT_EQ(r.n, 4);
  EXPECT_NEAR(r.diameter, 2.0, 1e-15);
  EXPECT_NEAR(r.delta_bar, 16.0 * (7.0 - 4.0 * kSqrt3), 1e-13);
}
