#pragma once

#include <vector>

#include "polydisc/diamgraph.hpp"
#include "polydisc/geometry.hpp"

namespace polydisc {

// Pairs with |z_i - z_j|^2 >= 4 (1 - rel_tol); expects a diameter-2 configuration.
std::vector<Edge> active_set(const PointConfig& z, double rel_tol = 1e-9);

struct MultiplierFit {
  std::vector<double> lambda;        // one per active pair, >= 0
  double residual_max = 0.0;         // max_k |LHS_k - RHS_k|
  double residual_2norm = 0.0;
  bool stationarity_possible = true;  // false when the active set is empty
};

// Nonnegative least-squares fit of
//   sum_{j != k} 1/(z_j - z_k) = sum_{pairs (j,k) active} lambda_jk (conj z_j - conj z_k).
MultiplierFit recover_multipliers(const PointConfig& z, const std::vector<Edge>& active);

struct KKTReport {
  std::vector<Edge> active_set;
  std::vector<double> multipliers;
  double stationarity_residual = 0.0;  // max-modulus form
  double residual_2norm = 0.0;
  double min_multiplier = 0.0;
  double complementarity_violation = 0.0;
  bool stationarity_possible = true;
  bool structural_failure = false;      // some point lies on no active pair
  std::vector<int> uncovered_points;

  bool passes(double tol = 1e-8) const;
};

// Rescales to diameter 2, then reports active set, multipliers and residuals.
KKTReport verify(const PointConfig& z, double rel_tol = 1e-9);

}  // namespace polydisc
