#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace polydisc {

using Point = std::complex<double>;
using PointConfig = std::vector<Point>;

struct Discriminant {
  double delta = 1.0;      // prod_{i<j} |z_i - z_j|^2; +inf when log_only
  double log_delta = 0.0;  // -inf when two points coincide
  bool log_only = false;   // delta not representable as a double
};

struct EvalReport {
  std::size_t n = 0;
  double delta = 1.0;
  double log_delta = 0.0;
  double delta_bar = 1.0;  // delta / n^n, no rescaling
  double log_delta_bar = 0.0;
  double diameter = 0.0;
  bool log_only = false;
};

Discriminant discriminant(const PointConfig& z);

// log(delta / n^n); with rescale the configuration is first scaled to diameter 2.
double log_normalized_discriminant(const PointConfig& z, bool rescale = true);
double normalized_discriminant(const PointConfig& z, bool rescale = true);

double diameter(const PointConfig& z);
double min_pairwise_distance(const PointConfig& z);
PointConfig normalize_to_diameter(const PointConfig& z, double target = 2.0);

// Indices of strict hull vertices in counter-clockwise order. Points within
// tol * diameter^2 (cross product) of a hull edge are not counted as vertices.
std::vector<std::size_t> convex_hull(const PointConfig& z, double tol = 1e-9);
bool is_convex_position(const PointConfig& z, double tol = 1e-9);

// Gradient of f = sum_{j<k} log |z_k - z_j|^2, laid out as (x_0, y_0, x_1, y_1, ...).
std::vector<double> objective_gradient(const PointConfig& z);

EvalReport evaluate(const PointConfig& z);

}  // namespace polydisc
