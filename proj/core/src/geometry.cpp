#include "polydisc/geometry.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "polydisc/errors.hpp"
#include "summation.hpp"

namespace polydisc {

namespace {

void require_finite(const PointConfig& z) {
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!std::isfinite(z[i].real()) || !std::isfinite(z[i].imag())) {
      throw InvalidInput("non-finite coordinate at point " + std::to_string(i));
    }
  }
}

double cross(Point o, Point a, Point b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
}

}  // namespace

Discriminant discriminant(const PointConfig& z) {
  require_finite(z);
  Discriminant d;
  detail::CompensatedSum acc;
  const std::size_t n = z.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r2 = std::norm(z[i] - z[j]);
      if (r2 == 0.0) {
        d.delta = 0.0;
        d.log_delta = -std::numeric_limits<double>::infinity();
        return d;
      }
      acc.add(std::log(r2));
    }
  }
  d.log_delta = acc.value();
  if (d.log_delta > std::log(DBL_MAX)) {
    d.log_only = true;
    d.delta = std::numeric_limits<double>::infinity();
  } else {
    d.delta = std::exp(d.log_delta);
  }
  return d;
}

double log_normalized_discriminant(const PointConfig& z, bool rescale) {
  const std::size_t n = z.size();
  if (n == 0) throw InvalidInput("normalized discriminant needs n >= 1");
  double log_delta = discriminant(z).log_delta;
  if (rescale) {
    const double d = n >= 2 ? diameter(z) : 0.0;
    if (d == 0.0) throw InvalidInput("zero diameter cannot be rescaled");
    log_delta += static_cast<double>(n * (n - 1)) * std::log(2.0 / d);
  }
  return log_delta - static_cast<double>(n) * std::log(static_cast<double>(n));
}

double normalized_discriminant(const PointConfig& z, bool rescale) {
  return std::exp(log_normalized_discriminant(z, rescale));
}

double diameter(const PointConfig& z) {
  if (z.size() < 2) throw InvalidInput("diameter needs n >= 2");
  require_finite(z);
  double best = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) best = std::max(best, std::norm(z[i] - z[j]));
  }
  return std::sqrt(best);
}

double min_pairwise_distance(const PointConfig& z) {
  if (z.size() < 2) throw InvalidInput("min_pairwise_distance needs n >= 2");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) best = std::min(best, std::norm(z[i] - z[j]));
  }
  return std::sqrt(best);
}

PointConfig normalize_to_diameter(const PointConfig& z, double target) {
  const double d = diameter(z);
  if (d == 0.0) throw InvalidInput("zero diameter cannot be rescaled");
  const double s = target / d;
  PointConfig out(z);
  if (s == 1.0) return out;
  for (auto& p : out) p *= s;
  return out;
}

std::vector<std::size_t> convex_hull(const PointConfig& z, double tol) {
  const std::size_t n = z.size();
  if (n < 3) throw InvalidInput("convex hull needs n >= 3");
  const double d = diameter(z);
  const double eps = tol * d * d;
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (z[a].real() != z[b].real()) return z[a].real() < z[b].real();
    return z[a].imag() < z[b].imag();
  });
  for (std::size_t k = 1; k < n; ++k) {
    if (z[idx[k]] == z[idx[k - 1]]) throw InvalidInput("coincident points in convex hull input");
  }
  // Andrew's monotone chain; only strict left turns survive.
  std::vector<std::size_t> hull(2 * n);
  std::size_t h = 0;
  for (std::size_t k = 0; k < n; ++k) {
    while (h >= 2 && cross(z[hull[h - 2]], z[hull[h - 1]], z[idx[k]]) <= eps) --h;
    hull[h++] = idx[k];
  }
  const std::size_t lower = h + 1;
  for (std::size_t k = n - 1; k-- > 0;) {
    while (h >= lower && cross(z[hull[h - 2]], z[hull[h - 1]], z[idx[k]]) <= eps) --h;
    hull[h++] = idx[k];
  }
  hull.resize(h - 1);
  return hull;
}

bool is_convex_position(const PointConfig& z, double tol) {
  return convex_hull(z, tol).size() == z.size();
}

std::vector<double> objective_gradient(const PointConfig& z) {
  require_finite(z);
  const std::size_t n = z.size();
  std::vector<double> g(2 * n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = k + 1; j < n; ++j) {
      const Point d = z[k] - z[j];
      const double r2 = std::norm(d);
      if (r2 == 0.0) {
        throw SingularConfiguration("points " + std::to_string(j) + " and " + std::to_string(k) + " coincide");
      }
      const double gx = 2.0 * d.real() / r2;
      const double gy = 2.0 * d.imag() / r2;
      g[2 * k] += gx;
      g[2 * k + 1] += gy;
      g[2 * j] -= gx;
      g[2 * j + 1] -= gy;
    }
  }
  return g;
}

EvalReport evaluate(const PointConfig& z) {
  EvalReport r;
  r.n = z.size();
  const Discriminant d = discriminant(z);
  r.delta = d.delta;
  r.log_delta = d.log_delta;
  r.log_only = d.log_only;
  if (r.n >= 1) {
    r.log_delta_bar = log_normalized_discriminant(z, false);
    r.delta_bar = std::exp(r.log_delta_bar);
  }
  r.diameter = r.n >= 2 ? diameter(z) : 0.0;
  return r;
}

}  // namespace polydisc
