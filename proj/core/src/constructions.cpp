#include "polydisc/constructions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "polydisc/errors.hpp"

namespace polydisc {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);

// Complex value with a derivative along one real parameter.
struct Tangent {
  Point v;
  Point d{0.0, 0.0};
};

Tangent operator-(Tangent a, Tangent b) { return {a.v - b.v, a.d - b.d}; }
Tangent conj(Tangent a) { return {std::conj(a.v), std::conj(a.d)}; }
Tangent cube(Tangent a) { return {a.v * a.v * a.v, 3.0 * a.v * a.v * a.d}; }

// Adds c * log|w| and its derivative.
void add_log_abs(double c, Tangent w, double& value, double& deriv) {
  value += c * std::log(std::abs(w.v));
  deriv += c * (w.d / w.v).real();
}

// log Delta and d(log Delta)/d(parameter) from the sixth-power closed product.
void dihedral_log_delta(const std::vector<Tangent>& z, double& value, double& deriv) {
  const int m = static_cast<int>(z.size());
  const Tangent z1 = z[0];
  const Tangent z0{z1.v - 2.0, z1.d};
  const Tangent z0c = cube(z0), z1c = cube(z1);
  double s = m * std::log(3.0), ds = 0.0;
  add_log_abs(1.0, z0, s, ds);
  add_log_abs(1.0, z1, s, ds);
  add_log_abs(1.0, z0c - z1c, s, ds);
  for (int k = 1; k < m; ++k) {
    const Tangent zk = z[k];
    const Tangent zkc = cube(zk);
    add_log_abs(2.0, zk, s, ds);
    add_log_abs(2.0, z0c - zkc, s, ds);
    add_log_abs(2.0, z1c - zkc, s, ds);
    add_log_abs(1.0, zkc - cube(conj(zk)), s, ds);
    for (int j = 1; j < k; ++j) {
      const Tangent zjc = cube(z[j]);
      add_log_abs(2.0, zkc - zjc, s, ds);
      add_log_abs(2.0, zkc - cube(conj(z[j])), s, ds);
    }
  }
  value = 6.0 * s;
  deriv = 6.0 * ds;
}

struct AlphaEval {
  double log_delta_bar;
  double derivative;
};

AlphaEval eval_alpha(double alpha) {
  const double z1 = (4.0 * std::sin(kPi / 3.0 + alpha) - 2.0) / kSqrt3;
  const double dz1 = 4.0 * std::cos(kPi / 3.0 + alpha) / kSqrt3;
  const Point e = std::polar(1.0, alpha);
  std::vector<Tangent> z{{Point(z1, 0.0), Point(dz1, 0.0)},
                         {Point(z1, 0.0) - 2.0 * e, Point(dz1, 0.0) - 2.0 * Point(0.0, 1.0) * e}};
  double v = 0.0, d = 0.0;
  dihedral_log_delta(z, v, d);
  return {v - 12.0 * std::log(12.0), d};
}

double max_pair_distance(const PointConfig& z, int& wi, int& wj) {
  double best = -1.0;
  for (int i = 0; i < static_cast<int>(z.size()); ++i) {
    for (int j = i + 1; j < static_cast<int>(z.size()); ++j) {
      const double d = std::norm(z[i] - z[j]);
      if (d > best) {
        best = d;
        wi = i;
        wj = j;
      }
    }
  }
  return std::sqrt(best);
}

PointConfig triwave_points(int n, const std::vector<double>& g, double t) {
  PointConfig z(static_cast<std::size_t>(n));
  const int half = n / 2;
  for (int k = 0; k < half; ++k) {
    const Point zeta = std::polar(1.0, 2.0 * kPi * k / n);
    z[k] = (1.0 + t * g[k]) * zeta;
    z[k + half] = -(1.0 + t * g[k + half]) * zeta;
  }
  return z;
}

}  // namespace

PointConfig regular_ngon(int n) {
  if (n < 2) throw InvalidInput("regular polygon needs n >= 2");
  const double radius = n % 2 == 0 ? 1.0 : 1.0 / std::cos(kPi / (2.0 * n));
  PointConfig z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) z[k] = std::polar(radius, 2.0 * kPi * k / n);
  return z;
}

PointConfig kite4() { return {{kSqrt3, 1.0}, {0.0, 0.0}, {kSqrt3, -1.0}, {2.0, 0.0}}; }

PointConfig hexagon6() {
  const double a = kSqrt3 - 1.0;
  return {{kSqrt3, 1.0}, {0.0, 0.0}, {kSqrt3, -1.0}, {2.0, 0.0}, {a, a}, {a, -a}};
}

std::vector<double> DihedralParams::constraint_residuals() const {
  std::vector<double> r;
  for (std::size_t k = 0; k + 1 < z.size(); ++k) r.push_back(std::abs(z[k + 1] - z[k]) - 2.0);
  if (!z.empty()) {
    const Point w = std::polar(1.0, 4.0 * kPi / 3.0);
    r.push_back(std::abs(z.back() - w * std::conj(z.back())) - 2.0);
  }
  return r;
}

PointConfig dihedral_points(const DihedralParams& p) {
  if (p.z.empty()) throw InvalidInput("dihedral family needs m >= 1");
  std::vector<Point> base{p.z[0] - 2.0, p.z[0]};
  for (std::size_t k = 1; k < p.z.size(); ++k) {
    base.push_back(p.z[k]);
    base.push_back(std::conj(p.z[k]));
  }
  PointConfig out;
  for (int t = 0; t < 3; ++t) {
    const Point w = std::polar(1.0, 2.0 * kPi * t / 3.0);
    for (Point b : base) out.push_back(w * b);
  }
  return out;
}

double dihedral_delta(const DihedralParams& p, double tol) {
  if (p.z.empty()) throw InvalidInput("dihedral family needs m >= 1");
  if (std::abs(p.z[0].imag()) > tol) throw Infeasible("z_1 must be real");
  const auto res = p.constraint_residuals();
  for (std::size_t i = 0; i < res.size(); ++i) {
    if (std::abs(res[i]) > tol) {
      throw Infeasible("dihedral constraint " + std::to_string(i + 1) + " violated by " + std::to_string(res[i]));
    }
  }
  std::vector<Tangent> z;
  for (Point q : p.z) z.push_back({q});
  double v = 0.0, d = 0.0;
  dihedral_log_delta(z, v, d);
  return v;
}

DihedralParams dodecagon_params(double alpha) {
  const double z1 = (4.0 * std::sin(kPi / 3.0 + alpha) - 2.0) / kSqrt3;
  return DihedralParams{{Point(z1, 0.0), Point(z1, 0.0) - 2.0 * std::polar(1.0, alpha)}};
}

DodecagonResult dodecagon12() {
  // Golden-section bracket on (0, pi/6], then safeguarded secant on the derivative.
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 1e-6, b = kPi / 6.0;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = eval_alpha(c).log_delta_bar, fd = eval_alpha(d).log_delta_bar;
  while (b - a > 1e-5) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = eval_alpha(c).log_delta_bar;
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = eval_alpha(d).log_delta_bar;
    }
  }
  double lo = a, hi = b;
  double glo = eval_alpha(lo).derivative, ghi = eval_alpha(hi).derivative;
  if (!(glo > 0.0 && ghi < 0.0)) throw NumericalFailure("dodecagon derivative does not bracket a maximum");
  double x = 0.5 * (lo + hi);
  AlphaEval ex = eval_alpha(x);
  for (int it = 0; it < 200 && ex.derivative != 0.0; ++it) {
    if (ex.derivative > 0.0) {
      lo = x;
      glo = ex.derivative;
    } else {
      hi = x;
      ghi = ex.derivative;
    }
    double next = lo - glo * (hi - lo) / (ghi - glo);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x || hi - lo < 1e-16) break;
    x = next;
    ex = eval_alpha(x);
  }
  DodecagonResult r;
  r.alpha = x;
  r.dlog_dalpha = ex.derivative;
  r.params = dodecagon_params(x);
  r.config = dihedral_points(r.params);
  return r;
}

int arc_exterior_angle_units(int k, int i) {
  const int n = 6 * k;
  const int r = ((i % n) + n) % n;
  if (r % k != 0) return 2;
  const int j = r / k;
  return j % 2 == 1 ? 1 : 3;
}

ArcPolygon arc_polygon(int k) {
  if (k < 1) throw InvalidInput("arc polygon needs k >= 1");
  ArcPolygon a;
  a.k = k;
  a.n = 6 * k;
  a.delta_angle = kPi / a.n;
  const double side = std::sin(a.delta_angle);
  a.Y.resize(static_cast<std::size_t>(a.n));
  Point cur(0.0, 0.0);
  int units = 0;
  for (int r = 0; r < a.n; ++r) {
    a.Y[r] = cur;
    if (r > 0) units += arc_exterior_angle_units(k, r);
    cur += std::polar(side, units * a.delta_angle);
  }
  Point centroid(0.0, 0.0);
  for (Point p : a.Y) centroid += p;
  centroid /= static_cast<double>(a.n);
  for (Point& p : a.Y) p -= centroid;
  const double scale = 2.0 / std::cos(kPi / (2.0 * a.n));
  a.P.reserve(a.Y.size());
  for (Point p : a.Y) a.P.push_back(scale * p);
  return a;
}

PointConfig sparse_arc(int n) {
  if (n < 4 || n % 2 != 0) throw InvalidInput("sparse arc needs even n >= 4");
  const ArcPolygon a = arc_polygon(n / 2);
  const double scale = 2.0 / std::cos(kPi / (6.0 * n));
  PointConfig z;
  z.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < 3 * n; i += 3) z.push_back(scale * a.Y[i]);
  return z;
}

double tri(double x) {
  const double r = std::remainder(x, 2.0 * kPi);
  return 1.0 - 2.0 * std::abs(r) / kPi;
}

std::vector<double> triwave_profile(int n, int m_frequency) {
  if (n < 1) throw InvalidInput("lattice size must be positive");
  // tri(m theta_k) = 1 - 4|r|/n with r = m k mod n folded to [0, n/2]; exact and antiperiodic.
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    long long r = (static_cast<long long>(m_frequency) * k) % n;
    if (r > n / 2) r = n - r;
    g[k] = static_cast<double>(n - 4 * r) / n;
  }
  return g;
}

double triwave_default_amplitude(int n) { return kPi * kPi / (12.0 * n) * (1.0 - 1.0 / n); }

TriwaveConfig triwave(int n, int m_frequency, std::optional<double> amplitude) {
  if (n < 8 || n % 2 != 0) throw InvalidInput("n must be even >= 8");
  if (m_frequency < 1 || m_frequency % 2 == 0) throw InvalidInput("frequency m must be odd >= 1");
  TriwaveConfig c;
  c.n = n;
  c.m_frequency = m_frequency;
  c.g = triwave_profile(n, m_frequency);
  int wi = 0, wj = 0;
  if (amplitude) {
    c.amplitude = *amplitude;
  } else if (m_frequency == 3) {
    c.amplitude = triwave_default_amplitude(n);
  } else {
    const double t0 = triwave_default_amplitude(n);
    auto feasible = [&](double s) { return max_pair_distance(triwave_points(n, c.g, s * t0), wi, wj) <= 2.0 + 1e-13; };
    double s = 1.0;
    if (!feasible(1.0)) {
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? lo : hi) = mid;
      }
      s = lo;
    }
    c.amplitude = s * t0;
  }
  c.z = triwave_points(n, c.g, c.amplitude);
  const double dmax = max_pair_distance(c.z, wi, wj);
  if (dmax > 2.0 + 1e-12) {
    throw Infeasible("triwave infeasible: |z_" + std::to_string(wi) + " - z_" + std::to_string(wj) +
                     "| = " + std::to_string(dmax) + " > 2");
  }
  return c;
}

}  // namespace polydisc
