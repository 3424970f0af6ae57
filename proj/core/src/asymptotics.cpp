#include "polydisc/asymptotics.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>

#include "polydisc/constructions.hpp"
#include "polydisc/errors.hpp"
#include "summation.hpp"

namespace polydisc {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);
const double kLn2 = std::log(2.0);
const double kLn3 = std::log(3.0);

void require_regime(int regime) {
  if (regime < 1 || regime > 3) throw InvalidInput("regime must be 1, 2 or 3");
}

// |B_{k-i} B_{2k+j}|^2 for the middle regime; A-side with d = 0.
double regime2_dist2(double x, double y, double dx, double dy) {
  const double re = 0.5 + std::cos(kPi / 6.0 + x + dx) * std::sin(x) + std::cos(kPi / 6.0 + y + dy) * std::sin(y);
  const double im = std::sin(kPi / 6.0 + x + dx) * std::sin(x) - std::sin(kPi / 6.0 + y + dy) * std::sin(y);
  return re * re + im * im;
}

// Integrand numerators h(b, c) and corner offsets phi.
double regime_h(int regime, double b, double c) {
  const double sb = std::sin(b), cb = std::cos(b), sc = std::sin(c), cc = std::cos(c);
  switch (regime) {
    case 1:
      return 2.0 * (sb * sb + sc * sc) * sb * sc * std::cos(b + c) + 4.0 * sb * sb * sc * sc;
    case 2: {
      const double cb2 = cb * cb, cc2 = cc * cc;
      return -0.25 + kSqrt3 / 8.0 * (-4.0 * sb * cb2 * cb - 4.0 * sc * cc2 * cc + 5.0 * sb * cb + 5.0 * sc * cc) +
             (3.0 - 4.0 * cc2) * cb2 * cb2 / 2.0 + 2.0 * sc * cc * sb * cb2 * cb +
             (-16.0 * cc2 * cc2 + 24.0 * cc2 - 7.0) * cb2 / 8.0 + 2.0 * sb * (cc2 - 1.5) * cc * sc * cb +
             1.5 * cc2 * cc2 - 7.0 * cc2 / 8.0;
    }
    default: {
      const double cb2 = cb * cb, cc2 = cc * cc;
      return 0.375 + kSqrt3 / 4.0 * (2.0 * sc * cc * cb2 + sb * (2.0 * cc2 - 1.0) * cb - sc * cc) +
             (2.0 * cc2 - 1.0) * cb2 / 4.0 - sc * cc * cb * sb / 2.0 - cc2 / 4.0;
    }
  }
}

double regime_H(int regime, double b, double c) {
  const double phi = (regime - 1) * kPi / 6.0;
  const double s = std::sin(b + c + phi);
  return regime_h(regime, b, c) / (s * s * s * s);
}

template <int N>
double duffy_integral(int regime) {
  using GL = boost::math::quadrature::gauss<double, N>;
  const double L = kPi / 6.0;
  // Triangle c <= b: c = b t, dc = b dt; the other triangle by symmetry of roles.
  auto tri_part = [&](bool swap) {
    return GL::integrate(
        [&](double b) {
          return b * GL::integrate(
                         [&](double t) { return swap ? regime_H(regime, b * t, b) : regime_H(regime, b, b * t); }, 0.0,
                         1.0);
        },
        0.0, L);
  };
  return tri_part(false) + tri_part(true);
}

void check_corner_bounded(int regime) {
  for (int a = 0; a <= 8; ++a) {
    const double ang = a * kPi / 16.0;
    const double v = regime_H(regime, 1e-7 * std::cos(ang) + 1e-300, 1e-7 * std::sin(ang) + 1e-300);
    if (!std::isfinite(v) || std::abs(v) > 1e3) {
      throw NumericalFailure("regime " + std::to_string(regime) + " integrand unbounded near the corner");
    }
  }
}

}  // namespace

SeriesValue zeta3_series() {
  // zeta(3) = 5/2 sum_{k>=1} (-1)^{k+1} / (k^3 binom(2k, k)); alternating, terms shrink like 4^-k.
  SeriesValue s;
  double binom = 1.0;
  double next = 0.0;
  const int terms = 40;
  for (int k = 1; k <= terms + 1; ++k) {
    binom *= 2.0 * (2.0 * k - 1.0) / k;
    const double term = (k % 2 == 1 ? 1.0 : -1.0) / (static_cast<double>(k) * k * k * binom);
    if (k <= terms) {
      s.truncated += term;
    } else {
      next = term;
    }
  }
  s.truncated *= 2.5;
  s.tail = 0.0;
  s.error_estimate = 2.5 * std::abs(next);
  s.value = s.truncated;
  return s;
}

double zeta3() { return zeta3_series().value; }

ConstantReport constant(const std::string& name) {
  ConstantReport r;
  r.name = name;
  const double pi2 = kPi * kPi;
  if (name == "C1" || name == "C2" || name == "C3") {
    const int regime = name[1] - '0';
    r.closed_form_value = std::exp(-regime_integral_closed(regime));
    r.alt_route_value = std::exp(-regime_integral(regime));
    r.alt_route = "exp(-I) with I the regime-" + std::to_string(regime) + " integral by 64-node Gauss-Legendre";
    r.tolerance = 1e-8;
  } else if (name == "Cstar") {
    r.closed_form_value = std::pow(3.0, 2.25) / 8.0 * std::exp((pi2 - 2.0 * kSqrt3 * kPi) / 8.0);
    const double lc = -regime_integral(1), l2 = -regime_integral(2), l3 = -regime_integral(3);
    r.alt_route_value = std::exp(pi2 / 8.0 + 3.0 * lc + 3.0 * l2 + 1.5 * l3);
    r.alt_route = "exp(pi^2/8) C1^3 C2^3 C3^(3/2) with each C from quadrature";
    r.tolerance = 1e-8;
  } else if (name == "J") {
    r.closed_form_value = J_closed();
    r.alt_route_value = J_series(100000).value;
    r.alt_route = "32/pi^4 sum over odd r <= 1e5 of (1-3r)/r^4 plus integral tail";
    r.tolerance = 1e-9;
  } else if (name == "even_bound") {
    r.closed_form_value = std::exp(7.0 * zeta3() / 24.0 - pi2 * pi2 / 864.0);
    r.alt_route_value = std::exp(-(pi2 / 12.0) * (pi2 / 12.0) * J_series(100000).value / 2.0);
    r.alt_route = "exp(-(pi^2/12)^2 J / 2) with J from the truncated series";
    r.tolerance = 1e-9;
  } else {
    throw InvalidInput("unknown constant '" + name + "'");
  }
  r.abs_discrepancy = std::abs(r.closed_form_value - r.alt_route_value);
  return r;
}

std::vector<std::string> constant_names() { return {"C1", "C2", "C3", "Cstar", "J", "even_bound"}; }

std::vector<RegimePair> regime_pairs(int regime, int k, int i, int j) {
  require_regime(regime);
  if (k < 1 || i < 1 || j < 1 || i > k || j > k) throw InvalidInput("regime pair indices out of range");
  const int n = 6 * k;
  const double d = kPi / n, x = i * d, y = j * d;
  auto wrap = [n](int v) { return ((v % n) + n) % n; };
  std::vector<RegimePair> out;
  if (regime == 1) {
    const double sx = std::sin(x), sy = std::sin(y);
    const double a2 = std::sin(x + y) * std::sin(x + y);
    out.push_back({wrap(k - i), wrap(k + j), sx * sx + sy * sy + 2.0 * sx * sy * std::cos(x + y - d), a2});
    out.push_back({wrap(2 * k - i), wrap(2 * k + j), sx * sx + sy * sy + 2.0 * sx * sy * std::cos(x + y + d), a2});
  } else if (regime == 2) {
    const double a2 = regime2_dist2(x, y, 0.0, 0.0);
    out.push_back({wrap(k - i), wrap(2 * k + j), regime2_dist2(x, y, -d, d), a2});
    out.push_back({wrap(2 * k - i), wrap(3 * k + j), regime2_dist2(x, y, d, -d), a2});
  } else {
    const double cb = std::cos(x - y - 0.5 * d), ca = std::cos(x - y);
    out.push_back({wrap(k - i), wrap(4 * k - j), cb * cb, ca * ca});
  }
  return out;
}

double log_regime_product(int regime, int k) {
  require_regime(regime);
  if (k < 1) throw InvalidInput("k must be >= 1");
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(k) * k);
  for (int i = 1; i <= k; ++i) {
    for (int j = 1; j <= k; ++j) {
      double t = 0.0;
      for (const RegimePair& p : regime_pairs(regime, k, i, j)) t += std::log(p.b2) - std::log(p.a2);
      terms.push_back(regime == 3 ? 2.0 * t : t);
    }
  }
  return detail::pairwise_sum(terms);
}

double regime_product(int regime, int k) { return std::exp(log_regime_product(regime, k)); }

double regime_integral_closed(int regime) {
  require_regime(regime);
  const double pis3 = kPi * kSqrt3 / 24.0;
  switch (regime) {
    case 1: return -0.25 + pis3 + kLn3 / 8.0;
    case 2: return 0.25 - 5.0 * kLn3 / 8.0 + pis3 + kLn2 / 2.0;
    default: return -kLn3 / 2.0 + kLn2;
  }
}

double regime_integral_nodes(int regime, int nodes) {
  require_regime(regime);
  check_corner_bounded(regime);
  switch (nodes) {
    case 32: return duffy_integral<32>(regime);
    case 64: return duffy_integral<64>(regime);
    case 128: return duffy_integral<128>(regime);
    default: throw InvalidInput("supported node counts: 32, 64, 128");
  }
}

double regime_integral(int regime) {
  const double v64 = regime_integral_nodes(regime, 64);
  const double v128 = regime_integral_nodes(regime, 128);
  if (!(std::abs(v64 - v128) < 1e-10)) {
    throw NumericalFailure("regime " + std::to_string(regime) + " quadrature not converged: " +
                           std::to_string(std::abs(v64 - v128)));
  }
  return v64;
}

SeriesValue J_series(long r_max) {
  if (r_max < 1) throw InvalidInput("r_max must be >= 1");
  const long last = r_max % 2 == 1 ? r_max : r_max - 1;
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(last / 2 + 1));
  for (long r = last; r >= 1; r -= 2) {
    const double rd = static_cast<double>(r);
    terms.push_back((1.0 - 3.0 * rd) / (rd * rd * rd * rd));
  }
  const double c = 32.0 / (kPi * kPi * kPi * kPi);
  SeriesValue s;
  s.truncated = c * detail::pairwise_sum(terms);
  // Odd r > last, each the midpoint of a width-2 cell: half the integral from a = last + 1.
  const double a = static_cast<double>(last) + 1.0;
  s.tail = c * 0.5 * (1.0 / (3.0 * a * a * a) - 1.5 / (a * a));
  s.error_estimate = c * (4.0 / std::pow(a, 5) + 9.0 / std::pow(a, 4)) / 12.0;
  s.value = s.truncated + s.tail;
  return s;
}

double J_closed() { return 1.0 / 3.0 - 84.0 * zeta3() / std::pow(kPi, 4); }

RhoStats triwave_rho_stats(int n) {
  if (n < 8 || n % 2 != 0) throw InvalidInput("grid size must be even >= 8");
  const std::vector<double> g = triwave_profile(n, 3);
  std::vector<Point> zeta(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) zeta[k] = std::polar(1.0, 2.0 * kPi * k / n);
  RhoStats st;
  std::vector<double> row_sums(static_cast<std::size_t>(n), 0.0);
  std::vector<Point> row_rho(static_cast<std::size_t>(n), Point(0.0, 0.0));
  for (int i = 0; i < n; ++i) {
    detail::CompensatedSum re_sq, rho_re, rho_im;
    const Point fi = g[i] * zeta[i];
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const Point rho = (fi - g[j] * zeta[j]) / (zeta[i] - zeta[j]);
      const double F = (rho * rho).real();
      re_sq.add(F);
      rho_re.add(rho.real());
      rho_im.add(rho.imag());
      st.max_abs = std::max(st.max_abs, std::abs(rho));
      st.max_abs_F = std::max(st.max_abs_F, std::abs(F));
    }
    row_sums[i] = re_sq.value();
    row_rho[i] = Point(rho_re.value(), rho_im.value());
  }
  st.mean_re_sq = detail::pairwise_sum(row_sums) / (static_cast<double>(n) * n);
  for (Point p : row_rho) st.sum += p;
  return st;
}

double J_riemann(int grid_n) { return triwave_rho_stats(grid_n).mean_re_sq; }

double rk_integral_check(int k, int l, int quad_n) {
  if (std::abs(k) > 8 || std::abs(l) > 8) throw InvalidInput("|k|, |l| must be <= 8");
  if (quad_n < std::abs(k) + std::abs(l) + 4) throw InvalidInput("quadrature grid too coarse for R_k R_l");
  // Trapezoid rule on the torus is exact for these trigonometric polynomials;
  // the y-grid is shifted half a cell so no node lies on the diagonal.
  const double h = 2.0 * kPi / quad_n;
  Point acc(0.0, 0.0);
  for (int a = 0; a < quad_n; ++a) {
    const double x = a * h;
    for (int b = 0; b < quad_n; ++b) {
      const double y = (b + 0.5) * h;
      const Point den = std::polar(1.0, x) - std::polar(1.0, y);
      const Point rk = (std::polar(1.0, k * x) - std::polar(1.0, k * y)) / den;
      const Point rl = (std::polar(1.0, l * x) - std::polar(1.0, l * y)) / den;
      acc += rk * rl;
    }
  }
  return acc.real() / (static_cast<double>(quad_n) * quad_n);
}

double rk_integral_expected(int k, int l) { return k + l == 2 ? 1.0 - std::abs(k - 1) : 0.0; }

double tri_fourier_coefficient(int k) {
  // tri is even and linear on [0, pi], so a_k = (2/pi) int_0^pi tri(x) cos(kx) dx.
  using GL = boost::math::quadrature::gauss<double, 64>;
  return 2.0 / kPi * GL::integrate([k](double x) { return tri(x) * std::cos(k * x); }, 0.0, kPi);
}

double triwave_prediction(int n) {
  const double nt = n * triwave_default_amplitude(n);
  return -nt * nt / 2.0 * J_riemann(n);
}

double triwave_log_limit() { return 7.0 * zeta3() / 24.0 - std::pow(kPi, 4) / 864.0; }

double cos_sum_max(int n, long grid) {
  if (n < 1 || grid < 1) throw InvalidInput("n and grid must be positive");
  const double d = kPi / n;
  double best = 0.0;
  for (long p = 0; p < grid; ++p) {
    const double t = kPi * static_cast<double>(p) / static_cast<double>(grid);
    double s = 0.0;
    for (int m = 0; m < n; ++m) s += std::abs(std::cos(t - m * d));
    best = std::max(best, s);
  }
  return best;
}

}  // namespace polydisc
