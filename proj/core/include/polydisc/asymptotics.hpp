#pragma once

#include <complex>
#include <string>
#include <vector>

namespace polydisc {

struct ConstantReport {
  std::string name;
  double closed_form_value = 0.0;
  double alt_route_value = 0.0;
  std::string alt_route;
  double abs_discrepancy = 0.0;
  double tolerance = 0.0;

  bool ok() const { return abs_discrepancy <= tolerance; }
};

// Names: C1, C2, C3, Cstar, J, even_bound.
ConstantReport constant(const std::string& name);
std::vector<std::string> constant_names();

struct SeriesValue {
  double value = 0.0;      // truncated sum plus tail estimate
  double truncated = 0.0;
  double tail = 0.0;
  double error_estimate = 0.0;
};

// zeta(3) from the central-binomial series; error_estimate bounds the remainder.
SeriesValue zeta3_series();
double zeta3();

// Closed per-pair squared distances for the three junction regimes, for the arc
// polygon (B) and the regular polygon of unit diameter (A). Index i, j in 1..k.
struct RegimePair {
  int a = 0, b = 0;  // vertex indices mod 6k
  double b2 = 0.0;   // |B_a B_b|^2 from the closed formula
  double a2 = 0.0;   // |A_a A_b|^2
};
std::vector<RegimePair> regime_pairs(int regime, int k, int i, int j);

double log_regime_product(int regime, int k);
double regime_product(int regime, int k);

// Closed-form value of the regime integral (equal to -ln C_regime).
double regime_integral_closed(int regime);
// Gauss-Legendre quadrature over [0, pi/6]^2 with `nodes` per axis (32, 64 or 128)
// after splitting the square into two triangles collapsed at the corner.
double regime_integral_nodes(int regime, int nodes);
// 64 nodes, checked against 128; throws NumericalFailure if they differ by >= 1e-10.
double regime_integral(int regime);

SeriesValue J_series(long r_max);
double J_closed();

struct RhoStats {
  std::complex<double> sum;  // sum_{i != j} rho_ij
  double max_abs = 0.0;      // max |rho_ij|
  double mean_re_sq = 0.0;   // (1/n^2) sum_{i != j} Re(rho_ij^2)
  double max_abs_F = 0.0;    // max |Re(rho_ij^2)|
};
// rho_ij = (g_i zeta_i - g_j zeta_j)/(zeta_i - zeta_j) on the triwave lattice (m = 3).
RhoStats triwave_rho_stats(int n);
double J_riemann(int grid_n);

double rk_integral_check(int k, int l, int quad_n = 64);
double rk_integral_expected(int k, int l);

double tri_fourier_coefficient(int k);

// -(n t_n)^2 / 2 * J_discrete(n)
double triwave_prediction(int n);
// 7 zeta(3)/24 - pi^4/864
double triwave_log_limit();

// max over t in a uniform grid on [0, pi) of sum_{m<n} |cos(t - m pi/n)|.
double cos_sum_max(int n, long grid);

}  // namespace polydisc
