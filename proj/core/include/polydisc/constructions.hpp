#pragma once

#include <optional>
#include <vector>

#include "polydisc/geometry.hpp"

namespace polydisc {

PointConfig regular_ngon(int n);

// Labelled as z1..z4 = sqrt3+i, 0, sqrt3-i, 2.
PointConfig kite4();

// z1..z6 = sqrt3+i, 0, sqrt3-i, 2, (sqrt3-1)(1+i), (sqrt3-1)(1-i).
PointConfig hexagon6();

// Free points z_1..z_m of the D3-symmetric 6m-point family; z_1 real, z_0 = z_1 - 2.
struct DihedralParams {
  std::vector<Point> z;  // z[0] is z_1, ..., z[m-1] is z_m

  int m() const { return static_cast<int>(z.size()); }
  // |z_{k+1} - z_k| - 2 for k = 1..m-1, then |z_m - e^{4 pi i/3} conj(z_m)| - 2.
  std::vector<double> constraint_residuals() const;
};

PointConfig dihedral_points(const DihedralParams& p);

// log Delta of the generated 6m points from the closed sixth-power product.
double dihedral_delta(const DihedralParams& p, double tol = 1e-10);

struct DodecagonResult {
  double alpha = 0.0;
  double dlog_dalpha = 0.0;  // derivative of log Delta-bar at alpha
  DihedralParams params;
  PointConfig config;
};

// z_1(alpha) = (4 sin(pi/3 + alpha) - 2)/sqrt3, z_2 = z_1 - 2 e^{i alpha}.
DihedralParams dodecagon_params(double alpha);
DodecagonResult dodecagon12();

struct ArcPolygon {
  int k = 0;
  int n = 0;
  double delta_angle = 0.0;  // pi / n
  PointConfig Y;             // vertex i is B_i, B_0 = B_n; diameter cos(pi/2n)
  PointConfig P;             // Y scaled to diameter 2
};

// Exterior angle at B_i in units of pi/n.
int arc_exterior_angle_units(int k, int i);
ArcPolygon arc_polygon(int k);

PointConfig sparse_arc(int n);

// 2pi-periodic triangular wave, 1 - 2|x|/pi on [-pi, pi].
double tri(double x);

struct TriwaveConfig {
  int n = 0;
  int m_frequency = 3;
  double amplitude = 0.0;
  std::vector<double> g;  // g(theta_k) = tri(m theta_k)
  PointConfig z;
};

// g_k = tri(m theta_k), evaluated exactly on the lattice theta_k = 2 pi k/n.
std::vector<double> triwave_profile(int n, int m_frequency = 3);

double triwave_default_amplitude(int n);  // pi^2/(12n) (1 - 1/n)
TriwaveConfig triwave(int n, int m_frequency = 3, std::optional<double> amplitude = std::nullopt);

}  // namespace polydisc
