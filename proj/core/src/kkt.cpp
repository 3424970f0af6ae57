#include "polydisc/kkt.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "polydisc/errors.hpp"

namespace polydisc {

namespace {

// Lawson-Hanson active-set NNLS: min |Ax - b| subject to x >= 0.
Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  const Eigen::Index m = A.cols();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
  std::vector<bool> passive(static_cast<std::size_t>(m), false);
  const double tol = 1e-13 * std::max(1.0, A.cwiseAbs().maxCoeff()) * std::max(1.0, b.cwiseAbs().maxCoeff());

  auto solve_passive = [&]() {
    std::vector<Eigen::Index> cols;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (passive[j]) cols.push_back(j);
    }
    Eigen::MatrixXd Ap(A.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) Ap.col(static_cast<Eigen::Index>(c)) = A.col(cols[c]);
    const Eigen::VectorXd sp = Ap.colPivHouseholderQr().solve(b);
    Eigen::VectorXd s = Eigen::VectorXd::Zero(m);
    for (std::size_t c = 0; c < cols.size(); ++c) s[cols[c]] = sp[static_cast<Eigen::Index>(c)];
    return s;
  };

  for (int outer = 0; outer < 3 * m + 10; ++outer) {
    const Eigen::VectorXd w = A.transpose() * (b - A * x);
    Eigen::Index best = -1;
    double wmax = tol;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (!passive[j] && w[j] > wmax) {
        wmax = w[j];
        best = j;
      }
    }
    if (best < 0) break;
    passive[best] = true;
    for (int inner = 0; inner < 3 * m + 10; ++inner) {
      const Eigen::VectorXd s = solve_passive();
      double alpha = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < m; ++j) {
        if (passive[j] && s[j] <= 0.0) alpha = std::min(alpha, x[j] / (x[j] - s[j]));
      }
      if (!std::isfinite(alpha)) {
        x = s;
        break;
      }
      x += alpha * (s - x);
      for (Eigen::Index j = 0; j < m; ++j) {
        if (passive[j] && x[j] <= tol) {
          passive[j] = false;
          x[j] = 0.0;
        }
      }
    }
  }
  return x;
}

}  // namespace

std::vector<Edge> active_set(const PointConfig& z, double rel_tol) {
  std::vector<Edge> out;
  const double cutoff = 4.0 * (1.0 - rel_tol);
  for (int i = 0; i < static_cast<int>(z.size()); ++i) {
    for (int j = i + 1; j < static_cast<int>(z.size()); ++j) {
      if (std::norm(z[i] - z[j]) >= cutoff) out.emplace_back(i, j);
    }
  }
  return out;
}

MultiplierFit recover_multipliers(const PointConfig& z, const std::vector<Edge>& active) {
  const int n = static_cast<int>(z.size());
  Eigen::VectorXd rhs(2 * n);
  for (int k = 0; k < n; ++k) {
    Point s(0.0, 0.0);
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      const Point d = z[j] - z[k];
      if (d == Point(0.0, 0.0)) throw SingularConfiguration("coincident points in multiplier recovery");
      s += 1.0 / d;
    }
    rhs[2 * k] = s.real();
    rhs[2 * k + 1] = s.imag();
  }
  MultiplierFit fit;
  Eigen::VectorXd resid = rhs;
  if (active.empty()) {
    fit.stationarity_possible = false;
  } else {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * n, static_cast<Eigen::Index>(active.size()));
    for (std::size_t e = 0; e < active.size(); ++e) {
      const auto [a, b] = active[e];
      const Point ca = std::conj(z[b]) - std::conj(z[a]);
      const auto col = static_cast<Eigen::Index>(e);
      A(2 * a, col) = ca.real();
      A(2 * a + 1, col) = ca.imag();
      A(2 * b, col) = -ca.real();
      A(2 * b + 1, col) = -ca.imag();
    }
    const Eigen::VectorXd x = nnls(A, rhs);
    fit.lambda.assign(x.data(), x.data() + x.size());
    resid = rhs - A * x;
  }
  for (int k = 0; k < n; ++k) {
    fit.residual_max = std::max(fit.residual_max, std::hypot(resid[2 * k], resid[2 * k + 1]));
  }
  fit.residual_2norm = resid.norm();
  return fit;
}

bool KKTReport::passes(double tol) const {
  return stationarity_possible && !structural_failure && stationarity_residual < tol && min_multiplier >= -1e-10 &&
         complementarity_violation < 1e-8;
}

KKTReport verify(const PointConfig& z, double rel_tol) {
  if (z.size() < 2) throw InvalidInput("KKT verification needs n >= 2");
  if (min_pairwise_distance(z) == 0.0) throw InvalidInput("coincident points in KKT verification");
  const PointConfig w = normalize_to_diameter(z, 2.0);
  KKTReport r;
  r.active_set = active_set(w, rel_tol);
  const MultiplierFit fit = recover_multipliers(w, r.active_set);
  r.multipliers = fit.lambda;
  r.stationarity_residual = fit.residual_max;
  r.residual_2norm = fit.residual_2norm;
  r.stationarity_possible = fit.stationarity_possible;
  r.min_multiplier = fit.lambda.empty() ? 0.0 : *std::min_element(fit.lambda.begin(), fit.lambda.end());
  std::vector<int> deg(w.size(), 0);
  for (std::size_t e = 0; e < r.active_set.size(); ++e) {
    const auto [a, b] = r.active_set[e];
    ++deg[a];
    ++deg[b];
    const double g = std::norm(w[a] - w[b]) - 4.0;
    r.complementarity_violation = std::max(r.complementarity_violation, std::abs(fit.lambda[e] * g));
  }
  for (int k = 0; k < static_cast<int>(w.size()); ++k) {
    if (deg[k] == 0) r.uncovered_points.push_back(k);
  }
  r.structural_failure = !r.uncovered_points.empty();
  return r;
}

}  // namespace polydisc
