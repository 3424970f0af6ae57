#include "polydisc/optimize.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "polydisc/errors.hpp"
#include "polydisc/kkt.hpp"

namespace polydisc {

namespace {

constexpr double kPi = std::numbers::pi;
using Vec = std::vector<double>;

Vec to_vec(const PointConfig& z) {
  Vec x(2 * z.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    x[2 * k] = z[k].real();
    x[2 * k + 1] = z[k].imag();
  }
  return x;
}

PointConfig to_points(const Vec& x) {
  PointConfig z(x.size() / 2);
  for (std::size_t k = 0; k < z.size(); ++k) z[k] = Point(x[2 * k], x[2 * k + 1]);
  return z;
}

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// f - sum_{graph} (lambda_e g_e + mu g_e^2) - mu sum_{other} max(0, g)^2, g = |z_i - z_j|^2 - 4.
struct Penalty {
  int n = 0;
  double mu = 1.0;
  std::vector<int> graph_slot;  // n*n, -1 for pairs outside the graph
  std::vector<double> lambda;

  double value(const Vec& x, Vec* grad) const {
    if (grad) grad->assign(x.size(), 0.0);
    double phi = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double dx = x[2 * i] - x[2 * j], dy = x[2 * i + 1] - x[2 * j + 1];
        const double r2 = dx * dx + dy * dy;
        if (r2 == 0.0) return -std::numeric_limits<double>::infinity();
        phi += std::log(r2);
        const double g = r2 - 4.0;
        double c = 0.0;
        const int slot = graph_slot[i * n + j];
        if (slot >= 0) {
          phi -= lambda[slot] * g + mu * g * g;
          c = lambda[slot] + 2.0 * mu * g;
        } else if (g > 0.0) {
          phi -= mu * g * g;
          c = 2.0 * mu * g;
        }
        if (grad) {
          const double w = 2.0 / r2 - 2.0 * c;
          (*grad)[2 * i] += w * dx;
          (*grad)[2 * i + 1] += w * dy;
          (*grad)[2 * j] -= w * dx;
          (*grad)[2 * j + 1] -= w * dy;
        }
      }
    }
    return phi;
  }

  double violation(const Vec& x) const {
    double v = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double dx = x[2 * i] - x[2 * j], dy = x[2 * i + 1] - x[2 * j + 1];
        const double g = dx * dx + dy * dy - 4.0;
        v = std::max(v, graph_slot[i * n + j] >= 0 ? std::abs(g) : g);
      }
    }
    return v;
  }
};

struct AscentOutcome {
  Vec x;
  int iterations = 0;
  bool capped = false;
  bool stalled = false;
};

AscentOutcome ascend(Vec x, Penalty& pen, const OptimizeOptions& o, bool rescale_between_stages,
                     std::vector<TracePoint>* trace) {
  AscentOutcome out;
  const int stage_cap = std::max(100, o.max_iters / 4);
  double step = o.step_init;
  for (int stage = 0;; ++stage) {
    Vec g, gt, xt(x.size());
    double phi = pen.value(x, &g);
    int stage_iters = 0;
    while (true) {
      double gmax = 0.0;
      for (double v : g) gmax = std::max(gmax, std::abs(v));
      if (gmax < 1e-7 || stage_iters >= stage_cap) break;
      if (out.iterations >= o.max_iters) {
        out.capped = true;
        break;
      }
      const double g2 = dot(g, g);
      double s = step;
      double phit = 0.0;
      bool accepted = false;
      while (s > 1e-18) {
        for (std::size_t i = 0; i < x.size(); ++i) xt[i] = x[i] + s * g[i];
        phit = pen.value(xt, &gt);
        if (phit >= phi + 1e-4 * s * g2) {
          accepted = true;
          break;
        }
        s *= 0.5;
      }
      if (!accepted) {
        out.stalled = true;
        break;
      }
      // Barzilai-Borwein length for the next trial step.
      double ss = 0.0, sy = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double si = xt[i] - x[i];
        ss += si * si;
        sy -= si * (gt[i] - g[i]);
      }
      step = sy > 0.0 ? std::clamp(ss / sy, 1e-12, 1e3) : 2.0 * s;
      x.swap(xt);
      g.swap(gt);
      phi = phit;
      ++out.iterations;
      ++stage_iters;
      if (trace) {
        TracePoint tp;
        tp.iteration = out.iterations;
        tp.stage = stage;
        tp.mu = pen.mu;
        tp.penalized = phi;
        tp.log_delta_bar = log_normalized_discriminant(to_points(x), true);
        tp.step = s;
        trace->push_back(tp);
      }
    }
    if (out.capped || out.stalled) break;
    const double viol = pen.violation(x);
    for (int i = 0; i < pen.n; ++i) {
      for (int j = i + 1; j < pen.n; ++j) {
        const int slot = pen.graph_slot[i * pen.n + j];
        if (slot < 0) continue;
        const double dx = x[2 * i] - x[2 * j], dy = x[2 * i + 1] - x[2 * j + 1];
        pen.lambda[slot] += 2.0 * pen.mu * (dx * dx + dy * dy - 4.0);
      }
    }
    if (viol <= 1e-4 || pen.mu * o.penalty_growth > o.penalty_max) break;
    pen.mu *= o.penalty_growth;
    if (rescale_between_stages) x = to_vec(normalize_to_diameter(to_points(x), 2.0));
  }
  out.x = std::move(x);
  return out;
}

// Newton's method on the KKT system with the pairs in E as equalities and
// translation/rotation fixed by three linear gauge constraints.
struct NewtonOutcome {
  bool converged = false;
  Vec x;
  Eigen::VectorXd lambda;
};

void assemble(const Vec& x, const std::vector<Edge>& E, const Eigen::VectorXd& lambda, const Eigen::Vector3d& nu,
              const Vec& ref, const Eigen::Vector3d& gauge0, Eigen::VectorXd* r, Eigen::MatrixXd* J) {
  const int n = static_cast<int>(x.size() / 2);
  const int m = static_cast<int>(E.size());
  const int dim = 2 * n + m + 3;
  r->setZero(dim);
  if (J) J->setZero(dim, dim);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dx = x[2 * i] - x[2 * j], dy = x[2 * i + 1] - x[2 * j + 1];
      const double r2 = dx * dx + dy * dy;
      (*r)[2 * i] += 2.0 * dx / r2;
      (*r)[2 * i + 1] += 2.0 * dy / r2;
      (*r)[2 * j] -= 2.0 * dx / r2;
      (*r)[2 * j + 1] -= 2.0 * dy / r2;
      if (J) {
        const double r4 = r2 * r2;
        const double hxx = 2.0 * (dy * dy - dx * dx) / r4, hxy = -4.0 * dx * dy / r4, hyy = -hxx;
        const int bi[2] = {2 * i, 2 * j};
        const double sg[2] = {1.0, -1.0};
        for (int p = 0; p < 2; ++p) {
          for (int q = 0; q < 2; ++q) {
            const double s = sg[p] * sg[q];
            (*J)(bi[p], bi[q]) += s * hxx;
            (*J)(bi[p], bi[q] + 1) += s * hxy;
            (*J)(bi[p] + 1, bi[q]) += s * hxy;
            (*J)(bi[p] + 1, bi[q] + 1) += s * hyy;
          }
        }
      }
    }
  }
  for (int e = 0; e < m; ++e) {
    const auto [a, b] = E[e];
    const double dx = x[2 * a] - x[2 * b], dy = x[2 * a + 1] - x[2 * b + 1];
    const double lam = lambda[e];
    (*r)[2 * a] -= lam * 2.0 * dx;
    (*r)[2 * a + 1] -= lam * 2.0 * dy;
    (*r)[2 * b] += lam * 2.0 * dx;
    (*r)[2 * b + 1] += lam * 2.0 * dy;
    (*r)[2 * n + e] = dx * dx + dy * dy - 4.0;
    if (J) {
      const int row = 2 * n + e;
      const double grad[4] = {2.0 * dx, 2.0 * dy, -2.0 * dx, -2.0 * dy};
      const int idx[4] = {2 * a, 2 * a + 1, 2 * b, 2 * b + 1};
      for (int t = 0; t < 4; ++t) {
        (*J)(row, idx[t]) = grad[t];
        (*J)(idx[t], row) = -grad[t];
      }
      for (int c = 0; c < 2; ++c) {
        (*J)(2 * a + c, 2 * a + c) -= 2.0 * lam;
        (*J)(2 * b + c, 2 * b + c) -= 2.0 * lam;
        (*J)(2 * a + c, 2 * b + c) += 2.0 * lam;
        (*J)(2 * b + c, 2 * a + c) += 2.0 * lam;
      }
    }
  }
  const int g0 = 2 * n + m;
  Eigen::Vector3d gauge = -gauge0;
  for (int k = 0; k < n; ++k) {
    const double gx[3] = {1.0, 0.0, -ref[2 * k + 1]};
    const double gy[3] = {0.0, 1.0, ref[2 * k]};
    for (int c = 0; c < 3; ++c) {
      gauge[c] += gx[c] * x[2 * k] + gy[c] * x[2 * k + 1];
      (*r)[2 * k] -= nu[c] * gx[c];
      (*r)[2 * k + 1] -= nu[c] * gy[c];
      if (J) {
        (*J)(g0 + c, 2 * k) = gx[c];
        (*J)(g0 + c, 2 * k + 1) = gy[c];
        (*J)(2 * k, g0 + c) = -gx[c];
        (*J)(2 * k + 1, g0 + c) = -gy[c];
      }
    }
  }
  for (int c = 0; c < 3; ++c) (*r)[g0 + c] = gauge[c];
}

NewtonOutcome newton_kkt(Vec x, const std::vector<Edge>& E) {
  const int n = static_cast<int>(x.size() / 2);
  const int m = static_cast<int>(E.size());
  NewtonOutcome out;
  const Vec ref = x;
  Eigen::Vector3d gauge0 = Eigen::Vector3d::Zero();
  for (int k = 0; k < n; ++k) {
    gauge0[0] += x[2 * k];
    gauge0[1] += x[2 * k + 1];
  }
  // Least-squares multipliers as the starting guess.
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(m);
  {
    Eigen::VectorXd r0;
    assemble(x, {}, Eigen::VectorXd(), Eigen::Vector3d::Zero(), ref, gauge0, &r0, nullptr);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * n, m);
    for (int e = 0; e < m; ++e) {
      const auto [a, b] = E[e];
      const double dx = x[2 * a] - x[2 * b], dy = x[2 * a + 1] - x[2 * b + 1];
      A(2 * a, e) = 2.0 * dx;
      A(2 * a + 1, e) = 2.0 * dy;
      A(2 * b, e) = -2.0 * dx;
      A(2 * b + 1, e) = -2.0 * dy;
    }
    if (m > 0) lambda = A.colPivHouseholderQr().solve(r0.head(2 * n));
  }
  Eigen::Vector3d nu = Eigen::Vector3d::Zero();
  const double tol = 1e-11 * std::max(1, n);
  Eigen::VectorXd r;
  Eigen::MatrixXd J;
  for (int it = 0; it < 60; ++it) {
    assemble(x, E, lambda, nu, ref, gauge0, &r, &J);
    const double rnorm = r.norm();
    if (!std::isfinite(rnorm)) return out;
    if (r.cwiseAbs().maxCoeff() < tol) {
      out.converged = true;
      break;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
    Eigen::VectorXd dw;
    if (lu.isInvertible()) {
      dw = lu.solve(-r);
    } else {
      dw = J.completeOrthogonalDecomposition().solve(-r);
    }
    double t = 1.0;
    bool moved = false;
    Eigen::VectorXd rt;
    while (t > 1e-6) {
      Vec xt(x);
      for (int i = 0; i < 2 * n; ++i) xt[i] += t * dw[i];
      const Eigen::VectorXd lt = lambda + t * dw.segment(2 * n, m);
      const Eigen::Vector3d nt = nu + t * dw.segment(2 * n + m, 3);
      assemble(xt, E, lt, nt, ref, gauge0, &rt, nullptr);
      if (std::isfinite(rt.norm()) && rt.norm() < (1.0 - 1e-4 * t) * rnorm) {
        x = std::move(xt);
        lambda = lt;
        nu = nt;
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) {
      out.converged = r.cwiseAbs().maxCoeff() < 1e3 * tol;
      break;
    }
  }
  out.x = std::move(x);
  out.lambda = std::move(lambda);
  return out;
}

// Largest eigenvalue of the Lagrangian Hessian on the tangent space of the
// strongly active constraints and the gauge, relative to the Hessian scale.
double reduced_hessian_max_eig(const Vec& x, const std::vector<Edge>& E, const Eigen::VectorXd& lambda,
                               const std::vector<bool>& keep) {
  const int n = static_cast<int>(x.size() / 2);
  Eigen::VectorXd r;
  Eigen::MatrixXd J;
  assemble(x, E, lambda, Eigen::Vector3d::Zero(), x, Eigen::Vector3d::Zero(), &r, &J);
  const Eigen::MatrixXd H = J.topLeftCorner(2 * n, 2 * n);
  std::vector<Eigen::VectorXd> rows;
  for (std::size_t e = 0; e < E.size(); ++e) {
    if (!keep[e]) continue;
    rows.push_back(J.block(2 * n + static_cast<int>(e), 0, 1, 2 * n).transpose());
  }
  const int m = static_cast<int>(E.size());
  for (int c = 0; c < 3; ++c) rows.push_back(J.block(2 * n + m + c, 0, 1, 2 * n).transpose());
  Eigen::MatrixXd C(static_cast<Eigen::Index>(rows.size()), 2 * n);
  for (std::size_t i = 0; i < rows.size(); ++i) C.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(C, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = 1e-10 * std::max(1.0, sv.size() ? sv[0] : 1.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv[i] > cut;
  const int nullity = 2 * n - rank;
  if (nullity <= 0) return 0.0;
  const Eigen::MatrixXd Z = svd.matrixV().rightCols(nullity);
  const Eigen::MatrixXd M = Z.transpose() * H * Z;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (M + M.transpose()));
  const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
  return es.eigenvalues().maxCoeff() / scale;
}

struct PolishOutcome {
  bool ok = false;
  Vec x;
};

// Active-set loop around newton_kkt: drop pairs with negative multipliers
// (never the forced ones), add violated pairs, until consistent.
PolishOutcome polish(const PointConfig& z, const std::vector<Edge>& forced, double candidate_tol) {
  const int n = static_cast<int>(z.size());
  PolishOutcome out;
  std::vector<Edge> E = forced;
  for (const Edge& e : active_set(z, candidate_tol)) {
    if (std::find(E.begin(), E.end(), e) == E.end()) E.push_back(e);
  }
  auto is_forced = [&](const Edge& e) { return std::find(forced.begin(), forced.end(), e) != forced.end(); };
  Vec x = to_vec(z);
  for (int round = 0; round < 4 * n + 4; ++round) {
    const NewtonOutcome nr = newton_kkt(x, E);
    if (!nr.converged) return out;
    x = nr.x;
    int drop = -1;
    double worst = -1e-10;
    for (std::size_t e = 0; e < E.size(); ++e) {
      if (!is_forced(E[e]) && nr.lambda[static_cast<Eigen::Index>(e)] < worst) {
        worst = nr.lambda[static_cast<Eigen::Index>(e)];
        drop = static_cast<int>(e);
      }
    }
    if (drop >= 0) {
      E.erase(E.begin() + drop);
      continue;
    }
    Edge add{-1, -1};
    double excess = 1e-12;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double dx = x[2 * i] - x[2 * j], dy = x[2 * i + 1] - x[2 * j + 1];
        const double g = dx * dx + dy * dy - 4.0;
        if (g > excess && std::find(E.begin(), E.end(), Edge{i, j}) == E.end()) {
          excess = g;
          add = {i, j};
        }
      }
    }
    if (add.first >= 0) {
      E.push_back(add);
      continue;
    }
    std::vector<bool> keep(E.size());
    for (std::size_t e = 0; e < E.size(); ++e) keep[e] = is_forced(E[e]) || nr.lambda[static_cast<Eigen::Index>(e)] > 1e-8;
    if (reduced_hessian_max_eig(x, E, nr.lambda, keep) > 1e-8) return out;
    out.ok = true;
    out.x = std::move(x);
    return out;
  }
  return out;
}

std::vector<int> spine_order(const DiameterGraph& g, const std::vector<std::vector<int>>& adj,
                             const std::vector<int>& deg) {
  std::vector<int> spine;
  int start = -1;
  for (int v = 0; v < g.n; ++v) {
    if (deg[v] < 2) continue;
    int sn = 0;
    for (int w : adj[v]) sn += deg[w] >= 2;
    if (sn <= 1) {
      start = v;
      break;
    }
  }
  int prev = -1, cur = start;
  while (cur != -1) {
    spine.push_back(cur);
    int next = -1;
    for (int w : adj[cur]) {
      if (deg[w] >= 2 && w != prev) next = w;
    }
    prev = cur;
    cur = next;
  }
  return spine;
}

// Angles on the unit circle at which the graph is drawn as a thrackle of near-diameters.
std::vector<double> thrackle_angles(const DiameterGraph& g) {
  const int n = g.n;
  std::vector<double> ang(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) ang[v] = 2.0 * kPi * v / n;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (auto [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  const auto deg = g.degrees();
  const GraphClass cls = classify(g);
  std::vector<int> core;
  double turn = 0.0, window = 0.0;
  std::vector<bool> in_core(static_cast<std::size_t>(n), false);
  if (cls.kind == GraphKind::Caterpillar && n >= 3) {
    core = spine_order(g, adj, deg);
    window = kPi / (static_cast<double>(core.size()) + 1.0);
    turn = kPi + window;
  } else if (cls.kind == GraphKind::OddCycleWithPendants) {
    std::vector<int> d = deg;
    std::vector<bool> alive(static_cast<std::size_t>(n), true);
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v = 0; v < n; ++v) {
        if (alive[v] && d[v] <= 1) {
          alive[v] = false;
          for (int w : adj[v]) --d[w];
          changed = true;
        }
      }
    }
    int start = 0;
    while (!alive[start]) ++start;
    int prev = -1, cur = start;
    do {
      core.push_back(cur);
      int next = -1;
      for (int w : adj[cur]) {
        if (alive[w] && w != prev && next == -1) next = w;
      }
      prev = cur;
      cur = next;
    } while (cur != start && cur != -1);
    window = kPi / static_cast<double>(core.size());
    turn = kPi - window;
  } else {
    return ang;
  }
  for (std::size_t i = 0; i < core.size(); ++i) {
    ang[core[i]] = static_cast<double>(i) * turn;
    in_core[core[i]] = true;
  }
  for (int v : core) {
    std::vector<int> hang;
    for (int w : adj[v]) {
      if (!in_core[w]) hang.push_back(w);
    }
    for (std::size_t j = 0; j < hang.size(); ++j) {
      ang[hang[j]] = ang[v] + kPi - 0.5 * window + window * (j + 1.0) / (hang.size() + 1.0);
    }
  }
  return ang;
}

PointConfig start_config(int n, const DiameterGraph* graph, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radial(-0.1, 0.1);
  const double spread = graph ? kPi / (4.0 * n) : kPi / n;
  std::uniform_real_distribution<double> angular(-spread, spread);
  const std::vector<double> base = graph ? thrackle_angles(*graph) : std::vector<double>{};
  PointConfig z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double r = 1.0 + radial(rng);
    const double a = (graph ? base[k] : 2.0 * kPi * k / n) + angular(rng);
    z[k] = std::polar(r, a);
  }
  return normalize_to_diameter(z, 2.0);
}

double max_graph_violation(const PointConfig& z, const DiameterGraph& g) {
  double v = 0.0;
  for (auto [a, b] : g.edges) v = std::max(v, std::abs(std::norm(z[a] - z[b]) - 4.0));
  return v;
}

StartSummary run_start(int n, int index, const OptimizeOptions& o, const DiameterGraph* graph) {
  StartSummary s;
  s.start = index;
  s.seed = o.seed + static_cast<std::uint64_t>(index);
  const PointConfig z0 = start_config(n, graph, s.seed);

  Penalty pen;
  pen.n = n;
  pen.mu = o.penalty_init;
  pen.graph_slot.assign(static_cast<std::size_t>(n * n), -1);
  if (graph) {
    for (std::size_t e = 0; e < graph->edges.size(); ++e) {
      pen.graph_slot[graph->edges[e].first * n + graph->edges[e].second] = static_cast<int>(e);
    }
    pen.lambda.assign(graph->edges.size(), 0.0);
  }
  const AscentOutcome asc = ascend(to_vec(z0), pen, o, graph == nullptr, o.record_trace ? &s.trace : nullptr);
  s.iterations = asc.iterations;
  PointConfig z1 = normalize_to_diameter(to_points(asc.x), 2.0);
  const double v1 = log_normalized_discriminant(z1, false);

  const std::vector<Edge> forced = graph ? graph->edges : std::vector<Edge>{};
  const PolishOutcome pol = polish(z1, forced, 1e-3);
  s.config = z1;
  s.log_delta_bar = v1;
  if (pol.ok) {
    PointConfig z2 = normalize_to_diameter(to_points(pol.x), 2.0);
    const double v2 = log_normalized_discriminant(z2, false);
    if (v2 >= v1 - 1e-9) {
      s.config = std::move(z2);
      s.log_delta_bar = v2;
      s.polished = true;
    }
  }
  // Translate the centroid to the origin so outputs are comparable.
  Point c(0.0, 0.0);
  for (Point p : s.config) c += p;
  c /= static_cast<double>(n);
  for (Point& p : s.config) p -= c;

  s.kkt_residual = verify(s.config, o.active_tol).stationarity_residual;
  const bool converged = s.polished && (graph != nullptr || s.kkt_residual < o.tol_gradient);
  if (converged) {
    s.termination = Termination::GradientConverged;
  } else if (asc.capped) {
    s.termination = Termination::IterationCap;
  } else {
    s.termination = Termination::Stalled;
  }
  return s;
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

void validate(const OptimizeOptions& o) {
  if (o.starts < 1) throw InvalidInput("starts must be >= 1");
  if (o.max_iters < 1) throw InvalidInput("max_iters must be >= 1");
  if (!(o.step_init > 0.0 && o.penalty_init > 0.0 && o.tol_gradient > 0.0 && o.tol_constraint > 0.0 &&
        o.active_tol > 0.0)) {
    throw InvalidInput("optimizer tolerances and steps must be positive");
  }
  if (!(o.penalty_growth > 1.0)) throw InvalidInput("penalty_growth must exceed 1");
}

OptimizeResult run(int n, const OptimizeOptions& o, const DiameterGraph* graph) {
  validate(o);
  OptimizeResult res;
  res.starts.resize(static_cast<std::size_t>(o.starts));
  parallel_for(o.starts, o.threads, [&](int i) { res.starts[i] = run_start(n, i, o, graph); });
  int best = 0;
  for (int i = 1; i < o.starts; ++i) {
    const auto& a = res.starts[i];
    const auto& b = res.starts[best];
    const double tie = 1e-12 * std::max(1.0, std::abs(b.log_delta_bar));
    if (a.log_delta_bar > b.log_delta_bar + tie ||
        (std::abs(a.log_delta_bar - b.log_delta_bar) <= tie && a.kkt_residual < b.kkt_residual)) {
      best = i;
    }
  }
  const StartSummary& w = res.starts[best];
  res.best_start = best;
  res.config = w.config;
  res.log_delta_bar = w.log_delta_bar;
  res.delta_bar = std::exp(w.log_delta_bar);
  res.iterations = w.iterations;
  res.termination = w.termination;
  res.kkt_residual = w.kkt_residual;
  res.active_set = active_set(res.config, o.active_tol);
  if (graph) {
    res.graph_achieved = res.active_set == graph->edges;
    res.infeasible_graph = !w.polished && max_graph_violation(res.config, *graph) > 1e-6;
  }
  return res;
}

}  // namespace

std::string to_string(Termination t) {
  switch (t) {
    case Termination::GradientConverged: return "gradient-converged";
    case Termination::IterationCap: return "iteration-cap";
    case Termination::Stalled: return "stalled";
  }
  return "stalled";
}

OptimizeResult maximize_free(int n, const OptimizeOptions& opts) {
  if (n < 3) throw InvalidInput("maximize_free needs n >= 3");
  return run(n, opts, nullptr);
}

OptimizeResult maximize_with_graph(int n, const DiameterGraph& graph, const OptimizeOptions& opts) {
  if (n < 3) throw InvalidInput("maximize_with_graph needs n >= 3");
  if (graph.n != n) throw InvalidInput("graph vertex count differs from n");
  if (static_cast<int>(graph.edges.size()) > n) throw InvalidInput("graph has more than n edges");
  const DiameterGraph g = make_graph(graph.n, graph.edges);
  return run(n, opts, &g);
}

std::vector<SweepEntry> sweep_graphs(int n, const OptimizeOptions& opts, int max_n) {
  if (n < 3 || n > max_n) throw InvalidInput("sweep_graphs supports 3 <= n <= " + std::to_string(max_n));
  std::vector<DiameterGraph> graphs = enumerate_caterpillars(n);
  for (auto& g : enumerate_unicyclic_candidates(n, n)) graphs.push_back(std::move(g));
  std::vector<SweepEntry> out;
  out.reserve(graphs.size());
  for (auto& g : graphs) {
    OptimizeResult r = maximize_with_graph(n, g, opts);
    out.push_back({std::move(g), std::move(r)});
  }
  std::stable_sort(out.begin(), out.end(), [](const SweepEntry& a, const SweepEntry& b) {
    return a.result.log_delta_bar > b.result.log_delta_bar;
  });
  return out;
}

PointConfig gauge_fix(const PointConfig& z) {
  if (z.empty()) return z;
  Point c(0.0, 0.0);
  for (Point p : z) c += p;
  c /= static_cast<double>(z.size());
  PointConfig w;
  w.reserve(z.size());
  for (Point p : z) w.push_back(p - c);
  auto farthest = [&](int skip) {
    int best = -1;
    double r = -1.0;
    for (int i = 0; i < static_cast<int>(w.size()); ++i) {
      if (i == skip) continue;
      const double a = std::abs(w[i]);
      if (a > r * (1.0 + 1e-12)) {
        r = a;
        best = i;
      }
    }
    return best;
  };
  const int f = farthest(-1);
  if (std::abs(w[f]) == 0.0) return w;
  const Point rot = std::conj(w[f]) / std::abs(w[f]);
  for (Point& p : w) p *= rot;
  if (w.size() >= 2) {
    const int s = farthest(f);
    if (w[s].imag() < 0.0) {
      for (Point& p : w) p = std::conj(p);
    }
  }
  return w;
}

double congruence_distance(const PointConfig& a, const PointConfig& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const PointConfig ga = gauge_fix(a), gb = gauge_fix(b);
  std::vector<bool> used(gb.size(), false);
  double worst = 0.0;
  for (Point p : ga) {
    int best = -1;
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < gb.size(); ++j) {
      const double dj = std::abs(p - gb[j]);
      if (dj < d) {
        d = dj;
        best = static_cast<int>(j);
      }
    }
    if (used[best]) return std::numeric_limits<double>::infinity();
    used[best] = true;
    worst = std::max(worst, d);
  }
  return worst;
}

}  // namespace polydisc
