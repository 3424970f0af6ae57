#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polydisc/diamgraph.hpp"
#include "polydisc/geometry.hpp"

namespace polydisc {

struct OptimizeOptions {
  std::uint64_t seed = 1;
  int starts = 32;
  int max_iters = 8000;        // ascent steps per start, all penalty stages together
  double step_init = 1e-2;
  double penalty_init = 10.0;  // mu_0
  double penalty_growth = 10.0;
  double penalty_max = 1e5;
  double tol_gradient = 1e-8;    // stationarity residual required for convergence
  double tol_constraint = 1e-9;  // allowed excess over diameter 2 at return
  double active_tol = 1e-9;      // activity tolerance for reports
  int threads = 1;               // 0: hardware concurrency
  bool record_trace = false;
  std::optional<DiameterGraph> graph;
};

enum class Termination { GradientConverged, IterationCap, Stalled };
std::string to_string(Termination t);

struct TracePoint {
  int iteration = 0;
  int stage = 0;
  double mu = 0.0;
  double penalized = 0.0;      // penalized objective, nondecreasing within a stage
  double log_delta_bar = 0.0;  // of the iterate rescaled to diameter 2
  double step = 0.0;
};

struct StartSummary {
  int start = 0;
  std::uint64_t seed = 0;
  double log_delta_bar = 0.0;
  int iterations = 0;
  Termination termination = Termination::Stalled;
  double kkt_residual = 0.0;
  bool polished = false;
  PointConfig config;
  std::vector<TracePoint> trace;
};

struct OptimizeResult {
  PointConfig config;  // diameter 2
  double log_delta_bar = 0.0;
  double delta_bar = 0.0;
  int iterations = 0;
  Termination termination = Termination::Stalled;
  std::vector<Edge> active_set;
  double kkt_residual = 0.0;
  int best_start = 0;
  std::vector<StartSummary> starts;
  // Graph-constrained runs only.
  bool graph_achieved = false;
  bool infeasible_graph = false;
};

OptimizeResult maximize_free(int n, const OptimizeOptions& opts);
OptimizeResult maximize_with_graph(int n, const DiameterGraph& graph, const OptimizeOptions& opts);

struct SweepEntry {
  DiameterGraph graph;
  OptimizeResult result;
};

// All caterpillars and odd-cycle-with-pendant graphs on n vertices, best first.
std::vector<SweepEntry> sweep_graphs(int n, const OptimizeOptions& opts, int max_n = 12);

// Centroid to origin, farthest point on +x, second-farthest with y >= 0.
PointConfig gauge_fix(const PointConfig& z);

// Largest displacement under a nearest-point matching of two gauge-fixed sets;
// +inf when sizes differ or the matching is not one-to-one.
double congruence_distance(const PointConfig& a, const PointConfig& b);

}  // namespace polydisc
