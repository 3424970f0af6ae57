#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "polydisc/geometry.hpp"

namespace polydisc {

using Edge = std::pair<int, int>;  // always first < second

struct DiameterGraph {
  int n = 0;
  std::vector<Edge> edges;  // sorted, no duplicates
  double tol = 0.0;

  std::vector<int> degrees() const;
  bool operator==(const DiameterGraph& o) const { return n == o.n && edges == o.edges; }
};

// Builds a graph from an arbitrary edge list, normalizing orientation and order.
DiameterGraph make_graph(int n, std::vector<Edge> edges);

enum class GraphKind { Caterpillar, OddCycleWithPendants, Disconnected, Other };

struct GraphClass {
  GraphKind kind = GraphKind::Other;
  int detail = 0;  // spine length for caterpillars, cycle length for odd cycles
};

std::string to_string(GraphKind kind);

DiameterGraph extract(const PointConfig& z, double rel_tol = 1e-9);
GraphClass classify(const DiameterGraph& g);
bool is_connected(const DiameterGraph& g);
bool has_even_cycle(const DiameterGraph& g);

bool check_pairwise_intersection(const PointConfig& z, const DiameterGraph& g);

std::vector<DiameterGraph> enumerate_caterpillars(int n);
std::vector<DiameterGraph> enumerate_unicyclic_candidates(int n, int max_cycle);
DiameterGraph conjectured_even_graph(int n);

// Isomorphism key for caterpillars and odd-cycle-with-pendants graphs; empty for other classes.
std::string canonical_key(const DiameterGraph& g);

struct StructureReport {
  bool edge_count_ok = false;  // |E| <= n
  bool min_degree_ok = false;  // every vertex on some diameter
  bool connected = false;
  bool no_even_cycle = false;
  bool pairwise_intersecting = false;
  bool convex_position = false;
  bool class_ok = false;  // Caterpillar or OddCycleWithPendants
  GraphClass graph_class;
  DiameterGraph graph;

  bool all() const {
    return edge_count_ok && min_degree_ok && connected && no_even_cycle && pairwise_intersecting &&
           convex_position && class_ok;
  }
};

StructureReport maximizer_structure_report(const PointConfig& z, double rel_tol = 1e-9);

// "n=<n>; edges=i-j,..." with 1-based labels. parse_graph also accepts "<n>;i-j,...".
std::string format_graph(const DiameterGraph& g);
DiameterGraph parse_graph(const std::string& text);

}  // namespace polydisc
