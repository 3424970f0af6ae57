#include "polydisc/diamgraph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <sstream>

#include "polydisc/errors.hpp"

namespace polydisc {

namespace {

std::vector<std::vector<int>> adjacency(const DiameterGraph& g) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.n));
  for (auto [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

int component_count(const DiameterGraph& g) {
  std::vector<int> parent(static_cast<std::size_t>(g.n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  int comps = g.n;
  for (auto [a, b] : g.edges) {
    const int ra = find(a), rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --comps;
    }
  }
  return comps;
}

// Vertices left after repeatedly deleting degree-1 vertices.
std::vector<bool> strip_leaves(const DiameterGraph& g, const std::vector<std::vector<int>>& adj) {
  std::vector<int> deg = g.degrees();
  std::vector<bool> alive(static_cast<std::size_t>(g.n), true);
  std::queue<int> q;
  for (int v = 0; v < g.n; ++v) {
    if (deg[v] <= 1) q.push(v);
  }
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    if (!alive[v]) continue;
    alive[v] = false;
    for (int w : adj[v]) {
      if (alive[w] && --deg[w] == 1) q.push(w);
    }
  }
  return alive;
}

// Lexicographically smallest of all rotations and reflections.
std::vector<int> dihedral_min(const std::vector<int>& seq) {
  const std::size_t k = seq.size();
  std::vector<int> best = seq;
  std::vector<int> cand(k);
  for (int dir = 0; dir < 2; ++dir) {
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t i = 0; i < k; ++i) {
        cand[i] = dir == 0 ? seq[(r + i) % k] : seq[(r + k - i) % k];
      }
      best = std::min(best, cand);
    }
  }
  return best;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

double orient(Point a, Point b, Point c) {
  return (b.real() - a.real()) * (c.imag() - a.imag()) - (b.imag() - a.imag()) * (c.real() - a.real());
}

int sign_of(double v, double eps) { return v > eps ? 1 : (v < -eps ? -1 : 0); }

// Segments sharing endpoint s: p = s->a, q = s->b.
bool shared_endpoint_meets_once(Point s, Point a, Point b, double eps) {
  if (std::abs(orient(s, a, b)) > eps) return true;
  const Point u = a - s, v = b - s;
  return u.real() * v.real() + u.imag() * v.imag() < 0.0;
}

bool disjoint_segments_meet_once(Point p1, Point p2, Point q1, Point q2, double eps) {
  const int d1 = sign_of(orient(q1, q2, p1), eps);
  const int d2 = sign_of(orient(q1, q2, p2), eps);
  const int d3 = sign_of(orient(p1, p2, q1), eps);
  const int d4 = sign_of(orient(p1, p2, q2), eps);
  if (d1 == 0 && d2 == 0 && d3 == 0 && d4 == 0) {
    // Collinear: project on the longer direction and compare intervals.
    const Point dir = p2 - p1;
    auto proj = [&](Point x) { return (x - p1).real() * dir.real() + (x - p1).imag() * dir.imag(); };
    const double a0 = 0.0, a1 = proj(p2);
    const double b0 = std::min(proj(q1), proj(q2)), b1 = std::max(proj(q1), proj(q2));
    const double lo = std::max(a0, b0), hi = std::min(a1, b1);
    const double scale = eps;  // eps carries the squared length scale
    if (hi < lo - scale) return false;
    return hi - lo <= scale;  // touching at a single point
  }
  return d1 * d2 <= 0 && d3 * d4 <= 0;
}

}  // namespace

std::vector<int> DiameterGraph::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  for (auto [a, b] : edges) {
    ++deg[a];
    ++deg[b];
  }
  return deg;
}

DiameterGraph make_graph(int n, std::vector<Edge> edges) {
  if (n < 0) throw InvalidInput("negative vertex count");
  for (auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) {
      throw InvalidInput("edge " + std::to_string(a) + "-" + std::to_string(b) + " invalid for n=" + std::to_string(n));
    }
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  DiameterGraph g;
  g.n = n;
  g.edges = std::move(edges);
  return g;
}

std::string to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::Caterpillar: return "Caterpillar";
    case GraphKind::OddCycleWithPendants: return "OddCycleWithPendants";
    case GraphKind::Disconnected: return "Disconnected";
    case GraphKind::Other: return "Other";
  }
  return "Other";
}

DiameterGraph extract(const PointConfig& z, double rel_tol) {
  const double d = diameter(z);
  const double cutoff = (1.0 - rel_tol) * d;
  DiameterGraph g;
  g.n = static_cast<int>(z.size());
  g.tol = rel_tol;
  for (int i = 0; i < g.n; ++i) {
    for (int j = i + 1; j < g.n; ++j) {
      if (std::abs(z[i] - z[j]) >= cutoff) g.edges.emplace_back(i, j);
    }
  }
  return g;
}

bool is_connected(const DiameterGraph& g) { return component_count(g) <= 1; }

GraphClass classify(const DiameterGraph& g) {
  GraphClass c;
  const int comps = component_count(g);
  if (comps > 1) {
    c.kind = GraphKind::Disconnected;
    c.detail = comps;
    return c;
  }
  const auto adj = adjacency(g);
  const auto deg = g.degrees();
  const int m = static_cast<int>(g.edges.size());
  if (m == g.n - 1 || g.n == 0) {
    int spine = 0;
    for (int v = 0; v < g.n; ++v) {
      if (deg[v] < 2) continue;
      ++spine;
      int spine_nbrs = 0;
      for (int w : adj[v]) spine_nbrs += deg[w] >= 2;
      if (spine_nbrs > 2) return c;
    }
    c.kind = GraphKind::Caterpillar;
    c.detail = spine;
    return c;
  }
  if (m == g.n) {
    const auto on_cycle = strip_leaves(g, adj);
    const int k = static_cast<int>(std::count(on_cycle.begin(), on_cycle.end(), true));
    if (k % 2 == 0) return c;
    for (auto [a, b] : g.edges) {
      if (!on_cycle[a] && !on_cycle[b]) return c;
    }
    c.kind = GraphKind::OddCycleWithPendants;
    c.detail = k;
  }
  return c;
}

bool has_even_cycle(const DiameterGraph& g) {
  // A block that is neither a bridge nor a cycle contains two cycles sharing a
  // path, and one of the three resulting cycles is even.
  const auto adj = adjacency(g);
  std::vector<int> disc(static_cast<std::size_t>(g.n), -1), low(static_cast<std::size_t>(g.n), 0);
  std::vector<Edge> stack;
  int timer = 0;
  bool found = false;
  std::function<void(int, int)> dfs = [&](int v, int parent) {
    disc[v] = low[v] = timer++;
    for (int w : adj[v]) {
      if (w == parent) continue;
      if (disc[w] == -1) {
        stack.emplace_back(v, w);
        dfs(w, v);
        low[v] = std::min(low[v], low[w]);
        if (low[w] >= disc[v]) {
          std::vector<int> verts;
          int edges = 0;
          while (true) {
            const Edge e = stack.back();
            stack.pop_back();
            ++edges;
            verts.push_back(e.first);
            verts.push_back(e.second);
            if (e == Edge{v, w}) break;
          }
          std::sort(verts.begin(), verts.end());
          verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
          const int nv = static_cast<int>(verts.size());
          if (edges > 1 && (edges > nv || edges % 2 == 0)) found = true;
        }
      } else if (disc[w] < disc[v]) {
        stack.emplace_back(v, w);
        low[v] = std::min(low[v], disc[w]);
      }
    }
  };
  for (int v = 0; v < g.n && !found; ++v) {
    if (disc[v] == -1) dfs(v, -1);
  }
  return found;
}

bool check_pairwise_intersection(const PointConfig& z, const DiameterGraph& g) {
  for (auto [a, b] : g.edges) {
    if (z[a] == z[b]) throw InvalidInput("coincident endpoints on edge");
  }
  if (g.edges.size() < 2) return true;
  const double d = diameter(z);
  const double eps = 1e-12 * d * d;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    for (std::size_t f = e + 1; f < g.edges.size(); ++f) {
      const auto [a, b] = g.edges[e];
      const auto [c, dd] = g.edges[f];
      bool ok;
      if (a == c) {
        ok = shared_endpoint_meets_once(z[a], z[b], z[dd], eps);
      } else if (a == dd) {
        ok = shared_endpoint_meets_once(z[a], z[b], z[c], eps);
      } else if (b == c) {
        ok = shared_endpoint_meets_once(z[b], z[a], z[dd], eps);
      } else if (b == dd) {
        ok = shared_endpoint_meets_once(z[b], z[a], z[c], eps);
      } else {
        for (int u : {a, b}) {
          for (int v : {c, dd}) {
            if (z[u] == z[v]) throw InvalidInput("coincident endpoints across edges");
          }
        }
        ok = disjoint_segments_meet_once(z[a], z[b], z[c], z[dd], eps);
      }
      if (!ok) return false;
    }
  }
  return true;
}

std::vector<DiameterGraph> enumerate_caterpillars(int n) {
  if (n < 2) throw InvalidInput("caterpillar enumeration needs n >= 2");
  std::vector<DiameterGraph> out;
  if (n == 2) {
    out.push_back(make_graph(2, {{0, 1}}));
    return out;
  }
  // Spine v_0..v_{s-1}; leaf counts per spine vertex, ends carry at least one leaf.
  for (int s = 1; s <= n - 2; ++s) {
    const int leaves = n - s;
    std::vector<int> seq(static_cast<std::size_t>(s), 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == s - 1) {
        if (s > 1 && left < 1) return;
        seq[pos] = left;
        std::vector<int> rev(seq.rbegin(), seq.rend());
        if (rev < seq) return;
        std::vector<Edge> edges;
        for (int i = 0; i + 1 < s; ++i) edges.emplace_back(i, i + 1);
        int next = s;
        for (int i = 0; i < s; ++i) {
          for (int l = 0; l < seq[i]; ++l) edges.emplace_back(i, next++);
        }
        out.push_back(make_graph(n, std::move(edges)));
        return;
      }
      const int lo = pos == 0 ? 1 : 0;
      for (int v = lo; v <= left; ++v) {
        seq[pos] = v;
        rec(pos + 1, left - v);
      }
    };
    if (s == 1 && leaves < 2) continue;
    rec(0, leaves);
  }
  return out;
}

std::vector<DiameterGraph> enumerate_unicyclic_candidates(int n, int max_cycle) {
  if (n < 3) throw InvalidInput("unicyclic candidates need n >= 3");
  std::vector<DiameterGraph> out;
  for (int k = 3; k <= std::min(n, max_cycle); k += 2) {
    const int pend = n - k;
    std::vector<int> seq(static_cast<std::size_t>(k), 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == k - 1) {
        seq[pos] = left;
        if (dihedral_min(seq) != seq) return;
        std::vector<Edge> edges;
        for (int i = 0; i < k; ++i) edges.emplace_back(i, (i + 1) % k);
        int next = k;
        for (int i = 0; i < k; ++i) {
          for (int l = 0; l < seq[i]; ++l) edges.emplace_back(i, next++);
        }
        out.push_back(make_graph(n, std::move(edges)));
        return;
      }
      for (int v = 0; v <= left; ++v) {
        seq[pos] = v;
        rec(pos + 1, left - v);
      }
    };
    rec(0, pend);
  }
  return out;
}

DiameterGraph conjectured_even_graph(int n) {
  if (n < 6 || n % 2 != 0) throw InvalidInput("conjectured graph needs even n >= 6");
  const int len = n - 3;
  // Pendant gaps along the cycle: odd and as equal as possible.
  int g1 = 1, g2 = 1, g3 = len - 2;
  for (int a = 1; a <= len; a += 2) {
    for (int b = a; a + b <= len; b += 2) {
      const int c = len - a - b;
      if (c < b || c % 2 == 0) continue;
      if (c - a < g3 - g1) {
        g1 = a;
        g2 = b;
        g3 = c;
      }
    }
  }
  std::vector<Edge> edges;
  for (int i = 0; i < len; ++i) edges.emplace_back(i, (i + 1) % len);
  edges.emplace_back(0, len);
  edges.emplace_back(g1, len + 1);
  edges.emplace_back(g1 + g2, len + 2);
  return make_graph(n, std::move(edges));
}

std::string canonical_key(const DiameterGraph& g) {
  const GraphClass c = classify(g);
  const auto adj = adjacency(g);
  const auto deg = g.degrees();
  const std::string prefix = std::to_string(g.n) + "/";
  if (c.kind == GraphKind::Caterpillar) {
    std::vector<int> spine;
    for (int v = 0; v < g.n; ++v) {
      if (deg[v] >= 2) spine.push_back(v);
    }
    if (spine.empty()) return prefix + "cat:";
    // Walk the spine path from an end.
    int start = spine.front();
    for (int v : spine) {
      int sn = 0;
      for (int w : adj[v]) sn += deg[w] >= 2;
      if (sn <= 1) {
        start = v;
        break;
      }
    }
    std::vector<int> seq;
    int prev = -1, cur = start;
    while (cur != -1) {
      int leaves = 0, next = -1;
      for (int w : adj[cur]) {
        if (deg[w] < 2) {
          ++leaves;
        } else if (w != prev) {
          next = w;
        }
      }
      seq.push_back(leaves);
      prev = cur;
      cur = next;
    }
    std::vector<int> rev(seq.rbegin(), seq.rend());
    return prefix + "cat:" + join(std::min(seq, rev));
  }
  if (c.kind == GraphKind::OddCycleWithPendants) {
    const auto on_cycle = strip_leaves(g, adj);
    int start = 0;
    while (!on_cycle[start]) ++start;
    std::vector<int> seq;
    int prev = -1, cur = start;
    do {
      int pend = 0, next = -1;
      for (int w : adj[cur]) {
        if (!on_cycle[w]) {
          ++pend;
        } else if (w != prev && next == -1) {
          next = w;
        }
      }
      seq.push_back(pend);
      prev = cur;
      cur = next;
    } while (cur != start);
    return prefix + "cyc" + std::to_string(c.detail) + ":" + join(dihedral_min(seq));
  }
  return {};
}

StructureReport maximizer_structure_report(const PointConfig& z, double rel_tol) {
  StructureReport r;
  r.graph = extract(z, rel_tol);
  const auto deg = r.graph.degrees();
  r.edge_count_ok = static_cast<int>(r.graph.edges.size()) <= r.graph.n;
  r.min_degree_ok = std::all_of(deg.begin(), deg.end(), [](int d) { return d >= 1; });
  r.connected = is_connected(r.graph);
  r.no_even_cycle = !has_even_cycle(r.graph);
  r.pairwise_intersecting = check_pairwise_intersection(z, r.graph);
  r.convex_position = z.size() < 3 || is_convex_position(z);
  r.graph_class = classify(r.graph);
  r.class_ok = r.graph_class.kind == GraphKind::Caterpillar || r.graph_class.kind == GraphKind::OddCycleWithPendants;
  return r;
}

std::string format_graph(const DiameterGraph& g) {
  std::string s = "n=" + std::to_string(g.n) + "; edges=";
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(g.edges[i].first + 1) + "-" + std::to_string(g.edges[i].second + 1);
  }
  return s;
}

DiameterGraph parse_graph(const std::string& text) {
  const auto semi = text.find(';');
  if (semi == std::string::npos) throw InvalidInput("graph text needs ';' between n and edges: " + text);
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };
  std::string head = trim(text.substr(0, semi));
  std::string tail = trim(text.substr(semi + 1));
  if (head.rfind("n=", 0) == 0) head = head.substr(2);
  if (tail.rfind("edges=", 0) == 0) tail = tail.substr(6);
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(head, &used);
    if (used != head.size()) throw InvalidInput("");
  } catch (const std::exception&) {
    throw InvalidInput("bad vertex count in graph text: " + text);
  }
  std::vector<Edge> edges;
  std::stringstream ss(tail);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) continue;
    const auto dash = tok.find('-');
    if (dash == std::string::npos) throw InvalidInput("bad edge token: " + tok);
    try {
      edges.emplace_back(std::stoi(tok.substr(0, dash)) - 1, std::stoi(tok.substr(dash + 1)) - 1);
    } catch (const std::exception&) {
      throw InvalidInput("bad edge token: " + tok);
    }
  }
  return make_graph(n, std::move(edges));
}

}  // namespace polydisc
