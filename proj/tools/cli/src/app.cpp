#include "polydisc_cli/app.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <ostream>

#include "polydisc/asymptotics.hpp"
#include "polydisc/constructions.hpp"
#include "polydisc/diamgraph.hpp"
#include "polydisc/errors.hpp"
#include "polydisc/kkt.hpp"
#include "polydisc/optimize.hpp"
#include "polydisc_cli/config_file.hpp"
#include "polydisc_cli/render.hpp"

namespace polydisc::cli {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* yesno(bool b) { return b ? "true" : "false"; }

int resolve_threads(int flag) {
  if (flag >= 0) return flag;
  if (const char* env = std::getenv("POLYDISC_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 0 || v > 4096) throw InvalidInput(std::string("bad POLYDISC_THREADS value: ") + env);
    return static_cast<int>(v);
  }
  return 1;
}

nlohmann::json value_meta(const PointConfig& z) {
  const double ldb = log_normalized_discriminant(z);
  const int n = static_cast<int>(z.size());
  return {{"log_delta_bar", ldb}, {"delta_bar", std::exp(ldb)}, {"log_delta", ldb + n * std::log(static_cast<double>(n))}};
}

void emit_config(const ConfigFile& cf, const std::string& out_path, const std::string& svg_path, std::ostream& out,
                 const std::string& summary) {
  if (out_path.empty()) {
    out << to_json_text(cf);
  } else {
    write_config(out_path, cf);
    out << summary << " -> " << out_path << "\n";
  }
  if (!svg_path.empty()) write_text(svg_path, render_svg(cf.points));
}

// ---- construct -------------------------------------------------------------

struct ConstructArgs {
  std::string family;
  int n = 0;
  int m = 3;
  std::optional<double> amplitude;
  std::string out, svg;
};

void require_n(const ConstructArgs& a, int fixed) {
  if (a.n != 0 && a.n != fixed) {
    throw InvalidInput("family " + a.family + " has n = " + std::to_string(fixed));
  }
}

int cmd_construct(const ConstructArgs& a, std::ostream& out) {
  ConfigFile cf;
  nlohmann::json params = nlohmann::json::object();
  if (a.family == "regular") {
    if (a.n < 3) throw InvalidInput("regular needs --n >= 3");
    cf.points = regular_ngon(a.n);
  } else if (a.family == "kite4") {
    require_n(a, 4);
    cf.points = kite4();
  } else if (a.family == "hexagon6") {
    require_n(a, 6);
    cf.points = hexagon6();
  } else if (a.family == "dodecagon12") {
    require_n(a, 12);
    const DodecagonResult d = dodecagon12();
    cf.points = d.config;
    params["alpha"] = d.alpha;
  } else if (a.family == "arc") {
    if (a.n < 6 || a.n % 6 != 0) throw InvalidInput("arc needs --n a positive multiple of 6");
    cf.points = arc_polygon(a.n / 6).P;
    params["k"] = a.n / 6;
  } else if (a.family == "sparse-arc") {
    cf.points = sparse_arc(a.n);
  } else if (a.family == "triwave") {
    const TriwaveConfig t = triwave(a.n, a.m, a.amplitude);
    cf.points = t.z;
    params["m"] = t.m_frequency;
    params["amplitude"] = t.amplitude;
  } else {
    throw InvalidInput("unknown family '" + a.family + "'");
  }
  cf.meta = value_meta(cf.points);
  cf.meta["family"] = a.family;
  cf.meta["params"] = params;
  emit_config(cf, a.out, a.svg, out,
              a.family + " n=" + std::to_string(cf.n()) + " delta_bar=" + g17(cf.meta["delta_bar"].get<double>()));
  return kOk;
}

// ---- evaluate / kkt ----------------------------------------------------------

int cmd_evaluate(const std::string& in_path, double tol, std::ostream& out) {
  const ConfigFile cf = read_config(in_path);
  if (cf.n() < 3) throw InvalidInput("evaluate needs n >= 3");
  const PointConfig& z = cf.points;
  const double ldb = log_normalized_discriminant(z);
  const Discriminant raw = discriminant(z);
  out << "n: " << cf.n() << "\n"
      << "diameter: " << g17(diameter(z)) << "\n"
      << "log_delta: " << g17(raw.log_delta) << "\n"
      << "log_delta_bar: " << g17(ldb) << "\n"
      << "delta_bar: " << g17(std::exp(ldb)) << "\n";
  const StructureReport sr = maximizer_structure_report(z, tol);
  out << "graph: " << format_graph(sr.graph) << "\n"
      << "class: " << to_string(sr.graph_class.kind) << "\n"
      << "structure: edge_count_ok=" << yesno(sr.edge_count_ok) << " min_degree_ok=" << yesno(sr.min_degree_ok)
      << " connected=" << yesno(sr.connected) << " no_even_cycle=" << yesno(sr.no_even_cycle)
      << " pairwise_intersecting=" << yesno(sr.pairwise_intersecting) << " convex_position=" << yesno(sr.convex_position)
      << " class_ok=" << yesno(sr.class_ok) << " all=" << yesno(sr.all()) << "\n";
  const KKTReport k = verify(z, tol);
  out << "kkt_residual: " << g17(k.stationarity_residual) << "\n";
  return kOk;
}

int cmd_kkt(const std::string& in_path, double tol, std::ostream& out) {
  const ConfigFile cf = read_config(in_path);
  const KKTReport k = verify(cf.points, tol);
  out << "active_set:";
  for (std::size_t i = 0; i < k.active_set.size(); ++i) {
    out << " " << k.active_set[i].first + 1 << "-" << k.active_set[i].second + 1 << ":" << g17(k.multipliers[i]);
  }
  out << "\n"
      << "stationarity_residual: " << g17(k.stationarity_residual) << "\n"
      << "residual_2norm: " << g17(k.residual_2norm) << "\n"
      << "min_multiplier: " << g17(k.min_multiplier) << "\n"
      << "complementarity_violation: " << g17(k.complementarity_violation) << "\n"
      << "stationarity_possible: " << yesno(k.stationarity_possible) << "\n";
  if (k.structural_failure) {
    out << "structural_failure: points without an active constraint:";
    for (int p : k.uncovered_points) out << " " << p + 1;
    out << "\n";
  }
  out << "passes: " << yesno(k.passes()) << "\n";
  return kOk;
}

// ---- optimize / sweep ----------------------------------------------------------

struct OptimizeArgs {
  int n = 0;
  int starts = 32;
  std::uint64_t seed = 1;
  int max_iters = 8000;
  int threads = -1;
  std::string graph, out, svg, trace;
};

OptimizeOptions to_options(const OptimizeArgs& a) {
  if (a.starts < 1) throw InvalidInput("--starts must be >= 1");
  OptimizeOptions o;
  o.seed = a.seed;
  o.starts = a.starts;
  o.max_iters = a.max_iters;
  o.threads = resolve_threads(a.threads);
  o.record_trace = !a.trace.empty();
  return o;
}

std::string edge_text(const std::vector<Edge>& edges, int n) { return format_graph(make_graph(n, edges)); }

int cmd_optimize(const OptimizeArgs& a, std::ostream& out, std::ostream& err) {
  if (a.n < 3) throw InvalidInput("optimize needs --n >= 3");
  const OptimizeOptions o = to_options(a);
  OptimizeResult r;
  std::optional<DiameterGraph> g;
  if (!a.graph.empty()) {
    g = parse_graph(a.graph);
    if (g->n != a.n) throw InvalidInput("graph vertex count differs from --n");
    r = maximize_with_graph(a.n, *g, o);
  } else {
    r = maximize_free(a.n, o);
  }

  ConfigFile cf;
  cf.points = r.config;
  cf.meta = value_meta(r.config);
  cf.meta["family"] = "optimize";
  cf.meta["params"] = {{"seed", a.seed}, {"starts", a.starts}, {"max_iters", a.max_iters}};
  cf.meta["termination"] = to_string(r.termination);
  cf.meta["iterations"] = r.iterations;
  cf.meta["best_start"] = r.best_start;
  cf.meta["kkt_residual"] = r.kkt_residual;
  cf.meta["active_set"] = edge_text(r.active_set, a.n);
  if (g) {
    cf.meta["requested_graph"] = format_graph(*g);
    cf.meta["graph_achieved"] = r.graph_achieved;
    cf.meta["infeasible_graph"] = r.infeasible_graph;
  }

  std::string summary = "n=" + std::to_string(a.n) + " delta_bar=" + g17(r.delta_bar) +
                        " termination=" + to_string(r.termination);
  emit_config(cf, a.out, a.svg, a.out.empty() ? err : out, summary);

  if (!a.trace.empty()) {
    std::string csv = "iteration,stage,mu,penalized,log_delta_bar,step\n";
    for (const TracePoint& t : r.starts[r.best_start].trace) {
      csv += std::to_string(t.iteration) + "," + std::to_string(t.stage) + "," + g17(t.mu) + "," + g17(t.penalized) +
             "," + g17(t.log_delta_bar) + "," + g17(t.step) + "\n";
    }
    write_text(a.trace, csv);
  }
  if (g && !r.graph_achieved) {
    (a.out.empty() ? err : out) << "requested graph not achieved; result graph " << edge_text(r.active_set, a.n)
                                << "\n";
    if (r.infeasible_graph) return kNumerical;
  }
  return kOk;
}

int cmd_sweep(const OptimizeArgs& a, std::ostream& out) {
  const OptimizeOptions o = to_options(a);
  const std::vector<SweepEntry> entries = sweep_graphs(a.n, o);
  for (const SweepEntry& e : entries) {
    out << canonical_key(e.graph) << "  delta_bar=" << g17(e.result.delta_bar)
        << "  achieved=" << yesno(e.result.graph_achieved) << "\n";
  }
  return kOk;
}

// ---- table -------------------------------------------------------------------

struct TableArgs {
  std::vector<int> ns;
  std::vector<std::string> families{"optimize"};
  OptimizeArgs opt;
};

std::optional<double> family_value(const std::string& family, int n, const OptimizeOptions& o) {
  if (family == "optimize") return maximize_free(n, o).log_delta_bar;
  if (family == "regular") return log_normalized_discriminant(regular_ngon(n));
  if (family == "arc") {
    if (n % 6 != 0) return std::nullopt;
    return log_normalized_discriminant(arc_polygon(n / 6).P);
  }
  if (family == "sparse-arc") {
    if (n < 4 || n % 2 != 0) return std::nullopt;
    return log_normalized_discriminant(sparse_arc(n));
  }
  if (family == "triwave") {
    if (n < 8 || n % 2 != 0) return std::nullopt;
    return log_normalized_discriminant(triwave(n).z);
  }
  throw InvalidInput("unknown table family '" + family + "'");
}

int cmd_table(const TableArgs& a, std::ostream& out) {
  if (a.ns.empty()) throw InvalidInput("--n list is empty");
  if (a.families.empty()) throw InvalidInput("--families list is empty");
  for (int n : a.ns) {
    if (n < 3) throw InvalidInput("table entries need n >= 3");
  }
  const OptimizeOptions o = to_options(a.opt);
  std::vector<TableRow> rows;
  for (int n : a.ns) {
    std::optional<double> best;
    for (const std::string& f : a.families) {
      const std::optional<double> v = family_value(f, n, o);
      if (v && (!best || *v > *best)) best = v;
    }
    if (!best) throw InvalidInput("no requested family applies to n = " + std::to_string(n));
    TableRow r;
    r.n = n;
    r.log_delta = *best + n * std::log(static_cast<double>(n));
    r.delta_bar = std::exp(*best);
    if (n % 6 == 0) r.delta_bar_section4 = normalized_discriminant(arc_polygon(n / 6).P);
    rows.push_back(r);
  }
  const std::string csv = table_csv(rows);
  if (a.opt.out.empty()) {
    out << csv;
  } else {
    write_text(a.opt.out, csv);
    out << rows.size() << " rows -> " << a.opt.out << "\n";
  }
  return kOk;
}

// ---- asym --------------------------------------------------------------------

struct AsymArgs {
  std::string name;
  std::vector<int> converge;
  std::vector<int> rk;
  bool list = false;
};

int cmd_asym(const AsymArgs& a, std::ostream& out) {
  const int modes = !a.name.empty() + !a.converge.empty() + !a.rk.empty() + a.list;
  if (modes != 1) throw InvalidInput("asym takes exactly one of NAME, --converge, --rk, --list");
  if (a.list) {
    for (const std::string& s : constant_names()) out << s << "\n";
    return kOk;
  }
  if (!a.converge.empty()) {
    const int regime = a.converge[0], k = a.converge[1];
    const double v = regime_product(regime, k);
    const double lim = std::exp(-regime_integral_closed(regime));
    out << "regime " << regime << " product at k=" << k << ": " << g17(v) << "\n"
        << "limit C" << regime << ": " << g17(lim) << "\n"
        << "abs_difference: " << g17(std::abs(v - lim)) << "\n";
    return kOk;
  }
  if (!a.rk.empty()) {
    const double v = rk_integral_check(a.rk[0], a.rk[1]);
    const double e = rk_integral_expected(a.rk[0], a.rk[1]);
    out << "integral: " << g17(v) << "\nexpected: " << g17(e) << "\nabs_difference: " << g17(std::abs(v - e))
        << "\n";
    return kOk;
  }
  const ConstantReport r = constant(a.name);
  out << r.name << ": " << g17(r.closed_form_value) << "\n"
      << "  closed form: " << g17(r.closed_form_value) << "\n"
      << "  " << r.alt_route << ": " << g17(r.alt_route_value) << "\n"
      << "  discrepancy: " << g17(r.abs_discrepancy) << " (tolerance " << g17(r.tolerance) << ") "
      << (r.ok() ? "ok" : "FAIL") << "\n";
  return r.ok() ? kOk : kNumerical;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Planar point configurations maximizing the product of pairwise distances at fixed diameter", "polydisc"};
  app.require_subcommand(1);
  std::function<int()> action;

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build a named configuration");
  construct->add_option("--family", ca.family, "regular, kite4, hexagon6, dodecagon12, arc, sparse-arc, triwave")
      ->required();
  construct->add_option("--n", ca.n, "Number of points");
  construct->add_option("--m", ca.m, "Triwave frequency (odd)");
  construct->add_option("--amplitude", ca.amplitude, "Triwave amplitude t");
  construct->add_option("--out", ca.out, "ConfigFile path (stdout when omitted)");
  construct->add_option("--svg", ca.svg, "SVG path");
  construct->callback([&] { action = [&] { return cmd_construct(ca, out); }; });

  std::string in_path;
  double tol = 1e-9;
  auto* evaluate = app.add_subcommand("evaluate", "Report value, diameter graph, structure flags and KKT residual");
  evaluate->add_option("input", in_path, "ConfigFile")->required();
  evaluate->add_option("--tol", tol, "Relative diameter tolerance");
  evaluate->callback([&] { action = [&] { return cmd_evaluate(in_path, tol, out); }; });

  auto* kkt = app.add_subcommand("kkt", "Recover multipliers and report stationarity");
  kkt->add_option("input", in_path, "ConfigFile")->required();
  kkt->add_option("--tol", tol, "Relative activity tolerance");
  kkt->callback([&] { action = [&] { return cmd_kkt(in_path, tol, out); }; });

  OptimizeArgs oa;
  auto add_opt_flags = [&](CLI::App* sub, OptimizeArgs& args) {
    sub->add_option("--starts", args.starts, "Number of seeded starts");
    sub->add_option("--seed", args.seed, "Base seed");
    sub->add_option("--max-iters", args.max_iters, "Ascent steps per start");
    sub->add_option("--threads", args.threads, "Worker threads (0: all cores; default POLYDISC_THREADS or 1)");
  };
  auto* optimize = app.add_subcommand("optimize", "Multi-start constrained maximization");
  optimize->add_option("--n", oa.n, "Number of points")->required();
  add_opt_flags(optimize, oa);
  optimize->add_option("--graph", oa.graph, "Prescribed diameter graph, e.g. \"4;1-2,2-3,2-4\"");
  optimize->add_option("--out", oa.out, "ConfigFile path (stdout when omitted)");
  optimize->add_option("--svg", oa.svg, "SVG path");
  optimize->add_option("--trace", oa.trace, "CSV trace of the winning start");
  optimize->callback([&] { action = [&] { return cmd_optimize(oa, out, err); }; });

  OptimizeArgs sa;
  auto* sweep = app.add_subcommand("sweep", "Maximize over every candidate diameter graph");
  sweep->add_option("--n", sa.n, "Number of points")->required();
  add_opt_flags(sweep, sa);
  sweep->callback([&] { action = [&] { return cmd_sweep(sa, out); }; });

  TableArgs ta;
  auto* table = app.add_subcommand("table", "CSV of best values per n");
  table->add_option("--n", ta.ns, "Comma-separated n values")->delimiter(',')->required();
  table->add_option("--families", ta.families, "optimize, regular, arc, sparse-arc, triwave")->delimiter(',');
  add_opt_flags(table, ta.opt);
  table->add_option("--out", ta.opt.out, "CSV path (stdout when omitted)");
  table->callback([&] { action = [&] { return cmd_table(ta, out); }; });

  AsymArgs aa;
  auto* asym = app.add_subcommand("asym", "Asymptotic constants and their cross-checks");
  asym->add_option("name", aa.name, "C1, C2, C3, Cstar, J, even_bound");
  asym->add_option("--converge", aa.converge, "REGIME K: finite regime product against its limit")->expected(2);
  asym->add_option("--rk", aa.rk, "K L: double integral of R_k R_l")->expected(2);
  asym->add_flag("--list", aa.list, "List constant names");
  asym->callback([&] { action = [&] { return cmd_asym(aa, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return action();
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
}

}  // namespace polydisc::cli
