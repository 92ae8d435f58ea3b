#include "epsnet_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "epsnet/comparison.hpp"
#include "epsnet/complex.hpp"
#include "epsnet/discretization.hpp"
#include "epsnet/errors.hpp"
#include "epsnet/growth.hpp"
#include "epsnet/nets.hpp"
#include "epsnet/parallel.hpp"
#include "epsnet/space_spec.hpp"
#include "epsnet/spaces.hpp"
#include "epsnet_cli/json_writer.hpp"

namespace epsnet::cli {
namespace {

namespace fs = std::filesystem;

struct Global {
  std::string output;
  std::string output_dir = ".";
  std::size_t threads = 0;
};

struct SampledNet {
  std::unique_ptr<MetricMeasureSpace> space;
  Sample sample;
  EpsilonNet net;
  IntersectionPattern pattern;
};

struct NetOptions {
  std::string space;
  double eps = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::string strategy = "random";
};

class ThreadScope {
 public:
  explicit ThreadScope(std::size_t n) : previous_(thread_count()) {
    if (n > 0) set_thread_count(n);
  }
  ~ThreadScope() { set_thread_count(previous_); }
  ThreadScope(const ThreadScope&) = delete;
  ThreadScope& operator=(const ThreadScope&) = delete;

 private:
  std::size_t previous_;
};

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json array(std::span<const double> v) {
  Json a = Json::array();
  for (double x : v) a.push_back(finite_or_null(x));
  return a;
}

Json cd_json(const CurvatureDimensionData& cd) {
  return Json{{"K", cd.K}, {"N", cd.N}, {"D", cd.D}};
}

Json edges_json(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  Json a = Json::array();
  for (const auto& [i, j] : edges) a.push_back(Json::array({i, j}));
  return a;
}

NetStrategy parse_strategy(const std::string& s) {
  if (s == "random") return NetStrategy::kRandom;
  if (s == "farthest") return NetStrategy::kFarthest;
  throw ValidationError("strategy must be 'random' or 'farthest'");
}

void add_net_options(CLI::App* cmd, NetOptions& o, bool need_eps = true) {
  cmd->add_option("--space", o.space, "Space specification JSON file")->required();
  auto* eps = cmd->add_option("--eps", o.eps, "Net scale eps > 0");
  if (need_eps) eps->required();
  cmd->add_option("--samples", o.samples, "Sample size")->required();
  cmd->add_option("--seed", o.seed, "Random seed")->required();
  cmd->add_option("--strategy", o.strategy, "Greedy order: random | farthest")
      ->check(CLI::IsMember({"random", "farthest"}));
}

SampledNet sampled_net(const NetOptions& o) {
  if (o.samples == 0) throw ValidationError("--samples must be >= 1");
  SampledNet s;
  s.space = load_space_spec(o.space);
  s.sample = s.space->sample(o.samples, o.seed);
  s.net = build_net(*s.space, s.sample, o.eps, o.seed, parse_strategy(o.strategy));
  s.pattern = intersection_pattern(*s.space, s.sample, s.net);
  return s;
}

Json run_header(const NetOptions& o, const MetricMeasureSpace& space) {
  return Json{{"space", space.kind()},
              {"cd", cd_json(space.cd_data())},
              {"eps", o.eps},
              {"samples", o.samples},
              {"seed", o.seed},
              {"strategy", o.strategy}};
}

fs::path artifact_path(const Global& g, const std::string& name) {
  fs::create_directories(g.output_dir);
  return fs::path(g.output_dir) / name;
}

std::ofstream open_artifact(const fs::path& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  return f;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// bounds ------------------------------------------------------------------------

struct BoundsOptions {
  double K = 0, N = 0, D = 0, eps = 0;
  std::vector<double> C;
  std::optional<double> r;
};

Json cmd_bounds(const BoundsOptions& o) {
  CurvatureDimensionData cd{o.K, o.N, o.D, 1};
  cd.validate();
  if (o.r && o.K > 0.0) bound_net_in_ball(cd, o.eps, *o.r);  // regime error
  const double r = o.r.value_or(o.eps);
  std::vector<double> Cs = o.C;
  if (Cs.empty()) Cs.push_back(doubling_constant(cd, 0.5 * cd.D));
  const PackingBounds b = packing_bounds(cd, o.eps, Cs, r);
  Json n3 = Json::array();
  for (const auto& [C, v] : b.n3) {
    n3.push_back(Json{{"C", C}, {"n_prime", bound_n_prime(cd, o.eps, C)}, {"n3", v}});
  }
  return Json{{"K", o.K},
              {"N", o.N},
              {"D", o.D},
              {"eps", o.eps},
              {"r", r},
              {"n1", b.n1},
              {"n2", b.n2},
              {"n3", n3},
              {"net_card_bound", optional_json(b.net_card_bound)},
              {"degree_bound", optional_json(b.degree_bound)},
              {"doubling_C", b.doubling_constant},
              {"small_ball_c", b.small_ball_constant},
              {"domain_limits", Json{{"profile", finite_or_null(b.domain_limit)}, {"diameter", o.D}}},
              {"notes", b.notes}};
}

// net ---------------------------------------------------------------------------

Json cmd_net(const NetOptions& o) {
  const SampledNet s = sampled_net(o);
  const auto& cd = s.space->cd_data();
  Json rep = run_header(o, *s.space);
  rep["size"] = s.net.size();
  rep["separation"] = finite_or_null(s.net.separation);
  rep["covering"] = s.net.covering;
  rep["max_overlap"] = s.pattern.max_overlap();
  rep["max_sample_overlap"] = max_sample_overlap(*s.space, s.sample, s.net);
  Json bounds = Json::object();
  try {
    const long long n1 = bound_n1(cd, o.eps);
    const long long n2 = bound_n2(cd, o.eps);
    bounds = Json{{"n1", n1},
                  {"n2", n2},
                  {"size_within_n1", static_cast<long long>(s.net.size()) <= n1},
                  {"overlap_within_n2", static_cast<long long>(s.pattern.max_overlap()) <= n2}};
  } catch (const DomainError& e) {
    bounds = Json{{"n1", nullptr}, {"n2", nullptr}, {"note", e.what()}};
  }
  rep["bounds"] = bounds;
  const bool has_coords = s.space->kind() != "pointcloud";
  Json centers = Json::array();
  for (std::size_t idx : s.net.centers) {
    Json c{{"index", idx}};
    c["coordinates"] = has_coords ? array(s.sample.points[idx]) : Json(nullptr);
    centers.push_back(c);
  }
  rep["centers"] = centers;
  rep["pattern_edges"] = edges_json(s.pattern.edges);
  return rep;
}

// triangulate -------------------------------------------------------------------

struct TriangulateOptions {
  NetOptions net;
  int dim_cap = 2;
  double threshold = 0.1;
};

Json cmd_triangulate(const TriangulateOptions& o, const Global& g) {
  const SampledNet s = sampled_net(o.net);
  const Triangulation t = triangulate(*s.space, s.sample, s.net, s.pattern, o.dim_cap, o.threshold);
  const SimplicialComplex& K = t.complex;
  Json rep = run_header(o.net, *s.space);
  rep["dim_cap"] = o.dim_cap;
  rep["thickness_threshold"] = o.threshold;
  rep["vertices"] = K.num_vertices;
  rep["dimension"] = K.dimension();
  Json counts = Json::array();
  for (int d = 0; d <= K.dimension(); ++d) counts.push_back(K.count(d));
  rep["simplex_counts"] = counts;

  Json below = Json::array();
  for (const auto& f : t.report.below_threshold) {
    below.push_back(Json{{"dim", f.dim},
                         {"simplex", K.simplices[static_cast<std::size_t>(f.dim)][f.index]},
                         {"thickness", f.thickness}});
  }
  rep["thickness"] = Json{{"global_min", t.report.global_min},
                          {"min_dihedral_angle", optional_json(t.report.min_dihedral_angle)},
                          {"histogram", t.report.histogram},
                          {"degenerate_count", t.report.degenerate_count},
                          {"below_threshold", below}};

  // OFF mesh when the complex is at most 2-dimensional and every vertex has 3D coordinates.
  std::vector<std::array<double, 3>> coords;
  bool embeddable = K.dimension() <= 2;
  for (std::size_t v = 0; embeddable && v < K.num_vertices; ++v) {
    const auto c = s.space->mesh_coordinates(s.sample.points[s.net.centers[v]]);
    if (!c) embeddable = false;
    else coords.push_back(*c);
  }
  if (embeddable) {
    const auto path = artifact_path(g, "mesh.off");
    auto f = open_artifact(path);
    const std::size_t faces = K.dimension() >= 2 ? K.count(2) : 0;
    f << "OFF\n" << coords.size() << ' ' << faces << " 0\n";
    for (const auto& c : coords) f << num(c[0]) << ' ' << num(c[1]) << ' ' << num(c[2]) << '\n';
    if (faces > 0) {
      for (const auto& tri : K.simplices[2]) f << "3 " << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
    }
    rep["artifact"] = Json{{"format", "off"}, {"path", "mesh.off"}};
  } else {
    const auto path = artifact_path(g, "simplices.txt");
    auto f = open_artifact(path);
    for (const auto& level : K.simplices) {
      for (const auto& sx : level) {
        for (std::size_t i = 0; i < sx.size(); ++i) f << (i ? " " : "") << sx[i];
        f << '\n';
      }
    }
    rep["artifact"] = Json{{"format", "simplices"}, {"path", "simplices.txt"}};
  }
  rep["warnings"] = t.warnings;
  return rep;
}

// discretize --------------------------------------------------------------------

struct DiscretizeOptions {
  NetOptions net;
  std::size_t pairs = 10000;
  bool geodesic = false;
};

Json certificate_json(const RoughIsometryCertificate& c) {
  return Json{{"a", c.a},
              {"b", c.b},
              {"eps1", c.eps1},
              {"violations", c.violations.size()},
              {"pairs_checked", c.pairs_checked},
              {"lower_bound_violations", c.lower_bound_violations.size()},
              {"max_lower_bound_ratio", c.max_lower_bound_ratio},
              {"restricted_to_largest_component", c.restricted_to_largest_component}};
}

void write_edges(const fs::path& path, const DiscretizationGraph& graph) {
  auto f = open_artifact(path);
  f << "# vertices " << graph.num_vertices() << '\n';
  for (const auto& [i, j] : graph.edges) f << i << ' ' << j << '\n';
}

Json cmd_discretize(const DiscretizeOptions& o, const Global& g) {
  const SampledNet s = sampled_net(o.net);
  const DiscretizationGraph graph =
      build_graph(*s.space, s.net, s.pattern, s.sample,
                  o.geodesic ? EdgeMetric::kGeodesic : EdgeMetric::kCombinatorial);
  const BoundedGeometryReport bg = bounded_geometry_check(graph, s.space->cd_data(), o.net.eps);
  const RoughIsometryCertificate cert =
      rough_isometry_certificate(*s.space, s.sample, graph, o.pairs, o.net.seed);

  write_edges(artifact_path(g, "edges.txt"), graph);
  {
    auto f = open_artifact(artifact_path(g, "masses.csv"));
    f << "index,mass\n";
    for (std::size_t v = 0; v < graph.num_vertices(); ++v) f << v << ',' << num(graph.atomic_masses[v]) << '\n';
  }

  Json rep = run_header(o.net, *s.space);
  rep["edge_metric"] = o.geodesic ? "geodesic" : "combinatorial";
  rep["vertices"] = graph.num_vertices();
  rep["edges"] = graph.edges.size();
  rep["rho0"] = bg.rho0;
  rep["degree_bound"] = optional_json(bg.degree_bound);
  rep["bounded_geometry"] = Json{{"passed", bg.passed}, {"regime_supported", bg.regime_supported}, {"note", bg.note}};
  rep["rough_isometry"] = certificate_json(cert);
  rep["components"] = Json{{"count", graph.num_components()},
                           {"largest_size", graph.component_sizes[graph.largest_component]},
                           {"sizes", graph.component_sizes}};
  rep["total_mass"] = compensated_sum(graph.atomic_masses);
  rep["artifacts"] = Json{{"edges", "edges.txt"}, {"masses", "masses.csv"}};
  rep["warnings"] = cert.warnings;
  return rep;
}

// growth ------------------------------------------------------------------------

struct GrowthCliOptions {
  std::string space;
  std::string graph;
  double rmax = 0.0;
  std::size_t grid_points = 32;
  std::size_t budget = 100000;
  std::optional<std::uint64_t> seed;
  std::optional<double> r0;
  std::optional<double> V0;
  std::size_t base = 0;
  bool literal = false;
  std::optional<double> eps;
  double margin = 0.25;
  double discard = 0.2;
};

DiscretizationGraph read_edge_list(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open graph " + path.string());
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::size_t n = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string first;
    if (!(ss >> first)) continue;
    if (first == "#") {
      std::string key;
      std::size_t count = 0;
      if (ss >> key >> count && key == "vertices") n = std::max(n, count);
      continue;
    }
    long long i = -1, j = -1;
    std::istringstream pair(line);
    if (!(pair >> i >> j) || i < 0 || j < 0)
      throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": expected 'i j'");
    edges.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    n = std::max<std::size_t>(n, static_cast<std::size_t>(std::max(i, j)) + 1);
  }
  if (n == 0) throw ValidationError("graph " + path.string() + " has no vertices");
  return graph_from_edges(n, std::move(edges));
}

Json growth_json(const GrowthReport& r) {
  Json cls{{"type", to_string(r.type)}};
  if (r.type == GrowthType::kPolynomial) cls["exponent"] = r.polynomial.slope;
  if (r.type == GrowthType::kExponential) cls["rate"] = r.exponential.slope;
  auto fit = [](const LineFit& f) {
    return Json{{"slope", f.slope}, {"intercept", f.intercept}, {"rms", f.rms}, {"points", f.points}};
  };
  Json nc = nullptr;
  if (r.non_collapsing) {
    nc = Json{{"r0", r.non_collapsing->r0},
              {"V0", r.non_collapsing->V0},
              {"measured", r.non_collapsing->measured},
              {"holds", r.non_collapsing->holds}};
  }
  return Json{{"radii", array(r.radii)},
              {"volumes", array(r.volumes)},
              {"classification", cls},
              {"polynomial_fit", fit(r.polynomial)},
              {"exponential_fit", fit(r.exponential)},
              {"non_collapsing", nc},
              {"literal_criterion", r.literal_criterion},
              {"literal_ratio", r.literal_ratio},
              {"warnings", r.warnings}};
}

Json cmd_growth(const GrowthCliOptions& o) {
  if (o.space.empty() == o.graph.empty()) throw ValidationError("growth needs exactly one of --space or --graph");
  if (o.r0.has_value() != o.V0.has_value()) throw ValidationError("--r0 and --V0 must be given together");
  GrowthOptions opts;
  opts.literal_criterion = o.literal;
  opts.dominance_margin = o.margin;
  opts.discard_fraction = o.discard;
  opts.r0 = o.r0;
  opts.V0 = o.V0;
  const auto radii = linear_radii(o.rmax, o.grid_points);

  if (!o.graph.empty()) {
    const DiscretizationGraph graph = read_edge_list(o.graph);
    if (o.base >= graph.num_vertices()) throw ValidationError("--base is not a vertex of the graph");
    Json rep{{"source", "graph"}, {"base", o.base}};
    rep.update(growth_json(growth_profile(graph, o.base, radii, opts)));
    return rep;
  }
  if (!o.seed) throw ValidationError("--seed is required for growth on a sampled space");
  if (o.budget == 0) throw ValidationError("--budget must be >= 1");
  const auto space = load_space_spec(o.space);
  const Sample sample = space->sample(o.budget, *o.seed);
  const auto base = space->reference_point();
  const GrowthReport space_rep = growth_profile(*space, sample, base, radii, opts);
  Json rep{{"source", "space"}, {"space", space->kind()}, {"budget", o.budget}, {"seed", *o.seed}};
  rep.update(growth_json(space_rep));
  if (o.eps) {
    const EpsilonNet net = build_net(*space, sample, *o.eps, *o.seed);
    const IntersectionPattern pattern = intersection_pattern(*space, sample, net);
    const DiscretizationGraph graph = build_graph(*space, net, pattern, sample);
    // Vertex nearest to the base point.
    std::size_t v0 = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < graph.num_vertices(); ++v) {
      const double d = space->distance(base, sample.points[graph.vertices[v]]);
      if (d < best) {
        best = d;
        v0 = v;
      }
    }
    GrowthOptions gopts = opts;
    gopts.r0.reset();
    gopts.V0.reset();
    const std::size_t h_max = hop_radius_within(*space, sample, graph, v0, o.rmax);
    if (h_max < 2) throw ValidationError("eps-graph has fewer than 2 hops within --rmax; lower --eps");
    const GrowthReport graph_rep = growth_profile(graph, v0, hop_radii(h_max, o.grid_points), gopts);
    const AgreementVerdict verdict = growth_agreement(space_rep, graph_rep);
    Json gj{{"eps", *o.eps}, {"base", v0}};
    gj.update(growth_json(graph_rep));
    rep["graph"] = gj;
    rep["agreement"] = Json{{"verdict", to_string(verdict.verdict)},
                            {"space", to_string(verdict.first)},
                            {"graph", to_string(verdict.second)}};
  }
  return rep;
}

// fisher-embed ------------------------------------------------------------------

Json cmd_fisher(const std::vector<double>& p, const std::vector<double>& q) {
  validate_probability(p);
  const auto u = fisher_embed(p);
  double norm2 = 0;
  for (double x : u) norm2 += x * x;
  Json rep{{"p", array(p)}, {"u", array(u)}, {"norm_squared", norm2}};
  if (!q.empty()) {
    validate_probability(q);
    if (q.size() != p.size()) throw ValidationError("--p and --q must have the same number of atoms");
    rep["q"] = array(q);
    rep["v"] = array(fisher_embed(q));
    rep["fisher_distance"] = fisher_distance(p, q);
    rep["kl_pq"] = kl_divergence(p, q);
    rep["kl_qp"] = kl_divergence(q, p);
  }
  return rep;
}

// verify-bg ---------------------------------------------------------------------

struct VerifyOptions {
  std::string space;
  std::optional<double> rmax;
  std::size_t grid_points = 16;
  std::size_t budget = 100000;
  std::uint64_t seed = 0;
  std::string mode = "exact";
  double sigma = 3.0;
};

Json cmd_verify_bg(const VerifyOptions& o) {
  const auto space = load_space_spec(o.space);
  const auto& cd = space->cd_data();
  const double limit = ComparisonProfile(cd.K, cd.N).domain_limit();
  const double rmax = o.rmax.value_or(std::min(cd.D, limit));
  const auto radii = linear_radii(rmax, o.grid_points);
  const auto center = space->reference_point();
  const MonotonicityReport r =
      bishop_gromov_check(*space, center, radii, o.budget, o.seed,
                          o.mode == "exact" ? MeasureMode::kExact : MeasureMode::kMonteCarlo, o.sigma);
  Json inc = Json::array();
  for (const auto& i : r.increases) {
    inc.push_back(Json{{"index", i.index},
                       {"r_from", i.r_from},
                       {"r_to", i.r_to},
                       {"magnitude", i.magnitude},
                       {"tolerance", i.tolerance},
                       {"significant", i.significant}});
  }
  return Json{{"space", space->kind()},
              {"cd", cd_json(cd)},
              {"center", array(center)},
              {"mode", o.mode},
              {"budget", o.budget},
              {"seed", o.seed},
              {"sigma", o.sigma},
              {"radii", array(r.radii)},
              {"ball_measures", array(r.ball_measures)},
              {"standard_errors", array(r.standard_errors)},
              {"phi", array(r.phi)},
              {"increases", inc},
              {"passed", r.passed},
              {"max_relative_drift", r.max_relative_drift}};
}

// compare-patterns --------------------------------------------------------------

struct CompareOptions {
  NetOptions net;
  std::string space_b;
  std::optional<double> eps_b;
  std::optional<std::uint64_t> seed_b;
  double C = 2.0;
};

Json cmd_compare(const CompareOptions& o) {
  const SampledNet a = sampled_net(o.net);
  const double eps_b = o.eps_b.value_or(o.net.eps);
  Json rep = run_header(o.net, *a.space);
  rep["eps_b"] = eps_b;
  rep["C"] = o.C;

  std::optional<SampledNet> independent;
  std::unique_ptr<MetricMeasureSpace> space_b_holder;
  const MetricMeasureSpace* space_b = a.space.get();
  const Sample* sample_b = &a.sample;
  EpsilonNet net_b;
  IntersectionPattern pattern_b;
  if (o.seed_b) {
    NetOptions ob = o.net;
    ob.space = o.space_b.empty() ? o.net.space : o.space_b;
    ob.eps = eps_b;
    ob.seed = *o.seed_b;
    independent = sampled_net(ob);
    if (independent->net.size() != a.net.size()) {
      throw ValidationError("independent nets differ in size (" + std::to_string(a.net.size()) + " vs " +
                            std::to_string(independent->net.size()) + "); patterns are not comparable");
    }
    space_b = independent->space.get();
    sample_b = &independent->sample;
    net_b = independent->net;
    pattern_b = independent->pattern;
    rep["mode"] = "independent";
    rep["seed_b"] = *o.seed_b;
  } else {
    // The same labeled centers, measured in the second space.
    if (!o.space_b.empty()) {
      space_b_holder = load_space_spec(o.space_b);
      if (space_b_holder->coordinate_dim() != a.space->coordinate_dim())
        throw ValidationError("--space-b has a different coordinate dimension");
      space_b = space_b_holder.get();
    }
    net_b = a.net;
    net_b.eps = eps_b;
    pattern_b = intersection_pattern(*space_b, a.sample, net_b);
    rep["mode"] = "same-centers";
    rep["seed_b"] = nullptr;
  }
  const PatternIsomorphismReport r =
      compare_patterns(NetView{*a.space, a.sample, a.net, a.pattern}, NetView{*space_b, *sample_b, net_b, pattern_b}, o.C);
  Json viol = Json::array();
  for (const auto& v : r.violations) {
    viol.push_back(Json{{"i", v.i}, {"j", v.j}, {"distance_a", v.distance_a}, {"distance_b", v.distance_b}});
  }
  rep["vertices"] = a.net.size();
  rep["n3"] = r.n3;
  rep["identical"] = r.identical;
  rep["only_in_a"] = edges_json(r.only_in_a);
  rep["only_in_b"] = edges_json(r.only_in_b);
  rep["pairs_checked"] = r.pairs_checked;
  rep["violations"] = viol;
  return rep;
}

void emit(const Json& rep, const Global& g, std::ostream& out) {
  const std::string text = dump_json(rep);
  if (g.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(g.output, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + g.output);
  f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Epsilon-nets, packings and discretizations of metric measure spaces", "epsnet"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--threads", g.threads, "Worker threads (default: EPSNET_THREADS or all cores)");
  app.add_option("-o,--output", g.output, "Write the JSON report to this file instead of stdout");
  app.add_option("--output-dir", g.output_dir, "Directory for mesh, edge list and mass files");
  app.fallthrough();

  BoundsOptions bo;
  auto* bounds = app.add_subcommand("bounds", "Packing bounds from declared (K, N, D)");
  bounds->add_option("--K", bo.K, "Curvature bound K")->required();
  bounds->add_option("--N", bo.N, "Dimension bound N")->required();
  bounds->add_option("--D", bo.D, "Diameter bound D")->required();
  bounds->add_option("--eps", bo.eps, "Net scale eps")->required();
  bounds->add_option("--C", bo.C, "Distance multiple(s) for n3 (default: the doubling constant)");
  bounds->add_option("--r", bo.r, "Ball radius for the net-cardinality and degree bounds (default: eps)");

  NetOptions no;
  auto* net = app.add_subcommand("net", "Build an eps-net and its intersection pattern");
  add_net_options(net, no);

  TriangulateOptions to;
  auto* tri = app.add_subcommand("triangulate", "Flag complex of a net with thickness report");
  add_net_options(tri, to.net);
  tri->add_option("--dim-cap", to.dim_cap, "Largest simplex dimension");
  tri->add_option("--thickness-threshold", to.threshold, "Flag simplices thinner than this");

  DiscretizeOptions dopt;
  auto* disc = app.add_subcommand("discretize", "Discretization graph, Voronoi masses, rough isometry");
  add_net_options(disc, dopt.net);
  disc->add_option("--pairs", dopt.pairs, "Pair budget for the rough-isometry certificate");
  disc->add_flag("--geodesic", dopt.geodesic, "Weight edges by ambient length instead of 1");

  GrowthCliOptions go;
  auto* growth = app.add_subcommand("growth", "Volume growth of a space or graph");
  auto* gspace = growth->add_option("--space", go.space, "Space specification JSON file");
  auto* ggraph = growth->add_option("--graph", go.graph, "Edge list file");
  gspace->excludes(ggraph);
  growth->add_option("--rmax", go.rmax, "Largest radius")->required();
  growth->add_option("--grid-points", go.grid_points, "Number of radii");
  growth->add_option("--budget", go.budget, "Sample size for spaces");
  growth->add_option("--seed", go.seed, "Random seed (required with --space)");
  growth->add_option("--r0", go.r0, "Radius of the non-collapsing check");
  growth->add_option("--V0", go.V0, "Volume threshold of the non-collapsing check");
  growth->add_option("--base", go.base, "Base vertex for --graph");
  growth->add_option("--eps", go.eps, "Also classify the eps-graph of the sample and compare");
  growth->add_option("--margin", go.margin, "Residual dominance margin");
  growth->add_option("--discard", go.discard, "Fraction of the smallest radii left out of the fits");
  growth->add_flag("--literal", go.literal, "Use the limsup V(r)/r criterion for exponential growth");

  std::vector<double> p, q;
  auto* fisher = app.add_subcommand("fisher-embed", "Fisher embedding u = 2 sqrt(p)");
  fisher->add_option("--p", p, "Probability vector")->required()->delimiter(',');
  fisher->add_option("--q", q, "Second probability vector")->delimiter(',');

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify-bg", "Bishop-Gromov monotonicity check");
  verify->add_option("--space", vo.space, "Space specification JSON file")->required();
  verify->add_option("--rmax", vo.rmax, "Largest radius (default: min(D, profile domain))");
  verify->add_option("--grid-points", vo.grid_points, "Number of radii");
  verify->add_option("--budget", vo.budget, "Monte-Carlo budget");
  verify->add_option("--seed", vo.seed, "Random seed")->required();
  verify->add_option("--mode", vo.mode, "exact | monte-carlo")->check(CLI::IsMember({"exact", "monte-carlo"}));
  verify->add_option("--sigma", vo.sigma, "Standard errors tolerated per increase");

  CompareOptions co;
  auto* cmp = app.add_subcommand("compare-patterns", "Compare two labeled nets and check n3 distance control");
  add_net_options(cmp, co.net);
  cmp->add_option("--space-b", co.space_b, "Second space (default: the first)");
  cmp->add_option("--eps-b", co.eps_b, "Scale of the second net (default: --eps)");
  cmp->add_option("--seed-b", co.seed_b, "Build the second net independently with this seed");
  cmp->add_option("--C", co.C, "Distance multiple C >= 1");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitValidation;
  }

  try {
    ThreadScope threads(g.threads);
    Json rep;
    if (*bounds) rep = cmd_bounds(bo);
    else if (*net) rep = cmd_net(no);
    else if (*tri) rep = cmd_triangulate(to, g);
    else if (*disc) rep = cmd_discretize(dopt, g);
    else if (*growth) rep = cmd_growth(go);
    else if (*fisher) rep = cmd_fisher(p, q);
    else if (*verify) rep = cmd_verify_bg(vo);
    else if (*cmp) rep = cmd_compare(co);
    emit(rep, g, out);
    return kExitOk;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace epsnet::cli
