#include "ttlab/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "ttlab/error.hpp"
#include "ttlab/pingpong.hpp"
#include "ttlab/serialize.hpp"
#include "ttlab/stallings.hpp"
#include "ttlab/strata.hpp"

namespace ttlab {

namespace {

struct UsageError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int env_max_iter(int fallback) {
  const char* v = std::getenv("TTLAB_MAX_ITER");
  if (!v || !*v) return fallback;
  try {
    std::size_t used = 0;
    int n = std::stoi(v, &used);
    if (used != std::string(v).size() || n < 0) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw UsageError(std::string("TTLAB_MAX_ITER must be a non-negative integer, got '") + v + "'");
  }
}

std::string show(const std::string& w) { return w.empty() ? "1" : w; }
std::string parse_word(const std::string& w) { return w == "1" ? std::string() : w; }

// "1" is the trivial path at the first vertex.
EdgePath parse_path(const GraphPtr& g, const std::string& w) {
  std::string word = parse_word(w);
  return word.empty() ? EdgePath::trivial(g, 0) : EdgePath(g, word);
}

// Splits "a,baB" into generator words.
std::vector<std::string> split_generators(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& r : raw) {
    std::stringstream ss(r);
    std::string piece;
    while (std::getline(ss, piece, ',')) out.push_back(parse_word(piece));
  }
  return out;
}

int infer_rank(const std::vector<std::string>& words, int given) {
  if (given > 0) return given;
  int r = 1;
  for (const auto& w : words) {
    for (char c : w) {
      if (!is_letter(c)) throw UsageError(std::string("--gen: bad letter '") + c + "'");
      r = std::max(r, base_letter(c) - 'a' + 1);
    }
  }
  return r;
}

struct Options {
  bool json = false;
  int threads = 1;
  std::string graph, word, beta, cert_path, out_path, aut_a, aut_b;
  std::vector<std::string> maps, gens;
  std::string psi, psi_inv, phi, phi_inv, pattern;
  int k = 3, power = 0, rank = 0, stratum = -1, len = -1, period = -1, max_iter = -1, m = -1, n = -1;
  int rho_bound = 12;
  bool circuit = false, segment = false, element = false, core = false, core_free = false, dot = false,
       either = false;
};

class Runner {
 public:
  Runner(Options& o, std::ostream& out) : o_(o), out_(out) {}

  GraphPtr graph() const {
    if (o_.graph.empty()) throw UsageError("-g: a graph file is required");
    return std::make_shared<const MarkedGraph>(parse_graph(read_file(o_.graph)));
  }
  GraphMap map(const std::string& path, const GraphPtr& g) const { return parse_map(read_file(path), g); }
  GraphMap the_map(const GraphPtr& g) const {
    if (o_.maps.size() != 1) throw UsageError("-m: exactly one map file is required");
    return map(o_.maps[0], g);
  }
  Automorphism aut(const std::string& path, const char* flag) const {
    if (path.empty()) throw UsageError(std::string(flag) + ": an automorphism file is required");
    Automorphism a = parse_automorphism(read_file(path));
    return a.inverse_images() ? a : with_inverse(a);
  }
  int stratum_or_top(const GraphMap& f) const {
    if (o_.stratum >= 0) return o_.stratum;
    int top = top_eg_stratum(f, compute_filtration(f));
    if (top < 0) throw NotEGStratum("map " + f.name() + " has no EG stratum");
    return top;
  }
  SubgroupGraph subgroup() const {
    auto gens = split_generators(o_.gens);
    if (gens.empty()) throw UsageError("--gen: at least one generator is required");
    SubgroupGraph s = from_generators(gens, infer_rank(gens, o_.rank));
    if (o_.core_free) return core(s, false);
    if (o_.core) return core(s, true);
    return s;
  }

  int emit(const Json& j, const std::string& human, int code = 0) {
    if (o_.json) {
      out_ << j.dump(2) << "\n";
    } else {
      out_ << human;
      if (!human.empty() && human.back() != '\n') out_ << "\n";
    }
    return code;
  }

  int tighten_cmd() {
    EdgePath p = tighten(parse_path(graph(), o_.word));
    return emit({{"word", p.word()}, {"origin", p.origin()}, {"terminus", p.terminus()}}, show(p.word()));
  }

  int apply_cmd() {
    auto g = graph();
    GraphMap f = the_map(g);
    EdgePath p = apply_sharp(f, parse_path(g, o_.word));
    return emit({{"map", f.name()}, {"input", o_.word}, {"image", p.word()}}, show(p.word()));
  }

  int compose_cmd() {
    auto g = graph();
    GraphMap h = [&] {
      if (o_.power != 0) {
        if (o_.maps.size() != 1) throw UsageError("--power: takes exactly one -m");
        return power(map(o_.maps[0], g), o_.power);
      }
      if (o_.maps.size() < 2) throw UsageError("-m: compose needs two or more maps (the last is applied first)");
      GraphMap acc = map(o_.maps.back(), g);
      for (auto it = o_.maps.rbegin() + 1; it != o_.maps.rend(); ++it) acc = compose(map(*it, g), acc);
      return acc;
    }();
    Json j = {{"map", h.name()}, {"images", h.edge_images()}};
    return emit(j, format_map(h));
  }

  int bcc_cmd() {
    auto g = graph();
    GraphMap f = the_map(g);
    BccReport r = bcc_report(f);
    return emit({{"map", f.name()}, {"bcc", r.bound}, {"exact", r.exact}},
                "bcc " + std::to_string(r.bound) + (r.exact ? "" : " (Lipschitz fallback)"));
  }

  int strata_cmd() {
    auto g = graph();
    GraphMap f = the_map(g);
    Filtration filt = compute_filtration(f);
    Json j = to_json(filt, f);
    std::ostringstream os;
    for (const auto& s : j["strata"]) {
      os << "H" << s["index"].get<int>() << " " << s["edges"].get<std::string>() << " "
         << s["type"].get<std::string>();
      if (s.contains("lambda")) os << " lambda=" << std::setprecision(10) << s["lambda"].get<double>();
      if (s.contains("subtype")) os << " " << s["subtype"].get<std::string>();
      os << "\n";
    }
    return emit(j, os.str());
  }

  int pf_cmd() {
    auto g = graph();
    GraphMap f = the_map(g);
    Filtration filt = compute_filtration(f);
    std::vector<int> edges;
    if (o_.stratum >= 0) {
      edges = filt.strata.at(o_.stratum).edges;
    } else {
      for (int i = 0; i < g->edge_count(); ++i) edges.push_back(i);
      if (!is_irreducible(transition_matrix(f, edges))) {
        int top = top_eg_stratum(f, filt);
        if (top >= 0) edges = filt.strata[top].edges;
      }
    }
    auto r = pf_eigenvalue(transition_matrix(f, edges));
    if (std::holds_alternative<NotIrreducible>(r)) return emit({{"verdict", "not_irreducible"}}, "NotIrreducible", 1);
    const auto& pf = std::get<PerronFrobenius>(r);
    std::ostringstream os;
    os << "lambda " << std::setprecision(12) << pf.lambda << "\neigenvector";
    for (double x : pf.eigenvector) os << " " << std::setprecision(10) << x;
    return emit({{"lambda", pf.lambda}, {"eigenvector", pf.eigenvector}, {"iterations", pf.iterations}}, os.str());
  }

  int leaf_cmd() {
    auto g = graph();
    GraphMap f = the_map(g);
    if (o_.word.size() != 1) throw UsageError("-w: leaf needs a single edge letter");
    LeafSegment s = leaf_segment(f, o_.word[0], o_.k);
    return emit({{"seed", o_.word}, {"k", o_.k}, {"path", s.path.word()}, {"length", s.path.size()}}, s.path.word());
  }

  int attract_cmd() {
    auto g = graph();
    GraphMap f = the_map(g);
    if (o_.beta.empty()) throw UsageError("--beta: the neighborhood path is required");
    AttractingNeighborhood n{EdgePath(g, o_.beta), Orientation::either};
    int iters = o_.max_iter >= 0 ? o_.max_iter : env_max_iter(20);
    AttractionResult r = o_.circuit ? weak_attraction_test(f, n, Circuit(g, parse_word(o_.word)), iters)
                                    : weak_attraction_test(f, n, parse_path(g, o_.word), iters);
    if (r.attracted) {
      return emit({{"attracted", *r.attracted}}, "Attracted(" + std::to_string(*r.attracted) + ")");
    }
    return emit({{"attracted", nullptr}, {"bound", iters}}, "NotByIter(" + std::to_string(iters) + ")", 1);
  }

  int zgraph_cmd() {
    auto g = graph();
    GraphMap f = the_map(g);
    NonAttractingSubgraph z = nonattracting_subgraph(f, stratum_or_top(f), o_.rho_bound);
    std::string edges;
    for (int e : z.z_edges) edges.push_back(g->edge_letter(e));
    std::string dis;
    for (int e : z.disagreements) dis.push_back(g->edge_letter(e));
    Json j = {{"z_edges", edges}, {"rho", z.rho}, {"rho_origin", z.rho_origin}, {"disagreements", dis}};
    std::string human = "Z: " + (edges.empty() ? std::string("(empty)") : edges) +
                        "\nrho: " + (z.rho.empty() ? std::string("(none)") : z.rho);
    if (!dis.empty()) human += "\nreachability and attraction disagree on: " + dis;
    return emit(j, human);
  }

  int fold_cmd() {
    SubgroupGraph s = subgroup();
    if (o_.dot && !o_.json) {
      out_ << to_dot(s);
      return 0;
    }
    std::ostringstream os;
    os << "vertices " << s.vertex_count() << " base v" << s.base() << "\n";
    for (const auto& e : s.edges()) os << "v" << e.from << " -" << e.label << "-> v" << e.to << "\n";
    return emit(to_json(s), os.str());
  }

  int carries_cmd() {
    SubgroupGraph s = subgroup();
    std::string w = parse_word(o_.word);
    bool yes = o_.element ? contains_element(s, w) : o_.segment ? carries_segment(s, w) : carries_circuit(s, w);
    const char* what = o_.element ? "element" : o_.segment ? "segment" : "circuit";
    return emit({{"word", w}, {"test", what}, {"carried", yes}}, yes ? "carried" : "not carried", yes ? 0 : 1);
  }

  int edgelets_cmd() {
    SubgroupGraph s = subgroup();
    if (!o_.core_free) s = core(s, true);
    EdgeletDecomposition d = edgelets(s, !o_.core_free);
    std::ostringstream os;
    os << "natural vertices:";
    for (int v : d.natural_vertices) os << " v" << v;
    os << "\n";
    for (const auto& e : d.natural_edges) {
      os << "v" << e.from << " -> v" << e.to << " " << e.word << " (" << e.word.size() << ")\n";
    }
    os << "edgelets " << d.edgelet_count;
    return emit(to_json(d), os.str());
  }

  int certify_cmd() {
    auto g = graph();
    GraphMap f = the_map(g);
    GrowthSearch s;
    s.max_beta_len = o_.len > 0 ? o_.len : 8;
    s.max_iter = o_.max_iter >= 0 ? o_.max_iter : env_max_iter(10);
    s.either_orientation = o_.either;
    s.threads = o_.threads;
    auto r = certify_exponential_growth(f, s);
    if (auto* nf = std::get_if<NotFound>(&r)) return emit({{"found", false}, {"reason", nf->reason}}, "NotFound: " + nf->reason, 1);
    const auto& c = std::get<EGCertificate>(r);
    std::ostringstream os;
    os << "beta " << c.beta.word() << " k " << c.k << " C " << c.C << " copies at";
    for (auto p : c.positions) os << " " << p;
    return emit(to_json(c), os.str());
  }

  int pingpong_cmd() {
    auto g = graph();
    auto need = [&](const std::string& p, const char* flag) {
      if (p.empty()) throw UsageError(std::string(flag) + ": map file is required");
      return map(p, g);
    };
    PingPongMaps maps{need(o_.psi, "--psi"), need(o_.psi_inv, "--psi-inv"), need(o_.phi, "--phi"),
                      need(o_.phi_inv, "--phi-inv")};
    PingPongParams params;
    params.max_iter = o_.max_iter >= 0 ? o_.max_iter : env_max_iter(20);
    params.threads = o_.threads;
    auto r = build_pingpong(maps, params);
    if (auto* f = std::get_if<FailureTrace>(&r)) {
      return emit(to_json(*f),
                  "FailureTrace at STEP " + std::to_string(f->step) + " (bound " + std::to_string(f->bound) +
                      "): " + f->message,
                  1);
    }
    const auto& c = std::get<PingPongCertificate>(r);
    Json j = to_json(c);
    if (!o_.out_path.empty()) {
      std::ofstream file(o_.out_path);
      if (!file) throw UsageError("-o: cannot write '" + o_.out_path + "'");
      file << j.dump(2) << "\n";
    }
    std::ostringstream os;
    os << "M " << c.M << " (p " << c.p << ", q " << c.q << ", C " << c.C << ")\n";
    os << "V+_psi " << c.beta_plus << "\nV-_psi " << c.beta_minus << "\nV+_phi " << c.gamma_plus << "\nV-_phi "
       << c.gamma_minus << "\n";
    os << c.transcript.size() << " containments verified";
    return emit(j, os.str());
  }

  int verify_cmd() {
    if (o_.cert_path.empty()) throw UsageError("-c: a certificate file is required");
    Json j;
    try {
      j = Json::parse(read_file(o_.cert_path));
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("certificate is not JSON: ") + e.what(), 1, 1);
    }
    PingPongCertificate c = pingpong_from_json(j);
    int m = o_.m >= 0 ? o_.m : c.M;
    int n = o_.n >= 0 ? o_.n : c.M;
    std::vector<SignPattern> patterns;
    if (o_.pattern.empty()) {
      patterns = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    } else {
      if (o_.pattern.size() != 2 || o_.pattern.find_first_not_of("+-") != std::string::npos) {
        throw UsageError("--pattern: expected two signs such as +- ");
      }
      patterns = {{o_.pattern[0] == '+' ? 1 : -1, o_.pattern[1] == '+' ? 1 : -1}};
    }
    Json results = Json::array();
    std::ostringstream os;
    int code = 0;
    for (SignPattern s : patterns) {
      std::string tag = std::string(s.psi_sign > 0 ? "+" : "-") + (s.phi_sign > 0 ? "+" : "-");
      auto v = verify_pingpong(c, m, n, s);
      if (auto* bad = std::get_if<Violation>(&v)) {
        code = 1;
        results.push_back({{"pattern", tag}, {"verified", false}, {"violation", bad->inclusion}});
        os << tag << " Violation: " << bad->inclusion << "\n";
      } else {
        auto& ok = std::get<VerifiedInclusions>(v);
        results.push_back({{"pattern", tag}, {"verified", true}, {"inclusions", ok.checked.size()}});
        os << tag << " verified " << ok.checked.size() << " inclusions\n";
      }
    }
    return emit({{"m", m}, {"n", n}, {"results", results}}, os.str(), code);
  }

  int freeness_cmd() {
    Automorphism a = aut(o_.aut_a, "-a");
    Automorphism b = aut(o_.aut_b, "-b");
    int m = o_.m >= 0 ? o_.m : 1;
    int n = o_.n >= 0 ? o_.n : 1;
    FreenessReport r = freeness_oracle(a, b, m, n, o_.len > 0 ? o_.len : 6, o_.threads);
    if (auto* rel = std::get_if<RelationFound>(&r.verdict)) {
      return emit(to_json(r), "RelationFound " + rel->word + " (conjugator " + show(rel->conjugator) + ")", 1);
    }
    return emit(to_json(r), "NoRelationUpTo(" + std::to_string(r.max_len) + ")");
  }

  int scan_cmd() {
    Automorphism a = aut(o_.aut_a, "-a");
    PeriodicClassReport r = hyperbolicity_scan(a, o_.len > 0 ? o_.len : 6, o_.period > 0 ? o_.period : 4, o_.threads);
    std::ostringstream os;
    os << r.classes_scanned << " classes scanned\n";
    for (const auto& c : r.found) os << "[" << c.word << "] period " << c.period << "\n";
    if (r.truncated) os << "(report truncated)\n";
    if (r.found.empty()) os << "no periodic class found";
    return emit(to_json(r), os.str(), r.found.empty() ? 0 : 1);
  }

  int evidence_cmd() {
    auto g = graph();
    GraphMap f = the_map(g);
    std::vector<std::pair<std::string, SubgroupGraph>> probes;
    for (const auto& raw : o_.gens) {
      auto gens = split_generators({raw});
      probes.emplace_back("<" + raw + ">", from_generators(gens, g->edge_count()));
    }
    EvidenceBounds b;
    if (o_.len > 0) b.scan_len = o_.len;
    if (o_.period > 0) b.scan_period = o_.period;
    EvidenceReport r = irreducibility_evidence(f, stratum_or_top(f), probes, b);
    return emit(to_json(r), r.summary, r.matrix_irreducible ? 0 : 1);
  }

 private:
  Options& o_;
  std::ostream& out_;
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  Runner run(o, out);
  std::function<int()> action;

  CLI::App app{"ttlab: free group graph maps, laminations and ping-pong certificates", "ttlab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "JSON output");
  app.add_option("--threads", o.threads, "worker threads for parallel searches")->check(CLI::PositiveNumber);

  auto sub = [&](const char* name, const char* help, int (Runner::*fn)()) {
    CLI::App* s = app.add_subcommand(name, help);
    s->callback([&, fn] { action = [&, fn] { return (run.*fn)(); }; });
    return s;
  };
  auto graph_map = [&](CLI::App* s) {
    s->add_option("-g", o.graph, "graph file")->required();
    s->add_option("-m", o.maps, "map file")->required();
  };

  CLI::App* s = sub("tighten", "tighten an edge path", &Runner::tighten_cmd);
  s->add_option("-g", o.graph, "graph file")->required();
  s->add_option("-w", o.word, "edge path word")->required();

  s = sub("apply", "f_# of a path", &Runner::apply_cmd);
  graph_map(s);
  s->add_option("-w", o.word, "edge path word")->required();

  s = sub("compose", "compose maps (last applied first) or take a power", &Runner::compose_cmd);
  graph_map(s);
  s->add_option("--power", o.power, "power of a single map");

  s = sub("bcc", "bounded cancellation constant", &Runner::bcc_cmd);
  graph_map(s);

  s = sub("strata", "filtration and stratum types", &Runner::strata_cmd);
  graph_map(s);

  s = sub("pf", "Perron-Frobenius eigenvalue", &Runner::pf_cmd);
  graph_map(s);
  s->add_option("--stratum", o.stratum, "stratum index");

  s = sub("leaf", "leaf segment f^k_#(e)", &Runner::leaf_cmd);
  graph_map(s);
  s->add_option("-w", o.word, "seed edge letter")->required();
  s->add_option("-k", o.k, "iterate")->check(CLI::NonNegativeNumber);

  s = sub("attract", "weak attraction test", &Runner::attract_cmd);
  graph_map(s);
  s->add_option("-w", o.word, "path or circuit word")->required();
  s->add_option("--beta", o.beta, "neighborhood path")->required();
  s->add_flag("--circuit", o.circuit, "treat -w as a circuit");
  s->add_option("--max-iter", o.max_iter, "iteration bound")->check(CLI::NonNegativeNumber);

  s = sub("zgraph", "nonattracting subgraph and Nielsen path", &Runner::zgraph_cmd);
  graph_map(s);
  s->add_option("--stratum", o.stratum, "EG stratum index (default: top)");
  s->add_option("-L", o.rho_bound, "longest Nielsen path searched")->check(CLI::PositiveNumber);

  auto subgroup_opts = [&](CLI::App* s) {
    s->add_option("--gen", o.gens, "generators, repeatable or comma separated")->required();
    s->add_option("-r", o.rank, "rank of the free group")->check(CLI::Range(1, 26));
  };
  s = sub("fold", "Stallings graph of a subgroup", &Runner::fold_cmd);
  subgroup_opts(s);
  s->add_flag("--core", o.core, "core, keeping the base");
  s->add_flag("--core-free", o.core_free, "core without the base");
  s->add_flag("--dot", o.dot, "DOT output");

  s = sub("carries", "does the subgroup carry a word", &Runner::carries_cmd);
  subgroup_opts(s);
  s->add_option("-w", o.word, "word")->required();
  auto* seg = s->add_flag("--segment", o.segment, "test a path segment");
  s->add_flag("--element", o.element, "test subgroup membership")->excludes(seg);

  s = sub("edgelets", "natural edges of the core", &Runner::edgelets_cmd);
  subgroup_opts(s);
  s->add_flag("--core-free", o.core_free, "core without the base, base not natural");

  s = sub("certify-eg", "exponential growth certificate", &Runner::certify_cmd);
  graph_map(s);
  s->add_option("-L", o.len, "longest beta")->check(CLI::PositiveNumber);
  s->add_option("--max-iter", o.max_iter, "largest iterate")->check(CLI::NonNegativeNumber);
  s->add_flag("--either", o.either, "count inverse copies too");

  s = app.add_subcommand("pingpong", "build a ping-pong certificate");
  s->callback([&] { action = [&] { return run.pingpong_cmd(); }; });
  s->add_option("-g", o.graph, "graph file")->required();
  s->add_option("--psi", o.psi, "map for psi")->required();
  s->add_option("--psi-inv", o.psi_inv, "map for psi^-1")->required();
  s->add_option("--phi", o.phi, "map for phi")->required();
  s->add_option("--phi-inv", o.phi_inv, "map for phi^-1")->required();
  s->add_option("--max-iter", o.max_iter, "power search bound")->check(CLI::NonNegativeNumber);
  s->add_option("-o", o.out_path, "write the certificate JSON here");

  s = sub("verify", "re-verify a ping-pong certificate", &Runner::verify_cmd);
  s->add_option("-c", o.cert_path, "certificate JSON")->required();
  s->add_option("-m", o.m, "psi exponent (default M)")->check(CLI::NonNegativeNumber);
  s->add_option("-n", o.n, "phi exponent (default M)")->check(CLI::NonNegativeNumber);
  s->add_option("--pattern", o.pattern, "one sign pattern such as +- (default: all four)");

  s = sub("freeness", "search for relations between psi^m and phi^n", &Runner::freeness_cmd);
  s->add_option("-a", o.aut_a, "automorphism psi")->required();
  s->add_option("-b", o.aut_b, "automorphism phi")->required();
  s->add_option("-m", o.m, "psi exponent")->check(CLI::PositiveNumber);
  s->add_option("-n", o.n, "phi exponent")->check(CLI::PositiveNumber);
  s->add_option("-L", o.len, "longest syllable word")->check(CLI::PositiveNumber);

  s = sub("scan-hyperbolic", "periodic conjugacy class scan", &Runner::scan_cmd);
  s->add_option("-a", o.aut_a, "automorphism")->required();
  s->add_option("-L", o.len, "longest word")->check(CLI::PositiveNumber);
  s->add_option("-P", o.period, "longest period")->check(CLI::PositiveNumber);

  s = sub("evidence", "full irreducibility evidence", &Runner::evidence_cmd);
  graph_map(s);
  s->add_option("--stratum", o.stratum, "EG stratum index (default: top)");
  s->add_option("--probe", o.gens, "probe subgroup generators, comma separated; repeatable");
  s->add_option("-L", o.len, "scan length")->check(CLI::PositiveNumber);
  s->add_option("-P", o.period, "scan period")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    return action();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace ttlab
