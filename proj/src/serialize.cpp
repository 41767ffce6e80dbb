#include "ttlab/serialize.hpp"

#include "ttlab/error.hpp"

namespace ttlab {

namespace {

Role role_from(const std::string& s) {
  for (Role r : {Role::psi, Role::psi_inv, Role::phi, Role::phi_inv}) {
    if (s == to_string(r)) return r;
  }
  throw ParseError("unknown map role '" + s + "'", 1, 1);
}

template <class T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("certificate is missing '") + key + "'", 1, 1);
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(std::string("certificate field '") + key + "' has the wrong type", 1, 1);
  }
}

}  // namespace

Json to_json(const EGCertificate& c) {
  return {{"map", c.map_name},
          {"beta", c.beta.word()},
          {"beta_origin", c.beta.origin()},
          {"C", c.C},
          {"k", c.k},
          {"positions", c.positions},
          {"orientation", c.either_orientation ? "either" : "forward"}};
}

Json to_json(const Containment& c) {
  return {{"label", c.label},   {"map", to_string(c.map)}, {"power", c.power},
          {"source", c.source}, {"target", c.target},      {"position", c.position},
          {"copies", c.copies}};
}

Json to_json(const PingPongCertificate& c) {
  Json transcript = Json::array();
  for (const auto& t : c.transcript) transcript.push_back(to_json(t));
  return {{"graph_name", c.graph_name},
          {"graph", c.graph_text},
          {"maps", c.map_texts},
          {"bcc", c.bcc},
          {"C", c.C},
          {"alpha", c.alpha},
          {"beta_plus", c.beta_plus},
          {"beta_minus", c.beta_minus},
          {"gamma_plus", c.gamma_plus},
          {"gamma_minus", c.gamma_minus},
          {"p_plus", c.p_plus},
          {"p_minus", c.p_minus},
          {"q_plus", c.q_plus},
          {"q_minus", c.q_minus},
          {"k", {c.k_psi_plus, c.k_psi_minus, c.k_phi_plus, c.k_phi_minus}},
          {"p", c.p},
          {"q", c.q},
          {"M", c.M},
          {"transcript", transcript}};
}

PingPongCertificate pingpong_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("certificate must be a JSON object", 1, 1);
  PingPongCertificate c;
  c.graph_name = field<std::string>(j, "graph_name");
  c.graph_text = field<std::string>(j, "graph");
  c.map_texts = field<std::vector<std::string>>(j, "maps");
  c.bcc = field<std::vector<int>>(j, "bcc");
  c.C = field<int>(j, "C");
  c.alpha = field<std::vector<std::string>>(j, "alpha");
  c.beta_plus = field<std::string>(j, "beta_plus");
  c.beta_minus = field<std::string>(j, "beta_minus");
  c.gamma_plus = field<std::string>(j, "gamma_plus");
  c.gamma_minus = field<std::string>(j, "gamma_minus");
  c.p_plus = field<int>(j, "p_plus");
  c.p_minus = field<int>(j, "p_minus");
  c.q_plus = field<int>(j, "q_plus");
  c.q_minus = field<int>(j, "q_minus");
  auto k = field<std::vector<int>>(j, "k");
  if (k.size() != 4) throw ParseError("certificate field 'k' needs four entries", 1, 1);
  c.k_psi_plus = k[0];
  c.k_psi_minus = k[1];
  c.k_phi_plus = k[2];
  c.k_phi_minus = k[3];
  c.p = field<int>(j, "p");
  c.q = field<int>(j, "q");
  c.M = field<int>(j, "M");
  for (const auto& t : field<Json>(j, "transcript")) {
    c.transcript.push_back({field<std::string>(t, "label"), role_from(field<std::string>(t, "map")),
                            field<int>(t, "power"), field<std::string>(t, "source"), field<std::string>(t, "target"),
                            field<std::size_t>(t, "position"), field<int>(t, "copies")});
  }
  return c;
}

Json to_json(const FailureTrace& f) {
  return {{"failure", {{"step", f.step}, {"message", f.message}, {"bound", f.bound}}}};
}

Json to_json(const FreenessReport& r) {
  Json j = {{"psi", r.psi_name},
            {"phi", r.phi_name},
            {"m", r.m},
            {"n", r.n},
            {"max_len", r.max_len},
            {"words_checked", r.words_checked},
            {"abelian_certified", r.abelian_certified}};
  if (auto* rel = std::get_if<RelationFound>(&r.verdict)) {
    j["verdict"] = "relation";
    j["relation"] = rel->word;
    j["conjugator"] = rel->conjugator;
  } else {
    j["verdict"] = "no_relation";
    j["up_to"] = std::get<NoRelationUpTo>(r.verdict).length;
  }
  return j;
}

Json to_json(const PeriodicClassReport& r) {
  Json found = Json::array();
  for (const auto& c : r.found) found.push_back({{"class", c.word}, {"period", c.period}});
  return {{"automorphism", r.aut_name},     {"max_len", r.max_len},     {"max_period", r.max_period},
          {"classes_scanned", r.classes_scanned}, {"periodic", found}, {"truncated", r.truncated}};
}

Json to_json(const EvidenceReport& r) {
  Json classes = Json::array();
  for (const auto& c : r.periodic_classes) classes.push_back({{"class", c.word}, {"period", c.period}});
  Json probes = Json::array();
  for (const auto& p : r.probes) {
    probes.push_back({{"name", p.name},
                      {"carries_leaf", p.carries_leaf},
                      {"uninformative", p.uninformative},
                      {"leaf_length", p.leaf_length}});
  }
  return {{"map", r.map_name},          {"matrix_irreducible", r.matrix_irreducible},
          {"z_empty", r.z_empty},        {"scan_ran", r.scan_ran},
          {"periodic_classes", classes}, {"probes", probes},
          {"summary", r.summary}};
}

Json to_json(const SubgroupGraph& s) {
  Json edges = Json::array();
  for (const auto& e : s.edges()) edges.push_back({{"from", e.from}, {"to", e.to}, {"label", std::string(1, e.label)}});
  return {{"rank", s.rank()},
          {"vertices", s.vertex_count()},
          {"base", s.base()},
          {"folded", s.is_folded()},
          {"edges", edges}};
}

Json to_json(const EdgeletDecomposition& d) {
  Json edges = Json::array();
  for (const auto& e : d.natural_edges) {
    edges.push_back({{"from", e.from}, {"to", e.to}, {"word", e.word}, {"edgelets", e.word.size()}});
  }
  return {{"natural_vertices", d.natural_vertices}, {"natural_edges", edges}, {"edgelet_count", d.edgelet_count}};
}

Json to_json(const Filtration& filt, const GraphMap& f) {
  Json strata = Json::array();
  for (std::size_t i = 0; i < filt.size(); ++i) {
    StratumClass sc = classify_stratum(f, filt, static_cast<int>(i));
    std::string letters;
    for (int e : filt.strata[i].edges) letters.push_back(f.domain()->edge_letter(e));
    Json s = {{"index", i}, {"edges", letters}, {"type", to_string(sc.type)}};
    if (sc.type == StratumType::eg) {
      s["lambda"] = sc.lambda;
      s["eigenvector"] = sc.eigenvector;
    } else if (sc.type == StratumType::neg) {
      s["subtype"] = to_string(sc.subtype);
    }
    strata.push_back(s);
  }
  return {{"map", f.name()}, {"strata", strata}};
}

}  // namespace ttlab
