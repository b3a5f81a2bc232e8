#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "quiver/catalog.hpp"
#include "quiver/exchange_graph.hpp"
#include "quiver/io.hpp"
#include "quiver/obstructions.hpp"

namespace {

using namespace quiver;
using nlohmann::json;

constexpr int kExitDefinite = 0;
constexpr int kExitInput = 1;
constexpr int kExitUnknown = 2;

struct Config {
  std::string format = "text";
  std::string out;
  int max_len = 0;
  std::size_t max_states = 1'000'000;
  std::size_t max_nodes = 100'000;
  int max_mult = 64;
  int depth = -1;
  std::uint64_t seed = 1;
};

class InputError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Quiver load_quiver(const std::string& spec) {
  if (spec.rfind("catalog:", 0) == 0) return catalog::get(spec.substr(8)).quiver;
  if (spec.find(':') != std::string::npos && spec.find('/') == std::string::npos) {
    if (auto q = catalog::parse_family_spec(spec)) return *q;
  }
  return io::parse_quiver(read_file(spec));
}

class Output {
 public:
  explicit Output(const Config& cfg) : cfg_(cfg) {}
  bool json_mode() const { return cfg_.format == "json"; }
  bool dot_mode() const { return cfg_.format == "dot"; }
  std::ostream& stream() { return buffer_; }
  void emit(const json& j) { buffer_ << j.dump(2) << '\n'; }
  void flush() {
    if (cfg_.out.empty()) {
      std::cout << buffer_.str();
      return;
    }
    std::ofstream f(cfg_.out);
    if (!f) throw InputError("cannot write '" + cfg_.out + "'");
    f << buffer_.str();
  }

 private:
  const Config& cfg_;
  std::ostringstream buffer_;
};

SearchOptions search_options(const Config& cfg) {
  SearchOptions s;
  s.max_len = cfg.max_len;
  s.max_states = cfg.max_states;
  return s;
}

DecideOptions decide_options(const Config& cfg) {
  DecideOptions d;
  d.search = search_options(cfg);
  d.depth = cfg.depth;
  return d;
}

PsiOptions psi_options(const Config& cfg) {
  PsiOptions p;
  if (cfg.max_len > 0) p.decide.search.max_len = cfg.max_len;
  p.decide.search.max_states = cfg.max_states;
  p.decide.depth = cfg.depth;
  p.max_nodes = cfg.max_nodes;
  return p;
}

std::string verdict_text(const MgsVerdict& v) {
  switch (v.kind) {
    case MgsVerdict::Kind::Yes:
      return "yes: maximal green sequence " + format_sequence(v.certificate->sequence) +
             " (" + v.method + ")";
    case MgsVerdict::Kind::No:
      return "no: " + describe(*v.obstruction);
    case MgsVerdict::Kind::Unknown:
      return "unknown: " + v.method;
  }
  return {};
}

std::string cycle_text(const InducedCycle& c) {
  std::string s = c.oriented ? "oriented " : "non-oriented ";
  s += format_sequence(c.vertices);
  return s;
}

int cmd_mutate(const Config& cfg, const std::string& input, const std::vector<Vertex>& seq) {
  Output out(cfg);
  const Quiver q = mutate_sequence(load_quiver(input), seq);
  if (out.json_mode()) {
    out.emit(io::to_json(q));
  } else {
    out.stream() << q.to_string() << '\n';
  }
  out.flush();
  return kExitDefinite;
}

int cmd_mgs_find(const Config& cfg, const std::string& input) {
  Output out(cfg);
  const Quiver q = load_quiver(input);
  const SearchResult r = search_mgs(q, search_options(cfg));
  const char* outcome = r.outcome == SearchResult::Outcome::Found       ? "found"
                        : r.outcome == SearchResult::Outcome::Exhausted ? "exhausted"
                                                                        : "budget";
  if (out.json_mode()) {
    json j{{"outcome", outcome}, {"states", r.states}, {"depth", r.depth}};
    if (r.certificate) j["certificate"] = io::to_json(*r.certificate);
    out.emit(j);
  } else if (r.certificate) {
    out.stream() << format_sequence(r.certificate->sequence) << '\n';
  } else {
    out.stream() << outcome << " after " << r.states << " states, depth " << r.depth << '\n';
  }
  out.flush();
  if (!r.certificate) {
    std::cerr << "no maximal green sequence found within budgets\n";
    return kExitUnknown;
  }
  return kExitDefinite;
}

int cmd_mgs_verify(const Config& cfg, const std::string& input, const std::vector<Vertex>& seq) {
  Output out(cfg);
  const Quiver q = load_quiver(input);
  const MgsCheck check = check_mgs(q, seq);
  if (out.json_mode()) {
    json j{{"valid", check.certificate.has_value()}, {"sequence", seq}};
    if (check.certificate) j["permutation"] = io::to_json(check.certificate->permutation);
    if (!check.certificate) j["reason"] = check.reason;
    out.emit(j);
  } else if (check.certificate) {
    out.stream() << "valid; induced permutation "
                 << format_sequence(check.certificate->permutation.images()) << '\n';
  } else {
    out.stream() << "invalid: " << check.reason << '\n';
  }
  out.flush();
  return kExitDefinite;
}

int cmd_mgs_rotate(const Config& cfg, const std::string& input, const std::vector<Vertex>& seq,
                   bool reverse) {
  Output out(cfg);
  const Quiver q = load_quiver(input);
  const auto cert = verify_mgs(q, seq);
  if (!cert) throw InputError("sequence is not a maximal green sequence of the input");
  const auto [next, rotated] = reverse ? reverse_rotate_mgs(q, *cert) : rotate_mgs(q, *cert);
  if (out.json_mode()) {
    out.emit(json{{"quiver", io::to_json(next)}, {"certificate", io::to_json(rotated)}});
  } else {
    out.stream() << next.to_string() << '\n' << format_sequence(rotated.sequence) << '\n';
  }
  out.flush();
  return kExitDefinite;
}

int cmd_decide(const Config& cfg, const std::string& input) {
  Output out(cfg);
  const MgsVerdict v = decide_mgs(load_quiver(input), decide_options(cfg));
  if (out.json_mode()) {
    out.emit(io::to_json(v));
  } else {
    out.stream() << verdict_text(v) << '\n';
  }
  out.flush();
  if (v.kind == MgsVerdict::Kind::Unknown) {
    std::cerr << "undecided: " << v.method << " (" << v.states << " states)\n";
    return kExitUnknown;
  }
  return kExitDefinite;
}

int cmd_admissible(const Config& cfg, const std::string& input) {
  Output out(cfg);
  const AdmissibilityResult r = solve_admissibility(load_quiver(input));
  if (out.json_mode()) {
    out.emit(io::to_json(r));
  } else if (r.sat) {
    out.stream() << "sat:";
    for (std::size_t e = 0; e < r.assignment.edges.size(); ++e) {
      out.stream() << ' ' << r.assignment.edges[e].first << '-' << r.assignment.edges[e].second
                   << (r.assignment.signs[e] > 0 ? "+" : "-");
    }
    out.stream() << '\n';
  } else {
    out.stream() << "unsat; inconsistent cycles:\n";
    for (const auto& c : r.witness) out.stream() << "  " << cycle_text(c) << '\n';
  }
  out.flush();
  return kExitDefinite;
}

int cmd_mutation_acyclic(const Config& cfg, const std::string& input) {
  Output out(cfg);
  const int depth = cfg.depth < 0 ? 8 : cfg.depth;
  const MutationAcyclicResult r = is_mutation_acyclic(load_quiver(input), depth, cfg.max_nodes);
  if (out.json_mode()) {
    out.emit(io::to_json(r));
  } else {
    switch (r.kind) {
      case MutationAcyclicResult::Kind::Yes:
        out.stream() << "yes: " << format_sequence(r.witness) << " reaches an acyclic quiver\n";
        break;
      case MutationAcyclicResult::Kind::NoCertified:
        out.stream() << "no: no admissible quasi-Cartan companion\n";
        break;
      case MutationAcyclicResult::Kind::Unknown:
        out.stream() << "unknown after " << r.explored << " quivers\n";
        break;
    }
  }
  out.flush();
  if (r.kind == MutationAcyclicResult::Kind::Unknown) {
    std::cerr << "no acyclic quiver within depth " << depth << '\n';
    return kExitUnknown;
  }
  return kExitDefinite;
}

int cmd_graph_explore(const Config& cfg, const std::string& input) {
  Output out(cfg);
  ExploreOptions opts;
  opts.max_nodes = cfg.max_nodes;
  opts.max_mult = cfg.max_mult;
  const ExchangeGraph g = explore(load_quiver(input), opts);
  if (out.json_mode()) {
    out.emit(io::to_json(g));
  } else if (out.dot_mode()) {
    out.stream() << io::to_dot(g);
  } else {
    out.stream() << g.nodes.size() << " nodes, " << g.edges.size() << " edges, "
                 << g.acyclic_count() << " acyclic" << (g.complete() ? "" : " (incomplete)")
                 << '\n';
    for (const auto& n : g.nodes) {
      out.stream() << "  " << n.key.hex() << "  " << n.quiver.to_string()
                   << (n.truncated ? "  [truncated]" : "") << '\n';
    }
  }
  out.flush();
  if (!g.complete()) {
    std::cerr << "exploration truncated by --max-nodes/--max-mult\n";
    return kExitUnknown;
  }
  return kExitDefinite;
}

int cmd_graph_psi(const Config& cfg, const std::string& input) {
  Output out(cfg);
  const PsiResult r = psi_component(load_quiver(input), psi_options(cfg));
  if (out.json_mode()) {
    out.emit(io::to_json(r));
  } else if (out.dot_mode()) {
    out.stream() << io::to_dot(r);
  } else {
    out.stream() << r.component.nodes.size() << " quivers with an MGS ("
                 << r.component.acyclic_count() << " acyclic), " << r.boundary.size()
                 << " boundary quivers" << (r.complete ? "" : " (incomplete)") << '\n';
    for (const auto& b : r.boundary) {
      out.stream() << "  " << b.quiver.to_string() << ": " << verdict_text(b.verdict) << '\n';
    }
  }
  out.flush();
  if (!r.complete) {
    std::cerr << "component incomplete: some neighbours undecided within budgets\n";
    return kExitUnknown;
  }
  return kExitDefinite;
}

int cmd_acyclic_count(const Config& cfg, const std::string& input) {
  Output out(cfg);
  const Quiver q = load_quiver(input);
  const int depth = cfg.depth < 0 ? 8 : cfg.depth;
  const MutationAcyclicResult m = is_mutation_acyclic(q, depth, cfg.max_nodes);
  std::optional<std::size_t> count;
  if (m.kind == MutationAcyclicResult::Kind::Yes) {
    count = enumerate_acyclic(mutate_sequence(q, m.witness)).size();
  } else if (m.kind == MutationAcyclicResult::Kind::NoCertified) {
    count = 0;
  }
  if (out.json_mode()) {
    json j{{"mutation_acyclic", io::to_json(m)}};
    j["acyclic_count"] = count ? json(*count) : json(nullptr);
    out.emit(j);
  } else if (count) {
    out.stream() << *count << '\n';
  } else {
    out.stream() << "unknown\n";
  }
  out.flush();
  if (!count) {
    std::cerr << "no acyclic quiver within depth " << depth << '\n';
    return kExitUnknown;
  }
  return kExitDefinite;
}

int cmd_invariants(const Config& cfg, const std::string& input) {
  Output out(cfg);
  InvariantOptions opts;
  if (cfg.depth >= 0) opts.acyclic_depth = cfg.depth;
  opts.psi = psi_options(cfg);
  const InvariantReport r = invariant_report(load_quiver(input), opts);
  if (out.json_mode()) {
    out.emit(io::to_json(r));
  } else {
    out.stream() << "b-matrix rank: " << r.b_rank << '\n'
                 << "admissible companion: " << (r.admissibility.sat ? "yes" : "no") << '\n'
                 << "acyclic quivers in class: "
                 << (r.acyclic_count ? std::to_string(*r.acyclic_count)
                     : r.mutation_acyclic.kind == MutationAcyclicResult::Kind::NoCertified
                         ? std::string("0 (not mutation-acyclic)")
                         : std::string("unknown"))
                 << '\n';
    if (r.psi) {
      out.stream() << "component of quivers with an MGS: " << r.psi->total << " ("
                   << r.psi->acyclic << " acyclic, " << r.psi->total - r.psi->acyclic
                   << " non-acyclic)" << (r.psi->complete ? "" : " incomplete") << '\n';
    }
  }
  out.flush();
  const bool incomplete = (!r.acyclic_count &&
                           r.mutation_acyclic.kind == MutationAcyclicResult::Kind::Unknown) ||
                          (r.psi && !r.psi->complete);
  return incomplete ? kExitUnknown : kExitDefinite;
}

int cmd_louise_verify(const Config& cfg, const std::string& input, const std::string& cert_spec) {
  Output out(cfg);
  const Quiver q = load_quiver(input);
  json cert_json;
  if (cert_spec.rfind("catalog:", 0) == 0) {
    const auto entry = catalog::get(cert_spec.substr(8));
    if (!entry.facts.louise) throw InputError("catalog entry has no Louise certificate");
    cert_json = *entry.facts.louise;
  } else {
    try {
      cert_json = json::parse(read_file(cert_spec));
    } catch (const json::parse_error& e) {
      throw InputError(std::string("invalid certificate JSON: ") + e.what());
    }
  }
  const bool ok = verify_louise_certificate(q, io::louise_from_json(cert_json));
  if (out.json_mode()) {
    out.emit(json{{"valid", ok}});
  } else {
    out.stream() << (ok ? "valid" : "invalid") << '\n';
  }
  out.flush();
  return kExitDefinite;
}

int cmd_catalog_list(const Config& cfg) {
  Output out(cfg);
  if (out.json_mode()) {
    out.emit(json(catalog::list()));
  } else {
    for (const auto& name : catalog::list()) out.stream() << name << '\n';
  }
  out.flush();
  return kExitDefinite;
}

int cmd_catalog_show(const Config& cfg, const std::string& name) {
  Output out(cfg);
  const catalog::CatalogEntry e = catalog::get(name);
  if (out.json_mode()) {
    json j{{"name", e.name}, {"quiver", io::to_json(e.quiver)}, {"provenance", e.provenance}};
    if (e.facts.has_mgs) j["has_mgs"] = *e.facts.has_mgs;
    if (e.facts.mgs_sequence) j["mgs_sequence"] = *e.facts.mgs_sequence;
    if (e.facts.admissible) j["admissible"] = *e.facts.admissible;
    if (e.facts.b_rank) j["b_rank"] = *e.facts.b_rank;
    if (e.facts.psi_size) j["psi_size"] = *e.facts.psi_size;
    out.emit(j);
  } else {
    out.stream() << e.name << ": " << e.quiver.to_string() << '\n';
    if (!e.provenance.empty()) out.stream() << "  source: " << e.provenance << '\n';
  }
  out.flush();
  return kExitDefinite;
}

int cmd_random_quiver(const Config& cfg, int n, int max_entry, double density) {
  if (n < 1 || max_entry < 1 || density < 0 || density > 1) {
    throw InputError("random-quiver needs n >= 1, max entry >= 1, density in [0, 1]");
  }
  std::mt19937_64 rng(cfg.seed);
  std::bernoulli_distribution edge(density);
  std::uniform_int_distribution<int> mult(1, max_entry);
  std::bernoulli_distribution flip(0.5);
  std::vector<Arrow> arrows;
  for (Vertex i = 1; i <= n; ++i) {
    for (Vertex j = i + 1; j <= n; ++j) {
      if (!edge(rng)) continue;
      const int m = mult(rng);
      arrows.push_back(flip(rng) ? Arrow{i, j, m} : Arrow{j, i, m});
    }
  }
  Output out(cfg);
  out.emit(io::to_json(Quiver::from_arrows(n, arrows)));
  out.flush();
  return kExitDefinite;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quiver mutation, maximal green sequences and exchange graphs"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "dot"}));
  app.add_option("--out", cfg.out, "Write output to a file");
  app.add_option("--max-len", cfg.max_len, "Longest green sequence searched (default 2n+4)")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-states", cfg.max_states, "Framed states per search")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-nodes", cfg.max_nodes, "Exchange-graph node budget")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-mult", cfg.max_mult, "Do not expand quivers with larger multiplicities")
      ->check(CLI::PositiveNumber);
  app.add_option("--depth", cfg.depth, "Recursion / mutation depth")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", cfg.seed, "Seed for randomized commands");

  std::string input;
  std::vector<Vertex> seq;
  int status = kExitDefinite;
  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("quiver", input, "File, catalog:NAME, or family shorthand like R:0,2,3")
        ->required();
    cmd->fallthrough();
  };

  auto* mutate_cmd = app.add_subcommand("mutate", "Mutate along a vertex sequence");
  add_input(mutate_cmd);
  mutate_cmd->add_option("vertices", seq, "Mutation sequence")->required();
  mutate_cmd->callback([&] { status = cmd_mutate(cfg, input, seq); });

  auto* mgs = app.add_subcommand("mgs", "Maximal green sequences");
  mgs->require_subcommand(1);
  mgs->fallthrough();
  auto* find = mgs->add_subcommand("find", "Breadth-first search for a shortest MGS");
  add_input(find);
  find->callback([&] { status = cmd_mgs_find(cfg, input); });
  auto* verify = mgs->add_subcommand("verify", "Check a sequence and report its permutation");
  add_input(verify);
  verify->add_option("sequence", seq)->required();
  verify->callback([&] { status = cmd_mgs_verify(cfg, input, seq); });
  bool reverse = false;
  auto* rotate = mgs->add_subcommand("rotate", "Rotate a verified MGS");
  add_input(rotate);
  rotate->add_option("sequence", seq)->required();
  rotate->add_flag("--reverse", reverse, "Reverse rotation");
  rotate->callback([&] { status = cmd_mgs_rotate(cfg, input, seq, reverse); });

  auto* decide = app.add_subcommand("decide", "Decide MGS existence with a certificate");
  add_input(decide);
  decide->callback([&] { status = cmd_decide(cfg, input); });

  auto* adm = app.add_subcommand("admissible", "Admissible quasi-Cartan companion over GF(2)");
  add_input(adm);
  adm->callback([&] { status = cmd_admissible(cfg, input); });

  auto* macyc = app.add_subcommand("mutation-acyclic", "Search for an acyclic class member");
  add_input(macyc);
  macyc->callback([&] { status = cmd_mutation_acyclic(cfg, input); });

  auto* graph = app.add_subcommand("graph", "Unlabelled exchange graph");
  graph->require_subcommand(1);
  graph->fallthrough();
  auto* gexp = graph->add_subcommand("explore", "Breadth-first exchange graph");
  add_input(gexp);
  gexp->callback([&] { status = cmd_graph_explore(cfg, input); });
  auto* gpsi = graph->add_subcommand("psi", "Component of quivers admitting an MGS");
  add_input(gpsi);
  gpsi->callback([&] { status = cmd_graph_psi(cfg, input); });

  auto* acount = app.add_subcommand("acyclic-count", "Number of acyclic quivers in the class");
  add_input(acount);
  acount->callback([&] { status = cmd_acyclic_count(cfg, input); });

  auto* inv = app.add_subcommand("invariants", "Mutation invariants report");
  add_input(inv);
  inv->callback([&] { status = cmd_invariants(cfg, input); });

  std::string cert;
  auto* louise = app.add_subcommand("louise", "Louise certificates");
  louise->require_subcommand(1);
  louise->fallthrough();
  auto* lverify = louise->add_subcommand("verify", "Check a Louise certificate");
  add_input(lverify);
  lverify->add_option("certificate", cert, "JSON file or catalog:NAME")->required();
  lverify->callback([&] { status = cmd_louise_verify(cfg, input, cert); });

  auto* cat = app.add_subcommand("catalog", "Bundled quivers");
  cat->require_subcommand(1);
  cat->fallthrough();
  auto* clist = cat->add_subcommand("list", "List bundled names");
  clist->fallthrough();
  clist->callback([&] { status = cmd_catalog_list(cfg); });
  std::string name;
  auto* cshow = cat->add_subcommand("show", "Show a bundled or parametric quiver");
  cshow->add_option("name", name)->required();
  cshow->fallthrough();
  cshow->callback([&] { status = cmd_catalog_show(cfg, name); });

  int rn = 4;
  int rmax = 2;
  double rdensity = 0.6;
  auto* rnd = app.add_subcommand("random-quiver", "Random quiver from --seed");
  rnd->add_option("n", rn, "Vertex count")->required();
  rnd->add_option("--max-entry", rmax, "Largest multiplicity");
  rnd->add_option("--density", rdensity, "Probability of an arrow between two vertices");
  rnd->fallthrough();
  rnd->callback([&] { status = cmd_random_quiver(cfg, rn, rmax, rdensity); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const CapabilityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUnknown;
  } catch (const MultiplicityOverflow& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return status;
}
