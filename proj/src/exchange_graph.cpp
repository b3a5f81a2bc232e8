#include "quiver/exchange_graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "quiver/io.hpp"

namespace quiver {

bool ExchangeGraph::complete() const {
  if (hit_node_limit) return false;
  return std::none_of(nodes.begin(), nodes.end(), [](const GraphNode& n) { return n.truncated; });
}

std::optional<std::size_t> ExchangeGraph::find(const CanonicalKey& key) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].key == key) return i;
  }
  return std::nullopt;
}

std::size_t ExchangeGraph::acyclic_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const GraphNode& n) { return n.acyclic; }));
}

namespace {

void normalize_edges(std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  for (auto& [u, v] : edges) {
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

}  // namespace

ExchangeGraph explore(const Quiver& q, const ExploreOptions& options) {
  if (options.max_nodes < 1) throw DomainError("max_nodes must be positive");
  ExchangeGraph g;
  std::map<CanonicalKey, std::size_t> index;

  auto add = [&](CanonicalForm cf, int layer) {
    GraphNode node;
    node.key = cf.key;
    node.quiver = std::move(cf.quiver);
    node.layer = layer;
    node.acyclic = is_acyclic(node.quiver);
    node.truncated = node.quiver.max_multiplicity() > options.max_mult;
    index.emplace(node.key, g.nodes.size());
    g.nodes.push_back(std::move(node));
  };

  add(canonical_form(q), 0);
  std::vector<std::pair<CanonicalKey, CanonicalKey>> key_edges;
  std::size_t begin = 0;
  for (int layer = 1; begin < g.nodes.size(); ++layer) {
    const std::size_t end = g.nodes.size();
    std::map<CanonicalKey, CanonicalForm> fresh;
    for (std::size_t u = begin; u < end; ++u) {
      if (g.nodes[u].truncated) continue;
      const Quiver rep = g.nodes[u].quiver;
      for (Vertex k = 1; k <= rep.size(); ++k) {
        Quiver m;
        try {
          m = mutate(rep, k);
        } catch (const MultiplicityOverflow&) {
          g.nodes[u].truncated = true;
          continue;
        }
        CanonicalForm cf = canonical_form(m);
        if (cf.key == g.nodes[u].key) continue;
        key_edges.emplace_back(g.nodes[u].key, cf.key);
        if (index.count(cf.key) == 0) {
          CanonicalKey key = cf.key;
          fresh.emplace(std::move(key), std::move(cf));
        }
      }
    }
    for (auto& [key, cf] : fresh) {
      if (g.nodes.size() >= options.max_nodes) {
        g.hit_node_limit = true;
        break;
      }
      add(std::move(cf), layer);
    }
    begin = end;
  }
  for (const auto& [a, b] : key_edges) {
    const auto ia = index.find(a);
    const auto ib = index.find(b);
    if (ia != index.end() && ib != index.end()) g.edges.emplace_back(ia->second, ib->second);
  }
  normalize_edges(g.edges);
  return g;
}

std::vector<Quiver> enumerate_acyclic(const Quiver& q) {
  if (!is_acyclic(q)) throw DomainError("enumerate_acyclic requires an acyclic quiver");
  std::map<CanonicalKey, Quiver> found;
  std::vector<Quiver> stack;
  CanonicalForm start = canonical_form(q);
  found.emplace(start.key, start.quiver);
  stack.push_back(start.quiver);
  const auto srcs_and_sinks = [](const Quiver& x) {
    std::vector<Vertex> vs = sources(x);
    const std::vector<Vertex> s = sinks(x);
    vs.insert(vs.end(), s.begin(), s.end());
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  };
  while (!stack.empty()) {
    const Quiver cur = std::move(stack.back());
    stack.pop_back();
    for (Vertex k : srcs_and_sinks(cur)) {
      CanonicalForm cf = canonical_form(mutate(cur, k));
      if (found.count(cf.key) != 0) continue;
      found.emplace(cf.key, cf.quiver);
      stack.push_back(std::move(cf.quiver));
    }
  }
  std::vector<Quiver> out;
  for (auto& [key, rep] : found) {
    if (!is_acyclic(rep)) throw InvariantViolation("sink/source mutation produced a cycle");
    out.push_back(std::move(rep));
  }
  return out;
}

PsiResult psi_component(const Quiver& q, const PsiOptions& options) {
  CanonicalForm start = canonical_form(q);
  const MgsVerdict first = decide_mgs(start.quiver, options.decide);
  if (first.kind != MgsVerdict::Kind::Yes) {
    throw DomainError("quiver has no verified maximal green sequence; it is not in Psi");
  }

  PsiResult r;
  std::map<CanonicalKey, std::size_t> yes_index;
  std::map<CanonicalKey, MgsVerdict> other;  // No / Unknown verdicts
  std::map<CanonicalKey, Quiver> other_rep;
  std::vector<std::pair<CanonicalKey, CanonicalKey>> key_edges;

  auto add_yes = [&](CanonicalForm cf, int layer, MgsCertificate cert) {
    GraphNode node;
    node.key = cf.key;
    node.quiver = std::move(cf.quiver);
    node.layer = layer;
    node.acyclic = is_acyclic(node.quiver);
    node.mgs = MgsVerdict::Kind::Yes;
    yes_index.emplace(node.key, r.component.nodes.size());
    r.component.nodes.push_back(std::move(node));
    r.certificates.push_back(std::move(cert));
  };

  add_yes(std::move(start), 0, *first.certificate);
  std::size_t begin = 0;
  for (int layer = 1; begin < r.component.nodes.size(); ++layer) {
    const std::size_t end = r.component.nodes.size();
    std::map<CanonicalKey, std::pair<CanonicalForm, MgsCertificate>> fresh;
    for (std::size_t u = begin; u < end; ++u) {
      const Quiver rep = r.component.nodes[u].quiver;
      for (Vertex k = 1; k <= rep.size(); ++k) {
        CanonicalForm cf = canonical_form(mutate(rep, k));
        if (cf.key == r.component.nodes[u].key) continue;
        key_edges.emplace_back(r.component.nodes[u].key, cf.key);
        if (yes_index.count(cf.key) || fresh.count(cf.key) || other.count(cf.key)) continue;
        MgsVerdict v = decide_mgs(cf.quiver, options.decide);
        if (v.kind == MgsVerdict::Kind::Yes) {
          CanonicalKey key = cf.key;
          fresh.emplace(std::move(key), std::make_pair(std::move(cf), *v.certificate));
        } else {
          if (v.kind == MgsVerdict::Kind::Unknown) r.complete = false;
          other_rep.emplace(cf.key, cf.quiver);
          other.emplace(std::move(cf.key), std::move(v));
        }
      }
    }
    for (auto& [key, entry] : fresh) {
      if (r.component.nodes.size() >= options.max_nodes) {
        r.component.hit_node_limit = true;
        r.complete = false;
        break;
      }
      add_yes(std::move(entry.first), layer, std::move(entry.second));
    }
    begin = end;
  }

  std::map<CanonicalKey, std::size_t> boundary_index;
  for (auto& [key, verdict] : other) {
    boundary_index.emplace(key, r.boundary.size());
    r.boundary.push_back({key, other_rep.at(key), std::move(verdict)});
  }
  for (const auto& [a, b] : key_edges) {
    const auto ia = yes_index.find(a);
    if (ia == yes_index.end()) continue;
    if (const auto ib = yes_index.find(b); ib != yes_index.end()) {
      r.component.edges.emplace_back(ia->second, ib->second);
    } else if (const auto bb = boundary_index.find(b); bb != boundary_index.end()) {
      r.boundary_edges.emplace_back(ia->second, bb->second);
    }
  }
  normalize_edges(r.component.edges);
  std::sort(r.boundary_edges.begin(), r.boundary_edges.end());
  r.boundary_edges.erase(std::unique(r.boundary_edges.begin(), r.boundary_edges.end()),
                         r.boundary_edges.end());
  return r;
}

InvariantReport invariant_report(const Quiver& q, const InvariantOptions& options) {
  InvariantReport rep;
  rep.b_rank = b_matrix_rank(q);
  rep.admissibility = solve_admissibility(q);
  rep.mutation_acyclic =
      is_mutation_acyclic(q, options.acyclic_depth, options.acyclic_max_quivers);
  if (rep.mutation_acyclic.kind == MutationAcyclicResult::Kind::Yes) {
    rep.acyclic_count = enumerate_acyclic(mutate_sequence(q, rep.mutation_acyclic.witness)).size();
  }
  if (q.size() <= options.psi_max_rank) {
    const MgsVerdict v = decide_mgs(q, options.psi.decide);
    rep.mgs = v.kind;
    if (v.kind == MgsVerdict::Kind::Yes) {
      const PsiResult psi = psi_component(q, options.psi);
      rep.psi = InvariantReport::PsiStats{psi.component.nodes.size(),
                                          psi.component.acyclic_count(), psi.boundary.size(),
                                          psi.complete};
    }
  }
  return rep;
}

namespace io {

namespace {

json node_json(const GraphNode& n) {
  json out{{"key", n.key.hex()},
           {"layer", n.layer},
           {"acyclic", n.acyclic},
           {"quiver", to_json(n.quiver)}};
  if (n.truncated) out["truncated"] = true;
  return out;
}

json edges_json(const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  json out = json::array();
  for (const auto& [u, v] : edges) out.push_back({u, v});
  return out;
}

std::string short_key(const CanonicalKey& k) {
  const std::string h = k.hex();
  return h.size() > 12 ? h.substr(0, 12) : h;
}

std::string node_label(const GraphNode& n) {
  std::string label = short_key(n.key);
  if (n.acyclic) label += "\\nacyclic";
  if (n.truncated) label += "\\ntruncated";
  return label;
}

}  // namespace

json to_json(const ExchangeGraph& g) {
  json nodes = json::array();
  for (const auto& n : g.nodes) nodes.push_back(node_json(n));
  return json{{"nodes", std::move(nodes)},
              {"edges", edges_json(g.edges)},
              {"complete", g.complete()},
              {"acyclic", g.acyclic_count()}};
}

json to_json(const PsiResult& r) {
  json comp = to_json(r.component);
  for (std::size_t i = 0; i < r.certificates.size(); ++i) {
    comp["nodes"][i]["certificate"] = to_json(r.certificates[i]);
  }
  json boundary = json::array();
  for (const auto& b : r.boundary) {
    json entry{{"key", b.key.hex()}, {"quiver", to_json(b.quiver)}, {"verdict", to_json(b.verdict)}};
    boundary.push_back(std::move(entry));
  }
  return json{{"component", std::move(comp)},
              {"boundary", std::move(boundary)},
              {"boundary_edges", edges_json(r.boundary_edges)},
              {"total", r.component.nodes.size()},
              {"acyclic", r.component.acyclic_count()},
              {"complete", r.complete}};
}

json to_json(const InvariantReport& r) {
  json out{{"b_rank", r.b_rank},
           {"admissibility", to_json(r.admissibility)},
           {"mutation_acyclic", to_json(r.mutation_acyclic)}};
  if (r.acyclic_count) out["acyclic_count"] = *r.acyclic_count;
  if (r.mgs) {
    out["mgs"] = *r.mgs == MgsVerdict::Kind::Yes  ? "yes"
                 : *r.mgs == MgsVerdict::Kind::No ? "no"
                                                  : "unknown";
  }
  if (r.psi) {
    out["psi"] = {{"total", r.psi->total},
                  {"acyclic", r.psi->acyclic},
                  {"non_acyclic", r.psi->total - r.psi->acyclic},
                  {"boundary", r.psi->boundary},
                  {"complete", r.psi->complete}};
  }
  return out;
}

std::string to_dot(const ExchangeGraph& g) {
  std::ostringstream os;
  os << "graph exchange {\n  node [fontname=\"monospace\"];\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const GraphNode& n = g.nodes[i];
    os << "  n" << i << " [label=\"" << node_label(n) << '"';
    if (n.mgs == MgsVerdict::Kind::Yes) os << ", shape=box, color=green";
    if (n.mgs == MgsVerdict::Kind::No) os << ", shape=box, color=red";
    os << "];\n";
  }
  for (const auto& [u, v] : g.edges) os << "  n" << u << " -- n" << v << ";\n";
  os << "}\n";
  return os.str();
}

std::string to_dot(const PsiResult& r) {
  std::ostringstream os;
  os << "graph psi {\n  node [fontname=\"monospace\"];\n";
  for (std::size_t i = 0; i < r.component.nodes.size(); ++i) {
    os << "  n" << i << " [label=\"" << node_label(r.component.nodes[i])
       << "\", shape=box, color=green];\n";
  }
  for (std::size_t i = 0; i < r.boundary.size(); ++i) {
    const bool no = r.boundary[i].verdict.kind == MgsVerdict::Kind::No;
    os << "  b" << i << " [label=\"" << short_key(r.boundary[i].key) << "\", shape=box, color="
       << (no ? "red" : "gray") << (no ? "" : ", style=dashed") << "];\n";
  }
  for (const auto& [u, v] : r.component.edges) os << "  n" << u << " -- n" << v << ";\n";
  for (const auto& [u, b] : r.boundary_edges) os << "  n" << u << " -- b" << b << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace io

}  // namespace quiver
