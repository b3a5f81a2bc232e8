#pragma once

#include <cstddef>
#include <json.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quiver/canonical.hpp"
#include "quiver/obstructions.hpp"
#include "quiver/quiver.hpp"

namespace quiver {

struct GraphNode {
  CanonicalKey key;
  Quiver quiver;  // canonical representative
  int layer = 0;
  bool acyclic = false;
  bool truncated = false;  // multiplicity above the cap; not expanded
  std::optional<MgsVerdict::Kind> mgs;
};

struct ExchangeGraph {
  std::vector<GraphNode> nodes;  // BFS layer, then key order
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (u, v), u < v, sorted
  bool hit_node_limit = false;

  bool complete() const;
  std::optional<std::size_t> find(const CanonicalKey& key) const;
  std::size_t acyclic_count() const;
};

struct ExploreOptions {
  std::size_t max_nodes = 100'000;
  Entry max_mult = 64;
};

ExchangeGraph explore(const Quiver& q, const ExploreOptions& options = {});

// Acyclic members of the class of an acyclic q, sorted by canonical key.
std::vector<Quiver> enumerate_acyclic(const Quiver& q);

struct PsiOptions {
  DecideOptions decide{SearchOptions{16, 1'000'000, true}, -1, true};
  std::size_t max_nodes = 100'000;
};

struct BoundaryNode {
  CanonicalKey key;
  Quiver quiver;
  MgsVerdict verdict;  // No (with obstruction) or Unknown
};

struct PsiResult {
  ExchangeGraph component;  // nodes with a verified MGS
  std::vector<MgsCertificate> certificates;  // parallel to component.nodes
  std::vector<BoundaryNode> boundary;        // sorted by key
  std::vector<std::pair<std::size_t, std::size_t>> boundary_edges;  // (component, boundary)
  bool complete = true;
};

// DomainError unless decide_mgs(q) is Yes.
PsiResult psi_component(const Quiver& q, const PsiOptions& options = {});

struct InvariantOptions {
  int acyclic_depth = 8;
  std::size_t acyclic_max_quivers = 20'000;
  PsiOptions psi;
  int psi_max_rank = 4;
};

struct InvariantReport {
  int b_rank = 0;
  AdmissibilityResult admissibility;
  MutationAcyclicResult mutation_acyclic;
  std::optional<std::size_t> acyclic_count;
  struct PsiStats {
    std::size_t total = 0;
    std::size_t acyclic = 0;
    std::size_t boundary = 0;
    bool complete = false;
  };
  std::optional<PsiStats> psi;
  std::optional<MgsVerdict::Kind> mgs;
};

InvariantReport invariant_report(const Quiver& q, const InvariantOptions& options = {});

namespace io {
using nlohmann::json;

json to_json(const ExchangeGraph& g);
json to_json(const PsiResult& r);
json to_json(const InvariantReport& r);
std::string to_dot(const ExchangeGraph& g);
std::string to_dot(const PsiResult& r);
}  // namespace io

}  // namespace quiver
