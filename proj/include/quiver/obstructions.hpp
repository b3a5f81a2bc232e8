#pragma once

#include <cstddef>
#include <json.hpp>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quiver/green.hpp"
#include "quiver/quiver.hpp"

namespace quiver {

// Signs of a quasi-Cartan companion on the edges of the underlying graph.
struct CompanionAssignment {
  std::vector<VertexPair> edges;  // (i, j) with i < j and b(i, j) != 0, lex order
  std::vector<int> signs;         // +1 or -1, parallel to edges

  int sign(Vertex i, Vertex j) const;
};

struct AdmissibilityResult {
  bool sat = false;
  CompanionAssignment assignment;        // when sat
  std::vector<InducedCycle> witness;     // when unsat: inclusion-minimal inconsistent subset
  std::size_t constraints = 0;           // number of induced cycles
};

// Parity of the positive edges along a cycle must be odd for oriented cycles
// and even otherwise.
bool satisfies_parity(const Quiver& q, const CompanionAssignment& a, const InducedCycle& c);

AdmissibilityResult solve_admissibility(const Quiver& q);

struct MutationAcyclicResult {
  enum class Kind { Yes, NoCertified, Unknown };
  Kind kind = Kind::Unknown;
  std::vector<Vertex> witness;  // Yes: mutate_sequence(q, witness) is acyclic
  std::optional<AdmissibilityResult> admissibility;
  std::size_t explored = 0;
};

MutationAcyclicResult is_mutation_acyclic(const Quiver& q, int depth = 6,
                                          std::size_t max_quivers = 10'000);

// Rank 3 and 4 only; CapabilityError otherwise.
std::vector<Vertex> good_vertices(const Quiver& q);

// Validity of the closed-form good-sequence trajectory for p.
bool r_family_preconditions(const RFamilyParams& p);
// Normal-form image after a good sequence of length k. DomainError when the
// preconditions fail.
RFamilyParams r_family_trajectory(const RFamilyParams& p, int k);

struct Obstruction {
  enum class Kind { Rank3Cyclic, BadRFamily, KnownNoMgsCatalog, Subquiver };
  Kind kind = Kind::Rank3Cyclic;

  // Rank3Cyclic: cycle u -> v -> w -> u with multiplicities rank3.{a,b,c}.
  std::vector<Vertex> vertices;
  Rank3Params rank3;

  // BadRFamily: normal_form(rfamily).permuted(iso) == q, or == opposite(q)
  // when via_opposite. The preconditions hold for rfamily itself.
  RFamilyParams rfamily;
  bool via_opposite = false;
  std::vector<RFamilyParams> trajectory;  // first few good-sequence images

  // KnownNoMgsCatalog: catalog quiver permuted by iso equals q.
  std::string catalog_name;
  Permutation iso;

  // Subquiver: vertices holds the induced vertex set; inner is stated in
  // the labels of induced_subquiver(q, vertices).
  std::shared_ptr<const Obstruction> inner;
};

bool recheck_obstruction(const Quiver& q, const Obstruction& o);
std::string describe(const Obstruction& o);

struct MgsVerdict {
  enum class Kind { Yes, No, Unknown };
  Kind kind = Kind::Unknown;
  std::optional<MgsCertificate> certificate;
  std::optional<Obstruction> obstruction;
  std::string method;
  std::size_t states = 0;  // framed states generated by search, if any
};

struct DecideOptions {
  SearchOptions search;
  int depth = -1;  // recursion cap for decompositions; < 0 selects n
  bool use_catalog_sequences = true;
};

MgsVerdict decide_mgs(const Quiver& q, const DecideOptions& options = {});

// First obstruction found among proper induced subquivers (sizes 3, 4 and
// catalog sizes), in order of size then lexicographic vertex set.
std::optional<Obstruction> scan_subquivers(const Quiver& q);

struct LouiseCertificate {
  enum class Kind { NoEdges, AcyclicLeaf, Node };
  Kind kind = Kind::NoEdges;
  std::vector<Vertex> sequence;  // Node: mutation sequence from q to Q'
  VertexPair edge{0, 0};         // Node: separating arrow i -> j of Q'
  // Node: certificates for Q' minus {i}, Q' minus {j}, Q' minus {i, j}.
  std::vector<LouiseCertificate> children;
};

// Throws DomainError for structurally malformed certificates.
bool verify_louise_certificate(const Quiver& q, const LouiseCertificate& cert);

namespace io {
using nlohmann::json;

json to_json(const CompanionAssignment& a);
json to_json(const AdmissibilityResult& r);
json to_json(const MutationAcyclicResult& r);
json to_json(const Obstruction& o);
json to_json(const MgsVerdict& v);
json to_json(const MgsCertificate& c);
json to_json(const LouiseCertificate& c);
LouiseCertificate louise_from_json(const json& j);
}  // namespace io

}  // namespace quiver
