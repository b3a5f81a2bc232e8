#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quiver/quiver.hpp"

namespace quiver::catalog {

struct KnownFacts {
  std::optional<bool> has_mgs;
  std::optional<std::vector<Vertex>> mgs_sequence;
  std::optional<bool> admissible;
  std::optional<bool> mutation_acyclic;
  std::optional<int> b_rank;
  std::optional<int> psi_size;
  std::optional<int> psi_acyclic;
  std::optional<int> class_size;
  std::optional<nlohmann::json> louise;  // serialized LouiseCertificate
};

struct CatalogEntry {
  std::string name;
  Quiver quiver;
  std::string provenance;
  KnownFacts facts;
};

struct MoveClassRow {
  std::string name;
  int b_rank = 0;
  std::optional<int> acyclic;
  std::optional<int> psi_non_acyclic;
  bool conjectural = false;
};

// Bundled names plus the parametric forms Q_a,b,c  R_a,b,c  Rop_a,b,c
// Theta_n  Lin3_a,b  Tri3_a,b,c. Throws DomainError for unknown names or
// out-of-range parameters.
CatalogEntry get(std::string_view name);
std::vector<std::string> list();

// Bundled entries known to admit no maximal green sequence (fixed quivers only).
const std::vector<CatalogEntry>& no_mgs_entries();

const std::vector<MoveClassRow>& move_classes();
std::optional<MoveClassRow> move_class(std::string_view name);

Quiver make_theta(int n);
Quiver make_rank3(const Rank3Params& p);
inline Quiver make_rank3(int a, int b, int c) { return make_rank3(Rank3Params{a, b, c}); }
Quiver make_r_family(const RFamilyParams& p);
inline Quiver make_r_family(int a, int b, int c, bool op = false) {
  return make_r_family(RFamilyParams{a, b, c, op});
}
Quiver make_lin3(int a, int b);
Quiver make_tri3(int a, int b, int c);

// Inline family shorthand used on the command line: "R:0,2,3", "Rop:1,4,3",
// "Q3:2,2,2", "Theta:6", "Lin3:1,2", "Tri3:1,1,2".
std::optional<Quiver> parse_family_spec(std::string_view spec);

}  // namespace quiver::catalog
