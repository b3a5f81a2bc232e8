#include "quiver/catalog.hpp"

#include <algorithm>
#include <charconv>

#include "quiver/catalog_data.hpp"
#include "quiver/io.hpp"

namespace quiver::catalog {

using nlohmann::json;

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

std::vector<int> parse_ints(std::string_view text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view part = text.substr(pos, comma - pos);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    require(ec == std::errc() && ptr == part.data() + part.size() && !part.empty(),
            "bad integer list '" + std::string(text) + "'");
    out.push_back(value);
    pos = comma + 1;
  }
  return out;
}

KnownFacts parse_facts(const json& j) {
  KnownFacts f;
  if (j.contains("has_mgs")) f.has_mgs = j["has_mgs"].get<bool>();
  if (j.contains("mgs_sequence")) f.mgs_sequence = j["mgs_sequence"].get<std::vector<Vertex>>();
  if (j.contains("admissible")) f.admissible = j["admissible"].get<bool>();
  if (j.contains("mutation_acyclic")) f.mutation_acyclic = j["mutation_acyclic"].get<bool>();
  if (j.contains("b_rank")) f.b_rank = j["b_rank"].get<int>();
  if (j.contains("psi_size")) f.psi_size = j["psi_size"].get<int>();
  if (j.contains("psi_acyclic")) f.psi_acyclic = j["psi_acyclic"].get<int>();
  if (j.contains("class_size")) f.class_size = j["class_size"].get<int>();
  if (j.contains("louise")) f.louise = j["louise"];
  return f;
}

struct Bundled {
  std::vector<CatalogEntry> entries;
  std::vector<MoveClassRow> move_classes;
};

const Bundled& bundled() {
  static const Bundled data = [] {
    Bundled b;
    const json root = json::parse(detail::kCatalogJson);
    for (const json& e : root.at("entries")) {
      CatalogEntry entry;
      entry.name = e.at("name").get<std::string>();
      entry.provenance = e.value("provenance", "");
      entry.facts = parse_facts(e.value("facts", json::object()));
      if (e.contains("quiver")) {
        entry.quiver = io::quiver_from_json(e["quiver"]);
      } else {
        const json& m = e.at("mutation_of");
        const auto base = std::find_if(b.entries.begin(), b.entries.end(), [&](const auto& x) {
          return x.name == m.at("name").get<std::string>();
        });
        if (base == b.entries.end()) throw DomainError("catalog: unknown base quiver");
        const auto seq = m.at("sequence").get<std::vector<Vertex>>();
        entry.quiver = mutate_sequence(base->quiver, seq);
      }
      b.entries.push_back(std::move(entry));
    }
    for (const json& r : root.at("move_classes")) {
      MoveClassRow row;
      row.name = r.at("name").get<std::string>();
      row.b_rank = r.at("b_rank").get<int>();
      if (r.contains("acyclic")) row.acyclic = r["acyclic"].get<int>();
      if (r.contains("psi_non_acyclic")) row.psi_non_acyclic = r["psi_non_acyclic"].get<int>();
      row.conjectural = r.value("conjectural", false);
      b.move_classes.push_back(std::move(row));
    }
    return b;
  }();
  return data;
}

CatalogEntry family_entry(std::string name, Quiver q, std::string provenance) {
  return CatalogEntry{std::move(name), std::move(q), std::move(provenance), {}};
}

}  // namespace

Quiver make_theta(int n) {
  require(n >= 4 && n <= 9, "Theta_n is defined for 4 <= n <= 9");
  std::vector<Arrow> arrows{{1, 2, 1}, {2, 3, 1}, {3, 1, 1}, {2, n, 1}, {n, 1, 1}};
  for (Vertex v = 3; v < n; ++v) arrows.push_back({v, v + 1, 1});
  return Quiver::from_arrows(n, arrows);
}

Quiver make_rank3(const Rank3Params& p) {
  require(p.a >= 0 && p.b >= 0 && p.c >= 0, "Q_{a,b,c} needs nonnegative parameters");
  std::vector<Arrow> arrows;
  if (p.a > 0) arrows.push_back({1, 2, p.a});
  if (p.b > 0) arrows.push_back({2, 3, p.b});
  if (p.c > 0) arrows.push_back({3, 1, p.c});
  return Quiver::from_arrows(3, arrows);
}

Quiver make_r_family(const RFamilyParams& p) {
  require(p.a >= 0 && p.b >= 0 && p.c >= 0, "R_{a,b,c} needs nonnegative parameters");
  std::vector<Arrow> arrows{{2, 1, 1}, {2, 3, 1}, {1, 3, 1}};
  if (p.a > 0) arrows.push_back({4, 1, p.a});
  if (p.c > 0) arrows.push_back({3, 4, p.c});
  if (p.b > 0) arrows.push_back({4, 2, p.b});
  const Quiver q = Quiver::from_arrows(4, arrows);
  return p.opposite ? opposite(q) : q;
}

Quiver make_lin3(int a, int b) {
  require(a >= 0 && b >= 0, "Lin3_{a,b} needs nonnegative parameters");
  std::vector<Arrow> arrows;
  if (a > 0) arrows.push_back({1, 2, a});
  if (b > 0) arrows.push_back({2, 3, b});
  return Quiver::from_arrows(3, arrows);
}

Quiver make_tri3(int a, int b, int c) {
  require(a >= 0 && b >= 0 && c >= 0, "Tri3_{a,b,c} needs nonnegative parameters");
  std::vector<Arrow> arrows;
  if (a > 0) arrows.push_back({1, 2, a});
  if (b > 0) arrows.push_back({3, 1, b});
  if (c > 0) arrows.push_back({3, 2, c});
  return Quiver::from_arrows(3, arrows);
}

std::optional<Quiver> parse_family_spec(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  const std::string_view family = spec.substr(0, colon);
  const std::vector<int> v = parse_ints(spec.substr(colon + 1));
  auto arity = [&](std::size_t k) {
    require(v.size() == k, "family '" + std::string(family) + "' takes " +
                               std::to_string(k) + " parameter(s)");
  };
  if (family == "R" || family == "Rop") {
    arity(3);
    return make_r_family(v[0], v[1], v[2], family == "Rop");
  }
  if (family == "Q3") {
    arity(3);
    return make_rank3(v[0], v[1], v[2]);
  }
  if (family == "Theta") {
    arity(1);
    return make_theta(v[0]);
  }
  if (family == "Lin3") {
    arity(2);
    return make_lin3(v[0], v[1]);
  }
  if (family == "Tri3") {
    arity(3);
    return make_tri3(v[0], v[1], v[2]);
  }
  throw DomainError("unknown quiver family '" + std::string(family) + "'");
}

CatalogEntry get(std::string_view name) {
  for (const CatalogEntry& e : bundled().entries) {
    if (e.name == name) return e;
  }
  const std::size_t us = name.find('_');
  if (us != std::string_view::npos) {
    const std::string_view family = name.substr(0, us);
    const std::string_view params = name.substr(us + 1);
    const std::string full(name);
    if (family == "Q") return family_entry(full, *parse_family_spec("Q3:" + std::string(params)), "rank-3 oriented cycle family");
    if (family == "R") return family_entry(full, *parse_family_spec("R:" + std::string(params)), "rank-4 R family");
    if (family == "Rop") return family_entry(full, *parse_family_spec("Rop:" + std::string(params)), "opposite of the rank-4 R family");
    if (family == "Lin3") return family_entry(full, *parse_family_spec("Lin3:" + std::string(params)), "linear acyclic rank-3 family");
    if (family == "Tri3") return family_entry(full, *parse_family_spec("Tri3:" + std::string(params)), "triangular acyclic rank-3 family");
  }
  throw DomainError("no catalog entry named '" + std::string(name) + "'");
}

std::vector<std::string> list() {
  std::vector<std::string> names;
  for (const CatalogEntry& e : bundled().entries) names.push_back(e.name);
  return names;
}

const std::vector<CatalogEntry>& no_mgs_entries() {
  static const std::vector<CatalogEntry> out = [] {
    std::vector<CatalogEntry> v;
    for (const CatalogEntry& e : bundled().entries) {
      if (e.facts.has_mgs == false) v.push_back(e);
    }
    return v;
  }();
  return out;
}

const std::vector<MoveClassRow>& move_classes() { return bundled().move_classes; }

std::optional<MoveClassRow> move_class(std::string_view name) {
  for (const MoveClassRow& r : bundled().move_classes) {
    if (r.name == name) return r;
  }
  return std::nullopt;
}

}  // namespace quiver::catalog
