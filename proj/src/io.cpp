#include "quiver/io.hpp"

#include <set>

namespace quiver::io {

json to_json(const Quiver& q) {
  json arrows = json::array();
  for (const Arrow& a : q.arrows()) arrows.push_back({a.tail, a.head, a.mult});
  return json{{"n", q.size()}, {"arrows", std::move(arrows)}};
}

json to_json(const Permutation& p) { return json(p.images()); }

namespace {

std::int64_t get_int(const json& v, const std::string& what) {
  if (!v.is_number_integer()) throw DomainError(what + " must be an integer");
  return v.get<std::int64_t>();
}

Quiver from_arrow_list(const json& j) {
  if (!j.contains("n")) throw DomainError("quiver object needs \"n\"");
  const std::int64_t n = get_int(j["n"], "\"n\"");
  if (n < 1 || n > 4096) throw DomainError("\"n\" must be between 1 and 4096");
  const json& list = j["arrows"];
  if (!list.is_array()) throw DomainError("\"arrows\" must be an array");

  std::vector<Arrow> arrows;
  std::set<std::pair<std::int64_t, std::int64_t>> pairs;
  for (std::size_t idx = 0; idx < list.size(); ++idx) {
    const json& e = list[idx];
    const std::string where = "arrow entry " + std::to_string(idx) + " " + e.dump();
    if (!e.is_array() || e.size() < 2 || e.size() > 3) {
      throw DomainError(where + ": expected [tail, head] or [tail, head, mult]");
    }
    const std::int64_t t = get_int(e[0], where + ": tail");
    const std::int64_t h = get_int(e[1], where + ": head");
    const std::int64_t m = e.size() == 3 ? get_int(e[2], where + ": mult") : 1;
    if (t < 1 || t > n || h < 1 || h > n) {
      throw DomainError(where + ": vertex outside 1.." + std::to_string(n));
    }
    if (t == h) throw DomainError(where + ": loops are not allowed");
    if (m < 1) throw DomainError(where + ": multiplicity must be >= 1");
    if (m > kDefaultMultiplicityCap) throw DomainError(where + ": multiplicity too large");
    if (!pairs.emplace(std::min(t, h), std::max(t, h)).second) {
      throw DomainError(where + ": pair already has an entry (2-cycles are not allowed)");
    }
    arrows.push_back({static_cast<Vertex>(t), static_cast<Vertex>(h), static_cast<Entry>(m)});
  }
  return Quiver::from_arrows(static_cast<int>(n), arrows);
}

Quiver from_b_matrix(const json& j) {
  const json& rows = j["b"];
  if (!rows.is_array()) throw DomainError("\"b\" must be an array of rows");
  std::vector<std::vector<std::int64_t>> b;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!rows[r].is_array()) throw DomainError("row " + std::to_string(r + 1) + " of \"b\" is not an array");
    std::vector<std::int64_t> row;
    for (const json& x : rows[r]) row.push_back(get_int(x, "entry of \"b\""));
    b.push_back(std::move(row));
  }
  if (j.contains("n") && get_int(j["n"], "\"n\"") != static_cast<std::int64_t>(b.size())) {
    throw DomainError("\"n\" disagrees with the size of \"b\"");
  }
  return Quiver::from_matrix(b);
}

}  // namespace

Quiver quiver_from_json(const json& j) {
  if (!j.is_object()) throw DomainError("a quiver must be a JSON object");
  if (j.contains("b")) return from_b_matrix(j);
  if (j.contains("arrows")) return from_arrow_list(j);
  if (j.contains("n")) return from_arrow_list(json{{"n", j["n"]}, {"arrows", json::array()}});
  throw DomainError("quiver object needs \"arrows\" or \"b\"");
}

Quiver parse_quiver(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("invalid JSON: ") + e.what());
  }
  return quiver_from_json(j);
}

}  // namespace quiver::io
