#include "quiver/obstructions.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "quiver/canonical.hpp"
#include "quiver/catalog.hpp"
#include "quiver/io.hpp"
#include "quiver/simd/kernels.hpp"

namespace quiver {

// ---------------------------------------------------------------- GF(2)

namespace {

// Incremental row echelon system over GF(2). A row holds `vars` coefficient
// bits, one right-hand-side bit at index `vars`, and a provenance tag set.
class Gf2System {
 public:
  Gf2System(std::size_t vars, std::size_t tags)
      : vars_(vars), var_words_((vars + 1 + 63) / 64), tag_words_((tags + 63) / 64) {}

  std::vector<std::uint64_t> make_row() const {
    return std::vector<std::uint64_t>(var_words_ + tag_words_, 0);
  }
  static void set(std::vector<std::uint64_t>& row, std::size_t bit) {
    row[bit / 64] ^= std::uint64_t{1} << (bit % 64);
  }
  void set_rhs(std::vector<std::uint64_t>& row) const { set(row, vars_); }
  void set_tag(std::vector<std::uint64_t>& row, std::size_t tag) const {
    set(row, var_words_ * 64 + tag);
  }

  void reduce(std::vector<std::uint64_t>& row) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t p = pivots_[r];
      if ((row[p / 64] >> (p % 64)) & 1U) simd::xor_words(row, rows_[r]);
    }
  }

  // Pivot of a reduced row, or nullopt if all coefficient bits are zero.
  std::optional<std::size_t> pivot(const std::vector<std::uint64_t>& row) const {
    for (std::size_t w = 0; w < var_words_; ++w) {
      std::uint64_t word = row[w];
      if (w == vars_ / 64) word &= (std::uint64_t{1} << (vars_ % 64)) - 1;
      if (w > vars_ / 64) word = 0;
      if (word != 0) return w * 64 + static_cast<std::size_t>(__builtin_ctzll(word));
    }
    return std::nullopt;
  }

  bool rhs(const std::vector<std::uint64_t>& row) const {
    return (row[vars_ / 64] >> (vars_ % 64)) & 1U;
  }

  std::vector<std::size_t> tags(const std::vector<std::uint64_t>& row) const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < tag_words_; ++w) {
      std::uint64_t word = row[var_words_ + w];
      while (word != 0) {
        out.push_back(w * 64 + static_cast<std::size_t>(__builtin_ctzll(word)));
        word &= word - 1;
      }
    }
    return out;
  }

  // Adds a row; returns the reduced row if it is the contradiction 0 = 1.
  std::optional<std::vector<std::uint64_t>> add(std::vector<std::uint64_t> row) {
    reduce(row);
    const auto p = pivot(row);
    if (!p) {
      if (rhs(row)) return row;
      return std::nullopt;
    }
    rows_.push_back(std::move(row));
    pivots_.push_back(*p);
    return std::nullopt;
  }

  bool consistent_with(std::vector<std::uint64_t> row) const {
    reduce(row);
    return pivot(row).has_value() || !rhs(row);
  }

 private:
  std::size_t vars_;
  std::size_t var_words_;
  std::size_t tag_words_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<std::size_t> pivots_;
};

struct ParitySystem {
  std::vector<VertexPair> edges;
  std::map<VertexPair, std::size_t> index;
  std::vector<InducedCycle> cycles;

  explicit ParitySystem(const Quiver& q) : cycles(induced_cycles(q)) {
    for (Vertex i = 1; i <= q.size(); ++i) {
      for (Vertex j = i + 1; j <= q.size(); ++j) {
        if (q.b(i, j) != 0) {
          index[{i, j}] = edges.size();
          edges.emplace_back(i, j);
        }
      }
    }
  }

  std::size_t edge(Vertex i, Vertex j) const { return index.at({std::min(i, j), std::max(i, j)}); }

  std::vector<std::uint64_t> row(const Gf2System& sys, std::size_t c) const {
    auto r = sys.make_row();
    const auto& vs = cycles[c].vertices;
    for (std::size_t k = 0; k < vs.size(); ++k) {
      Gf2System::set(r, edge(vs[k], vs[(k + 1) % vs.size()]));
    }
    if (cycles[c].oriented) sys.set_rhs(r);
    sys.set_tag(r, c);
    return r;
  }

  bool consistent(const std::vector<std::size_t>& subset) const {
    Gf2System sys(edges.size(), cycles.size());
    for (std::size_t c : subset) {
      if (sys.add(row(sys, c))) return false;
    }
    return true;
  }
};

}  // namespace

int CompanionAssignment::sign(Vertex i, Vertex j) const {
  const VertexPair key{std::min(i, j), std::max(i, j)};
  const auto it = std::lower_bound(edges.begin(), edges.end(), key);
  if (it == edges.end() || *it != key) throw DomainError("not an edge of the quiver");
  return signs[static_cast<std::size_t>(it - edges.begin())];
}

bool satisfies_parity(const Quiver&, const CompanionAssignment& a, const InducedCycle& c) {
  int positive = 0;
  const auto& vs = c.vertices;
  for (std::size_t k = 0; k < vs.size(); ++k) {
    if (a.sign(vs[k], vs[(k + 1) % vs.size()]) > 0) ++positive;
  }
  return (positive % 2 == 1) == c.oriented;
}

AdmissibilityResult solve_admissibility(const Quiver& q) {
  const ParitySystem ps(q);
  AdmissibilityResult result;
  result.constraints = ps.cycles.size();
  Gf2System sys(ps.edges.size(), ps.cycles.size());

  for (std::size_t c = 0; c < ps.cycles.size(); ++c) {
    if (auto conflict = sys.add(ps.row(sys, c))) {
      // Deletion filter down to an inclusion-minimal inconsistent subset.
      std::vector<std::size_t> core = sys.tags(*conflict);
      for (std::size_t k = 0; k < core.size();) {
        std::vector<std::size_t> trial = core;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(k));
        if (!ps.consistent(trial)) {
          core = std::move(trial);
        } else {
          ++k;
        }
      }
      for (std::size_t i : core) result.witness.push_back(ps.cycles[i]);
      return result;
    }
  }

  result.sat = true;
  result.assignment.edges = ps.edges;
  for (std::size_t v = 0; v < ps.edges.size(); ++v) {
    auto zero = sys.make_row();
    Gf2System::set(zero, v);
    const bool positive = !sys.consistent_with(zero);
    if (positive) sys.set_rhs(zero);
    sys.add(std::move(zero));
    result.assignment.signs.push_back(positive ? 1 : -1);
  }
  return result;
}

// ------------------------------------------------------ mutation-acyclic

namespace {

std::string class_key(const Quiver& q) {
  if (q.size() <= kMaxCanonicalVertices) return canonical_key(q).bytes();
  const auto d = q.data();
  return std::string(reinterpret_cast<const char*>(d.data()), d.size() * sizeof(Entry));
}

}  // namespace

MutationAcyclicResult is_mutation_acyclic(const Quiver& q, int depth, std::size_t max_quivers) {
  MutationAcyclicResult out;
  AdmissibilityResult adm = solve_admissibility(q);
  if (!adm.sat) {
    out.kind = MutationAcyclicResult::Kind::NoCertified;
    out.admissibility = std::move(adm);
    return out;
  }
  out.admissibility = std::move(adm);
  if (is_acyclic(q)) {
    out.kind = MutationAcyclicResult::Kind::Yes;
    out.explored = 1;
    return out;
  }
  struct Node {
    Quiver quiver;
    std::vector<Vertex> path;
  };
  std::unordered_set<std::string> seen{class_key(q)};
  std::vector<Node> layer{{q, {}}};
  for (int d = 1; d <= depth && !layer.empty(); ++d) {
    std::vector<Node> next;
    for (const Node& node : layer) {
      for (Vertex k = 1; k <= q.size(); ++k) {
        if (!node.path.empty() && node.path.back() == k) continue;
        Quiver m;
        try {
          m = mutate(node.quiver, k);
        } catch (const MultiplicityOverflow&) {
          continue;
        }
        if (!seen.insert(class_key(m)).second) continue;
        std::vector<Vertex> path = node.path;
        path.push_back(k);
        if (is_acyclic(m)) {
          out.kind = MutationAcyclicResult::Kind::Yes;
          out.witness = std::move(path);
          out.explored = seen.size();
          return out;
        }
        if (seen.size() >= max_quivers) {
          out.explored = seen.size();
          return out;
        }
        next.push_back({std::move(m), std::move(path)});
      }
    }
    layer = std::move(next);
  }
  out.explored = seen.size();
  return out;
}

// ------------------------------------------------------ rank-3 and rank-4

namespace {

struct Rank3Cycle {
  std::vector<Vertex> vertices;
  Rank3Params params;
};

// Oriented 3-cycle of a 3-vertex quiver, listed from vertex 1.
std::optional<Rank3Cycle> rank3_cycle(const Quiver& q) {
  if (q.size() != 3) return std::nullopt;
  if (q.b(1, 2) > 0 && q.b(2, 3) > 0 && q.b(3, 1) > 0) {
    return Rank3Cycle{{1, 2, 3}, {q.b(1, 2), q.b(2, 3), q.b(3, 1)}};
  }
  if (q.b(1, 3) > 0 && q.b(3, 2) > 0 && q.b(2, 1) > 0) {
    return Rank3Cycle{{1, 3, 2}, {q.b(1, 3), q.b(3, 2), q.b(2, 1)}};
  }
  return std::nullopt;
}

bool is_bad_rank3(const Rank3Cycle& c) {
  return std::min({c.params.a, c.params.b, c.params.c}) >= 2;
}

struct CatalogKey {
  const catalog::CatalogEntry* entry;
  std::size_t pairs;
  CanonicalKey key;
};

const std::vector<CatalogKey>& no_mgs_keys() {
  static const std::vector<CatalogKey> keys = [] {
    std::vector<CatalogKey> out;
    for (const auto& e : catalog::no_mgs_entries()) {
      out.push_back({&e, e.quiver.arrow_pairs(), canonical_key(e.quiver)});
    }
    return out;
  }();
  return keys;
}

std::optional<Obstruction> match_catalog(const Quiver& q) {
  if (q.size() > kMaxCanonicalVertices) return std::nullopt;
  std::optional<CanonicalKey> key;
  for (const CatalogKey& ck : no_mgs_keys()) {
    if (ck.entry->quiver.size() != q.size() || ck.pairs != q.arrow_pairs()) continue;
    if (!key) key = canonical_key(q);
    if (*key != ck.key) continue;
    const auto sigma = are_isomorphic(ck.entry->quiver, q);
    if (!sigma) continue;
    Obstruction o;
    o.kind = Obstruction::Kind::KnownNoMgsCatalog;
    o.catalog_name = ck.entry->name;
    o.iso = *sigma;
    return o;
  }
  return std::nullopt;
}

bool contains_no_mgs_subquiver(const Quiver& q) {
  const int n = q.size();
  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), 1);
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<Vertex> vs;
    for (int v = 0; v < n; ++v) {
      if (mask & (1 << v)) vs.push_back(v + 1);
    }
    if (vs.size() < 3) continue;
    const Quiver sub = induced_subquiver(q, vs).quiver;
    if (const auto c = rank3_cycle(sub); c && is_bad_rank3(*c)) return true;
    if (match_catalog(sub)) return true;
  }
  return false;
}

std::int64_t checked(std::int64_t v) {
  if (v > std::numeric_limits<Entry>::max()) {
    throw DomainError("trajectory parameters exceed the multiplicity range");
  }
  return v;
}

// rfamily normal form (plain or opposite) matching q up to relabelling,
// with the orientation's preconditions holding.
struct RMatch {
  RFamilyParams params;
  Permutation iso;
};

std::optional<RMatch> match_r_family_exact(const Quiver& q) {
  if (q.size() != 4) return std::nullopt;
  std::vector<Vertex> pi{1, 2, 3, 4};
  do {
    const Permutation perm(pi);
    const Quiver t = q.permuted(perm);
    RFamilyParams p;
    if (t.b(2, 1) == 1 && t.b(2, 3) == 1 && t.b(1, 3) == 1) {
      p = {t.b(4, 1), t.b(4, 2), t.b(3, 4), false};
    } else if (t.b(1, 2) == 1 && t.b(3, 2) == 1 && t.b(3, 1) == 1) {
      p = {t.b(1, 4), t.b(2, 4), t.b(4, 3), true};
    } else {
      continue;
    }
    if (p.a < 0 || p.b < 0 || p.c < 0 || !r_family_preconditions(p)) continue;
    if (catalog::make_r_family(p) != t) continue;
    return RMatch{p, perm.inverse()};
  } while (std::next_permutation(pi.begin(), pi.end()));
  return std::nullopt;
}

std::optional<Obstruction> match_bad_r_family(const Quiver& q) {
  for (bool via_opposite : {false, true}) {
    const Quiver target = via_opposite ? opposite(q) : q;
    if (auto m = match_r_family_exact(target)) {
      Obstruction o;
      o.kind = Obstruction::Kind::BadRFamily;
      o.rfamily = m->params;
      o.iso = m->iso;
      o.via_opposite = via_opposite;
      for (int k = 1; k <= 4; ++k) o.trajectory.push_back(r_family_trajectory(m->params, k));
      return o;
    }
  }
  return std::nullopt;
}

Obstruction wrap_subquiver(std::vector<Vertex> vs, Obstruction inner) {
  Obstruction o;
  o.kind = Obstruction::Kind::Subquiver;
  o.vertices = std::move(vs);
  o.inner = std::make_shared<const Obstruction>(std::move(inner));
  return o;
}

}  // namespace

std::vector<Vertex> good_vertices(const Quiver& q) {
  if (q.size() != 3 && q.size() != 4) {
    throw CapabilityError("good_vertices is implemented for rank 3 and 4 only");
  }
  std::vector<Vertex> out;
  for (Vertex k = 1; k <= q.size(); ++k) {
    bool multi = false;
    for (Vertex j = 1; j <= q.size(); ++j) multi |= q.b(j, k) >= 2;
    if (multi) continue;
    if (!contains_no_mgs_subquiver(mutate(q, k))) out.push_back(k);
  }
  return out;
}

bool r_family_preconditions(const RFamilyParams& p) {
  if (p.a < 0 || p.b < 0 || p.c < 0 || p.c - p.a < 2) return false;
  if (!p.opposite) return p.c > p.b && p.b >= 2 && p.c - p.b - p.a > 0;
  return p.b > p.c && p.c >= 2 && p.b + p.a - p.c > 0;
}

RFamilyParams r_family_trajectory(const RFamilyParams& p, int k) {
  if (k < 0) throw DomainError("trajectory length must be nonnegative");
  if (!r_family_preconditions(p)) throw DomainError("R-family trajectory preconditions fail");
  const std::int64_t a = p.a, b = p.b, c = p.c;
  const std::int64_t n = k / 2;
  auto make = [](std::int64_t x, std::int64_t y, std::int64_t z, bool op) {
    return RFamilyParams{static_cast<int>(checked(x)), static_cast<int>(checked(y)),
                         static_cast<int>(checked(z)), op};
  };
  if (!p.opposite) {
    const std::int64_t d = c - b - a;
    if (k % 2 == 0) return make(a, b + n * d, c + n * d, false);
    return make(c - b, b + (n + 1) * d, c + n * d, true);
  }
  const std::int64_t e = b + a - c;
  if (k % 2 == 0) return make(a, b + n * e, c + n * e, true);
  return make(b - c, c + (n + 1) * e, b + n * e, true);
}

// ------------------------------------------------------------ obstructions

bool recheck_obstruction(const Quiver& q, const Obstruction& o) {
  switch (o.kind) {
    case Obstruction::Kind::Rank3Cyclic: {
      if (q.size() != 3 || o.vertices.size() != 3) return false;
      std::vector<Vertex> sorted = o.vertices;
      std::sort(sorted.begin(), sorted.end());
      if (sorted != std::vector<Vertex>{1, 2, 3}) return false;
      const Vertex u = o.vertices[0], v = o.vertices[1], w = o.vertices[2];
      return q.b(u, v) == o.rank3.a && q.b(v, w) == o.rank3.b && q.b(w, u) == o.rank3.c &&
             std::min({o.rank3.a, o.rank3.b, o.rank3.c}) >= 2;
    }
    case Obstruction::Kind::BadRFamily: {
      if (q.size() != 4 || o.iso.size() != 4 || !r_family_preconditions(o.rfamily)) return false;
      const Quiver target = o.via_opposite ? opposite(q) : q;
      Quiver r = catalog::make_r_family(o.rfamily);
      if (r.permuted(o.iso) != target) return false;
      // Literal good-sequence replay: one good vertex per step, matching the
      // closed form, never returning to the start.
      const CanonicalKey start = canonical_key(r);
      for (std::size_t k = 0; k < o.trajectory.size(); ++k) {
        const auto good = good_vertices(r);
        if (good.size() != 1) return false;
        r = mutate(r, good.front());
        const RFamilyParams expect = r_family_trajectory(o.rfamily, static_cast<int>(k + 1));
        if (!(expect == o.trajectory[k])) return false;
        if (!are_isomorphic(catalog::make_r_family(expect), r)) return false;
        if (canonical_key(r) == start) return false;
      }
      return true;
    }
    case Obstruction::Kind::KnownNoMgsCatalog: {
      for (const auto& e : catalog::no_mgs_entries()) {
        if (e.name != o.catalog_name) continue;
        return e.quiver.size() == q.size() && o.iso.size() == q.size() &&
               e.quiver.permuted(o.iso) == q;
      }
      return false;
    }
    case Obstruction::Kind::Subquiver: {
      if (!o.inner || o.vertices.empty() || static_cast<int>(o.vertices.size()) >= q.size()) {
        return false;
      }
      try {
        return recheck_obstruction(induced_subquiver(q, o.vertices).quiver, *o.inner);
      } catch (const DomainError&) {
        return false;
      }
    }
  }
  return false;
}

namespace {

std::string vertex_set(const std::vector<Vertex>& vs) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? "," : "") << vs[i];
  os << '}';
  return os.str();
}

std::string r_name(const RFamilyParams& p) {
  std::ostringstream os;
  os << "R_{" << p.a << ',' << p.b << ',' << p.c << '}' << (p.opposite ? "^op" : "");
  return os.str();
}

std::string shape(const Obstruction& o) {
  switch (o.kind) {
    case Obstruction::Kind::Rank3Cyclic:
      return "Q_{" + std::to_string(o.rank3.a) + "," + std::to_string(o.rank3.b) + "," +
             std::to_string(o.rank3.c) + "}";
    case Obstruction::Kind::BadRFamily:
      return o.via_opposite ? "the opposite of " + r_name(o.rfamily) : r_name(o.rfamily);
    case Obstruction::Kind::KnownNoMgsCatalog:
      return "catalog quiver " + o.catalog_name;
    case Obstruction::Kind::Subquiver:
      return "a quiver containing " + shape(*o.inner);
  }
  return {};
}

}  // namespace

std::string describe(const Obstruction& o) {
  switch (o.kind) {
    case Obstruction::Kind::Rank3Cyclic:
      return "no MGS because the quiver is " + shape(o) + " (all multiplicities >= 2)";
    case Obstruction::Kind::BadRFamily: {
      std::string s = "no MGS because the quiver is isomorphic to " + shape(o) +
                      "; its unique good sequence never returns to it";
      return s;
    }
    case Obstruction::Kind::KnownNoMgsCatalog:
      return "no MGS because the quiver is isomorphic to " + shape(o);
    case Obstruction::Kind::Subquiver: {
      std::vector<Vertex> path = o.vertices;
      const Obstruction* inner = o.inner.get();
      // Flatten nested subquivers back to outer labels.
      while (inner->kind == Obstruction::Kind::Subquiver) {
        std::vector<Vertex> next;
        for (Vertex v : inner->vertices) next.push_back(path[v - 1]);
        path = std::move(next);
        inner = inner->inner.get();
      }
      return "no MGS because induced subquiver " + vertex_set(path) + " ≅ " + shape(*inner);
    }
  }
  return {};
}

std::optional<Obstruction> scan_subquivers(const Quiver& q) {
  const int n = q.size();
  std::set<int> sizes{3, 4};
  for (const auto& e : catalog::no_mgs_entries()) sizes.insert(e.quiver.size());
  for (int s : sizes) {
    if (s >= n) break;
    std::vector<bool> pick(static_cast<std::size_t>(n), false);
    std::fill(pick.begin(), pick.begin() + s, true);
    do {
      std::vector<Vertex> vs;
      for (int v = 0; v < n; ++v) {
        if (pick[static_cast<std::size_t>(v)]) vs.push_back(v + 1);
      }
      const Quiver sub = induced_subquiver(q, vs).quiver;
      if (s == 3) {
        if (const auto c = rank3_cycle(sub); c && is_bad_rank3(*c)) {
          Obstruction inner;
          inner.kind = Obstruction::Kind::Rank3Cyclic;
          inner.vertices = c->vertices;
          inner.rank3 = c->params;
          return wrap_subquiver(vs, std::move(inner));
        }
      }
      if (auto cat = match_catalog(sub)) return wrap_subquiver(vs, std::move(*cat));
      if (s == 4) {
        if (auto r = match_bad_r_family(sub)) return wrap_subquiver(vs, std::move(*r));
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return std::nullopt;
}

// --------------------------------------------------------------- decide

namespace {

MgsVerdict yes(MgsCertificate cert, std::string method) {
  MgsVerdict v;
  v.kind = MgsVerdict::Kind::Yes;
  v.certificate = std::move(cert);
  v.method = std::move(method);
  return v;
}

MgsVerdict no(Obstruction o, std::string method) {
  MgsVerdict v;
  v.kind = MgsVerdict::Kind::No;
  v.obstruction = std::move(o);
  v.method = std::move(method);
  return v;
}

std::optional<MgsCertificate> catalog_sequence(const Quiver& q) {
  if (q.size() > kMaxCanonicalVertices) return std::nullopt;
  std::optional<CanonicalKey> key;
  for (const std::string& name : catalog::list()) {
    const catalog::CatalogEntry e = catalog::get(name);
    if (!e.facts.mgs_sequence || e.quiver.size() != q.size() ||
        e.quiver.arrow_pairs() != q.arrow_pairs()) {
      continue;
    }
    if (!key) key = canonical_key(q);
    if (canonical_key(e.quiver) != *key) continue;
    const auto sigma = are_isomorphic(e.quiver, q);
    if (!sigma) continue;
    std::vector<Vertex> seq;
    for (Vertex v : *e.facts.mgs_sequence) seq.push_back((*sigma)(v));
    if (auto cert = verify_mgs(q, seq)) return cert;
  }
  return std::nullopt;
}

MgsVerdict decide_impl(const Quiver& q, const DecideOptions& options, int depth) {
  const int n = q.size();
  if (is_acyclic(q)) return yes(acyclic_mgs(q), "acyclic");

  if (n == 3) {
    const auto c = rank3_cycle(q);
    if (!c) throw InvariantViolation("cyclic rank-3 quiver without an oriented 3-cycle");
    if (is_bad_rank3(*c)) {
      Obstruction o;
      o.kind = Obstruction::Kind::Rank3Cyclic;
      o.vertices = c->vertices;
      o.rank3 = c->params;
      return no(std::move(o), "rank3");
    }
    const auto local = rank3_mgs(c->params);
    std::vector<Vertex> seq;
    for (Vertex x : local->sequence) seq.push_back(c->vertices[x - 1]);
    MgsCheck check = check_mgs(q, seq);
    if (!check.certificate) throw InvariantViolation("rank-3 relabelling failed: " + check.reason);
    return yes(std::move(*check.certificate), "rank3");
  }

  if (auto o = scan_subquivers(q)) return no(std::move(*o), "subquiver");
  if (auto o = match_catalog(q)) return no(std::move(*o), "catalog");
  if (n == 4) {
    if (auto o = match_bad_r_family(q)) return no(std::move(*o), "r-family");
  }

  if (depth > 0) {
    if (n <= 16) {
      if (const auto ds = find_direct_sum(q)) {
        const InducedSubquiver l = induced_subquiver(q, ds->left);
        const InducedSubquiver r = induced_subquiver(q, ds->right);
        const MgsVerdict lv = decide_impl(l.quiver, options, depth - 1);
        if (lv.kind == MgsVerdict::Kind::No) {
          return no(wrap_subquiver(ds->left, *lv.obstruction), "direct-sum");
        }
        const MgsVerdict rv = decide_impl(r.quiver, options, depth - 1);
        if (rv.kind == MgsVerdict::Kind::No) {
          return no(wrap_subquiver(ds->right, *rv.obstruction), "direct-sum");
        }
        if (lv.kind == MgsVerdict::Kind::Yes && rv.kind == MgsVerdict::Kind::Yes) {
          return yes(direct_sum_mgs(q, *ds, *lv.certificate, *rv.certificate), "direct-sum");
        }
      }
    }
    if (const auto ec = find_ending_kcycle(q)) {
      const std::vector<Vertex> removed(ec->cycle.begin(), ec->cycle.end() - 1);
      const InducedSubquiver c = remove_vertices(q, removed);
      const MgsVerdict cv = decide_impl(c.quiver, options, depth - 1);
      if (cv.kind == MgsVerdict::Kind::No) {
        return no(wrap_subquiver(c.labels, *cv.obstruction), "k-cycle");
      }
      if (cv.kind == MgsVerdict::Kind::Yes) {
        return yes(kcycle_mgs(q, *ec, *cv.certificate), "k-cycle");
      }
    }
  }

  if (options.use_catalog_sequences) {
    if (auto cert = catalog_sequence(q)) return yes(std::move(*cert), "catalog");
  }

  const SearchResult sr = search_mgs(q, options.search);
  if (sr.outcome == SearchResult::Outcome::Found) {
    MgsVerdict v = yes(*sr.certificate, "search");
    v.states = sr.states;
    return v;
  }
  MgsVerdict v;
  v.kind = MgsVerdict::Kind::Unknown;
  v.method = sr.outcome == SearchResult::Outcome::BudgetHit ? "search budget exhausted"
                                                            : "no MGS within the length bound";
  v.states = sr.states;
  return v;
}

}  // namespace

MgsVerdict decide_mgs(const Quiver& q, const DecideOptions& options) {
  return decide_impl(q, options, options.depth < 0 ? q.size() : options.depth);
}

// ------------------------------------------------------------- Louise

bool verify_louise_certificate(const Quiver& q, const LouiseCertificate& cert) {
  switch (cert.kind) {
    case LouiseCertificate::Kind::NoEdges:
      return !q.has_arrows();
    case LouiseCertificate::Kind::AcyclicLeaf:
      return is_acyclic(q);
    case LouiseCertificate::Kind::Node:
      break;
  }
  if (cert.children.size() != 3) throw DomainError("Louise node needs exactly three children");
  for (Vertex v : cert.sequence) {
    if (v < 1 || v > q.size()) throw DomainError("Louise sequence vertex out of range");
  }
  const auto [i, j] = cert.edge;
  if (i < 1 || j < 1 || i > q.size() || j > q.size() || i == j) {
    throw DomainError("Louise edge out of range");
  }
  const Quiver qp = mutate_sequence(q, cert.sequence);
  if (qp.b(i, j) <= 0) return false;
  const auto sep = separating_edges(qp);
  if (std::find(sep.begin(), sep.end(), VertexPair{i, j}) == sep.end()) return false;

  const std::vector<std::vector<Vertex>> removals{{i}, {j}, {i, j}};
  for (std::size_t c = 0; c < 3; ++c) {
    if (static_cast<int>(removals[c].size()) == qp.size()) {
      if (cert.children[c].kind != LouiseCertificate::Kind::NoEdges) return false;
      continue;
    }
    if (!verify_louise_certificate(remove_vertices(qp, removals[c]).quiver, cert.children[c])) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- JSON

namespace io {

namespace {

json params_json(const RFamilyParams& p) {
  return json{{"params", {p.a, p.b, p.c}}, {"opposite", p.opposite}};
}

json cycle_json(const InducedCycle& c) {
  return json{{"vertices", c.vertices}, {"oriented", c.oriented}};
}

}  // namespace

json to_json(const CompanionAssignment& a) {
  json out = json::array();
  for (std::size_t e = 0; e < a.edges.size(); ++e) {
    out.push_back({a.edges[e].first, a.edges[e].second, a.signs[e]});
  }
  return out;
}

json to_json(const AdmissibilityResult& r) {
  json out;
  out["outcome"] = r.sat ? "sat" : "unsat";
  out["constraints"] = r.constraints;
  if (r.sat) {
    out["signs"] = to_json(r.assignment);
  } else {
    json w = json::array();
    for (const auto& c : r.witness) w.push_back(cycle_json(c));
    out["witnessCycles"] = std::move(w);
  }
  return out;
}

json to_json(const MutationAcyclicResult& r) {
  json out;
  switch (r.kind) {
    case MutationAcyclicResult::Kind::Yes:
      out["result"] = "yes";
      out["witness"] = r.witness;
      break;
    case MutationAcyclicResult::Kind::NoCertified:
      out["result"] = "no";
      break;
    case MutationAcyclicResult::Kind::Unknown:
      out["result"] = "unknown";
      break;
  }
  if (r.admissibility) out["admissibility"] = to_json(*r.admissibility);
  out["explored"] = r.explored;
  return out;
}

json to_json(const Obstruction& o) {
  json out;
  switch (o.kind) {
    case Obstruction::Kind::Rank3Cyclic:
      out["kind"] = "rank3_cyclic";
      out["vertices"] = o.vertices;
      out["params"] = {o.rank3.a, o.rank3.b, o.rank3.c};
      break;
    case Obstruction::Kind::BadRFamily: {
      out["kind"] = "bad_r_family";
      out["family"] = params_json(o.rfamily);
      out["via_opposite"] = o.via_opposite;
      out["iso"] = to_json(o.iso);
      json t = json::array();
      for (const auto& p : o.trajectory) t.push_back(params_json(p));
      out["trajectory"] = std::move(t);
      break;
    }
    case Obstruction::Kind::KnownNoMgsCatalog:
      out["kind"] = "catalog";
      out["name"] = o.catalog_name;
      out["iso"] = to_json(o.iso);
      break;
    case Obstruction::Kind::Subquiver:
      out["kind"] = "subquiver";
      out["vertices"] = o.vertices;
      out["inner"] = to_json(*o.inner);
      break;
  }
  return out;
}

json to_json(const MgsCertificate& c) {
  return json{{"sequence", c.sequence}, {"permutation", to_json(c.permutation)}};
}

json to_json(const MgsVerdict& v) {
  json out;
  switch (v.kind) {
    case MgsVerdict::Kind::Yes:
      out["verdict"] = "yes";
      out["sequence"] = v.certificate->sequence;
      out["permutation"] = to_json(v.certificate->permutation);
      break;
    case MgsVerdict::Kind::No:
      out["verdict"] = "no";
      out["reason"] = describe(*v.obstruction);
      out["obstruction"] = to_json(*v.obstruction);
      break;
    case MgsVerdict::Kind::Unknown:
      out["verdict"] = "unknown";
      out["states"] = v.states;
      break;
  }
  out["method"] = v.method;
  return out;
}

json to_json(const LouiseCertificate& c) {
  switch (c.kind) {
    case LouiseCertificate::Kind::NoEdges:
      return json{{"kind", "no_edges"}};
    case LouiseCertificate::Kind::AcyclicLeaf:
      return json{{"kind", "acyclic_leaf"}};
    case LouiseCertificate::Kind::Node: {
      json children = json::array();
      for (const auto& ch : c.children) children.push_back(to_json(ch));
      return json{{"kind", "node"},
                  {"sequence", c.sequence},
                  {"edge", {c.edge.first, c.edge.second}},
                  {"children", std::move(children)}};
    }
  }
  return {};
}

LouiseCertificate louise_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw DomainError("Louise certificate node needs a string \"kind\"");
  }
  const std::string kind = j["kind"].get<std::string>();
  LouiseCertificate c;
  if (kind == "no_edges") {
    c.kind = LouiseCertificate::Kind::NoEdges;
  } else if (kind == "acyclic_leaf") {
    c.kind = LouiseCertificate::Kind::AcyclicLeaf;
  } else if (kind == "node") {
    c.kind = LouiseCertificate::Kind::Node;
    try {
      c.sequence = j.value("sequence", std::vector<Vertex>{});
      const auto edge = j.at("edge").get<std::vector<Vertex>>();
      if (edge.size() != 2) throw DomainError("Louise edge must have two entries");
      c.edge = {edge[0], edge[1]};
    } catch (const json::exception& e) {
      throw DomainError(std::string("malformed Louise node: ") + e.what());
    }
    if (!j.contains("children") || !j["children"].is_array() || j["children"].size() != 3) {
      throw DomainError("Louise node needs exactly three children");
    }
    for (const json& ch : j["children"]) c.children.push_back(louise_from_json(ch));
  } else {
    throw DomainError("unknown Louise certificate kind '" + kind + "'");
  }
  return c;
}

}  // namespace io

}  // namespace quiver
