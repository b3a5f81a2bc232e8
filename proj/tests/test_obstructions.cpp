#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "quiver/canonical.hpp"
#include "quiver/catalog.hpp"
#include "quiver/obstructions.hpp"

using namespace quiver;

namespace {

bool louise_fails(const Quiver& q, const LouiseCertificate& c) {
  try {
    return !verify_louise_certificate(q, c);
  } catch (const DomainError&) {
    return true;
  }
}

// Not the head of a multiple arrow, and the mutation creates no cyclic
// triangle with all multiplicities at least 2.
std::vector<Vertex> good_vertices_oracle(const Quiver& q) {
  const auto m = oracle::arrows_of(q);
  const int n = q.size();
  std::vector<Vertex> out;
  for (Vertex k = 1; k <= n; ++k) {
    bool multi_head = false;
    for (int j = 0; j < n; ++j) multi_head |= m[j][k - 1] >= 2;
    if (multi_head) continue;
    const auto mm = oracle::arrows_of(oracle::mutate(q, k));
    bool bad = false;
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        for (int z = 0; z < n; ++z) {
          if (x != y && y != z && x != z && mm[x][y] >= 2 && mm[y][z] >= 2 && mm[z][x] >= 2) bad = true;
        }
      }
    }
    if (!bad) out.push_back(k);
  }
  return out;
}

std::vector<oracle::CycleSet> sorted_cycles(const Quiver& q) {
  std::vector<oracle::CycleSet> out;
  for (const auto& c : induced_cycles(q)) {
    std::vector<Vertex> vs = c.vertices;
    std::sort(vs.begin(), vs.end());
    out.push_back({vs, c.oriented});
  }
  return out;
}

}  // namespace

TEST_CASE("bundled quivers without admissible companions") {
  for (const char* name : {"K4", "W5", "W5p"}) {
    const Quiver q = catalog::get(name).quiver;
    const auto r = solve_admissibility(q);
    CHECK_FALSE(r.sat);
    CHECK_FALSE(oracle::admissible(q));
    REQUIRE_FALSE(r.witness.empty());
    // The witness cycles are inconsistent as a system, and every proper
    // subset is consistent.
    int rhs = 0;
    std::map<VertexPair, int> count;
    for (const auto& c : r.witness) {
      rhs ^= c.oriented ? 1 : 0;
      for (std::size_t i = 0; i < c.vertices.size(); ++i) {
        Vertex a = c.vertices[i];
        Vertex b = c.vertices[(i + 1) % c.vertices.size()];
        if (a > b) std::swap(a, b);
        count[{a, b}] ^= 1;
      }
    }
    for (const auto& [e, parity] : count) CHECK(parity == 0);
    CHECK(rhs == 1);
  }
  const auto w5 = sorted_cycles(catalog::get("W5").quiver);
  CHECK(std::find(w5.begin(), w5.end(), oracle::CycleSet{{1, 2, 3, 4}, true}) != w5.end());
}

TEST_CASE("admissibility agrees with brute force") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 400; ++t) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const Quiver q = oracle::random_quiver(rng, n, 2, 0.7);
    const auto r = solve_admissibility(q);
    CHECK(r.sat == oracle::admissible(q));
    CHECK(r.constraints == oracle::induced_cycles(q).size());
    if (!r.sat) continue;
    for (const auto& c : induced_cycles(q)) CHECK(satisfies_parity(q, r.assignment, c));
    for (Vertex v = 1; v <= n; ++v) {
      CompanionAssignment flipped = r.assignment;
      for (std::size_t e = 0; e < flipped.edges.size(); ++e) {
        if (flipped.edges[e].first == v || flipped.edges[e].second == v) flipped.signs[e] *= -1;
      }
      for (const auto& c : induced_cycles(q)) CHECK(satisfies_parity(q, flipped, c));
    }
  }
  for (int t = 0; t < 200; ++t) {
    const Quiver q = oracle::random_acyclic(rng, 1 + static_cast<int>(rng() % 8), 3);
    CHECK(solve_admissibility(q).sat);
  }
}

TEST_CASE("mutation-acyclicity") {
  CHECK(is_mutation_acyclic(catalog::get("K4").quiver).kind == MutationAcyclicResult::Kind::NoCertified);
  const auto tri = is_mutation_acyclic(catalog::make_rank3(1, 1, 1), 1, 10);
  REQUIRE(tri.kind == MutationAcyclicResult::Kind::Yes);
  CHECK(tri.witness.size() == 1);
  CHECK(is_acyclic(mutate_sequence(catalog::make_rank3(1, 1, 1), tri.witness)));
  const auto path = is_mutation_acyclic(catalog::make_lin3(1, 1), 0, 1);
  REQUIRE(path.kind == MutationAcyclicResult::Kind::Yes);
  CHECK(path.witness.empty());
  CHECK(is_mutation_acyclic(catalog::make_rank3(2, 2, 2)).kind != MutationAcyclicResult::Kind::Yes);
}

TEST_CASE("good vertices") {
  CHECK(good_vertices(catalog::make_r_family(0, 2, 3)) == std::vector<Vertex>{3});
  CHECK(good_vertices(catalog::make_r_family(0, 2, 3, true)) == std::vector<Vertex>{2});
  CHECK(good_vertices(catalog::make_rank3(1, 1, 1)) == std::vector<Vertex>{1, 2, 3});
  std::mt19937_64 rng(42);
  for (int t = 0; t < 300; ++t) {
    const Quiver q = oracle::random_quiver(rng, 3 + static_cast<int>(rng() % 2), 3, 0.8);
    CHECK(good_vertices(q) == good_vertices_oracle(q));
  }
  CHECK_THROWS_AS(good_vertices(catalog::make_theta(5)), CapabilityError);
}

TEST_CASE("R-family examples") {
  const Quiver r = catalog::make_r_family(1, 2, 4);
  const Quiver mu1 = mutate(r, 1);
  CHECK(oracle::isomorphic(induced_subquiver(mu1, std::vector<Vertex>{2, 3, 4}).quiver,
                           catalog::make_rank3(2, 4 - 1, 2)));
  CHECK(opposite(catalog::make_r_family(0, 2, 3)) == catalog::make_r_family(0, 2, 3, true));
  const RFamilyParams p{0, 2, 3, false};
  CHECK(r_family_trajectory(p, 0) == p);
  CHECK(r_family_trajectory(p, 2) == RFamilyParams{0, 3, 4, false});
  CHECK(r_family_trajectory(p, 1) == RFamilyParams{1, 3, 3, true});
  CHECK_FALSE(r_family_preconditions({2, 2, 2, false}));
  CHECK_THROWS_AS(r_family_trajectory({2, 2, 2, false}, 1), DomainError);
}

TEST_CASE("R-family trajectory matches literal good-vertex mutation") {
  int checked = 0;
  for (int a = 0; a <= 9; ++a) {
    for (int b = 0; b <= 9; ++b) {
      for (int c = 0; c <= 9; ++c) {
        for (bool op : {false, true}) {
          const RFamilyParams p{a, b, c, op};
          if (!r_family_preconditions(p)) continue;
          ++checked;
          Quiver q = catalog::make_r_family(p);
          for (int k = 1; k <= 8; ++k) {
            const auto good = good_vertices_oracle(q);
            REQUIRE(good.size() == 1);
            q = oracle::mutate(q, good[0]);
            CHECK(oracle::isomorphic(q, catalog::make_r_family(r_family_trajectory(p, k))));
          }
        }
      }
    }
  }
  CHECK(checked >= 20);
}

TEST_CASE("decide_mgs verdicts re-check") {
  for (auto [a, b, c] : std::vector<std::array<int, 3>>{{0, 2, 3}, {1, 4, 3}, {0, 3, 5}, {2, 5, 4}, {1, 2, 4}}) {
    for (bool op : {false, true}) {
      const Quiver q = catalog::make_r_family(a, b, c, op);
      const auto v = decide_mgs(q);
      REQUIRE(v.kind == MgsVerdict::Kind::No);
      CHECK(v.obstruction->kind == Obstruction::Kind::BadRFamily);
      CHECK(recheck_obstruction(q, *v.obstruction));
    }
  }
  const auto theta = decide_mgs(catalog::make_theta(7));
  REQUIRE(theta.kind == MgsVerdict::Kind::Yes);
  CHECK(theta.certificate->sequence.size() == 8);
  const auto x7 = decide_mgs(catalog::get("X7").quiver);
  REQUIRE(x7.kind == MgsVerdict::Kind::No);
  CHECK(x7.obstruction->kind == Obstruction::Kind::KnownNoMgsCatalog);

  std::mt19937_64 rng(43);
  DecideOptions opts;
  opts.search = {10, 20'000, true};
  for (int t = 0; t < 150; ++t) {
    const Quiver q = oracle::random_quiver(rng, 3 + static_cast<int>(rng() % 3), 3, 0.7);
    const auto v = decide_mgs(q, opts);
    if (v.kind == MgsVerdict::Kind::Yes) {
      REQUIRE(v.certificate);
      CHECK(verify_mgs(q, v.certificate->sequence) == v.certificate);
      // Induced subquivers of a quiver with an MGS are never No.
      const int n = q.size();
      for (int mask = 1; mask < (1 << n) - 1; ++mask) {
        std::vector<Vertex> vs;
        for (int i = 0; i < n; ++i) {
          if (mask & (1 << i)) vs.push_back(i + 1);
        }
        CHECK(decide_mgs(induced_subquiver(q, vs).quiver, opts).kind != MgsVerdict::Kind::No);
      }
    } else if (v.kind == MgsVerdict::Kind::No) {
      REQUIRE(v.obstruction);
      CHECK(recheck_obstruction(q, *v.obstruction));
      CHECK_FALSE(describe(*v.obstruction).empty());
      CHECK(oracle::all_mgs(q, 6).empty());
    }
  }
}

TEST_CASE("subquiver obstructions are stated in subquiver labels") {
  const Quiver q = Quiver::from_arrows(4, {{1, 2, 2}, {2, 4, 2}, {4, 1, 3}, {3, 1, 1}});
  const auto v = decide_mgs(q);
  REQUIRE(v.kind == MgsVerdict::Kind::No);
  REQUIRE(v.obstruction->kind == Obstruction::Kind::Subquiver);
  CHECK(v.obstruction->vertices == std::vector<Vertex>{1, 2, 4});
  CHECK(recheck_obstruction(q, *v.obstruction));
  Obstruction forged = *v.obstruction;
  forged.vertices = {1, 2, 3};
  CHECK_FALSE(recheck_obstruction(q, forged));
}

TEST_CASE("Louise certificates") {
  const Quiver k4 = catalog::get("K4").quiver;
  const auto cert = io::louise_from_json(*catalog::get("K4").facts.louise);
  CHECK(verify_louise_certificate(k4, cert));
  CHECK(verify_louise_certificate(Quiver(3), LouiseCertificate{}));
  CHECK_FALSE(verify_louise_certificate(catalog::make_rank3(1, 1, 1),
                                        LouiseCertificate{LouiseCertificate::Kind::AcyclicLeaf, {}, {}, {}}));

  auto t = cert;
  t.edge = {2, 4};
  CHECK(louise_fails(k4, t));
  t = cert;
  t.edge = {2, 1};
  CHECK(louise_fails(k4, t));
  t = cert;
  std::swap(t.children[0], t.children[1]);
  CHECK(louise_fails(k4, t));
  t = cert;
  t.children[0].kind = LouiseCertificate::Kind::AcyclicLeaf;
  t.children[0].children.clear();
  CHECK(louise_fails(k4, t));
  t = cert;
  t.children[0].sequence = {2};
  CHECK(louise_fails(k4, t));
  t = cert;
  t.children.pop_back();
  CHECK(louise_fails(k4, t));
  t = cert;
  t.sequence = {9};
  CHECK(louise_fails(k4, t));
  t = cert;
  t.kind = LouiseCertificate::Kind::AcyclicLeaf;
  CHECK(louise_fails(k4, t));
}

TEST_CASE("JSON of verdicts") {
  const auto no = io::to_json(decide_mgs(catalog::make_rank3(2, 2, 2)));
  CHECK(no["verdict"] == "no");
  const auto yes = io::to_json(decide_mgs(catalog::make_theta(5)));
  CHECK(yes["verdict"] == "yes");
  CHECK(yes["sequence"] == nlohmann::json::array({2, 3, 4, 5, 1, 2}));
  const auto adm = io::to_json(solve_admissibility(catalog::get("K4").quiver));
  CHECK(adm["outcome"] == "unsat");
  CHECK(adm.contains("witnessCycles"));
  const auto louise = *catalog::get("K4").facts.louise;
  CHECK(io::to_json(io::louise_from_json(louise)) == louise);
}
