#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "quiver/catalog.hpp"
#include "quiver/quiver.hpp"
#include "quiver/simd/kernels.hpp"

using namespace quiver;

TEST_CASE("mutation matches the arrow-rewrite definition") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 400; ++t) {
    const int n = 1 + static_cast<int>(rng() % 7);
    const Quiver q = oracle::random_quiver(rng, n, 3);
    for (Vertex k = 1; k <= n; ++k) CHECK(mutate(q, k) == oracle::mutate(q, k));
  }
}

TEST_CASE("mutation is identical under both kernel tables") {
  std::mt19937_64 rng(2);
  const auto& before = simd::active();
  for (int t = 0; t < 200; ++t) {
    const Quiver q = oracle::random_quiver(rng, 8, 3);
    simd::set_active(simd::scalar_kernels());
    const Quiver a = mutate_sequence(q, std::vector<Vertex>{1, 5, 3, 8, 2});
    simd::set_active(before);
    const Quiver b = mutate_sequence(q, std::vector<Vertex>{1, 5, 3, 8, 2});
    CHECK(a == b);
  }
}

TEST_CASE("mutation examples") {
  const Quiver q111 = catalog::make_rank3(1, 1, 1);
  CHECK(mutate(q111, 2) == Quiver::from_arrows(3, {{2, 1, 1}, {3, 2, 1}}));
  const Quiver a2 = Quiver::from_arrows(2, {{1, 2, 1}});
  CHECK(mutate(a2, 1) == Quiver::from_arrows(2, {{2, 1, 1}}));
  CHECK_THROWS_AS(mutate(a2, 3), DomainError);
  CHECK_THROWS_AS(mutate(a2, 0), DomainError);
}

TEST_CASE("overflow is detected") {
  const Quiver q = Quiver::from_arrows(3, {{1, 2, 50'000}, {2, 3, 50'000}});
  CHECK_THROWS_AS(mutate(q, 2), MultiplicityOverflow);
  CHECK_THROWS_AS(mutate(Quiver::from_arrows(3, {{1, 2, 3}, {2, 3, 3}}), 2, 5),
                  MultiplicityOverflow);
  CHECK_NOTHROW(mutate(Quiver::from_arrows(3, {{1, 2, 3}, {2, 3, 3}}), 2, 9));
}

TEST_CASE("construction validates invariants") {
  CHECK_THROWS_AS(Quiver::from_matrix({{0, 1}, {1, 0}}), DomainError);
  CHECK_THROWS_AS(Quiver::from_matrix({{1, 0}, {0, 0}}), DomainError);
  CHECK_THROWS_AS(Quiver::from_arrows(2, {{1, 1, 1}}), DomainError);
  CHECK_THROWS_AS(Quiver::from_arrows(2, {{1, 3, 1}}), DomainError);
  CHECK_THROWS_AS(Quiver::from_matrix({{0, 3'000'000'000LL}, {-3'000'000'000LL, 0}}),
                  MultiplicityOverflow);
}

TEST_CASE("induced subquivers") {
  const Quiver k4 = catalog::get("K4").quiver;
  const auto sub = induced_subquiver(k4, std::vector<Vertex>{2, 3, 4});
  CHECK(sub.labels == std::vector<Vertex>{2, 3, 4});
  CHECK(sub.quiver == Quiver::from_arrows(3, {{1, 3, 1}, {2, 1, 1}, {3, 2, 1}}));
  CHECK_THROWS_AS(induced_subquiver(k4, std::vector<Vertex>{}), DomainError);
  CHECK_THROWS_AS(induced_subquiver(k4, std::vector<Vertex>{1, 1}), DomainError);
  CHECK_THROWS_AS(induced_subquiver(k4, std::vector<Vertex>{5}), DomainError);
  const auto rest = remove_vertices(k4, std::vector<Vertex>{1});
  CHECK(rest.quiver == sub.quiver);
}

TEST_CASE("opposite commutes with mutation and is an involution") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const Quiver q = oracle::random_quiver(rng, 5, 3);
    CHECK(opposite(opposite(q)) == q);
    for (Vertex k = 1; k <= 5; ++k) CHECK(opposite(mutate(q, k)) == mutate(opposite(q), k));
  }
}

TEST_CASE("acyclicity, sources and sinks") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 300; ++t) {
    const Quiver q = oracle::random_quiver(rng, 1 + static_cast<int>(rng() % 7), 2, 0.4);
    CHECK(is_acyclic(q) == !oracle::has_directed_cycle(q));
  }
  const Quiver path = catalog::make_lin3(1, 1);
  CHECK(sources(path) == std::vector<Vertex>{1});
  CHECK(sinks(path) == std::vector<Vertex>{3});
  CHECK_FALSE(is_acyclic(catalog::make_rank3(1, 1, 1)));
  const Quiver lone(1);
  CHECK(sources(lone) == std::vector<Vertex>{1});
  CHECK(sinks(lone) == std::vector<Vertex>{1});
}

TEST_CASE("induced cycles agree with subset enumeration") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    const Quiver q = oracle::random_quiver(rng, 3 + static_cast<int>(rng() % 5), 2, 0.5);
    std::vector<oracle::CycleSet> got;
    for (const auto& c : induced_cycles(q)) {
      std::vector<Vertex> vs = c.vertices;
      std::sort(vs.begin(), vs.end());
      got.push_back({vs, c.oriented});
    }
    std::sort(got.begin(), got.end());
    CHECK(got == oracle::induced_cycles(q));
  }
  const auto k4 = induced_cycles(catalog::get("K4").quiver);
  REQUIRE(k4.size() == 4);
  CHECK(k4[3].vertices == std::vector<Vertex>{2, 3, 4});
  CHECK(k4[3].oriented);
}

TEST_CASE("rank agrees with rational elimination") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 300; ++t) {
    const Quiver q = oracle::random_quiver(rng, 1 + static_cast<int>(rng() % 8), 3);
    CHECK(b_matrix_rank(q) == oracle::rank(q));
  }
  CHECK(b_matrix_rank(catalog::make_lin3(1, 1)) == 2);
  CHECK(b_matrix_rank(Quiver(1)) == 0);
  CHECK(b_matrix_rank(catalog::get("K4").quiver) == 4);
  CHECK(b_matrix_rank(catalog::get("Markov").quiver) == 2);
  const Quiver huge = Quiver::from_arrows(4, {{1, 2, 2'000'000'000}, {2, 3, 2'000'000'000},
                                              {3, 4, 1'999'999'999}, {1, 4, 7}});
  CHECK(b_matrix_rank(huge) == 4);
}

TEST_CASE("direct sums") {
  CHECK_FALSE(find_direct_sum(catalog::make_theta(5)));
  const Quiver q = Quiver::from_arrows(4, {{1, 2, 1}, {3, 4, 1}, {2, 3, 1}});
  const auto d = find_direct_sum(q);
  REQUIRE(d);
  CHECK(d->left == std::vector<Vertex>{1, 2});
  CHECK(d->right == std::vector<Vertex>{3, 4});
  CHECK(d->colors == 1);
  CHECK(is_direct_sum(q, *d));
  DirectSumDecomposition bad = *d;
  bad.cross_arrows.clear();
  CHECK_FALSE(is_direct_sum(q, bad));
}

TEST_CASE("ending k-cycles") {
  CHECK_FALSE(find_ending_kcycle(catalog::make_theta(4)));
  const auto tri = find_ending_kcycle(catalog::make_rank3(1, 1, 1));
  REQUIRE(tri);
  CHECK(tri->cycle == std::vector<Vertex>{1, 2, 3});
  CHECK(tri->attachment == 3);
  const Quiver tail = Quiver::from_arrows(5, {{1, 2, 1}, {2, 3, 1}, {3, 1, 1}, {3, 4, 1}, {4, 5, 1}});
  const auto t = find_ending_kcycle(tail);
  REQUIRE(t);
  CHECK(t->cycle == std::vector<Vertex>{1, 2, 3});
  CHECK(t->attachment == 3);
  CHECK_FALSE(find_ending_kcycle(catalog::make_rank3(2, 2, 2)));
}

TEST_CASE("separating edges") {
  // Every arrow of an acyclic quiver is separating.
  const Quiver path = catalog::make_lin3(1, 1);
  CHECK(separating_edges(path).size() == 2);
  CHECK(separating_edges(catalog::make_rank3(1, 1, 1)).empty());
  const Quiver k4 = catalog::get("K4").quiver;
  const auto sep = separating_edges(k4);
  CHECK(std::find(sep.begin(), sep.end(), VertexPair{1, 2}) != sep.end());
  CHECK(std::find(sep.begin(), sep.end(), VertexPair{2, 4}) == sep.end());
}

TEST_CASE("permutations") {
  const Permutation p(std::vector<Vertex>{2, 3, 1});
  CHECK(p.inverse().after(p).is_identity());
  CHECK(p.after(p.inverse()).is_identity());
  CHECK_THROWS_AS(Permutation(std::vector<Vertex>{1, 1, 2}), DomainError);
  const Quiver q = catalog::make_rank3(1, 2, 3);
  const Quiver r = q.permuted(p);
  CHECK(r.b(p(1), p(2)) == q.b(1, 2));
  CHECK(r.permuted(p.inverse()) == q);
}
