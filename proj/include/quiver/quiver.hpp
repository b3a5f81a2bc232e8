#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "quiver/errors.hpp"

namespace quiver {

// Mutable vertices are labelled 1..n throughout the public interface.
using Vertex = int;
using Entry = std::int32_t;

inline constexpr Entry kDefaultMultiplicityCap = std::numeric_limits<Entry>::max();

struct Arrow {
  Vertex tail = 0;
  Vertex head = 0;
  Entry mult = 1;

  friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

using VertexPair = std::pair<Vertex, Vertex>;

class Permutation {
 public:
  Permutation() = default;
  // images[i - 1] is the image of vertex i.
  explicit Permutation(std::vector<Vertex> images);

  static Permutation identity(int n);

  int size() const noexcept { return static_cast<int>(images_.size()); }
  Vertex operator()(Vertex i) const { return images_.at(i - 1); }
  const std::vector<Vertex>& images() const noexcept { return images_; }

  Permutation inverse() const;
  // (this o other)(i) = this(other(i))
  Permutation after(const Permutation& other) const;
  bool is_identity() const noexcept;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Vertex> images_;
};

// Skew-symmetric exchange matrix: b(i, j) > 0 means b(i, j) arrows i -> j.
class Quiver {
 public:
  Quiver() = default;
  explicit Quiver(int n);  // n vertices, no arrows

  static Quiver from_arrows(int n, std::span<const Arrow> arrows);
  static Quiver from_arrows(int n, std::initializer_list<Arrow> arrows) {
    return from_arrows(n, std::span<const Arrow>(arrows.begin(), arrows.size()));
  }
  static Quiver from_matrix(const std::vector<std::vector<std::int64_t>>& b);
  // Row-major n*n data. Validates skew-symmetry and the multiplicity cap.
  static Quiver from_data(int n, std::vector<Entry> data);

  int size() const noexcept { return n_; }
  Entry b(Vertex i, Vertex j) const {
    return data_[static_cast<std::size_t>((i - 1) * n_ + (j - 1))];
  }
  // Zero-based access for inner loops.
  Entry at0(int i, int j) const noexcept {
    return data_[static_cast<std::size_t>(i * n_ + j)];
  }
  std::span<const Entry> data() const noexcept { return data_; }

  bool adjacent(Vertex i, Vertex j) const { return b(i, j) != 0; }
  // Arrows i -> j with positive multiplicity, sorted by (tail, head).
  std::vector<Arrow> arrows() const;
  std::size_t arrow_pairs() const;
  bool has_arrows() const noexcept;
  Entry max_multiplicity() const noexcept;

  // sigma(q): vertex i is renamed sigma(i), so result.b(sigma(i), sigma(j)) = b(i, j).
  Quiver permuted(const Permutation& sigma) const;

  // Arrow list in the form used by std::cout / test failure messages.
  std::string to_string() const;

  friend bool operator==(const Quiver&, const Quiver&) = default;

 private:
  Quiver(int n, std::vector<Entry> data) : n_(n), data_(std::move(data)) {}
  friend Quiver mutate(const Quiver& q, Vertex k, Entry cap);
  friend Quiver opposite(const Quiver& q);

  int n_ = 0;
  std::vector<Entry> data_;
};

// Oriented 3-cycle Q_{a,b,c}: a arrows 1->2, b arrows 2->3, c arrows 3->1.
struct Rank3Params {
  int a = 0;
  int b = 0;
  int c = 0;
  friend auto operator<=>(const Rank3Params&, const Rank3Params&) = default;
};

// R_{a,b,c}: 2->1, 2->3, 1->3, a arrows 4->1, c arrows 3->4, b arrows 4->2.
struct RFamilyParams {
  int a = 0;
  int b = 0;
  int c = 0;
  bool opposite = false;
  friend auto operator<=>(const RFamilyParams&, const RFamilyParams&) = default;
};

struct DirectSumDecomposition {
  std::vector<Vertex> left;
  std::vector<Vertex> right;
  std::vector<VertexPair> cross_arrows;  // (tail in left, head in right)
  int colors = 0;                        // number of distinct tails
};

struct InducedSubquiver {
  Quiver quiver;
  std::vector<Vertex> labels;  // labels[i - 1] = original name of vertex i
};

struct InducedCycle {
  std::vector<Vertex> vertices;  // in cycle order, starting at the least vertex
  bool oriented = false;
};

struct EndingCycle {
  std::vector<Vertex> cycle;  // v_1 -> v_2 -> ... -> v_k -> v_1
  Vertex attachment = 0;      // v_k, the only cycle vertex that may touch C
};

// Matrix mutation at k. Throws DomainError for k out of range and
// MultiplicityOverflow when some entry would exceed cap in absolute value.
Quiver mutate(const Quiver& q, Vertex k, Entry cap = kDefaultMultiplicityCap);
Quiver mutate_sequence(const Quiver& q, std::span<const Vertex> seq,
                       Entry cap = kDefaultMultiplicityCap);

InducedSubquiver induced_subquiver(const Quiver& q, std::span<const Vertex> vs);
// Removes the listed vertices; the remaining ones keep their relative order.
InducedSubquiver remove_vertices(const Quiver& q, std::span<const Vertex> removed);

Quiver opposite(const Quiver& q);

bool is_acyclic(const Quiver& q);
std::vector<Vertex> sources(const Quiver& q);
std::vector<Vertex> sinks(const Quiver& q);

// Chordless cycles of length >= 3 of the underlying simple graph, sorted by
// length and then lexicographically by vertex sequence.
std::vector<InducedCycle> induced_cycles(const Quiver& q);

// Exact rank over the rationals.
int b_matrix_rank(const Quiver& q);

// Exhaustive over bipartitions (n <= 16); first hit with |left| as close to
// n/2 as possible (smaller |left| on ties), then lexicographic left.
std::optional<DirectSumDecomposition> find_direct_sum(const Quiver& q);
bool is_direct_sum(const Quiver& q, const DirectSumDecomposition& d);

std::optional<EndingCycle> find_ending_kcycle(const Quiver& q);

// Arrows i -> j through which no bi-infinite path passes.
std::vector<VertexPair> separating_edges(const Quiver& q);

}  // namespace quiver
