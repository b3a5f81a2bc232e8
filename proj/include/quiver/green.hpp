#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "quiver/quiver.hpp"

namespace quiver {

enum class VertexColor { Green, Red };

// Framed quiver over mutable vertices 1..n and frozen copies 1'..n'.
// Frozen-frozen entries are identically zero and are not stored: the state is
// the 2n x n extended exchange matrix whose row n + j holds b(j', i).
class FramedQuiver {
 public:
  FramedQuiver() = default;
  static FramedQuiver frame(const Quiver& q);

  int size() const noexcept { return n_; }

  // Mutable block entry b(i, j).
  Entry b(Vertex i, Vertex j) const { return at(i - 1, j - 1); }
  // c-block entry b(i, j'): +1 for the initial arrow i -> i'.
  Entry c(Vertex i, Vertex j) const { return -at(n_ + j - 1, i - 1); }

  Quiver mutable_part() const;
  // Full 2n x 2n skew-symmetric matrix over 1..n, 1'..n' (frozen as n+1..2n).
  std::vector<std::vector<Entry>> ext() const;
  std::span<const Entry> state() const noexcept { return data_; }

  // Throws InvariantViolation if vertex i has frozen arrows of both directions.
  VertexColor status(Vertex i) const;
  bool is_green(Vertex i) const { return status(i) == VertexColor::Green; }
  bool all_red() const;
  // True if some arrow j -> k carries multiplicity >= 2.
  bool is_multi_head(Vertex k) const;

  FramedQuiver mutated(Vertex k, Entry cap = kDefaultMultiplicityCap) const;

  friend bool operator==(const FramedQuiver&, const FramedQuiver&) = default;

 private:
  Entry at(int r, int c) const noexcept {
    return data_[static_cast<std::size_t>(r * n_ + c)];
  }

  int n_ = 0;
  std::vector<Entry> data_;
};

inline FramedQuiver frame(const Quiver& q) { return FramedQuiver::frame(q); }
inline VertexColor vertex_status(const FramedQuiver& fq, Vertex i) { return fq.status(i); }

struct MgsCertificate {
  std::vector<Vertex> sequence;
  // The induced permutation: mutating along `sequence` and then relabelling
  // by `permutation` gives back the starting quiver.
  Permutation permutation;

  friend bool operator==(const MgsCertificate&, const MgsCertificate&) = default;
};

struct GreenRun {
  FramedQuiver final_state;       // state before the first illegal step, if any
  std::optional<std::size_t> violation;  // 1-based index into the sequence
  bool ok() const noexcept { return !violation.has_value(); }
};

GreenRun apply_green_sequence(const Quiver& q, std::span<const Vertex> seq);

struct MgsCheck {
  std::optional<MgsCertificate> certificate;
  std::string reason;  // empty on success
};

MgsCheck check_mgs(const Quiver& q, std::span<const Vertex> seq);
std::optional<MgsCertificate> verify_mgs(const Quiver& q, std::span<const Vertex> seq);

struct SearchOptions {
  int max_len = 0;  // <= 0 selects 2n + 4
  std::size_t max_states = 1'000'000;
  // Never mutate at the head of a multiple arrow (an MGS never does).
  bool prune_multi_heads = true;
};

struct SearchResult {
  enum class Outcome { Found, Exhausted, BudgetHit };
  Outcome outcome = Outcome::Exhausted;
  std::optional<MgsCertificate> certificate;
  std::size_t states = 0;
  int depth = 0;  // deepest layer generated
};

// Breadth-first over framed states; Found carries a shortest MGS with the
// lexicographically least sequence among those.
SearchResult search_mgs(const Quiver& q, const SearchOptions& options = {});

// Repeatedly mutates the least-index green vertex that is a source among the
// green vertices. Throws DomainError for a cyclic quiver.
MgsCertificate acyclic_mgs(const Quiver& q);

std::pair<Quiver, MgsCertificate> rotate_mgs(const Quiver& q, const MgsCertificate& cert);
std::pair<Quiver, MgsCertificate> reverse_rotate_mgs(const Quiver& q,
                                                     const MgsCertificate& cert);

// Certificates are given in the labels of induced_subquiver(q, d.left) and
// induced_subquiver(q, d.right).
MgsCertificate direct_sum_mgs(const Quiver& q, const DirectSumDecomposition& d,
                              const MgsCertificate& left, const MgsCertificate& right);

// certC is given in the labels of C = q with cycle vertices v_1..v_{k-1} removed.
MgsCertificate kcycle_mgs(const Quiver& q, const EndingCycle& cycle,
                          const MgsCertificate& cert_c);

std::optional<MgsCertificate> rank3_mgs(const Rank3Params& p);

std::string format_sequence(std::span<const Vertex> seq);

}  // namespace quiver
