#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "quiver/quiver.hpp"

namespace quiver {

inline constexpr int kMaxCanonicalVertices = 12;

// Serialization of the lexicographically least relabelled exchange matrix.
// Two quivers get equal keys iff they are isomorphic (relabelling only).
class CanonicalKey {
 public:
  CanonicalKey() = default;
  explicit CanonicalKey(std::string bytes) : bytes_(std::move(bytes)) {}

  const std::string& bytes() const noexcept { return bytes_; }
  std::string hex() const;

  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;

 private:
  std::string bytes_;
};

struct CanonicalForm {
  CanonicalKey key;
  // order[p] is the original vertex placed at canonical position p + 1.
  std::vector<Vertex> order;
  Quiver quiver;  // q relabelled so that its matrix is the minimal one
};

// Lex order used for minimisation: for p = 1..n, the row segment
// (b(v_p, v_1), ..., b(v_p, v_{p-1})); this determines the full skew matrix.
std::vector<Entry> canonical_sequence(const Quiver& q, const std::vector<Vertex>& order);

CanonicalForm canonical_form(const Quiver& q);
CanonicalKey canonical_key(const Quiver& q);

// sigma with q1.permuted(sigma) == q2, or nullopt.
std::optional<Permutation> are_isomorphic(const Quiver& q1, const Quiver& q2);

}  // namespace quiver

template <>
struct std::hash<quiver::CanonicalKey> {
  std::size_t operator()(const quiver::CanonicalKey& k) const noexcept {
    return std::hash<std::string>{}(k.bytes());
  }
};
