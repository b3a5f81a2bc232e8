#include "quiver/canonical.hpp"

#include <algorithm>
#include <numeric>

namespace quiver {

std::string CanonicalKey::hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes_.size() * 2);
  for (unsigned char c : bytes_) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xF]);
  }
  return out;
}

std::vector<Entry> canonical_sequence(const Quiver& q, const std::vector<Vertex>& order) {
  std::vector<Entry> seq;
  for (std::size_t p = 0; p < order.size(); ++p) {
    for (std::size_t r = 0; r < p; ++r) seq.push_back(q.b(order[p], order[r]));
  }
  return seq;
}

namespace {

void append_varint(std::string& out, std::int64_t value) {
  // zigzag, then LEB128
  auto u = static_cast<std::uint64_t>((value << 1) ^ (value >> 63));
  do {
    auto byte = static_cast<unsigned char>(u & 0x7F);
    u >>= 7;
    if (u != 0) byte |= 0x80;
    out.push_back(static_cast<char>(byte));
  } while (u != 0);
}

// Best-first search for the least position sequence. At every depth only the
// partial orders whose prefix equals the least prefix seen so far survive,
// because the next row segment dominates everything that follows it.
class Minimizer {
 public:
  explicit Minimizer(const Quiver& q) : q_(q), n_(q.size()) { compute_twins(); }

  std::vector<int> run() {
    std::vector<std::vector<int>> level{{}};
    for (int depth = 0; depth < n_; ++depth) {
      std::vector<std::vector<int>> next;
      std::vector<Entry> best_row;
      bool have_best = false;
      for (const auto& partial : level) {
        std::vector<bool> used(static_cast<std::size_t>(n_), false);
        for (int v : partial) used[static_cast<std::size_t>(v)] = true;
        for (int v = 0; v < n_; ++v) {
          if (used[static_cast<std::size_t>(v)]) continue;
          // Twins are interchangeable by an automorphism: try one per class.
          if (skip_twin(v, used)) continue;
          std::vector<Entry> row;
          row.reserve(partial.size());
          for (int u : partial) row.push_back(q_.at0(v, u));
          if (!have_best || row < best_row) {
            best_row = std::move(row);
            have_best = true;
            next.clear();
          } else if (row != best_row) {
            continue;
          }
          auto extended = partial;
          extended.push_back(v);
          next.push_back(std::move(extended));
        }
      }
      level = std::move(next);
    }
    return level.front();
  }

 private:
  // v is skipped if an unused member of its twin class with smaller index exists.
  bool skip_twin(int v, const std::vector<bool>& used) const {
    for (int u = 0; u < v; ++u) {
      if (!used[static_cast<std::size_t>(u)] &&
          twin_rep_[static_cast<std::size_t>(u)] == twin_rep_[static_cast<std::size_t>(v)]) {
        return true;
      }
    }
    return false;
  }

  void compute_twins() {
    twin_rep_.resize(static_cast<std::size_t>(n_));
    std::iota(twin_rep_.begin(), twin_rep_.end(), 0);
    for (int v = 0; v < n_; ++v) {
      for (int u = 0; u < v; ++u) {
        if (twin_rep_[static_cast<std::size_t>(u)] != u) continue;
        if (q_.at0(u, v) != 0) continue;
        bool same = true;
        for (int x = 0; x < n_ && same; ++x) {
          if (x == u || x == v) continue;
          same = q_.at0(u, x) == q_.at0(v, x);
        }
        if (same) {
          twin_rep_[static_cast<std::size_t>(v)] = u;
          break;
        }
      }
    }
  }

  const Quiver& q_;
  int n_;
  std::vector<int> twin_rep_;
};

}  // namespace

CanonicalForm canonical_form(const Quiver& q) {
  if (q.size() > kMaxCanonicalVertices) {
    throw CapabilityError("canonical labelling supports at most " +
                          std::to_string(kMaxCanonicalVertices) + " vertices");
  }
  const std::vector<int> best = Minimizer(q).run();
  CanonicalForm form;
  form.order.reserve(best.size());
  for (int v : best) form.order.push_back(v + 1);

  std::string bytes;
  append_varint(bytes, q.size());
  for (Entry x : canonical_sequence(q, form.order)) append_varint(bytes, x);
  form.key = CanonicalKey(std::move(bytes));

  // order[p] -> p + 1
  std::vector<Vertex> images(form.order.size());
  for (std::size_t p = 0; p < form.order.size(); ++p) {
    images[static_cast<std::size_t>(form.order[p] - 1)] = static_cast<Vertex>(p + 1);
  }
  form.quiver = q.permuted(Permutation(std::move(images)));
  return form;
}

CanonicalKey canonical_key(const Quiver& q) { return canonical_form(q).key; }

std::optional<Permutation> are_isomorphic(const Quiver& q1, const Quiver& q2) {
  if (q1.size() != q2.size()) return std::nullopt;
  const CanonicalForm f1 = canonical_form(q1);
  const CanonicalForm f2 = canonical_form(q2);
  if (f1.key != f2.key) return std::nullopt;
  // f1.order[p] in q1 corresponds to f2.order[p] in q2.
  std::vector<Vertex> images(static_cast<std::size_t>(q1.size()));
  for (std::size_t p = 0; p < f1.order.size(); ++p) {
    images[static_cast<std::size_t>(f1.order[p] - 1)] = f2.order[p];
  }
  return Permutation(std::move(images));
}

}  // namespace quiver
