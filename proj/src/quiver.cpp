#include "quiver/quiver.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "quiver/detail/mutation.hpp"
#include "quiver/simd/kernels.hpp"

namespace quiver {

Permutation::Permutation(std::vector<Vertex> images) : images_(std::move(images)) {
  const int n = size();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (Vertex v : images_) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)]) {
      throw DomainError("not a permutation of 1.." + std::to_string(n));
    }
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<Vertex> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<Vertex> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    inv[static_cast<std::size_t>(images_[i] - 1)] = static_cast<Vertex>(i + 1);
  }
  return Permutation(std::move(inv));
}

Permutation Permutation::after(const Permutation& other) const {
  if (other.size() != size()) throw DomainError("permutation size mismatch");
  std::vector<Vertex> out(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    out[i] = (*this)(other.images_[i]);
  }
  return Permutation(std::move(out));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != static_cast<Vertex>(i + 1)) return false;
  }
  return true;
}

Quiver::Quiver(int n)
    : n_(n), data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0) {
  if (n < 1) throw DomainError("a quiver needs at least one vertex");
}

Quiver Quiver::from_arrows(int n, std::span<const Arrow> arrows) {
  Quiver q(n);
  for (const Arrow& a : arrows) {
    if (a.tail < 1 || a.tail > n || a.head < 1 || a.head > n) {
      throw DomainError("arrow " + std::to_string(a.tail) + "->" +
                        std::to_string(a.head) + " has a vertex outside 1.." +
                        std::to_string(n));
    }
    if (a.tail == a.head) {
      throw DomainError("loop at vertex " + std::to_string(a.tail));
    }
    if (a.mult < 1) {
      throw DomainError("arrow " + std::to_string(a.tail) + "->" +
                        std::to_string(a.head) + " has multiplicity < 1");
    }
    auto& fwd = q.data_[static_cast<std::size_t>((a.tail - 1) * n + (a.head - 1))];
    if (fwd != 0) {
      throw DomainError("duplicate entry for pair {" + std::to_string(a.tail) +
                        "," + std::to_string(a.head) + "}");
    }
    fwd = a.mult;
    q.data_[static_cast<std::size_t>((a.head - 1) * n + (a.tail - 1))] = -a.mult;
  }
  return q;
}

Quiver Quiver::from_matrix(const std::vector<std::vector<std::int64_t>>& b) {
  const int n = static_cast<int>(b.size());
  if (n < 1) throw DomainError("empty exchange matrix");
  std::vector<Entry> data;
  data.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(b[static_cast<std::size_t>(i)].size()) != n) {
      throw DomainError("exchange matrix row " + std::to_string(i + 1) +
                        " has the wrong length");
    }
    for (std::int64_t x : b[static_cast<std::size_t>(i)]) {
      if (x > kDefaultMultiplicityCap || x < -std::int64_t{kDefaultMultiplicityCap}) {
        throw MultiplicityOverflow("exchange matrix entry out of range");
      }
      data.push_back(static_cast<Entry>(x));
    }
  }
  return from_data(n, std::move(data));
}

Quiver Quiver::from_data(int n, std::vector<Entry> data) {
  if (n < 1) throw DomainError("a quiver needs at least one vertex");
  if (data.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw DomainError("exchange matrix has the wrong number of entries");
  }
  for (int i = 0; i < n; ++i) {
    if (data[static_cast<std::size_t>(i * n + i)] != 0) {
      throw DomainError("nonzero diagonal entry at " + std::to_string(i + 1));
    }
    for (int j = i + 1; j < n; ++j) {
      const Entry x = data[static_cast<std::size_t>(i * n + j)];
      const Entry y = data[static_cast<std::size_t>(j * n + i)];
      if (x == std::numeric_limits<Entry>::min() || x != -y) {
        throw DomainError("exchange matrix is not skew-symmetric at (" +
                          std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      }
    }
  }
  return Quiver(n, std::move(data));
}

std::vector<Arrow> Quiver::arrows() const {
  std::vector<Arrow> out;
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (at0(i, j) > 0) out.push_back({i + 1, j + 1, at0(i, j)});
    }
  }
  return out;
}

std::size_t Quiver::arrow_pairs() const {
  return static_cast<std::size_t>(
      std::count_if(data_.begin(), data_.end(), [](Entry x) { return x > 0; }));
}

bool Quiver::has_arrows() const noexcept {
  return std::any_of(data_.begin(), data_.end(), [](Entry x) { return x != 0; });
}

Entry Quiver::max_multiplicity() const noexcept {
  Entry m = 0;
  for (Entry x : data_) m = std::max(m, x);
  return m;
}

Quiver Quiver::permuted(const Permutation& sigma) const {
  if (sigma.size() != n_) throw DomainError("permutation size mismatch");
  std::vector<Entry> out(data_.size());
  for (int i = 0; i < n_; ++i) {
    const int si = sigma(i + 1) - 1;
    for (int j = 0; j < n_; ++j) {
      out[static_cast<std::size_t>(si * n_ + sigma(j + 1) - 1)] = at0(i, j);
    }
  }
  return Quiver(n_, std::move(out));
}

std::string Quiver::to_string() const {
  std::ostringstream os;
  os << "n=" << n_ << " {";
  bool first = true;
  for (const Arrow& a : arrows()) {
    os << (first ? "" : ", ") << a.tail << "->" << a.head;
    if (a.mult != 1) os << " x" << a.mult;
    first = false;
  }
  os << "}";
  return os.str();
}

namespace detail {

void mutate_extended(std::span<Entry> data, int rows, int cols, int k, Entry cap) {
  const auto ucols = static_cast<std::size_t>(cols);
  // Positive and negative parts of row k. Column k is zero in both, so the
  // axpy below leaves column k alone.
  std::vector<Entry> pos(ucols), neg(ucols);
  const Entry* rk = data.data() + static_cast<std::size_t>(k) * ucols;
  for (std::size_t j = 0; j < ucols; ++j) {
    pos[j] = std::max<Entry>(rk[j], 0);
    neg[j] = std::max<Entry>(-rk[j], 0);
  }
  const auto& kernels = simd::active();
  for (int i = 0; i < rows; ++i) {
    if (i == k) continue;
    Entry* row = data.data() + static_cast<std::size_t>(i) * ucols;
    const Entry bik = row[k];
    if (bik == 0) continue;
    const Entry* v = bik > 0 ? pos.data() : neg.data();
    if (!kernels.axpy_checked(row, v, bik, ucols, cap)) {
      throw MultiplicityOverflow("arrow multiplicity exceeds cap " +
                                 std::to_string(cap) + " during mutation at " +
                                 std::to_string(k + 1));
    }
  }
  for (int i = 0; i < rows; ++i) {
    Entry& x = data[static_cast<std::size_t>(i) * ucols + static_cast<std::size_t>(k)];
    x = -x;
  }
  Entry* row_k = data.data() + static_cast<std::size_t>(k) * ucols;
  for (std::size_t j = 0; j < ucols; ++j) {
    if (static_cast<int>(j) != k) row_k[j] = -row_k[j];
  }
}

}  // namespace detail

Quiver mutate(const Quiver& q, Vertex k, Entry cap) {
  if (k < 1 || k > q.size()) {
    throw DomainError("mutation vertex " + std::to_string(k) + " outside 1.." +
                      std::to_string(q.size()));
  }
  if (cap < 1) throw DomainError("multiplicity cap must be positive");
  std::vector<Entry> data = q.data_;
  detail::mutate_extended(data, q.n_, q.n_, k - 1, cap);
  return Quiver(q.n_, std::move(data));
}

Quiver mutate_sequence(const Quiver& q, std::span<const Vertex> seq, Entry cap) {
  Quiver out = q;
  for (Vertex k : seq) out = mutate(out, k, cap);
  return out;
}

InducedSubquiver induced_subquiver(const Quiver& q, std::span<const Vertex> vs) {
  if (vs.empty()) throw DomainError("induced subquiver needs a nonempty vertex set");
  std::vector<bool> seen(static_cast<std::size_t>(q.size()), false);
  for (Vertex v : vs) {
    if (v < 1 || v > q.size()) {
      throw DomainError("vertex " + std::to_string(v) + " outside 1.." +
                        std::to_string(q.size()));
    }
    if (seen[static_cast<std::size_t>(v - 1)]) {
      throw DomainError("vertex " + std::to_string(v) + " listed twice");
    }
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
  const int m = static_cast<int>(vs.size());
  std::vector<Entry> data(static_cast<std::size_t>(m * m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      data[static_cast<std::size_t>(i * m + j)] = q.b(vs[static_cast<std::size_t>(i)],
                                                       vs[static_cast<std::size_t>(j)]);
    }
  }
  return {Quiver::from_data(m, std::move(data)), std::vector<Vertex>(vs.begin(), vs.end())};
}

InducedSubquiver remove_vertices(const Quiver& q, std::span<const Vertex> removed) {
  std::vector<bool> drop(static_cast<std::size_t>(q.size()), false);
  for (Vertex v : removed) {
    if (v < 1 || v > q.size()) {
      throw DomainError("vertex " + std::to_string(v) + " outside 1.." +
                        std::to_string(q.size()));
    }
    drop[static_cast<std::size_t>(v - 1)] = true;
  }
  std::vector<Vertex> keep;
  for (Vertex v = 1; v <= q.size(); ++v) {
    if (!drop[static_cast<std::size_t>(v - 1)]) keep.push_back(v);
  }
  return induced_subquiver(q, keep);
}

Quiver opposite(const Quiver& q) {
  std::vector<Entry> data = q.data_;
  for (Entry& x : data) x = -x;
  return Quiver(q.n_, std::move(data));
}

namespace {

// Kahn's algorithm; returns the number of vertices that can be peeled as sources.
int peel_sources(const Quiver& q) {
  const int n = q.size();
  std::vector<int> indeg(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (q.at0(i, j) > 0) ++indeg[static_cast<std::size_t>(j)];
  std::vector<int> stack;
  for (int i = 0; i < n; ++i)
    if (indeg[static_cast<std::size_t>(i)] == 0) stack.push_back(i);
  int peeled = 0;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    ++peeled;
    for (int j = 0; j < n; ++j) {
      if (q.at0(v, j) > 0 && --indeg[static_cast<std::size_t>(j)] == 0) stack.push_back(j);
    }
  }
  return peeled;
}

}  // namespace

bool is_acyclic(const Quiver& q) { return peel_sources(q) == q.size(); }

std::vector<Vertex> sources(const Quiver& q) {
  std::vector<Vertex> out;
  for (int i = 0; i < q.size(); ++i) {
    bool src = true;
    for (int j = 0; j < q.size() && src; ++j) src = q.at0(i, j) >= 0;
    if (src) out.push_back(i + 1);
  }
  return out;
}

std::vector<Vertex> sinks(const Quiver& q) {
  std::vector<Vertex> out;
  for (int i = 0; i < q.size(); ++i) {
    bool snk = true;
    for (int j = 0; j < q.size() && snk; ++j) snk = q.at0(i, j) <= 0;
    if (snk) out.push_back(i + 1);
  }
  return out;
}

namespace {

struct CycleSearch {
  const Quiver& q;
  std::vector<int> path;
  std::vector<bool> on_path;
  std::vector<InducedCycle> out;

  bool adj(int i, int j) const { return q.at0(i, j) != 0; }

  void record() {
    InducedCycle c;
    const std::size_t k = path.size();
    bool forward = true, backward = true;
    for (std::size_t t = 0; t < k; ++t) {
      const int u = path[t], v = path[(t + 1) % k];
      c.vertices.push_back(u + 1);
      forward = forward && q.at0(u, v) > 0;
      backward = backward && q.at0(u, v) < 0;
    }
    c.oriented = forward || backward;
    out.push_back(std::move(c));
  }

  // path[0] is the least vertex of the cycle; every path vertex other than
  // the last is adjacent only to its path neighbours.
  void extend() {
    const int start = path.front();
    const int last = path.back();
    const int n = q.size();
    for (int w = start + 1; w < n; ++w) {
      if (on_path[static_cast<std::size_t>(w)] || !adj(last, w)) continue;
      bool chord = false;
      for (std::size_t t = 1; t + 1 < path.size() && !chord; ++t) {
        chord = adj(path[t], w);
      }
      if (chord) continue;
      const bool closes = adj(start, w);
      if (closes) {
        // Only a closing edge to start is allowed; reject length-2 paths and
        // fix the direction by requiring path[1] < w.
        if (path.size() >= 2 && path[1] < w) {
          path.push_back(w);
          record();
          path.pop_back();
        }
        continue;
      }
      path.push_back(w);
      on_path[static_cast<std::size_t>(w)] = true;
      extend();
      on_path[static_cast<std::size_t>(w)] = false;
      path.pop_back();
    }
  }
};

}  // namespace

std::vector<InducedCycle> induced_cycles(const Quiver& q) {
  CycleSearch s{q, {}, std::vector<bool>(static_cast<std::size_t>(q.size()), false), {}};
  for (int v = 0; v < q.size(); ++v) {
    s.path = {v};
    s.on_path[static_cast<std::size_t>(v)] = true;
    for (int w = v + 1; w < q.size(); ++w) {
      if (!s.adj(v, w)) continue;
      s.path.push_back(w);
      s.on_path[static_cast<std::size_t>(w)] = true;
      s.extend();
      s.on_path[static_cast<std::size_t>(w)] = false;
      s.path.pop_back();
    }
    s.on_path[static_cast<std::size_t>(v)] = false;
  }
  std::sort(s.out.begin(), s.out.end(), [](const InducedCycle& x, const InducedCycle& y) {
    if (x.vertices.size() != y.vertices.size()) return x.vertices.size() < y.vertices.size();
    return x.vertices < y.vertices;
  });
  return std::move(s.out);
}

int b_matrix_rank(const Quiver& q) {
  using boost::multiprecision::cpp_int;
  const int n = q.size();
  std::vector<std::vector<cpp_int>> m(static_cast<std::size_t>(n),
                                      std::vector<cpp_int>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = q.at0(i, j);

  // Bareiss fraction-free elimination with row pivoting over columns.
  cpp_int prev = 1;
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int pivot = -1;
    for (int r = rank; r < n; ++r) {
      if (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[static_cast<std::size_t>(pivot)], m[static_cast<std::size_t>(rank)]);
    const auto& prow = m[static_cast<std::size_t>(rank)];
    const cpp_int p = prow[static_cast<std::size_t>(col)];
    for (int r = rank + 1; r < n; ++r) {
      auto& row = m[static_cast<std::size_t>(r)];
      const cpp_int f = row[static_cast<std::size_t>(col)];
      for (int c = col; c < n; ++c) {
        auto& x = row[static_cast<std::size_t>(c)];
        x = (p * x - f * prow[static_cast<std::size_t>(c)]) / prev;
      }
    }
    prev = p;
    ++rank;
  }
  return rank;
}

bool is_direct_sum(const Quiver& q, const DirectSumDecomposition& d) {
  const int n = q.size();
  if (d.left.empty() || d.right.empty()) return false;
  if (static_cast<int>(d.left.size() + d.right.size()) != n) return false;
  std::vector<int> side(static_cast<std::size_t>(n), -1);
  for (Vertex v : d.left) {
    if (v < 1 || v > n || side[static_cast<std::size_t>(v - 1)] != -1) return false;
    side[static_cast<std::size_t>(v - 1)] = 0;
  }
  for (Vertex v : d.right) {
    if (v < 1 || v > n || side[static_cast<std::size_t>(v - 1)] != -1) return false;
    side[static_cast<std::size_t>(v - 1)] = 1;
  }
  std::vector<VertexPair> cross;
  for (Vertex i = 1; i <= n; ++i) {
    for (Vertex j = 1; j <= n; ++j) {
      if (side[static_cast<std::size_t>(i - 1)] == side[static_cast<std::size_t>(j - 1)]) continue;
      const Entry x = q.b(i, j);
      if (x <= 0) continue;
      if (side[static_cast<std::size_t>(i - 1)] != 0) return false;  // right -> left
      if (x >= 2) return false;                                       // t-colored condition
      cross.emplace_back(i, j);
    }
  }
  if (cross != d.cross_arrows) return false;
  std::vector<Vertex> tails;
  for (const auto& [t, h] : cross) tails.push_back(t);
  std::sort(tails.begin(), tails.end());
  tails.erase(std::unique(tails.begin(), tails.end()), tails.end());
  return static_cast<int>(tails.size()) == d.colors;
}

std::optional<DirectSumDecomposition> find_direct_sum(const Quiver& q) {
  const int n = q.size();
  if (n > 16) throw CapabilityError("direct-sum search supports at most 16 vertices");
  if (n < 2) return std::nullopt;
  // Most balanced sizes first; the smaller left size wins a tie.
  std::vector<int> sizes(static_cast<std::size_t>(n - 1));
  std::iota(sizes.begin(), sizes.end(), 1);
  std::stable_sort(sizes.begin(), sizes.end(),
                   [n](int a, int b) { return std::abs(2 * a - n) < std::abs(2 * b - n); });
  for (int size : sizes) {
    // Lexicographic combinations of size `size` from 0..n-1.
    std::vector<int> pick(static_cast<std::size_t>(size));
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      std::vector<bool> in_left(static_cast<std::size_t>(n), false);
      for (int v : pick) in_left[static_cast<std::size_t>(v)] = true;
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) {
        if (!in_left[static_cast<std::size_t>(i)]) continue;
        for (int j = 0; j < n && ok; ++j) {
          if (in_left[static_cast<std::size_t>(j)]) continue;
          const Entry x = q.at0(i, j);
          ok = x == 0 || x == 1;
        }
      }
      if (ok) {
        DirectSumDecomposition d;
        std::vector<Vertex> tails;
        for (int i = 0; i < n; ++i) {
          (in_left[static_cast<std::size_t>(i)] ? d.left : d.right).push_back(i + 1);
        }
        for (Vertex i : d.left) {
          for (Vertex j : d.right) {
            if (q.b(i, j) > 0) {
              d.cross_arrows.emplace_back(i, j);
              if (tails.empty() || tails.back() != i) tails.push_back(i);
            }
          }
        }
        std::sort(d.cross_arrows.begin(), d.cross_arrows.end());
        d.colors = static_cast<int>(tails.size());
        return d;
      }
      int t = size - 1;
      while (t >= 0 && pick[static_cast<std::size_t>(t)] == n - size + t) --t;
      if (t < 0) break;
      ++pick[static_cast<std::size_t>(t)];
      for (int u = t + 1; u < size; ++u)
        pick[static_cast<std::size_t>(u)] = pick[static_cast<std::size_t>(u - 1)] + 1;
    }
  }
  return std::nullopt;
}

std::optional<EndingCycle> find_ending_kcycle(const Quiver& q) {
  const int n = q.size();
  // A "through" vertex carries exactly one single incoming and one single
  // outgoing arrow and nothing else.
  auto through_next = [&](int v) -> int {
    int in = 0, out = 0, next = -1;
    for (int j = 0; j < n; ++j) {
      const Entry x = q.at0(v, j);
      if (x == 0) continue;
      if (x == 1) {
        ++out;
        next = j;
      } else if (x == -1) {
        ++in;
      } else {
        return -1;
      }
    }
    return (in == 1 && out == 1) ? next : -1;
  };

  std::optional<EndingCycle> best;
  for (int attach = 0; attach < n; ++attach) {
    for (int first = 0; first < n; ++first) {
      if (q.at0(attach, first) != 1) continue;
      std::vector<Vertex> cyc;
      int cur = first;
      bool ok = false;
      while (static_cast<int>(cyc.size()) < n) {
        if (cur == attach) {
          ok = true;
          break;
        }
        const int next = through_next(cur);
        if (next < 0) break;
        cyc.push_back(cur + 1);
        cur = next;
      }
      if (!ok || cyc.size() < 2) continue;
      cyc.push_back(attach + 1);
      EndingCycle cand{cyc, attach + 1};
      if (!best || cand.cycle.size() < best->cycle.size() ||
          (cand.cycle.size() == best->cycle.size() && cand.cycle < best->cycle)) {
        best = std::move(cand);
      }
    }
  }
  return best;
}

std::vector<VertexPair> separating_edges(const Quiver& q) {
  const int n = q.size();
  const auto un = static_cast<std::size_t>(n);
  // reach[i][j]: a directed path of length >= 1 from i to j.
  std::vector<std::vector<bool>> reach(un, std::vector<bool>(un, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = q.at0(i, j) > 0;
  for (std::size_t k = 0; k < un; ++k)
    for (std::size_t i = 0; i < un; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < un; ++j)
          if (reach[k][j]) reach[i][j] = true;

  std::vector<bool> on_cycle(un);
  for (std::size_t v = 0; v < un; ++v) on_cycle[v] = reach[v][v];
  std::vector<bool> from_cycle(un, false), to_cycle(un, false);
  for (std::size_t v = 0; v < un; ++v) {
    for (std::size_t c = 0; c < un; ++c) {
      if (!on_cycle[c]) continue;
      if (c == v || reach[c][v]) from_cycle[v] = true;
      if (c == v || reach[v][c]) to_cycle[v] = true;
    }
  }
  std::vector<VertexPair> out;
  for (std::size_t i = 0; i < un; ++i)
    for (std::size_t j = 0; j < un; ++j)
      if (q.at0(static_cast<int>(i), static_cast<int>(j)) > 0 &&
          !(from_cycle[i] && to_cycle[j]))
        out.emplace_back(static_cast<Vertex>(i + 1), static_cast<Vertex>(j + 1));
  return out;
}

}  // namespace quiver
