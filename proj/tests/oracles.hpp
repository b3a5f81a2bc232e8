#pragma once

// Independent reference implementations used only by tests. They follow the
// definitions directly and trade speed for obviousness.

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "quiver/quiver.hpp"

namespace oracle {

using quiver::Arrow;
using quiver::Quiver;
using quiver::Vertex;

using Multigraph = std::vector<std::vector<long long>>;  // m[i][j] = number of arrows i -> j

inline Multigraph arrows_of(const Quiver& q) {
  const int n = q.size();
  Multigraph m(n, std::vector<long long>(n, 0));
  for (const Arrow& a : q.arrows()) m[a.tail - 1][a.head - 1] = a.mult;
  return m;
}

// Mutation as the three-step rewrite on arrows: add i -> j for every path
// i -> k -> j, reverse arrows at k, cancel opposite pairs.
inline Quiver mutate(const Quiver& q, Vertex k) {
  const int n = q.size();
  const int kk = k - 1;
  Multigraph m = arrows_of(q);
  Multigraph next = m;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != kk && j != kk && i != j) next[i][j] += m[i][kk] * m[kk][j];
    }
  }
  for (int i = 0; i < n; ++i) {
    next[i][kk] = m[kk][i];
    next[kk][i] = m[i][kk];
  }
  std::vector<std::vector<std::int64_t>> b(n, std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) b[i][j] = next[i][j] - next[j][i];
  }
  return Quiver::from_matrix(b);
}

inline int rank(const Quiver& q) {
  using R = boost::rational<long long>;
  const int n = q.size();
  std::vector<std::vector<R>> a(n, std::vector<R>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = R(q.b(i + 1, j + 1));
  }
  int r = 0;
  for (int col = 0; col < n && r < n; ++col) {
    int piv = -1;
    for (int i = r; i < n; ++i) {
      if (a[i][col] != R(0)) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(a[piv], a[r]);
    for (int i = 0; i < n; ++i) {
      if (i == r || a[i][col] == R(0)) continue;
      const R f = a[i][col] / a[r][col];
      for (int j = col; j < n; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

inline bool has_directed_cycle(const Quiver& q) {
  const int n = q.size();
  // i reaches i through a nonempty path?
  for (int s = 1; s <= n; ++s) {
    std::vector<bool> seen(n + 1, false);
    std::vector<int> stack{s};
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w = 1; w <= n; ++w) {
        if (q.b(v, w) <= 0) continue;
        if (w == s) return true;
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
  }
  return false;
}

struct CycleSet {
  std::vector<Vertex> vertices;  // sorted
  bool oriented = false;
  friend auto operator<=>(const CycleSet&, const CycleSet&) = default;
};

// Induced cycles as vertex subsets whose induced simple graph is a single cycle.
inline std::vector<CycleSet> induced_cycles(const Quiver& q) {
  const int n = q.size();
  std::vector<CycleSet> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<Vertex> vs;
    for (int v = 0; v < n; ++v) {
      if (mask & (1 << v)) vs.push_back(v + 1);
    }
    if (vs.size() < 3) continue;
    bool ok = true;
    for (Vertex v : vs) {
      int deg = 0;
      for (Vertex w : vs) deg += q.b(v, w) != 0;
      ok &= deg == 2;
    }
    if (!ok) continue;
    // Connected: walk from vs[0].
    std::vector<Vertex> walk{vs[0]};
    Vertex prev = 0;
    Vertex cur = vs[0];
    while (true) {
      Vertex next = 0;
      for (Vertex w : vs) {
        if (w != prev && w != cur && q.b(cur, w) != 0) {
          next = w;
          break;
        }
      }
      if (next == vs[0] || next == 0) break;
      walk.push_back(next);
      prev = cur;
      cur = next;
    }
    if (walk.size() != vs.size()) continue;
    // Oriented if every step goes the same direction around the walk.
    int forward = 0;
    for (std::size_t i = 0; i < walk.size(); ++i) {
      forward += q.b(walk[i], walk[(i + 1) % walk.size()]) > 0;
    }
    out.push_back({vs, forward == 0 || forward == static_cast<int>(walk.size())});
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::vector<Vertex>> all_permutations(int n) {
  std::vector<Vertex> p(n);
  for (int i = 0; i < n; ++i) p[i] = i + 1;
  std::vector<std::vector<Vertex>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline bool isomorphic(const Quiver& a, const Quiver& b) {
  if (a.size() != b.size()) return false;
  for (const auto& p : all_permutations(a.size())) {
    bool ok = true;
    for (int i = 1; i <= a.size() && ok; ++i) {
      for (int j = 1; j <= a.size() && ok; ++j) ok = a.b(i, j) == b.b(p[i - 1], p[j - 1]);
    }
    if (ok) return true;
  }
  return false;
}

// Admissible sign assignment exists, by trying all 2^edges assignments.
inline bool admissible(const Quiver& q) {
  const int n = q.size();
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (q.b(i, j) != 0) edges.emplace_back(i, j);
    }
  }
  const auto cycles = oracle::induced_cycles(q);
  for (long long mask = 0; mask < (1LL << edges.size()); ++mask) {
    auto positive = [&](int i, int j) {
      const auto key = std::make_pair(std::min(i, j), std::max(i, j));
      const auto idx = std::find(edges.begin(), edges.end(), key) - edges.begin();
      return ((mask >> idx) & 1) != 0;
    };
    bool ok = true;
    for (const auto& c : cycles) {
      int pos = 0;
      for (std::size_t a = 0; a < c.vertices.size(); ++a) {
        for (std::size_t b = a + 1; b < c.vertices.size(); ++b) {
          if (q.b(c.vertices[a], c.vertices[b]) != 0) pos += positive(c.vertices[a], c.vertices[b]);
        }
      }
      if ((pos % 2 == 1) != c.oriented) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

// Extended matrix mutation written out entry by entry, in exact integers
// (entries grow exponentially along long sequences).
using Big = boost::multiprecision::cpp_int;
using Ext = std::vector<std::vector<Big>>;

inline Ext framed(const Quiver& q) {
  const int n = q.size();
  Ext e(2 * n, std::vector<Big>(2 * n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) e[i][j] = q.b(i + 1, j + 1);
    e[i][n + i] = 1;
    e[n + i][i] = -1;
  }
  return e;
}

inline Ext mutate_ext(const Ext& b, int k) {
  const int m = static_cast<int>(b.size());
  Ext c = b;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == k || j == k) {
        c[i][j] = -b[i][j];
      } else {
        const Big zero = 0;
        c[i][j] = b[i][j] + std::max(zero, b[i][k]) * std::max(zero, b[k][j]) -
                  std::max(zero, Big(-b[i][k])) * std::max(zero, Big(-b[k][j]));
      }
    }
  }
  return c;
}

inline bool is_green(const Ext& e, int n, int k) {
  for (int j = 0; j < n; ++j) {
    if (e[n + j][k] > 0) return false;
  }
  return true;
}

// Every maximal green sequence of length <= max_len, by plain recursion.
inline void all_mgs(const Ext& e, int n, int max_len, std::vector<Vertex>& path,
                    std::vector<std::vector<Vertex>>& out) {
  bool any_green = false;
  for (int k = 0; k < n; ++k) any_green |= is_green(e, n, k);
  if (!any_green) {
    out.push_back(path);
    return;
  }
  if (static_cast<int>(path.size()) == max_len) return;
  for (int k = 0; k < n; ++k) {
    if (!is_green(e, n, k)) continue;
    path.push_back(k + 1);
    all_mgs(mutate_ext(e, k), n, max_len, path, out);
    path.pop_back();
  }
}

inline std::vector<std::vector<Vertex>> all_mgs(const Quiver& q, int max_len) {
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> path;
  all_mgs(framed(q), q.size(), max_len, path, out);
  return out;
}

// Mutation class up to isomorphism by brute-force isomorphism tests; nullopt
// if it exceeds max_size quivers.
inline std::optional<std::vector<Quiver>> mutation_class(const Quiver& q, std::size_t max_size) {
  std::vector<Quiver> found{q};
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (int k = 1; k <= q.size(); ++k) {
      const Quiver m = oracle::mutate(found[i], k);
      const bool known = std::any_of(found.begin(), found.end(),
                                     [&](const Quiver& x) { return isomorphic(x, m); });
      if (!known) {
        found.push_back(m);
        if (found.size() > max_size) return std::nullopt;
      }
    }
  }
  return found;
}

inline Quiver random_quiver(std::mt19937_64& rng, int n, int max_entry, double density = 0.6) {
  std::bernoulli_distribution edge(density);
  std::uniform_int_distribution<int> mult(1, max_entry);
  std::bernoulli_distribution flip(0.5);
  std::vector<Arrow> arrows;
  for (Vertex i = 1; i <= n; ++i) {
    for (Vertex j = i + 1; j <= n; ++j) {
      if (!edge(rng)) continue;
      const int m = mult(rng);
      arrows.push_back(flip(rng) ? Arrow{i, j, m} : Arrow{j, i, m});
    }
  }
  return Quiver::from_arrows(n, arrows);
}

// Acyclic: orient every arrow from the smaller to the larger index of a
// random relabelling.
inline Quiver random_acyclic(std::mt19937_64& rng, int n, int max_entry, double density = 0.6) {
  std::vector<Vertex> order(n);
  for (int i = 0; i < n; ++i) order[i] = i + 1;
  std::shuffle(order.begin(), order.end(), rng);
  std::bernoulli_distribution edge(density);
  std::uniform_int_distribution<int> mult(1, max_entry);
  std::vector<Arrow> arrows;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (edge(rng)) arrows.push_back({order[i], order[j], mult(rng)});
    }
  }
  return Quiver::from_arrows(n, arrows);
}

inline quiver::Permutation random_permutation(std::mt19937_64& rng, int n) {
  std::vector<Vertex> p(n);
  for (int i = 0; i < n; ++i) p[i] = i + 1;
  std::shuffle(p.begin(), p.end(), rng);
  return quiver::Permutation(p);
}

}  // namespace oracle
