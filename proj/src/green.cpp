#include "quiver/green.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <sstream>
#include <unordered_set>

#include "quiver/detail/mutation.hpp"

namespace quiver {

FramedQuiver FramedQuiver::frame(const Quiver& q) {
  FramedQuiver fq;
  const int n = q.size();
  fq.n_ = n;
  fq.data_.assign(static_cast<std::size_t>(2 * n * n), 0);
  const auto src = q.data();
  std::copy(src.begin(), src.end(), fq.data_.begin());
  // b(j', i) = -1 for the initial arrow i -> i'.
  for (int j = 0; j < n; ++j) fq.data_[static_cast<std::size_t>((n + j) * n + j)] = -1;
  return fq;
}

Quiver FramedQuiver::mutable_part() const {
  return Quiver::from_data(n_, std::vector<Entry>(data_.begin(), data_.begin() + n_ * n_));
}

std::vector<std::vector<Entry>> FramedQuiver::ext() const {
  const int m = 2 * n_;
  std::vector<std::vector<Entry>> out(m, std::vector<Entry>(m, 0));
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n_; ++c) {
      out[r][c] = at(r, c);
      if (r >= n_) out[c][r] = -at(r, c);
    }
  }
  return out;
}

VertexColor FramedQuiver::status(Vertex i) const {
  if (i < 1 || i > n_) throw DomainError("vertex " + std::to_string(i) + " out of range");
  bool in = false;
  bool out = false;
  for (int j = 0; j < n_; ++j) {
    const Entry e = at(n_ + j, i - 1);  // b(j', i)
    in |= e > 0;
    out |= e < 0;
  }
  if (in && out) {
    throw InvariantViolation("sign-coherence violated at vertex " + std::to_string(i));
  }
  return in ? VertexColor::Red : VertexColor::Green;
}

bool FramedQuiver::all_red() const {
  for (Vertex i = 1; i <= n_; ++i) {
    if (status(i) == VertexColor::Green) return false;
  }
  return true;
}

bool FramedQuiver::is_multi_head(Vertex k) const {
  for (int j = 0; j < n_; ++j) {
    if (at(j, k - 1) >= 2) return true;
  }
  return false;
}

FramedQuiver FramedQuiver::mutated(Vertex k, Entry cap) const {
  if (k < 1 || k > n_) throw DomainError("vertex " + std::to_string(k) + " out of range");
  FramedQuiver out = *this;
  detail::mutate_extended(out.data_, 2 * n_, n_, k - 1, cap);
  return out;
}

GreenRun apply_green_sequence(const Quiver& q, std::span<const Vertex> seq) {
  if (seq.empty()) throw DomainError("green sequence must be nonempty");
  for (Vertex v : seq) {
    if (v < 1 || v > q.size()) {
      throw DomainError("vertex " + std::to_string(v) + " out of range 1.." +
                        std::to_string(q.size()));
    }
  }
  GreenRun run{FramedQuiver::frame(q), std::nullopt};
  for (std::size_t s = 0; s < seq.size(); ++s) {
    if (!run.final_state.is_green(seq[s])) {
      run.violation = s + 1;
      return run;
    }
    run.final_state = run.final_state.mutated(seq[s]);
  }
  return run;
}

namespace {

std::optional<Permutation> extract_permutation(const FramedQuiver& fq, std::string& reason) {
  const int n = fq.size();
  std::vector<Vertex> phi(n, 0);
  for (Vertex j = 1; j <= n; ++j) {
    for (Vertex i = 1; i <= n; ++i) {
      const Entry c = fq.c(i, j);
      if (c == 0) continue;
      if (c != -1 || phi[j - 1] != 0) {
        reason = "final c-block is not a negated permutation matrix";
        return std::nullopt;
      }
      phi[j - 1] = i;
    }
    if (phi[j - 1] == 0) {
      reason = "final c-block is not a negated permutation matrix";
      return std::nullopt;
    }
  }
  try {
    return Permutation(phi).inverse();
  } catch (const DomainError&) {
    reason = "final c-block is not a negated permutation matrix";
    return std::nullopt;
  }
}

}  // namespace

MgsCheck check_mgs(const Quiver& q, std::span<const Vertex> seq) {
  MgsCheck out;
  if (seq.empty()) {
    out.reason = "empty sequence";
    return out;
  }
  GreenRun run;
  try {
    run = apply_green_sequence(q, seq);
  } catch (const DomainError& e) {
    out.reason = e.what();
    return out;
  } catch (const MultiplicityOverflow& e) {
    out.reason = e.what();
    return out;
  }
  if (!run.ok()) {
    out.reason = "step " + std::to_string(*run.violation) + " mutates red vertex " +
                 std::to_string(seq[*run.violation - 1]);
    return out;
  }
  if (!run.final_state.all_red()) {
    out.reason = "final state has a green vertex";
    return out;
  }
  auto sigma = extract_permutation(run.final_state, out.reason);
  if (!sigma) return out;
  if (run.final_state.mutable_part().permuted(*sigma) != q) {
    throw InvariantViolation("induced permutation does not recover the starting quiver");
  }
  out.certificate = MgsCertificate{std::vector<Vertex>(seq.begin(), seq.end()), *sigma};
  return out;
}

std::optional<MgsCertificate> verify_mgs(const Quiver& q, std::span<const Vertex> seq) {
  return check_mgs(q, seq).certificate;
}

namespace {

// Flat store of framed states with exact deduplication.
class StateArena {
 public:
  explicit StateArena(std::size_t width) : width_(width), set_(64, Hash{this}, Eq{this}) {}

  std::span<const Entry> get(std::uint32_t id) const {
    return {data_.data() + id * width_, width_};
  }

  // Returns the id of an equal stored state, or stores it and returns nullopt.
  std::optional<std::uint32_t> insert(std::span<const Entry> s) {
    const auto id = static_cast<std::uint32_t>(size());
    data_.insert(data_.end(), s.begin(), s.end());
    auto [it, fresh] = set_.insert(id);
    if (!fresh) {
      data_.resize(data_.size() - width_);
      return *it;
    }
    return std::nullopt;
  }

  std::size_t size() const { return data_.size() / width_; }

 private:
  struct Hash {
    const StateArena* a;
    std::size_t operator()(std::uint32_t id) const {
      std::uint64_t h = 0xcbf29ce484222325ULL;
      for (Entry e : a->get(id)) {
        h ^= static_cast<std::uint32_t>(e);
        h *= 0x100000001b3ULL;
      }
      return static_cast<std::size_t>(h ^ (h >> 29));
    }
  };
  struct Eq {
    const StateArena* a;
    bool operator()(std::uint32_t x, std::uint32_t y) const {
      const auto sx = a->get(x);
      const auto sy = a->get(y);
      return std::equal(sx.begin(), sx.end(), sy.begin());
    }
  };

  std::size_t width_;
  std::vector<Entry> data_;
  std::unordered_set<std::uint32_t, Hash, Eq> set_;
};

}  // namespace

SearchResult search_mgs(const Quiver& q, const SearchOptions& options) {
  const int n = q.size();
  const int max_len = options.max_len > 0 ? options.max_len : 2 * n + 4;
  SearchResult result;

  const FramedQuiver start = FramedQuiver::frame(q);
  const std::size_t width = start.state().size();
  StateArena arena(width);
  struct Link {
    std::uint32_t parent;
    Vertex move;
  };
  std::vector<Link> links;
  arena.insert(start.state());
  links.push_back({0, 0});

  auto path_to = [&](std::uint32_t id) {
    std::vector<Vertex> seq;
    while (id != 0) {
      seq.push_back(links[id].move);
      id = links[id].parent;
    }
    std::reverse(seq.begin(), seq.end());
    return seq;
  };

  std::vector<std::uint32_t> layer{0};
  std::vector<Entry> scratch(width);
  for (int depth = 1; depth <= max_len && !layer.empty(); ++depth) {
    result.depth = depth;
    std::vector<std::uint32_t> next;
    for (std::uint32_t id : layer) {
      for (Vertex k = 1; k <= n; ++k) {
        // Copy out: the arena may reallocate on insert.
        const auto s = arena.get(id);
        std::copy(s.begin(), s.end(), scratch.begin());
        bool green = true;
        bool multi = false;
        for (int j = 0; j < n; ++j) {
          if (scratch[static_cast<std::size_t>((n + j) * n + k - 1)] > 0) green = false;
          if (scratch[static_cast<std::size_t>(j * n + k - 1)] >= 2) multi = true;
        }
        if (!green || (options.prune_multi_heads && multi)) continue;
        try {
          detail::mutate_extended(scratch, 2 * n, n, k - 1, kDefaultMultiplicityCap);
        } catch (const MultiplicityOverflow&) {
          continue;
        }
        if (arena.insert(scratch)) continue;
        const auto child = static_cast<std::uint32_t>(arena.size() - 1);
        links.push_back({id, k});
        result.states = arena.size();

        bool red = true;
        for (int v = 0; v < n * n && red; ++v) {
          if (scratch[static_cast<std::size_t>(n * n + v)] < 0) red = false;
        }
        if (red) {
          const auto seq = path_to(child);
          MgsCheck check = check_mgs(q, seq);
          if (!check.certificate) throw InvariantViolation("search produced " + check.reason);
          result.outcome = SearchResult::Outcome::Found;
          result.certificate = std::move(check.certificate);
          return result;
        }
        if (arena.size() >= options.max_states) {
          result.outcome = SearchResult::Outcome::BudgetHit;
          return result;
        }
        next.push_back(child);
      }
    }
    layer = std::move(next);
  }
  result.states = arena.size();
  result.outcome = SearchResult::Outcome::Exhausted;
  return result;
}

MgsCertificate acyclic_mgs(const Quiver& q) {
  if (!is_acyclic(q)) throw DomainError("acyclic_mgs requires an acyclic quiver");
  const int n = q.size();
  FramedQuiver fq = FramedQuiver::frame(q);
  std::vector<Vertex> seq;
  while (true) {
    Vertex pick = 0;
    for (Vertex v = 1; v <= n && pick == 0; ++v) {
      if (!fq.is_green(v)) continue;
      bool source = true;
      for (Vertex u = 1; u <= n && source; ++u) {
        if (u != v && fq.is_green(u) && fq.b(u, v) > 0) source = false;
      }
      if (source) pick = v;
    }
    if (pick == 0) break;
    seq.push_back(pick);
    fq = fq.mutated(pick);
  }
  MgsCheck check = check_mgs(q, seq);
  if (!check.certificate) throw InvariantViolation("acyclic construction failed: " + check.reason);
  return *check.certificate;
}

namespace {

MgsCertificate require_certificate(const Quiver& q, std::span<const Vertex> seq,
                                   const std::string& what) {
  MgsCheck check = check_mgs(q, seq);
  if (!check.certificate) throw DomainError(what + ": " + check.reason);
  return *check.certificate;
}

void require_verifies(const Quiver& q, const MgsCertificate& cert) {
  MgsCheck check = check_mgs(q, cert.sequence);
  if (!check.certificate) throw DomainError("certificate does not verify: " + check.reason);
  if (check.certificate->permutation != cert.permutation) {
    throw DomainError("certificate permutation does not match the induced permutation");
  }
}

}  // namespace

std::pair<Quiver, MgsCertificate> rotate_mgs(const Quiver& q, const MgsCertificate& cert) {
  require_verifies(q, cert);
  const auto& s = cert.sequence;
  std::vector<Vertex> seq(s.begin() + 1, s.end());
  seq.push_back(cert.permutation.inverse()(s.front()));
  Quiver next = mutate(q, s.front());
  MgsCertificate out = require_certificate(next, seq, "rotated sequence");
  if (out.permutation != cert.permutation) {
    throw InvariantViolation("rotation changed the induced permutation");
  }
  return {std::move(next), std::move(out)};
}

std::pair<Quiver, MgsCertificate> reverse_rotate_mgs(const Quiver& q,
                                                     const MgsCertificate& cert) {
  require_verifies(q, cert);
  const auto& s = cert.sequence;
  const Vertex lead = cert.permutation(s.back());
  std::vector<Vertex> seq{lead};
  seq.insert(seq.end(), s.begin(), s.end() - 1);
  Quiver next = mutate(q, lead);
  MgsCertificate out = require_certificate(next, seq, "reverse-rotated sequence");
  if (out.permutation != cert.permutation) {
    throw InvariantViolation("reverse rotation changed the induced permutation");
  }
  return {std::move(next), std::move(out)};
}

MgsCertificate direct_sum_mgs(const Quiver& q, const DirectSumDecomposition& d,
                              const MgsCertificate& left, const MgsCertificate& right) {
  if (!is_direct_sum(q, d)) throw DomainError("not a valid direct-sum decomposition");
  const InducedSubquiver l = induced_subquiver(q, d.left);
  const InducedSubquiver r = induced_subquiver(q, d.right);
  if (!verify_mgs(l.quiver, left.sequence)) {
    throw DomainError("left certificate does not verify on the left part");
  }
  if (!verify_mgs(r.quiver, right.sequence)) {
    throw DomainError("right certificate does not verify on the right part");
  }
  std::vector<Vertex> seq;
  for (Vertex v : left.sequence) seq.push_back(l.labels[v - 1]);
  for (Vertex v : right.sequence) seq.push_back(r.labels[v - 1]);
  MgsCheck check = check_mgs(q, seq);
  if (!check.certificate) {
    throw InvariantViolation("concatenated sequence failed on the sum: " + check.reason);
  }
  return *check.certificate;
}

MgsCertificate kcycle_mgs(const Quiver& q, const EndingCycle& cycle,
                          const MgsCertificate& cert_c) {
  const auto& v = cycle.cycle;
  const int k = static_cast<int>(v.size());
  if (k < 3 || v.back() != cycle.attachment) throw DomainError("malformed ending cycle");
  const std::vector<Vertex> removed(v.begin(), v.end() - 1);
  const InducedSubquiver c = remove_vertices(q, removed);
  if (!verify_mgs(c.quiver, cert_c.sequence)) {
    throw DomainError("certificate does not verify on the remaining quiver");
  }
  std::vector<Vertex> seq;
  for (int i = k - 2; i >= 1; --i) seq.push_back(v[i]);
  for (Vertex x : cert_c.sequence) seq.push_back(c.labels[x - 1]);
  for (int i = 0; i <= k - 2; ++i) seq.push_back(v[i]);
  MgsCheck check = check_mgs(q, seq);
  if (!check.certificate) {
    throw InvariantViolation("cycle-ending sequence failed: " + check.reason);
  }
  return *check.certificate;
}

std::optional<MgsCertificate> rank3_mgs(const Rank3Params& p) {
  std::vector<Arrow> arrows;
  if (p.a > 0) arrows.push_back({1, 2, p.a});
  if (p.b > 0) arrows.push_back({2, 3, p.b});
  if (p.c > 0) arrows.push_back({3, 1, p.c});
  const Quiver q = Quiver::from_arrows(3, arrows);
  if (p.a == 0 || p.b == 0 || p.c == 0) return acyclic_mgs(q);
  if (std::min({p.a, p.b, p.c}) >= 2) return std::nullopt;

  // Rotate labels r times (1->2->3->1) so the parameter equal to 1 sits in a.
  const int params[3] = {p.a, p.b, p.c};
  int r = 0;
  while (params[r] != 1) ++r;
  const int b = params[(r + 1) % 3];
  const int c = params[(r + 2) % 3];
  const std::vector<Vertex> base = b >= c ? std::vector<Vertex>{2, 1, 3, 2}
                                          : std::vector<Vertex>{2, 3, 1, 2};
  // Normalized vertex x corresponds to original vertex ((x - 1 + r) mod 3) + 1.
  std::vector<Vertex> seq;
  for (Vertex x : base) seq.push_back((x - 1 + r) % 3 + 1);
  MgsCheck check = check_mgs(q, seq);
  if (!check.certificate) throw InvariantViolation("rank-3 construction failed: " + check.reason);
  return check.certificate;
}

std::string format_sequence(std::span<const Vertex> seq) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < seq.size(); ++i) os << (i ? ", " : "") << seq[i];
  os << ')';
  return os.str();
}

}  // namespace quiver
