#include "multmatch/divgraph.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>

#include "multmatch/numtheory.hpp"

namespace multmatch::divgraph {

void validate(const Instance& inst) {
  if (inst.A.empty()) throw std::invalid_argument("instance: A must be nonempty");
  if (inst.A.front() < 1) throw std::invalid_argument("instance: elements of A must be positive");
  for (std::size_t i = 1; i < inst.A.size(); ++i) {
    if (!(inst.A[i - 1] < inst.A[i])) {
      throw std::invalid_argument("instance: A must be strictly increasing");
    }
  }
  if (inst.c < 2 || inst.c >= 3) throw std::invalid_argument("instance: need 2 <= c < 3");
}

Instance Instance::make(std::vector<Int> A, Rational x, Rational c) {
  x.canonicalize();
  c.canonicalize();
  Instance inst{std::move(A), std::move(x), std::move(c)};
  validate(inst);
  return inst;
}

bool Instance::contains(const Int& b) const {
  const Rational value(b);
  return x < value && value < upper();
}

namespace {

// Integer range [lo, hi] of the open interval (lower, upper).
std::pair<Int, Int> integer_range(const Rational& lower, const Rational& upper) {
  return {floor_of(lower) + 1, ceil_of(upper) - 1};
}

}  // namespace

Int count_multiples_in_interval(const Int& a, const Rational& lower, const Rational& upper) {
  const auto [lo, hi] = integer_range(lower, upper);
  if (hi < lo) return 0;
  const Int count = floor_div(hi, a) - ceil_div(lo, a) + 1;
  return count < 0 ? Int(0) : count;
}

std::vector<Int> multiples_in_interval(const Int& a, const Rational& lower, const Rational& upper) {
  std::vector<Int> out;
  const auto [lo, hi] = integer_range(lower, upper);
  for (Int b = a * ceil_div(lo, a); b <= hi; b += a) out.push_back(b);
  return out;
}

std::string_view mode_name(BMode mode) {
  return mode == BMode::full ? "full" : "multiples-only";
}

BMode parse_mode(std::string_view text) {
  if (text == "full") return BMode::full;
  if (text == "multiples-only" || text == "multiples") return BMode::multiples_only;
  throw std::invalid_argument("unknown B mode: '" + std::string(text) + "'");
}

std::vector<Int> enumerate_B(const Instance& inst, BMode mode, std::uint64_t cap) {
  validate(inst);
  const Rational upper = inst.upper();
  const Int cap_value(static_cast<unsigned long>(cap));
  std::vector<Int> out;

  if (mode == BMode::full) {
    const auto [lo, hi] = integer_range(inst.x, upper);
    if (hi - lo + 1 > cap_value) {
      throw CapExceeded("interval-cap", "interval too large: " + to_string(Int(hi - lo + 1)) +
                                            " integers exceed cap " + std::to_string(cap));
    }
    for (Int b = lo; b <= hi; ++b) out.push_back(b);
    return out;
  }

  Int total = 0;
  for (const auto& a : inst.A) total += count_multiples_in_interval(a, inst.x, upper);
  if (total > cap_value) {
    throw CapExceeded("interval-cap", "interval too large: " + to_string(total) +
                                          " multiples exceed cap " + std::to_string(cap));
  }
  for (const auto& a : inst.A) {
    auto run = multiples_in_interval(a, inst.x, upper);
    out.insert(out.end(), std::make_move_iterator(run.begin()), std::make_move_iterator(run.end()));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

DivisibilityGraph build_graph(const Instance& inst, BMode mode, std::uint64_t cap) {
  DivisibilityGraph g{inst, mode, enumerate_B(inst, mode, cap), {}};
  const Rational upper = inst.upper();
  g.adjacency.resize(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    for (const auto& b : multiples_in_interval(inst.A[i], inst.x, upper)) {
      const auto it = std::lower_bound(g.B.begin(), g.B.end(), b);
      g.adjacency[i].push_back(static_cast<std::size_t>(it - g.B.begin()));
    }
  }
  return g;
}

namespace {

class HopcroftKarp {
 public:
  static constexpr std::size_t kNil = std::numeric_limits<std::size_t>::max();

  HopcroftKarp(const std::vector<std::vector<std::size_t>>& adj, std::size_t right,
               std::vector<bool> left_active, std::vector<bool> right_active)
      : adj_(adj),
        left_active_(std::move(left_active)),
        right_active_(std::move(right_active)),
        pair_left_(adj.size(), kNil),
        pair_right_(right, kNil),
        level_(adj.size()) {}

  void run() {
    while (bfs()) {
      for (std::size_t u = 0; u < adj_.size(); ++u) {
        if (left_active_[u] && pair_left_[u] == kNil) dfs(u);
      }
    }
  }

  const std::vector<std::size_t>& pair_left() const { return pair_left_; }

 private:
  bool bfs() {
    std::queue<std::size_t> queue;
    bool reachable_free = false;
    for (std::size_t u = 0; u < adj_.size(); ++u) {
      if (left_active_[u] && pair_left_[u] == kNil) {
        level_[u] = 0;
        queue.push(u);
      } else {
        level_[u] = kNil;
      }
    }
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop();
      for (std::size_t v : adj_[u]) {
        if (!right_active_[v]) continue;
        const std::size_t w = pair_right_[v];
        if (w == kNil) {
          reachable_free = true;
        } else if (level_[w] == kNil) {
          level_[w] = level_[u] + 1;
          queue.push(w);
        }
      }
    }
    return reachable_free;
  }

  bool dfs(std::size_t u) {
    for (std::size_t v : adj_[u]) {
      if (!right_active_[v]) continue;
      const std::size_t w = pair_right_[v];
      if (w == kNil || (level_[w] == level_[u] + 1 && dfs(w))) {
        pair_left_[u] = v;
        pair_right_[v] = u;
        return true;
      }
    }
    level_[u] = kNil;
    return false;
  }

  const std::vector<std::vector<std::size_t>>& adj_;
  std::vector<bool> left_active_;
  std::vector<bool> right_active_;
  std::vector<std::size_t> pair_left_;
  std::vector<std::size_t> pair_right_;
  std::vector<std::size_t> level_;
};

}  // namespace

MatchingCertificate max_matching(const DivisibilityGraph& graph, const MatchingExclusion& exclude) {
  std::vector<bool> left(graph.adjacency.size(), true);
  std::vector<bool> right(graph.B.size(), true);
  if (exclude.a_index) {
    if (*exclude.a_index >= left.size()) throw std::invalid_argument("excluded a index out of range");
    left[*exclude.a_index] = false;
  }
  if (exclude.b) {
    const auto it = std::lower_bound(graph.B.begin(), graph.B.end(), *exclude.b);
    if (it != graph.B.end() && *it == *exclude.b) right[it - graph.B.begin()] = false;
  }
  HopcroftKarp hk(graph.adjacency, graph.B.size(), std::move(left), std::move(right));
  hk.run();

  MatchingCertificate cert;
  for (std::size_t u = 0; u < hk.pair_left().size(); ++u) {
    const std::size_t v = hk.pair_left()[u];
    if (v != HopcroftKarp::kNil) cert.pairs.push_back({graph.instance.A[u], graph.B[v]});
  }
  return cert;
}

std::vector<std::string> check_matching(const Instance& inst, const MatchingCertificate& cert) {
  std::vector<std::string> problems;
  std::set<Int> seen_a;
  std::set<Int> seen_b;
  for (const auto& [a, b] : cert.pairs) {
    const std::string tag = "(" + to_string(a) + ", " + to_string(b) + ")";
    if (!std::binary_search(inst.A.begin(), inst.A.end(), a)) problems.push_back(tag + ": a not in A");
    if (!seen_a.insert(a).second) problems.push_back(tag + ": a reused");
    if (!seen_b.insert(b).second) problems.push_back(tag + ": b reused");
    if (a < 1 || !divides(a, b)) problems.push_back(tag + ": a does not divide b");
    if (!inst.contains(b)) problems.push_back(tag + ": b outside the open interval");
  }
  return problems;
}

DeficiencyReport deficiency_scan(const DivisibilityGraph& graph, const DeficiencyOptions& opts) {
  const std::size_t m = graph.adjacency.size();
  if (m > opts.subset_cap || m > 62) {
    throw CapExceeded("subset-cap", "subset scan cap exceeded: |A| = " + std::to_string(m) +
                                        " > " + std::to_string(std::min<std::size_t>(opts.subset_cap, 62)));
  }
  const std::size_t words = std::max<std::size_t>(1, (graph.B.size() + 63) / 64);
  std::vector<std::uint64_t> adj(m * words, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t v : graph.adjacency[i]) adj[i * words + v / 64] |= std::uint64_t{1} << (v % 64);
  }

  // Low k elements go into a table of all 2^k unions; the kernel ORs every
  // high-part union against the whole table.
  const std::size_t k = std::min<std::size_t>(m, 8);
  const std::size_t rows = std::size_t{1} << k;
  std::vector<std::uint64_t> table(words * rows, 0);
  for (std::size_t j = 1; j < rows; ++j) {
    const std::size_t bit = static_cast<std::size_t>(std::countr_zero(j));
    const std::size_t rest = j & (j - 1);
    for (std::size_t w = 0; w < words; ++w) {
      table[w * rows + j] = table[w * rows + rest] | adj[bit * words + w];
    }
  }

  bool have_best = false;
  std::uint64_t best_set = 0;
  long long best_def = 0;
  std::uint32_t best_size = 0;
  std::uint32_t best_gamma = 0;

  std::vector<std::uint64_t> base(words);
  std::vector<std::uint32_t> counts(rows);
  const std::uint64_t high_count = std::uint64_t{1} << (m - k);
  for (std::uint64_t h = 0; h < high_count; ++h) {
    std::fill(base.begin(), base.end(), 0);
    for (std::uint64_t bits = h; bits; bits &= bits - 1) {
      const std::size_t i = k + static_cast<std::size_t>(std::countr_zero(bits));
      for (std::size_t w = 0; w < words; ++w) base[w] |= adj[i * words + w];
    }
    simd::union_popcount(base, table, rows, counts, opts.isa);

    const int high_size = std::popcount(h);
    for (std::size_t j = (h == 0 ? 1 : 0); j < rows; ++j) {
      const std::uint64_t set = (h << k) | j;
      const std::uint32_t size = static_cast<std::uint32_t>(high_size + std::popcount(j));
      const long long def = static_cast<long long>(size) - counts[j];
      bool better = !have_best || def > best_def;
      if (have_best && def == best_def) {
        if (size != best_size) {
          better = size < best_size;
        } else {
          const std::uint64_t diff = set ^ best_set;
          better = diff != 0 && (diff & (~diff + 1) & set) != 0;
        }
      }
      if (better) {
        have_best = true;
        best_set = set;
        best_def = def;
        best_size = size;
        best_gamma = counts[j];
      }
    }
  }

  DeficiencyReport report;
  for (std::uint64_t bits = best_set; bits; bits &= bits - 1) {
    const auto i = static_cast<std::size_t>(std::countr_zero(bits));
    report.worst_indices.push_back(i);
    report.worst_set.push_back(graph.instance.A[i]);
  }
  report.gamma_size = best_gamma;
  report.deficiency = best_def;
  const long long mm = static_cast<long long>(m);
  report.konig_ore_size = static_cast<std::size_t>(std::min(mm, mm - best_def));
  return report;
}

FValueCheck f_value_check(const Instance& inst, std::uint64_t cap) {
  if (inst.c != 2) throw std::invalid_argument("f_value_check requires interval factor c = 2");
  const auto graph = build_graph(inst, BMode::multiples_only, cap);
  FValueCheck out;
  out.matching_size = max_matching(graph).size();
  const std::uint64_t m = inst.size();
  out.lower_bound = static_cast<std::size_t>(std::min(m, numtheory::ceil_two_sqrt(m)));
  out.satisfied = out.matching_size >= out.lower_bound;
  return out;
}

std::uint32_t small_matching_size(std::span<const std::uint32_t> A, std::int64_t base, bool half) {
  if (A.empty() || A.back() > kSmallMaxValue || A.front() == 0) {
    throw std::invalid_argument("small_matching_size: need 1 <= a <= 32");
  }
  const std::uint32_t top = A.back();
  const std::uint32_t n = 2 * top - (half ? 0 : 1);  // B = {base + 1, ..., base + n}
  std::uint64_t adj[kSmallMaxValue];
  const std::size_t m = A.size();
  for (std::size_t i = 0; i < m; ++i) {
    const std::int64_t a = A[i];
    std::int64_t r = -(base + 1) % a;
    if (r < 0) r += a;
    std::uint64_t mask = 0;
    for (std::int64_t off = r; off < static_cast<std::int64_t>(n); off += a) {
      mask |= std::uint64_t{1} << off;
    }
    adj[i] = mask;
  }

  std::int8_t owner[64];
  std::fill(std::begin(owner), std::end(owner), std::int8_t{-1});
  std::uint64_t visited = 0;
  auto augment = [&](auto&& self, std::size_t u) -> bool {
    for (std::uint64_t avail = adj[u] & ~visited; avail; avail = adj[u] & ~visited) {
      const int bit = std::countr_zero(avail);
      visited |= std::uint64_t{1} << bit;
      if (owner[bit] < 0 || self(self, static_cast<std::size_t>(owner[bit]))) {
        owner[bit] = static_cast<std::int8_t>(u);
        return true;
      }
    }
    return false;
  };
  std::uint32_t size = 0;
  for (std::size_t u = 0; u < m; ++u) {
    visited = 0;
    if (augment(augment, u)) ++size;
  }
  return size;
}

}  // namespace multmatch::divgraph
