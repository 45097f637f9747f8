#include "multmatch/construction.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace multmatch::construction {

using numtheory::Congruence;

std::vector<Int> ConstructionWitness::A() const {
  std::vector<Int> out;
  for (const auto& row : alphas) out.insert(out.end(), row.begin(), row.end());
  std::sort(out.begin(), out.end());
  return out;
}

divgraph::Instance ConstructionWitness::instance() const {
  return divgraph::Instance::make(A(), Rational(x), interval_factor);
}

namespace {

Int as_int(std::uint64_t v) { return Int(static_cast<unsigned long>(v)); }

void require_dimensions(std::uint64_t s, std::uint64_t t) {
  if (std::min(s, t) < 2) throw Error("trivial case; no construction defined (need s, t >= 2)");
}

}  // namespace

std::vector<Int> build_prime_set(std::uint64_t s, std::uint64_t t) {
  require_dimensions(s, t);
  const Int D = numtheory::lcm_range(s * t);
  const Int bound = as_int(s * t);
  const auto sq = static_cast<long>(s);
  const auto tr = static_cast<long>(t);
  std::set<Int> primes;
  for (long q = -(sq - 1); q <= sq - 1; ++q) {
    if (q == 0) continue;
    for (long r = -(tr - 1); r <= tr - 1; ++r) {
      const Int value = Int(q) + Int(r) * D;
      for (auto& p : numtheory::primes_above_bound(value, bound)) primes.insert(std::move(p));
    }
  }
  return {primes.begin(), primes.end()};
}

Int m_lower_bound(std::uint64_t s, std::uint64_t t, const Int& D,
                  const std::optional<Rational>& epsilon) {
  if (!epsilon) return 2 * as_int(s) + 2 * as_int(t) * D;
  const Rational& eps = *epsilon;
  const Rational value = (Rational(3) - eps) * Rational(as_int(s) + as_int(t) * D) / eps;
  return ceil_of(value);
}

Int choose_M(std::uint64_t s, std::uint64_t t, const Int& D, std::span<const Int> P,
             const Int& lower_bound) {
  const Int st = as_int(s * t);
  struct Sieve {
    Int p;
    std::vector<Int> forbidden;  // sorted residues
    Int residue;                 // current candidate mod p
  };
  std::vector<Sieve> sieves;
  const Int start = lower_bound + 1;
  for (const auto& p : P) {
    if (p <= st) throw std::invalid_argument("choose_M: every prime must exceed st");
    Sieve sv{p, {}, mod_floor(start, p)};
    for (std::uint64_t i = 1; i <= s; ++i) {
      for (std::uint64_t j = 1; j <= t; ++j) {
        sv.forbidden.push_back(mod_floor(-as_int(i) - as_int(j) * D, p));
      }
    }
    std::sort(sv.forbidden.begin(), sv.forbidden.end());
    sv.forbidden.erase(std::unique(sv.forbidden.begin(), sv.forbidden.end()), sv.forbidden.end());
    sieves.push_back(std::move(sv));
  }

  for (Int candidate = start;; ++candidate) {
    bool free = true;
    for (const auto& sv : sieves) {
      if (std::binary_search(sv.forbidden.begin(), sv.forbidden.end(), sv.residue)) {
        free = false;
        break;
      }
    }
    if (free) return candidate;
    for (auto& sv : sieves) {
      if (++sv.residue == sv.p) sv.residue = 0;
    }
  }
}

std::vector<Congruence> grid_congruences(const std::vector<std::vector<Int>>& alphas) {
  std::vector<Congruence> out;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    for (const auto& alpha : alphas[i]) out.emplace_back(as_int(i + 1), alpha);
  }
  return out;
}

Int solve_x0(std::span<const Congruence> congruences) {
  try {
    return numtheory::crt_fold(congruences).residue();
  } catch (const numtheory::InconsistentCongruences& e) {
    throw Error(std::string("pairwise gcd condition violated: ") + e.what());
  }
}

ConstructionWitness build_witness(std::uint64_t s, std::uint64_t t, std::optional<Rational> epsilon) {
  require_dimensions(s, t);
  if (s > t) std::swap(s, t);
  if (epsilon) {
    epsilon->canonicalize();
    if (*epsilon <= 0 || *epsilon >= 1) throw std::invalid_argument("epsilon must lie in (0, 1)");
  }

  ConstructionWitness w;
  w.s = s;
  w.t = t;
  w.D = numtheory::lcm_range(s * t);
  w.P = build_prime_set(s, t);
  w.M = choose_M(s, t, w.D, w.P, m_lower_bound(s, t, w.D, epsilon));
  w.alphas.assign(s, std::vector<Int>(t));
  for (std::uint64_t i = 1; i <= s; ++i) {
    for (std::uint64_t j = 1; j <= t; ++j) w.alphas[i - 1][j - 1] = w.M + as_int(i) + as_int(j) * w.D;
  }
  const auto congruences = grid_congruences(w.alphas);
  w.x0 = solve_x0(congruences);
  w.x = w.x0 - w.M;
  w.interval_factor = epsilon ? Rational(3) - *epsilon : Rational(2);

  const Rational lower(w.x);
  const Rational upper = lower + w.interval_factor * Rational(w.alphas.back().back());
  auto inside = [&](const Int& b) { return lower < b && Rational(b) < upper; };
  for (std::uint64_t i = 1; i <= s; ++i) {
    if (const Int b = w.x0 - as_int(i); inside(b)) w.predicted_multiples.push_back(b);
  }
  for (std::uint64_t j = 1; j <= t; ++j) {
    if (const Int b = w.x0 + w.M + as_int(j) * w.D; inside(b)) w.predicted_multiples.push_back(b);
  }
  std::sort(w.predicted_multiples.begin(), w.predicted_multiples.end());
  w.predicted_multiples.erase(std::unique(w.predicted_multiples.begin(), w.predicted_multiples.end()),
                              w.predicted_multiples.end());
  return w;
}

bool WitnessVerification::ok() const {
  return std::all_of(claims.begin(), claims.end(), [](const ClaimResult& c) { return c.ok; });
}

std::vector<std::string> WitnessVerification::failed() const {
  std::vector<std::string> out;
  for (const auto& c : claims) {
    if (!c.ok) out.push_back(c.name);
  }
  return out;
}

namespace {

// Per-alpha multiples are at most a handful on any sane witness; a corrupted
// interval is reported instead of enumerated.
constexpr unsigned long kMultiplesPerAlphaCap = 64;

class ClaimLog {
 public:
  explicit ClaimLog(std::vector<ClaimResult>& out) : out_(out) {}
  void add(std::string name, bool ok, std::string detail = {}) {
    out_.push_back({std::move(name), ok, std::move(detail)});
  }

 private:
  std::vector<ClaimResult>& out_;
};

}  // namespace

WitnessVerification verify_witness(const ConstructionWitness& w) {
  WitnessVerification out;
  ClaimLog log(out.claims);
  const std::uint64_t s = w.s;
  const std::uint64_t t = w.t;
  out.bound = s + t;

  bool shape = s >= 2 && t >= 2 && s <= t && w.alphas.size() == s;
  for (const auto& row : w.alphas) shape = shape && row.size() == t;
  log.add("structure", shape, shape ? "" : "need 2 <= s <= t and an s x t alpha grid");
  if (!shape) return out;

  const bool factor_ok = w.interval_factor >= 2 && w.interval_factor < 3;
  log.add("interval_factor_valid", factor_ok, to_string(w.interval_factor));
  if (!factor_ok) return out;

  const Int D = numtheory::lcm_range(s * t);
  log.add("D_is_lcm", w.D == D, "lcm(1.." + std::to_string(s * t) + ") = " + to_string(D));

  // q^2 | D for 0 < |q| < s.
  bool q_squared = true;
  for (std::uint64_t q = 1; q < s; ++q) q_squared = q_squared && divides(as_int(q * q), w.D);
  log.add("q_squared_divides_D", q_squared);

  {
    std::vector<Int> expected = build_prime_set(s, t);
    bool primes_ok = w.P == expected;
    for (const auto& p : w.P) primes_ok = primes_ok && p > as_int(s * t) && numtheory::is_prime(p);
    log.add("prime_set", primes_ok, std::to_string(expected.size()) + " primes expected");
  }

  {
    std::optional<Rational> eps;
    if (w.interval_factor != 2) eps = Rational(3) - w.interval_factor;
    const Int lb = m_lower_bound(s, t, w.D, eps);
    log.add("M_lower_bound", w.M > lb, "M must exceed " + to_string(lb));
  }

  {
    bool residues_ok = true;
    std::string detail;
    for (const auto& p : w.P) {
      if (p < 1) {
        residues_ok = false;
        continue;
      }
      const Int mr = mod_floor(w.M, p);
      for (std::uint64_t i = 1; i <= s && residues_ok; ++i) {
        for (std::uint64_t j = 1; j <= t; ++j) {
          if (mod_floor(-as_int(i) - as_int(j) * w.D, p) == mr) {
            residues_ok = false;
            detail = "M = -" + std::to_string(i) + " - " + std::to_string(j) + "D (mod " + to_string(p) + ")";
            break;
          }
        }
      }
    }
    log.add("M_residues", residues_ok, detail);
  }

  {
    bool grid_ok = true;
    for (std::uint64_t i = 1; i <= s; ++i) {
      for (std::uint64_t j = 1; j <= t; ++j) {
        grid_ok = grid_ok && w.alphas[i - 1][j - 1] == w.M + as_int(i) + as_int(j) * w.D;
      }
    }
    log.add("alpha_grid", grid_ok);
    const auto A = w.A();
    const bool distinct = std::adjacent_find(A.begin(), A.end()) == A.end() && A.front() > 0;
    log.add("alphas_distinct", distinct, std::to_string(A.size()) + " alphas");
    if (!distinct) return out;
  }

  {
    bool gcd_ok = true;
    std::string detail;
    for (std::uint64_t i = 0; i < s; ++i) {
      for (std::uint64_t j = 0; j < t; ++j) {
        for (std::uint64_t k = 0; k < s; ++k) {
          for (std::uint64_t l = 0; l < t; ++l) {
            Int g;
            mpz_gcd(g.get_mpz_t(), w.alphas[i][j].get_mpz_t(), w.alphas[k][l].get_mpz_t());
            if (!divides(g, as_int(i) - as_int(k))) {
              gcd_ok = false;
              detail = "gcd(alpha_" + std::to_string(i + 1) + std::to_string(j + 1) + ", alpha_" +
                       std::to_string(k + 1) + std::to_string(l + 1) + ") = " + to_string(g);
            }
          }
        }
      }
    }
    log.add("gcd_divides_index_difference", gcd_ok, detail);
  }

  {
    bool x0_ok = true;
    for (std::uint64_t i = 1; i <= s; ++i) {
      for (const auto& alpha : w.alphas[i - 1]) x0_ok = x0_ok && mod_floor(w.x0 - as_int(i), alpha) == 0;
    }
    log.add("x0_congruences", x0_ok && w.x0 >= 0);
    log.add("x_equals_x0_minus_M", w.x == w.x0 - w.M);
  }

  // Multiples recomputed per alpha, straight from (x, factor, max A).
  const Int top = w.A().back();
  const Rational lower(w.x);
  const Rational upper = lower + w.interval_factor * Rational(top);
  bool at_most_two = true;
  std::set<Int> multiples;
  for (const auto& row : w.alphas) {
    for (const auto& alpha : row) {
      const Int count = divgraph::count_multiples_in_interval(alpha, lower, upper);
      if (count > 2) at_most_two = false;
      if (count > kMultiplesPerAlphaCap) continue;
      for (auto& b : divgraph::multiples_in_interval(alpha, lower, upper)) multiples.insert(std::move(b));
    }
  }
  out.multiples.assign(multiples.begin(), multiples.end());
  out.multiples_count = out.multiples.size();
  log.add("at_most_two_multiples_each", at_most_two);

  std::set<Int> union_set;
  for (std::uint64_t i = 1; i <= s; ++i) union_set.insert(w.x0 - as_int(i));
  for (std::uint64_t j = 1; j <= t; ++j) union_set.insert(w.x0 + w.M + as_int(j) * w.D);
  const bool contained = std::all_of(out.multiples.begin(), out.multiples.end(),
                                     [&](const Int& b) { return union_set.count(b) > 0; });
  log.add("multiples_in_predicted_union", contained);

  std::vector<Int> formula;
  for (const auto& b : union_set) {
    if (lower < b && Rational(b) < upper) formula.push_back(b);
  }
  log.add("predicted_multiples_field", formula == w.predicted_multiples);
  log.add("count_at_most_s_plus_t", out.multiples_count <= out.bound,
          std::to_string(out.multiples_count) + " <= " + std::to_string(out.bound));

  try {
    const auto graph = divgraph::build_graph(w.instance(), divgraph::BMode::multiples_only);
    out.matching_size = divgraph::max_matching(graph).size();
    log.add("matching_at_most_s_plus_t", out.matching_size <= out.bound);
  } catch (const std::exception& e) {
    log.add("matching_at_most_s_plus_t", false, e.what());
  }
  return out;
}

std::pair<std::uint64_t, std::uint64_t> bracket_for_m(std::uint64_t m) {
  if (m < 2) throw std::invalid_argument("bracket_for_m requires m >= 2");
  // k with k^2 < m <= (k + 1)^2
  std::uint64_t k = numtheory::isqrt(as_int(m)).get_ui();
  if (k * k == m) --k;
  if (m <= k * (k + 1)) return {k, k + 1};
  return {k + 1, k + 1};
}

WitnessForM witness_for_m(std::uint64_t m) {
  if (m < 4) throw Error("use direct m-element check; f(m) = m for m < 4");
  const auto [s, t] = bracket_for_m(m);
  WitnessForM out;
  out.m = m;
  out.witness = build_witness(s, t);
  out.predicted_bound = numtheory::ceil_two_sqrt(m);
  auto A = out.witness.A();
  A.erase(A.begin(), A.begin() + static_cast<std::ptrdiff_t>(A.size() - m));
  out.instance = divgraph::Instance::make(std::move(A), Rational(out.witness.x), Rational(2));
  return out;
}

WitnessVerification verify_reduction(const WitnessForM& reduced) {
  WitnessVerification out;
  ClaimLog log(out.claims);
  out.bound = reduced.predicted_bound;
  const auto& inst = reduced.instance;
  const auto parent = reduced.witness.A();

  log.add("reduction_size", inst.size() == reduced.m, std::to_string(inst.size()));
  log.add("reduction_bound_formula",
          reduced.m >= 1 && reduced.predicted_bound == numtheory::ceil_two_sqrt(reduced.m));
  const bool subset = std::includes(parent.begin(), parent.end(), inst.A.begin(), inst.A.end());
  log.add("reduction_subset", subset);
  log.add("reduction_keeps_max", !inst.A.empty() && !parent.empty() && inst.A.back() == parent.back());
  log.add("reduction_keeps_x", inst.x == Rational(reduced.witness.x) && inst.c == 2);
  if (inst.A.empty()) return out;

  std::set<Int> multiples;
  const Rational upper = inst.upper();
  for (const auto& a : inst.A) {
    if (divgraph::count_multiples_in_interval(a, inst.x, upper) > kMultiplesPerAlphaCap) continue;
    for (auto& b : divgraph::multiples_in_interval(a, inst.x, upper)) multiples.insert(std::move(b));
  }
  out.multiples.assign(multiples.begin(), multiples.end());
  out.multiples_count = out.multiples.size();
  log.add("reduced_count_at_most_bound", out.multiples_count <= out.bound,
          std::to_string(out.multiples_count) + " <= " + std::to_string(out.bound));
  try {
    out.matching_size = divgraph::max_matching(divgraph::build_graph(inst)).size();
    log.add("reduced_matching_at_most_bound", out.matching_size <= out.bound);
  } catch (const std::exception& e) {
    log.add("reduced_matching_at_most_bound", false, e.what());
  }
  return out;
}

}  // namespace multmatch::construction
