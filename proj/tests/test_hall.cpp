#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "multmatch/construction.hpp"
#include "multmatch/hall.hpp"
#include "multmatch/numtheory.hpp"

using namespace multmatch;
using namespace multmatch::hall;

namespace {

std::vector<Int> ints(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

Instance inst_of(std::initializer_list<long> A, long num, long den = 1) {
  return Instance::make(ints(A), Rational(Int(num), Int(den)));
}

// Everything below works on machine integers with x = twice_x / 2.
struct Small {
  std::vector<long> A;
  long twice_x;
  long am() const { return A.back(); }
  bool in_lower(long b) const { return 2 * b > twice_x && 2 * b <= twice_x + 2 * am(); }
  bool in_upper(long b) const { return 2 * b > twice_x + 2 * am() && 2 * b < twice_x + 4 * am(); }
  bool case_two() const { return twice_x % 2 == 0 && (twice_x / 2) % am() == 0; }
};

long floor_half(long v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

// Oracle: downward scan from the top of B-.
long naive_u(long a, const Small& s) {
  long b = floor_half(s.twice_x + 2 * s.am());
  while (b % a != 0) --b;
  REQUIRE(s.in_lower(b));
  return b;
}

Small random_small(std::mt19937_64& rng, bool want_case_two) {
  for (;;) {
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
    std::set<long> pick;
    while (pick.size() < m) pick.insert(std::uniform_int_distribution<long>(1, 60)(rng));
    Small s{{pick.begin(), pick.end()}, 0};
    if (want_case_two) {
      const long am = s.am();
      const long k = std::uniform_int_distribution<long>(-50 / am, 50 / am)(rng);
      s.twice_x = 2 * k * am;
    } else {
      s.twice_x = std::uniform_int_distribution<long>(-100, 100)(rng);
    }
    if (s.case_two() == want_case_two) return s;
  }
}

Instance to_instance(const Small& s) {
  return Instance::make(std::vector<Int>(s.A.begin(), s.A.end()), Rational(Int(s.twice_x), Int(2)));
}

// Re-derives the expected entry for a from the type table.
InjectionEntry expected_entry(long a, const Small& s) {
  const long u = naive_u(a, s);
  InjectionEntry e;
  e.a = a;
  e.u = u;
  if (!s.case_two()) {
    e.type = ElementType::case1;
    e.left = u;
    e.right = u + a;
    return e;
  }
  const long b0 = s.twice_x / 2 + s.am();
  if (b0 % a != 0) {
    e.type = ElementType::t1;
    e.left = u;
    e.right = u + a;
  } else if (2 * a < s.am() && b0 % (2 * a) != 0) {
    e.type = ElementType::t2;
    e.left = u - 2 * a;
    e.right = u + 2 * a;
  } else {
    e.type = ElementType::t3;
    e.left = u - a;
    e.right = u + a;
  }
  return e;
}

struct SplitGamma {
  std::set<long> minus;
  std::set<long> plus;
};

SplitGamma split_gamma(const std::vector<long>& S, const Small& s) {
  SplitGamma g;
  const bool two = s.case_two();
  const long b0 = s.twice_x / 2 + s.am();
  const long lo = floor_half(s.twice_x) - 1;
  const long hi = floor_half(s.twice_x + 4 * s.am()) + 1;
  for (long b = lo; b <= hi; ++b) {
    if (two && b == b0) continue;
    bool hit = false;
    for (long a : S) hit = hit || b % a == 0;
    if (!hit) continue;
    if (s.in_lower(b)) g.minus.insert(b);
    if (s.in_upper(b)) g.plus.insert(b);
  }
  return g;
}

}  // namespace

TEST_CASE("largest multiple in the lower half") {
  CHECK(largest_multiple_in_lower_half(2, inst_of({2, 3}, 1)) == 4);
  CHECK(largest_multiple_in_lower_half(3, inst_of({2, 3}, 1)) == 3);
  CHECK(largest_multiple_in_lower_half(4, inst_of({4, 10}, 10)) == 20);
  CHECK(largest_multiple_in_lower_half(5, inst_of({2, 5}, -7, 2)) == 0);
  CHECK(largest_multiple_in_lower_half(3, inst_of({3, 7}, -1000000001)) == -999999996);
}

TEST_CASE("case detection") {
  CHECK_FALSE(is_case_two(inst_of({2, 3}, 1)));
  CHECK(is_case_two(inst_of({2, 3, 4}, 4)));
  CHECK(is_case_two(inst_of({1, 2, 3}, 0)));
  CHECK(is_case_two(inst_of({2, 3}, -6)));
  CHECK_FALSE(is_case_two(inst_of({2, 3}, 6, 4)));  // 3/2
  CHECK(default_scan_set(inst_of({2, 3, 4}, 4)) == ints({2, 3}));
  CHECK(default_scan_set(inst_of({2, 3}, 1)) == ints({2, 3}));
}

TEST_CASE("injection examples") {
  const auto c1 = build_injection(ints({2, 3}), inst_of({2, 3}, 1));
  CHECK(c1.case_id == 1);
  CHECK_FALSE(c1.b0.has_value());
  REQUIRE(c1.entries.size() == 2);
  CHECK(c1.entries[0] == InjectionEntry{2, 4, ElementType::case1, 4, 6});
  CHECK(c1.entries[1] == InjectionEntry{3, 3, ElementType::case1, 3, 6});

  const auto c2 = build_injection(ints({2, 3}), inst_of({2, 3, 4}, 4));
  CHECK(c2.case_id == 2);
  CHECK(c2.b0 == Int(8));
  REQUIRE(c2.entries.size() == 2);
  CHECK(c2.entries[0].type == ElementType::t3);
  CHECK(c2.entries[0].left == 6);
  CHECK(c2.entries[0].right == 10);
  CHECK(c2.entries[1].type == ElementType::t1);
  CHECK(c2.entries[1].left == 6);
  CHECK(c2.entries[1].right == 9);

  const auto c3 = build_injection(ints({4}), inst_of({4, 10}, 10));
  CHECK(c3.b0 == Int(20));
  REQUIRE(c3.entries.size() == 1);
  CHECK(c3.entries[0].type == ElementType::t2);
  CHECK(c3.entries[0].left == 12);
  CHECK(c3.entries[0].right == 28);

  CHECK_THROWS_WITH_AS(build_injection(ints({2, 4}), inst_of({2, 3, 4}, 4)),
                       doctest::Contains("a_m is matched to b0 separately"), Error);
  CHECK_THROWS_AS(build_injection(ints({5}), inst_of({2, 3}, 1)), std::invalid_argument);
}

TEST_CASE("type names round trip") {
  for (auto t : {ElementType::case1, ElementType::t1, ElementType::t2, ElementType::t3}) {
    CHECK(parse_type(type_name(t)) == t);
  }
  CHECK(type_name(ElementType::t2) == "T2");
  CHECK_THROWS_AS(parse_type("T4"), std::invalid_argument);
}

TEST_CASE("check_injection flags tampering") {
  const auto inst = inst_of({2, 3, 4}, 4);
  auto cert = build_injection(ints({2, 3}), inst);
  CHECK(check_injection(cert, inst).empty());
  auto bad_type = cert;
  bad_type.entries[0].type = ElementType::t1;
  CHECK_FALSE(check_injection(bad_type, inst).empty());
  auto bad_pair = cert;
  bad_pair.entries[1].right = 12;
  CHECK_FALSE(check_injection(bad_pair, inst).empty());
  auto bad_b0 = cert;
  bad_b0.b0 = Int(9);
  CHECK_FALSE(check_injection(bad_b0, inst).empty());
  auto bad_case = cert;
  bad_case.case_id = 1;
  CHECK_FALSE(check_injection(bad_case, inst).empty());
  auto dup = cert;
  dup.entries.push_back(dup.entries[0]);
  CHECK_FALSE(check_injection(dup, inst).empty());
}

TEST_CASE("neighborhood check examples") {
  const auto n = neighborhood_bound_check(ints({2, 3}), inst_of({2, 3}, 1));
  CHECK(n.gamma_size == 4);  // {2, 3, 4, 6}
  CHECK(n.gamma_minus == 3);
  CHECK(n.gamma_plus == 1);
  CHECK(n.ok);

  const auto single = neighborhood_bound_check(ints({7}), inst_of({7, 9, 20}, 5, 2));
  CHECK(single.ok);
  CHECK(single.gamma_size >= 2);

  const auto w = construction::build_witness(2, 3);
  const auto inst = w.instance();
  const auto n23 = neighborhood_bound_check(default_scan_set(inst), inst);
  CHECK(n23.ok);
}

TEST_CASE("lower bound certificate examples") {
  const auto c = lower_bound_certificate(inst_of({1, 2, 3}, 0));
  CHECK(c.case_id == 2);
  CHECK(c.matching.size() == 3);
  CHECK(c.bound == 3);
  CHECK(c.satisfied);
  REQUIRE(c.reserved_edge.has_value());
  CHECK(c.reserved_edge->a == 3);
  CHECK(c.reserved_edge->b == 3);

  const auto d = lower_bound_certificate(inst_of({2, 3}, 1));
  CHECK(d.case_id == 1);
  CHECK(d.matching.size() == 2);
  CHECK(d.bound == 2);
  CHECK(d.satisfied);
  CHECK_FALSE(d.reserved_edge.has_value());

  const auto w = construction::build_witness(3, 3);
  const auto e = lower_bound_certificate(w.instance());
  CHECK(e.bound == 6);
  CHECK(e.matching.size() >= 6);
  CHECK(e.satisfied);
  CHECK(divgraph::check_matching(w.instance(), e.matching).empty());
}

TEST_CASE("random injections for both cases") {
  std::mt19937_64 rng(0x4a11);
  for (bool two : {false, true}) {
    for (int iter = 0; iter < 1000; ++iter) {
      const auto s = random_small(rng, two);
      const auto inst = to_instance(s);
      REQUIRE(is_case_two(inst) == two);
      std::vector<long> S = s.A;
      if (two) S.pop_back();
      const auto cert = build_injection(std::vector<Int>(S.begin(), S.end()), inst);
      CAPTURE(iter);
      REQUIRE(cert.entries.size() == S.size());

      std::set<std::pair<long, long>> seen;
      const auto gamma = split_gamma(S, s);
      for (std::size_t k = 0; k < S.size(); ++k) {
        const auto want = expected_entry(S[k], s);
        CHECK(cert.entries[k] == want);
        const long l = cert.entries[k].left.get_si();
        const long r = cert.entries[k].right.get_si();
        CHECK(seen.emplace(l, r).second);
        CHECK(gamma.minus.count(l) == 1);
        CHECK(gamma.plus.count(r) == 1);
        CHECK(l % S[k] == 0);
        CHECK(r % S[k] == 0);
      }
      CHECK(S.size() <= gamma.minus.size() * gamma.plus.size());

      const auto n = neighborhood_bound_check(std::vector<Int>(S.begin(), S.end()), inst);
      CHECK(n.gamma_minus == gamma.minus.size());
      CHECK(n.gamma_plus == gamma.plus.size());
      CHECK(n.gamma_size * n.gamma_size >= 4 * S.size());
      CHECK(n.ok);

      const auto lb = lower_bound_certificate(inst);
      CHECK(lb.satisfied);
      CHECK(lb.matching.size() >= std::min<std::uint64_t>(s.A.size(), numtheory::ceil_two_sqrt(s.A.size())));
      CHECK(divgraph::check_matching(inst, lb.matching).empty());
    }
  }
}

TEST_CASE("deficiency corollary on case-1 instances") {
  std::mt19937_64 rng(0xdef1);
  for (int iter = 0; iter < 300; ++iter) {
    const auto s = random_small(rng, false);
    const auto inst = to_instance(s);
    const auto report = divgraph::deficiency_scan(divgraph::build_graph(inst));
    const long long m = static_cast<long long>(s.A.size());
    CAPTURE(iter);
    CHECK(report.deficiency <= m - static_cast<long long>(numtheory::ceil_two_sqrt(s.A.size())));
  }
}
