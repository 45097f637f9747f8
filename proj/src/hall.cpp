#include "multmatch/hall.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "multmatch/error.hpp"
#include "multmatch/numtheory.hpp"

namespace multmatch::hall {

std::string_view type_name(ElementType type) {
  switch (type) {
    case ElementType::case1: return "CASE1";
    case ElementType::t1: return "T1";
    case ElementType::t2: return "T2";
    case ElementType::t3: return "T3";
  }
  return "?";
}

ElementType parse_type(std::string_view text) {
  if (text == "CASE1") return ElementType::case1;
  if (text == "T1") return ElementType::t1;
  if (text == "T2") return ElementType::t2;
  if (text == "T3") return ElementType::t3;
  throw std::invalid_argument("unknown element type: '" + std::string(text) + "'");
}

namespace {

void require_factor_two(const Instance& inst) {
  divgraph::validate(inst);
  if (inst.c != 2) throw std::invalid_argument("lower-bound machinery requires c = 2");
}

void require_members(std::span<const Int> S, const Instance& inst) {
  std::set<Int> seen;
  for (const auto& a : S) {
    if (!std::binary_search(inst.A.begin(), inst.A.end(), a)) {
      throw std::invalid_argument("S element " + to_string(a) + " is not in A");
    }
    if (!seen.insert(a).second) throw std::invalid_argument("S element " + to_string(a) + " repeated");
  }
}

struct Halves {
  Rational x;
  Rational mid;    // x + a_m
  Rational upper;  // x + 2 a_m
  bool in_lower(const Int& b) const { return x < b && Rational(b) <= mid; }
  bool in_upper(const Int& b) const { return mid < b && Rational(b) < upper; }
};

Halves halves_of(const Instance& inst) {
  return {inst.x, inst.x + inst.max(), inst.x + 2 * inst.max()};
}

}  // namespace

bool is_case_two(const Instance& inst) {
  return is_integral(inst.x) && divides(inst.max(), inst.x.get_num());
}

Int largest_multiple_in_lower_half(const Int& a, const Instance& inst) {
  require_factor_two(inst);
  if (a < 1 || a > inst.max()) throw std::invalid_argument("u_a requires 1 <= a <= a_m");
  return a * floor_of((inst.x + inst.max()) / Rational(a));
}

std::vector<Int> default_scan_set(const Instance& inst) {
  std::vector<Int> S = inst.A;
  if (is_case_two(inst)) S.pop_back();
  return S;
}

InjectionCertificate build_injection(std::span<const Int> S, const Instance& inst) {
  require_factor_two(inst);
  require_members(S, inst);
  const Int& am = inst.max();

  InjectionCertificate cert;
  if (is_case_two(inst)) {
    cert.case_id = 2;
    cert.b0 = inst.x.get_num() + am;
    if (std::find(S.begin(), S.end(), am) != S.end()) {
      throw Error("a_m is matched to b0 separately; remove it from S");
    }
  }

  for (const auto& a : S) {
    InjectionEntry e{a, largest_multiple_in_lower_half(a, inst), ElementType::case1, {}, {}};
    if (cert.case_id == 1) {
      e.left = e.u;
      e.right = e.u + a;
    } else if (!divides(a, *cert.b0)) {
      e.type = ElementType::t1;
      e.left = e.u;
      e.right = e.u + a;
    } else if (2 * a < am && !divides(Int(2 * a), *cert.b0)) {
      e.type = ElementType::t2;
      e.left = e.u - 2 * a;
      e.right = e.u + 2 * a;
    } else {
      e.type = ElementType::t3;
      e.left = e.u - a;
      e.right = e.u + a;
    }
    cert.entries.push_back(std::move(e));
  }

  if (const auto problems = check_injection(cert, inst); !problems.empty()) {
    throw Error("injection check failed: " + problems.front());
  }
  return cert;
}

std::vector<std::string> check_injection(const InjectionCertificate& cert, const Instance& inst) {
  std::vector<std::string> problems;
  try {
    require_factor_two(inst);
  } catch (const std::exception& e) {
    return {e.what()};
  }
  const bool case2 = is_case_two(inst);
  if (cert.case_id != (case2 ? 2 : 1)) problems.push_back("case does not match a_m | x");
  if (case2 != cert.b0.has_value()) problems.push_back("b0 present iff case 2");
  if (case2 && cert.b0 && *cert.b0 != inst.x.get_num() + inst.max()) problems.push_back("b0 != x + a_m");
  if (!problems.empty()) return problems;

  const Halves h = halves_of(inst);
  std::set<std::pair<Int, Int>> pairs;
  std::set<Int> seen_a;
  for (const auto& e : cert.entries) {
    const std::string tag = "a = " + to_string(e.a) + ": ";
    if (!std::binary_search(inst.A.begin(), inst.A.end(), e.a)) {
      problems.push_back(tag + "not in A");
      continue;
    }
    if (!seen_a.insert(e.a).second) problems.push_back(tag + "repeated");
    if (case2 && e.a == inst.max()) problems.push_back(tag + "a_m belongs to the reserved edge");
    if (!divides(e.a, e.u) || !h.in_lower(e.u) || h.in_lower(e.u + e.a)) {
      problems.push_back(tag + "u is not the largest multiple in B-");
    }

    ElementType expected = ElementType::case1;
    Int offset = e.a;
    if (case2) {
      if (!divides(e.a, *cert.b0)) {
        expected = ElementType::t1;
      } else if (2 * e.a < inst.max() && !divides(Int(2 * e.a), *cert.b0)) {
        expected = ElementType::t2;
        offset = 2 * e.a;
      } else {
        expected = ElementType::t3;
      }
    }
    if (e.type != expected) problems.push_back(tag + "type should be " + std::string(type_name(expected)));
    const bool shifted = expected == ElementType::t2 || expected == ElementType::t3;
    const Int want_left = shifted ? Int(e.u - offset) : e.u;
    const Int want_right = e.u + offset;
    if (e.left != want_left || e.right != want_right) problems.push_back(tag + "pair differs from the rule");

    if (!divides(e.a, e.left) || !divides(e.a, e.right)) problems.push_back(tag + "pair not divisible by a");
    if (!h.in_lower(e.left) || (case2 && e.left == *cert.b0)) problems.push_back(tag + "left outside B-");
    if (!h.in_upper(e.right)) problems.push_back(tag + "right outside B+");
    if (!pairs.insert({e.left, e.right}).second) problems.push_back(tag + "pair collides (not injective)");
  }
  return problems;
}

NeighborhoodCheck neighborhood_bound_check(std::span<const Int> S, const Instance& inst) {
  require_factor_two(inst);
  require_members(S, inst);
  const bool case2 = is_case_two(inst);
  std::optional<Int> b0;
  if (case2) {
    b0 = inst.x.get_num() + inst.max();
    if (std::find(S.begin(), S.end(), inst.max()) != S.end()) {
      throw Error("a_m is matched to b0 separately; remove it from S");
    }
  }
  const Halves h = halves_of(inst);
  std::set<Int> gamma;
  for (const auto& a : S) {
    for (auto& b : divgraph::multiples_in_interval(a, h.x, h.upper)) gamma.insert(std::move(b));
  }
  if (b0) gamma.erase(*b0);

  NeighborhoodCheck out;
  out.set_size = S.size();
  out.gamma_size = gamma.size();
  for (const auto& b : gamma) (h.in_lower(b) ? out.gamma_minus : out.gamma_plus) += 1;
  out.ok = out.gamma_size * out.gamma_size >= 4 * out.set_size;
  return out;
}

LowerBoundCertificate lower_bound_certificate(const Instance& inst, std::uint64_t cap) {
  require_factor_two(inst);
  LowerBoundCertificate out;
  const auto graph = divgraph::build_graph(inst, divgraph::BMode::multiples_only, cap);
  const auto S = default_scan_set(inst);
  out.injection = build_injection(S, inst);
  out.neighborhood = neighborhood_bound_check(S, inst);
  out.case_id = out.injection.case_id;
  if (out.case_id == 1) {
    out.matching = divgraph::max_matching(graph);
  } else {
    const Int b0 = *out.injection.b0;
    out.matching = divgraph::max_matching(graph, {inst.size() - 1, b0});
    out.reserved_edge = divgraph::MatchedPair{inst.max(), b0};
    out.matching.pairs.push_back(*out.reserved_edge);
  }
  const std::uint64_t m = inst.size();
  out.bound = static_cast<std::size_t>(std::min(m, numtheory::ceil_two_sqrt(m)));
  out.satisfied = out.matching.size() >= out.bound;
  return out;
}

}  // namespace multmatch::hall
