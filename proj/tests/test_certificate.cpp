#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "multmatch/certificate.hpp"

using namespace multmatch;
using namespace multmatch::cert;

namespace {

std::vector<Int> ints(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

// Payloads must never contain JSON numbers.
bool no_numbers(const json& j) {
  if (j.is_number()) return false;
  if (j.is_structured()) {
    for (const auto& item : j) {
      if (!no_numbers(item)) return false;
    }
  }
  return true;
}

Envelope through_text(const Envelope& env) { return parse_envelope(json::parse(emit(env).dump(2))); }

divgraph::Instance random_instance(std::mt19937_64& rng) {
  const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 7)(rng);
  std::set<long> pick;
  while (pick.size() < m) pick.insert(std::uniform_int_distribution<long>(1, 40)(rng));
  const long tx = std::uniform_int_distribution<long>(-80, 80)(rng);
  return divgraph::Instance::make({pick.begin(), pick.end()}, Rational(Int(tx), Int(2)));
}

}  // namespace

TEST_CASE("kind names") {
  for (auto k : {Kind::witness, Kind::matching, Kind::deficiency, Kind::injection, Kind::scan_report}) {
    CHECK(parse_kind(kind_name(k)) == k);
  }
  CHECK(kind_name(Kind::scan_report) == "scan-report");
  CHECK_THROWS_AS(parse_kind("proof"), std::invalid_argument);
}

TEST_CASE("envelope shape and rejection") {
  const auto w = construction::build_witness(2, 2);
  const json doc = emit(make_envelope(WitnessDocument{w, std::nullopt}));
  CHECK(doc.at("kind") == "witness");
  CHECK(doc.at("version") == "1");
  CHECK(doc.at("payload").at("M") == "54");
  CHECK(doc.at("payload").at("x0") == "195842");
  CHECK(doc.at("payload").at("interval_factor") == "2");
  CHECK(no_numbers(doc.at("payload")));
  std::vector<std::string> keys;
  for (auto it = doc.begin(); it != doc.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"kind", "version", "payload"});

  auto bad = doc;
  bad["kind"] = "proof";
  CHECK_THROWS_AS(parse_envelope(bad), std::invalid_argument);
  bad = doc;
  bad["version"] = "2";
  CHECK_THROWS_AS(parse_envelope(bad), std::invalid_argument);
  bad = doc;
  bad.erase("payload");
  CHECK_THROWS_AS(parse_envelope(bad), std::invalid_argument);
  bad = doc;
  bad["payload"]["M"] = 54;
  CHECK_THROWS_AS(witness_document(parse_envelope(bad)), std::invalid_argument);
  bad = doc;
  bad["payload"]["M"] = "54.0";
  CHECK_THROWS_AS(witness_document(parse_envelope(bad)), std::invalid_argument);
  CHECK_THROWS_AS(matching_document(parse_envelope(doc)), std::invalid_argument);
}

TEST_CASE("witness round trip and verification") {
  const auto w = construction::build_witness(2, 3, Rational(1, 2));
  const auto env = make_envelope(WitnessDocument{w, std::nullopt});
  const auto back = witness_document(through_text(env));
  CHECK(back.witness == w);
  CHECK_FALSE(back.reduction.has_value());
  CHECK(emit(env).at("payload").at("interval_factor") == "5/2");
  const auto v = verify(env);
  CHECK(v.ok);
  CHECK(v.report.at("kind") == "witness");

  const auto r = construction::witness_for_m(8);
  const auto renv = make_envelope(WitnessDocument{r.witness, r});
  const auto rback = witness_document(through_text(renv));
  REQUIRE(rback.reduction.has_value());
  CHECK(rback.reduction->instance == r.instance);
  CHECK(rback.reduction->predicted_bound == 6);
  CHECK(verify(renv).ok);

  auto corrupt = emit(env);
  corrupt["payload"]["x0"] = to_string(Int(w.x0 + 1));
  const auto cv = verify(parse_envelope(corrupt));
  CHECK_FALSE(cv.ok);
  bool flagged = false;
  for (const auto& c : cv.report.at("claims")) {
    if (c.at("name") == "x0_congruences") flagged = !c.at("ok").get<bool>();
  }
  CHECK(flagged);
}

TEST_CASE("matching, deficiency and injection round trips") {
  std::mt19937_64 rng(0xce27);
  for (int iter = 0; iter < 200; ++iter) {
    const auto inst = random_instance(rng);
    for (auto mode : {divgraph::BMode::full, divgraph::BMode::multiples_only}) {
      const auto g = divgraph::build_graph(inst, mode);
      const MatchingDocument md{inst, mode, divgraph::max_matching(g)};
      const auto menv = make_envelope(md);
      CHECK(no_numbers(menv.payload));
      const auto mback = matching_document(through_text(menv));
      CHECK(mback.instance == inst);
      CHECK(mback.mode == mode);
      CHECK(mback.matching == md.matching);
      CHECK(verify(menv).ok);

      const DeficiencyDocument dd{inst, mode, divgraph::deficiency_scan(g)};
      const auto denv = make_envelope(dd);
      CHECK(no_numbers(denv.payload));
      const auto dback = deficiency_document(through_text(denv));
      CHECK(dback.report == dd.report);
      CHECK(verify(denv).ok);
    }
    const auto S = hall::default_scan_set(inst);
    const InjectionDocument id{inst, S, hall::build_injection(S, inst), hall::neighborhood_bound_check(S, inst)};
    const auto ienv = make_envelope(id);
    CHECK(no_numbers(ienv.payload));
    const auto iback = injection_document(through_text(ienv));
    CHECK(iback.S == S);
    CHECK(iback.injection == id.injection);
    CHECK(iback.neighborhood.gamma_size == id.neighborhood.gamma_size);
    CHECK(verify(ienv).ok);
  }
}

TEST_CASE("verification catches corrupted documents") {
  const auto inst = divgraph::Instance::make(ints({2, 3, 4}), Rational(4));
  const auto g = divgraph::build_graph(inst);

  MatchingDocument md{inst, divgraph::BMode::multiples_only, divgraph::max_matching(g)};
  md.matching.pairs.pop_back();
  CHECK_FALSE(verify(make_envelope(md)).ok);  // sound but not maximum
  md = {inst, divgraph::BMode::multiples_only, divgraph::max_matching(g)};
  md.matching.pairs[0].b += 1;
  CHECK_FALSE(verify(make_envelope(md)).ok);

  DeficiencyDocument dd{inst, divgraph::BMode::multiples_only, divgraph::deficiency_scan(g)};
  dd.report.konig_ore_size += 1;
  CHECK_FALSE(verify(make_envelope(dd)).ok);

  const auto S = ints({2, 3});
  InjectionDocument id{inst, S, hall::build_injection(S, inst), hall::neighborhood_bound_check(S, inst)};
  id.injection.entries[1].left = 3;
  CHECK_FALSE(verify(make_envelope(id)).ok);
  id = {inst, S, hall::build_injection(S, inst), hall::neighborhood_bound_check(S, inst)};
  id.neighborhood.gamma_plus += 1;
  CHECK_FALSE(verify(make_envelope(id)).ok);
  id = {inst, ints({2}), hall::build_injection(S, inst), hall::neighborhood_bound_check(S, inst)};
  CHECK_FALSE(verify(make_envelope(id)).ok);
}

TEST_CASE("scan report round trip") {
  search::ScanConfig cfg;
  cfg.m = 3;
  cfg.max_value = 6;
  const ScanDocument sd{search::scan(cfg), {}};
  const auto env = make_envelope(sd);
  CHECK(no_numbers(env.payload));
  CHECK(scan_document(through_text(env)).report == sd.report);
  CHECK(verify(env).ok);

  auto tampered = sd;
  tampered.report.instances_checked += 2;
  CHECK_FALSE(verify(make_envelope(tampered)).ok);

  search::ScanConfig ex = cfg;
  ex.x_mode = search::XMode::explicit_list;
  ex.x_values = {Rational(1, 3), Rational(-5)};
  const ScanDocument ed{search::scan(ex), ex.x_values};
  const auto eenv = make_envelope(ed);
  const auto eback = scan_document(through_text(eenv));
  CHECK(eback.x_values == ex.x_values);
  CHECK(eback.report == ed.report);
  CHECK(verify(eenv).ok);
}

TEST_CASE("large values survive as strings") {
  const auto w = construction::build_witness(4, 4);
  const auto text = emit(make_envelope(WitnessDocument{w, std::nullopt})).dump();
  const auto back = witness_document(parse_envelope(json::parse(text)));
  CHECK(back.witness.x0 == w.x0);
  CHECK(w.x0 > Int("18446744073709551616"));
}
