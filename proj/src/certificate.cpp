#include "multmatch/certificate.hpp"

#include <algorithm>
#include <stdexcept>

namespace multmatch::cert {
namespace {

json num(const Int& v) { return to_string(v); }
json num(const Rational& v) { return to_string(v); }
json num(std::uint64_t v) { return std::to_string(v); }

const json& field(const json& j, std::string_view key) {
  if (!j.is_object()) throw std::invalid_argument("expected a JSON object around '" + std::string(key) + "'");
  const auto it = j.find(key);
  if (it == j.end()) throw std::invalid_argument("missing field '" + std::string(key) + "'");
  return *it;
}

std::string text(const json& j, std::string_view key) {
  const json& v = field(j, key);
  if (!v.is_string()) throw std::invalid_argument("field '" + std::string(key) + "' must be a string");
  return v.get<std::string>();
}

Int get_int(const json& j, std::string_view key) { return parse_int(text(j, key)); }
Rational get_rational(const json& j, std::string_view key) { return parse_rational(text(j, key)); }

std::uint64_t get_count(const json& j, std::string_view key) {
  const Int v = get_int(j, key);
  if (v < 0 || !mpz_fits_ulong_p(v.get_mpz_t())) {
    throw std::invalid_argument("field '" + std::string(key) + "' out of range");
  }
  return v.get_ui();
}

bool get_bool(const json& j, std::string_view key) {
  const json& v = field(j, key);
  if (!v.is_boolean()) throw std::invalid_argument("field '" + std::string(key) + "' must be a boolean");
  return v.get<bool>();
}

json int_list(const std::vector<Int>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(num(v));
  return out;
}

std::vector<Int> get_int_list(const json& j, std::string_view key) {
  const json& arr = field(j, key);
  if (!arr.is_array()) throw std::invalid_argument("field '" + std::string(key) + "' must be an array");
  std::vector<Int> out;
  for (const auto& v : arr) {
    if (!v.is_string()) throw std::invalid_argument("entries of '" + std::string(key) + "' must be strings");
    out.push_back(parse_int(v.get<std::string>()));
  }
  return out;
}

const json& get_array(const json& j, std::string_view key) {
  const json& arr = field(j, key);
  if (!arr.is_array()) throw std::invalid_argument("field '" + std::string(key) + "' must be an array");
  return arr;
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed certificate: ") + e.what());
  }
}

void expect_kind(const Envelope& env, Kind kind) {
  if (env.kind != kind) {
    throw std::invalid_argument("expected a '" + std::string(kind_name(kind)) + "' certificate, got '" +
                                std::string(kind_name(env.kind)) + "'");
  }
}

json scan_instance_json(const search::ScanInstance& s) {
  return json{{"A", int_list(s.A)}, {"x", num(s.x)}, {"F", num(std::uint64_t{s.F})}};
}

search::ScanInstance scan_instance_from(const json& j) {
  return {get_int_list(j, "A"), get_rational(j, "x"), static_cast<std::size_t>(get_count(j, "F"))};
}

json claims_json(const std::vector<construction::ClaimResult>& claims) {
  json out = json::array();
  for (const auto& c : claims) {
    json item{{"name", c.name}, {"ok", c.ok}};
    if (!c.detail.empty()) item["detail"] = c.detail;
    out.push_back(std::move(item));
  }
  return out;
}

}  // namespace

std::string_view kind_name(Kind kind) {
  switch (kind) {
    case Kind::witness: return "witness";
    case Kind::matching: return "matching";
    case Kind::deficiency: return "deficiency";
    case Kind::injection: return "injection";
    case Kind::scan_report: return "scan-report";
  }
  return "?";
}

Kind parse_kind(std::string_view name) {
  for (Kind k : {Kind::witness, Kind::matching, Kind::deficiency, Kind::injection, Kind::scan_report}) {
    if (kind_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown certificate kind: '" + std::string(name) + "'");
}

json emit(const Envelope& env) {
  return json{{"kind", kind_name(env.kind)}, {"version", env.version}, {"payload", env.payload}};
}

Envelope parse_envelope(const json& doc) {
  return guarded([&] {
    Envelope env;
    env.kind = parse_kind(text(doc, "kind"));
    env.version = text(doc, "version");
    if (env.version != kVersion) throw std::invalid_argument("unsupported certificate version '" + env.version + "'");
    env.payload = field(doc, "payload");
    if (!env.payload.is_object()) throw std::invalid_argument("payload must be an object");
    return env;
  });
}

json instance_to_json(const divgraph::Instance& inst) {
  return json{{"A", int_list(inst.A)}, {"x", num(inst.x)}, {"c", num(inst.c)}};
}

divgraph::Instance instance_from_json(const json& j) {
  return guarded([&] {
    return divgraph::Instance::make(get_int_list(j, "A"), get_rational(j, "x"), get_rational(j, "c"));
  });
}

// witness

Envelope make_envelope(const WitnessDocument& doc) {
  const auto& w = doc.witness;
  json grid = json::array();
  for (const auto& row : w.alphas) grid.push_back(int_list(row));
  json payload{{"s", num(w.s)},
               {"t", num(w.t)},
               {"D", num(w.D)},
               {"P", int_list(w.P)},
               {"M", num(w.M)},
               {"alphas", grid},
               {"A", int_list(w.A())},
               {"x0", num(w.x0)},
               {"x", num(w.x)},
               {"interval_factor", num(w.interval_factor)},
               {"predicted_multiples", int_list(w.predicted_multiples)}};
  if (doc.reduction) {
    payload["reduction"] = json{{"m", num(doc.reduction->m)},
                                {"A", int_list(doc.reduction->instance.A)},
                                {"predicted_bound", num(doc.reduction->predicted_bound)}};
  }
  return {Kind::witness, std::string(kVersion), std::move(payload)};
}

WitnessDocument witness_document(const Envelope& env) {
  expect_kind(env, Kind::witness);
  return guarded([&] {
    const json& p = env.payload;
    WitnessDocument doc;
    auto& w = doc.witness;
    w.s = get_count(p, "s");
    w.t = get_count(p, "t");
    w.D = get_int(p, "D");
    w.P = get_int_list(p, "P");
    w.M = get_int(p, "M");
    for (const auto& row : get_array(p, "alphas")) {
      std::vector<Int> values;
      if (!row.is_array()) throw std::invalid_argument("alphas rows must be arrays");
      for (const auto& v : row) {
        if (!v.is_string()) throw std::invalid_argument("alphas entries must be strings");
        values.push_back(parse_int(v.get<std::string>()));
      }
      w.alphas.push_back(std::move(values));
    }
    if (get_int_list(p, "A") != w.A()) throw std::invalid_argument("field 'A' disagrees with the alpha grid");
    w.x0 = get_int(p, "x0");
    w.x = get_int(p, "x");
    w.interval_factor = get_rational(p, "interval_factor");
    w.predicted_multiples = get_int_list(p, "predicted_multiples");
    if (const auto it = p.find("reduction"); it != p.end()) {
      construction::WitnessForM r;
      r.m = get_count(*it, "m");
      r.witness = w;
      r.predicted_bound = get_count(*it, "predicted_bound");
      r.instance = divgraph::Instance::make(get_int_list(*it, "A"), Rational(w.x), Rational(2));
      doc.reduction = std::move(r);
    }
    return doc;
  });
}

// matching

Envelope make_envelope(const MatchingDocument& doc) {
  json pairs = json::array();
  for (const auto& [a, b] : doc.matching.pairs) pairs.push_back(json{{"a", num(a)}, {"b", num(b)}});
  json payload{{"instance", instance_to_json(doc.instance)},
               {"mode", divgraph::mode_name(doc.mode)},
               {"size", num(std::uint64_t{doc.matching.size()})},
               {"pairs", pairs}};
  return {Kind::matching, std::string(kVersion), std::move(payload)};
}

MatchingDocument matching_document(const Envelope& env) {
  expect_kind(env, Kind::matching);
  return guarded([&] {
    const json& p = env.payload;
    MatchingDocument doc{instance_from_json(field(p, "instance")), divgraph::parse_mode(text(p, "mode")), {}};
    for (const auto& item : get_array(p, "pairs")) {
      doc.matching.pairs.push_back({get_int(item, "a"), get_int(item, "b")});
    }
    if (get_count(p, "size") != doc.matching.size()) throw std::invalid_argument("size disagrees with pairs");
    return doc;
  });
}

// deficiency

Envelope make_envelope(const DeficiencyDocument& doc) {
  json indices = json::array();
  for (auto i : doc.report.worst_indices) indices.push_back(num(std::uint64_t{i}));
  json payload{{"instance", instance_to_json(doc.instance)},
               {"mode", divgraph::mode_name(doc.mode)},
               {"worst_set", int_list(doc.report.worst_set)},
               {"worst_indices", indices},
               {"gamma_size", num(std::uint64_t{doc.report.gamma_size})},
               {"deficiency", num(Int(static_cast<long>(doc.report.deficiency)))},
               {"konig_ore_size", num(std::uint64_t{doc.report.konig_ore_size})}};
  return {Kind::deficiency, std::string(kVersion), std::move(payload)};
}

DeficiencyDocument deficiency_document(const Envelope& env) {
  expect_kind(env, Kind::deficiency);
  return guarded([&] {
    const json& p = env.payload;
    DeficiencyDocument doc{instance_from_json(field(p, "instance")), divgraph::parse_mode(text(p, "mode")), {}};
    doc.report.worst_set = get_int_list(p, "worst_set");
    for (const auto& v : get_int_list(p, "worst_indices")) doc.report.worst_indices.push_back(v.get_ui());
    doc.report.gamma_size = get_count(p, "gamma_size");
    doc.report.deficiency = get_int(p, "deficiency").get_si();
    doc.report.konig_ore_size = get_count(p, "konig_ore_size");
    return doc;
  });
}

// injection

Envelope make_envelope(const InjectionDocument& doc) {
  json entries = json::array();
  for (const auto& e : doc.injection.entries) {
    entries.push_back(json{{"a", num(e.a)},
                           {"u", num(e.u)},
                           {"type", hall::type_name(e.type)},
                           {"left", num(e.left)},
                           {"right", num(e.right)}});
  }
  const auto& nb = doc.neighborhood;
  json payload{{"instance", instance_to_json(doc.instance)},
               {"S", int_list(doc.S)},
               {"case", num(std::uint64_t(doc.injection.case_id))},
               {"b0", doc.injection.b0 ? num(*doc.injection.b0) : json(nullptr)},
               {"entries", entries},
               {"neighborhood", json{{"set_size", num(std::uint64_t{nb.set_size})},
                                     {"gamma_size", num(std::uint64_t{nb.gamma_size})},
                                     {"gamma_minus", num(std::uint64_t{nb.gamma_minus})},
                                     {"gamma_plus", num(std::uint64_t{nb.gamma_plus})},
                                     {"ok", nb.ok}}}};
  return {Kind::injection, std::string(kVersion), std::move(payload)};
}

InjectionDocument injection_document(const Envelope& env) {
  expect_kind(env, Kind::injection);
  return guarded([&] {
    const json& p = env.payload;
    InjectionDocument doc;
    doc.instance = instance_from_json(field(p, "instance"));
    doc.S = get_int_list(p, "S");
    doc.injection.case_id = static_cast<int>(get_count(p, "case"));
    if (const json& b0 = field(p, "b0"); !b0.is_null()) doc.injection.b0 = get_int(p, "b0");
    for (const auto& e : get_array(p, "entries")) {
      doc.injection.entries.push_back({get_int(e, "a"), get_int(e, "u"), hall::parse_type(text(e, "type")),
                                       get_int(e, "left"), get_int(e, "right")});
    }
    const json& nb = field(p, "neighborhood");
    doc.neighborhood.set_size = get_count(nb, "set_size");
    doc.neighborhood.gamma_size = get_count(nb, "gamma_size");
    doc.neighborhood.gamma_minus = get_count(nb, "gamma_minus");
    doc.neighborhood.gamma_plus = get_count(nb, "gamma_plus");
    doc.neighborhood.ok = get_bool(nb, "ok");
    return doc;
  });
}

// scan report

Envelope make_envelope(const ScanDocument& doc) {
  const auto& r = doc.report;
  json argmin = json::array();
  for (const auto& s : r.argmin) argmin.push_back(scan_instance_json(s));
  json violations = json::array();
  for (const auto& s : r.violations) violations.push_back(scan_instance_json(s));
  json payload{{"m", num(std::uint64_t{r.m})},
               {"max_value", num(std::uint64_t{r.max_value})},
               {"x_mode", r.x_mode == search::XMode::canonical ? "canonical" : "explicit"},
               {"subsets_checked", num(r.subsets_checked)},
               {"instances_checked", num(r.instances_checked)},
               {"lower_bound", num(std::uint64_t{r.lower_bound})},
               {"min_F", num(std::uint64_t{r.min_F})},
               {"argmin", argmin},
               {"violations", violations}};
  if (r.x_mode == search::XMode::explicit_list) {
    json xs = json::array();
    for (const auto& x : doc.x_values) xs.push_back(num(x));
    payload["x_values"] = xs;
  }
  return {Kind::scan_report, std::string(kVersion), std::move(payload)};
}

ScanDocument scan_document(const Envelope& env) {
  expect_kind(env, Kind::scan_report);
  return guarded([&] {
    const json& p = env.payload;
    ScanDocument doc;
    auto& r = doc.report;
    r.m = static_cast<std::uint32_t>(get_count(p, "m"));
    r.max_value = static_cast<std::uint32_t>(get_count(p, "max_value"));
    const std::string mode = text(p, "x_mode");
    if (mode != "canonical" && mode != "explicit") throw std::invalid_argument("unknown x_mode '" + mode + "'");
    r.x_mode = mode == "canonical" ? search::XMode::canonical : search::XMode::explicit_list;
    r.subsets_checked = get_count(p, "subsets_checked");
    r.instances_checked = get_count(p, "instances_checked");
    r.lower_bound = get_count(p, "lower_bound");
    r.min_F = get_count(p, "min_F");
    for (const auto& s : get_array(p, "argmin")) r.argmin.push_back(scan_instance_from(s));
    for (const auto& s : get_array(p, "violations")) r.violations.push_back(scan_instance_from(s));
    if (r.x_mode == search::XMode::explicit_list) {
      for (const auto& x : get_array(p, "x_values")) {
        if (!x.is_string()) throw std::invalid_argument("x_values entries must be strings");
        doc.x_values.push_back(parse_rational(x.get<std::string>()));
      }
    }
    return doc;
  });
}

// verification

namespace {

VerifyResult finish(Kind kind, std::vector<construction::ClaimResult> claims, json extra = json::object()) {
  VerifyResult out;
  out.ok = std::all_of(claims.begin(), claims.end(), [](const auto& c) { return c.ok; });
  out.report = json{{"kind", kind_name(kind)}, {"ok", out.ok}, {"claims", claims_json(claims)}};
  for (auto it = extra.begin(); it != extra.end(); ++it) out.report[it.key()] = it.value();
  return out;
}

VerifyResult verify_witness_env(const Envelope& env) {
  const auto doc = witness_document(env);
  const auto v = construction::verify_witness(doc.witness);
  auto claims = v.claims;
  json extra{{"multiples_count", v.multiples_count},
             {"bound", v.bound},
             {"matching_size", v.matching_size},
             {"multiples", int_list(v.multiples)}};
  if (doc.reduction) {
    const auto rv = construction::verify_reduction(*doc.reduction);
    claims.insert(claims.end(), rv.claims.begin(), rv.claims.end());
    extra["reduction"] = json{{"m", doc.reduction->m},
                              {"multiples_count", rv.multiples_count},
                              {"predicted_bound", rv.bound},
                              {"matching_size", rv.matching_size}};
  }
  return finish(Kind::witness, std::move(claims), std::move(extra));
}

VerifyResult verify_matching_env(const Envelope& env) {
  const auto doc = matching_document(env);
  std::vector<construction::ClaimResult> claims;
  const auto problems = divgraph::check_matching(doc.instance, doc.matching);
  claims.push_back({"matching_sound", problems.empty(), problems.empty() ? "" : problems.front()});
  const auto best = divgraph::max_matching(divgraph::build_graph(doc.instance, doc.mode)).size();
  claims.push_back({"matching_maximum", best == doc.matching.size(),
                    "recomputed maximum " + std::to_string(best)});
  return finish(Kind::matching, std::move(claims), json{{"size", doc.matching.size()}});
}

VerifyResult verify_deficiency_env(const Envelope& env) {
  const auto doc = deficiency_document(env);
  const auto graph = divgraph::build_graph(doc.instance, doc.mode);
  const auto again = divgraph::deficiency_scan(graph);
  const auto matching = divgraph::max_matching(graph).size();
  std::vector<construction::ClaimResult> claims{
      {"deficiency_recomputed", again == doc.report, ""},
      {"konig_ore_equals_matching", doc.report.konig_ore_size == matching,
       "maximum matching " + std::to_string(matching)}};
  return finish(Kind::deficiency, std::move(claims), json{{"konig_ore_size", doc.report.konig_ore_size}});
}

VerifyResult verify_injection_env(const Envelope& env) {
  const auto doc = injection_document(env);
  std::vector<construction::ClaimResult> claims;
  std::vector<Int> entry_set;
  for (const auto& e : doc.injection.entries) entry_set.push_back(e.a);
  claims.push_back({"entries_cover_S", entry_set == doc.S, ""});
  const auto problems = hall::check_injection(doc.injection, doc.instance);
  claims.push_back({"injection_sound", problems.empty(), problems.empty() ? "" : problems.front()});
  try {
    const auto nb = hall::neighborhood_bound_check(doc.S, doc.instance);
    const bool same = nb.set_size == doc.neighborhood.set_size && nb.gamma_size == doc.neighborhood.gamma_size &&
                      nb.gamma_minus == doc.neighborhood.gamma_minus &&
                      nb.gamma_plus == doc.neighborhood.gamma_plus && nb.ok == doc.neighborhood.ok;
    claims.push_back({"neighborhood_recomputed", same, ""});
    claims.push_back({"neighborhood_bound", nb.ok,
                      std::to_string(nb.gamma_size) + "^2 >= 4 * " + std::to_string(nb.set_size)});
    claims.push_back({"product_bound", nb.set_size <= nb.gamma_minus * nb.gamma_plus, ""});
  } catch (const std::exception& e) {
    claims.push_back({"neighborhood_recomputed", false, e.what()});
  }
  return finish(Kind::injection, std::move(claims));
}

VerifyResult verify_scan_env(const Envelope& env) {
  const auto doc = scan_document(env);
  search::ScanConfig cfg;
  cfg.m = doc.report.m;
  cfg.max_value = doc.report.max_value;
  cfg.x_mode = doc.report.x_mode;
  cfg.x_values = doc.x_values;
  cfg.max_witnesses = doc.report.argmin.size();
  const auto again = search::scan(cfg);
  std::vector<construction::ClaimResult> claims{
      {"report_reproduced", again == doc.report, ""},
      {"no_violations", doc.report.violations.empty(), ""},
      {"min_F_at_least_bound", doc.report.min_F >= doc.report.lower_bound, ""}};
  return finish(Kind::scan_report, std::move(claims), json{{"min_F", doc.report.min_F}});
}

}  // namespace

VerifyResult verify(const Envelope& env) {
  switch (env.kind) {
    case Kind::witness: return verify_witness_env(env);
    case Kind::matching: return verify_matching_env(env);
    case Kind::deficiency: return verify_deficiency_env(env);
    case Kind::injection: return verify_injection_env(env);
    case Kind::scan_report: return verify_scan_env(env);
  }
  throw std::invalid_argument("unknown certificate kind");
}

}  // namespace multmatch::cert
