#pragma once

// JSON certificate envelopes: {"kind", "version", "payload"}. Every integer
// is a decimal string and every rational a "p/q" (or "p") string, so values
// beyond double precision survive any JSON tool.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "multmatch/construction.hpp"
#include "multmatch/divgraph.hpp"
#include "multmatch/hall.hpp"
#include "multmatch/search.hpp"

namespace multmatch::cert {

using json = nlohmann::ordered_json;

inline constexpr std::string_view kVersion = "1";

enum class Kind { witness, matching, deficiency, injection, scan_report };

std::string_view kind_name(Kind kind);
Kind parse_kind(std::string_view text);

struct Envelope {
  Kind kind = Kind::witness;
  std::string version{kVersion};
  json payload;
};

json emit(const Envelope& env);
/// Throws std::invalid_argument on unknown kinds, versions or shapes.
Envelope parse_envelope(const json& doc);

struct WitnessDocument {
  construction::ConstructionWitness witness;
  std::optional<construction::WitnessForM> reduction;
};

struct MatchingDocument {
  divgraph::Instance instance;
  divgraph::BMode mode = divgraph::BMode::multiples_only;
  divgraph::MatchingCertificate matching;
};

struct DeficiencyDocument {
  divgraph::Instance instance;
  divgraph::BMode mode = divgraph::BMode::multiples_only;
  divgraph::DeficiencyReport report;
};

struct InjectionDocument {
  divgraph::Instance instance;
  std::vector<Int> S;
  hall::InjectionCertificate injection;
  hall::NeighborhoodCheck neighborhood;
};

struct ScanDocument {
  search::ScanReport report;
  std::vector<Rational> x_values;  // explicit x mode only
};

Envelope make_envelope(const WitnessDocument& doc);
Envelope make_envelope(const MatchingDocument& doc);
Envelope make_envelope(const DeficiencyDocument& doc);
Envelope make_envelope(const InjectionDocument& doc);
Envelope make_envelope(const ScanDocument& doc);

WitnessDocument witness_document(const Envelope& env);
MatchingDocument matching_document(const Envelope& env);
DeficiencyDocument deficiency_document(const Envelope& env);
InjectionDocument injection_document(const Envelope& env);
ScanDocument scan_document(const Envelope& env);

json instance_to_json(const divgraph::Instance& inst);
divgraph::Instance instance_from_json(const json& j);

struct VerifyResult {
  bool ok = false;
  json report;  // machine-readable per-claim results
};

/// Re-derives a certificate of any kind from its own inputs.
VerifyResult verify(const Envelope& env);

}  // namespace multmatch::cert
