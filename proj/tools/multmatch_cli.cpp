// multmatch: construct and verify witnesses, match, scan, and emit
// certificates for the matching-to-multiples problem.
//
// Exit codes: 0 success or verified, 1 a mathematical check failed or a cap
// was exceeded, 2 usage or parse error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "multmatch/certificate.hpp"

namespace {

using namespace multmatch;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

std::vector<Int> parse_set(const std::string& text) {
  std::vector<Int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw std::invalid_argument("empty element in --set");
    out.push_back(parse_int(item.substr(first, last - first + 1)));
  }
  if (out.empty()) throw std::invalid_argument("--set must list at least one integer");
  return out;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_rational(item));
  return out;
}

void write_json(const cert::json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open output file '" + out_path + "'");
  out << doc.dump(2) << '\n';
}

struct InstanceArgs {
  std::string set;
  std::string x = "0";
  std::string c = "2";
  std::string mode = "multiples-only";
  std::uint64_t interval_cap = divgraph::kDefaultIntervalCap;

  void attach(CLI::App* cmd, bool with_factor) {
    cmd->add_option("--set", set, "Strictly increasing positive integers, comma separated")->required();
    cmd->add_option("--x", x, "Left endpoint, integer or p/q")->capture_default_str();
    if (with_factor) {
      cmd->add_option("--c", c, "Interval factor, 2 <= c < 3")->capture_default_str();
      cmd->add_option("--mode", mode, "B mode: full or multiples-only")->capture_default_str();
    }
    cmd->add_option("--interval-cap", interval_cap, "Largest |B| built")->capture_default_str();
  }

  divgraph::Instance instance() const {
    return divgraph::Instance::make(parse_set(set), parse_rational(x), parse_rational(c));
  }
};

int run(int argc, char** argv) {
  CLI::App app{"Witnesses, matchings and certificates for matching integers to distinct multiples"};
  app.require_subcommand(1);
  std::string out_path;

  auto* construct = app.add_subcommand("construct", "Build the extremal witness for (s, t)");
  std::uint64_t s = 0, t = 0;
  std::string epsilon;
  construct->add_option("--s", s)->required();
  construct->add_option("--t", t)->required();
  construct->add_option("--epsilon", epsilon, "Widen the interval to (3 - eps) max A, eps = p/q in (0, 1)");
  construct->add_option("--out", out_path, "Write the certificate here instead of stdout");

  auto* verify = app.add_subcommand("verify", "Re-verify a certificate of any kind");
  std::string cert_path;
  verify->add_option("--cert", cert_path)->required();

  InstanceArgs match_args;
  auto* match = app.add_subcommand("match", "Maximum matching in the divisibility graph");
  match_args.attach(match, true);
  match->add_option("--out", out_path);

  InstanceArgs hall_args;
  std::size_t subset_cap = divgraph::kDefaultSubsetCap;
  auto* hall_cmd = app.add_subcommand("hall", "Hall deficiency over all nonempty subsets");
  hall_args.attach(hall_cmd, true);
  hall_cmd->add_option("--subset-cap", subset_cap, "Largest |A| scanned")->capture_default_str();
  hall_cmd->add_option("--out", out_path);

  InstanceArgs phi_args;
  std::string subset;
  auto* phi = app.add_subcommand("phi", "Injection certificate for S (default A, or A without max in case 2)");
  phi_args.attach(phi, false);
  phi->add_option("--subset", subset, "Elements of S, comma separated");
  phi->add_option("--out", out_path);

  search::ScanConfig scan_cfg;
  std::string x_values;
  auto* scan = app.add_subcommand("scan", "Exhaustive lower-bound scan over m-subsets of [1..max-value]");
  scan->add_option("--m", scan_cfg.m)->required();
  scan->add_option("--max-value", scan_cfg.max_value)->required();
  scan->add_option("--jobs", scan_cfg.parallelism, "Worker threads")->capture_default_str();
  scan->add_option("--x-values", x_values, "Explicit x values instead of the canonical ones");
  scan->add_option("--budget", scan_cfg.budget, "Largest estimated number of (A, x) pairs")->capture_default_str();
  scan->add_option("--period-cap", scan_cfg.period_cap, "Largest lcm(A)")->capture_default_str();
  scan->add_option("--witnesses", scan_cfg.max_witnesses, "Argmin witnesses kept")->capture_default_str();
  scan->add_option("--out", out_path);

  std::uint64_t m = 0;
  auto* for_m = app.add_subcommand("witness-for-m", "m-element witness with at most ceil(2 sqrt m) multiples");
  for_m->add_option("--m", m)->required();
  for_m->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*construct) {
      std::optional<Rational> eps;
      if (!epsilon.empty()) eps = parse_rational(epsilon);
      const auto w = construction::build_witness(s, t, eps);
      write_json(cert::emit(cert::make_envelope(cert::WitnessDocument{w, std::nullopt})), out_path);
      return kOk;
    }
    if (*verify) {
      std::ifstream in(cert_path);
      if (!in) throw std::invalid_argument("cannot read certificate '" + cert_path + "'");
      cert::json doc;
      try {
        doc = cert::json::parse(in);
      } catch (const cert::json::exception& e) {
        throw std::invalid_argument(std::string("certificate is not JSON: ") + e.what());
      }
      const auto result = cert::verify(cert::parse_envelope(doc));
      std::cout << result.report.dump(2) << '\n';
      return result.ok ? kOk : kCheckFailed;
    }
    if (*match) {
      const auto inst = match_args.instance();
      const auto mode = divgraph::parse_mode(match_args.mode);
      const auto graph = divgraph::build_graph(inst, mode, match_args.interval_cap);
      write_json(cert::emit(cert::make_envelope(cert::MatchingDocument{inst, mode, divgraph::max_matching(graph)})),
                 out_path);
      return kOk;
    }
    if (*hall_cmd) {
      const auto inst = hall_args.instance();
      const auto mode = divgraph::parse_mode(hall_args.mode);
      const auto graph = divgraph::build_graph(inst, mode, hall_args.interval_cap);
      divgraph::DeficiencyOptions opts;
      opts.subset_cap = subset_cap;
      const auto report = divgraph::deficiency_scan(graph, opts);
      write_json(cert::emit(cert::make_envelope(cert::DeficiencyDocument{inst, mode, report})), out_path);
      return kOk;
    }
    if (*phi) {
      const auto inst = phi_args.instance();
      const auto S = subset.empty() ? hall::default_scan_set(inst) : parse_set(subset);
      cert::InjectionDocument doc{inst, S, hall::build_injection(S, inst), hall::neighborhood_bound_check(S, inst)};
      write_json(cert::emit(cert::make_envelope(doc)), out_path);
      return kOk;
    }
    if (*scan) {
      if (!x_values.empty()) {
        scan_cfg.x_mode = search::XMode::explicit_list;
        scan_cfg.x_values = parse_rational_list(x_values);
      }
      const auto report = search::scan(scan_cfg);
      write_json(cert::emit(cert::make_envelope(cert::ScanDocument{report, scan_cfg.x_values})), out_path);
      return report.violations.empty() ? kOk : kCheckFailed;
    }
    if (*for_m) {
      const auto r = construction::witness_for_m(m);
      write_json(cert::emit(cert::make_envelope(cert::WitnessDocument{r.witness, r})), out_path);
      return kOk;
    }
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded (" << e.cap() << "): " << e.what() << '\n';
    return kCheckFailed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCheckFailed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
