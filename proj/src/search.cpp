#include "multmatch/search.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "multmatch/error.hpp"
#include "multmatch/numtheory.hpp"

namespace multmatch::search {
namespace {

Int lcm_of(const std::vector<Int>& A) {
  Int L = 1;
  for (const auto& a : A) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), a.get_mpz_t());
  return L;
}

Int binomial(std::uint32_t n, std::uint32_t k) {
  Int out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

std::vector<std::vector<std::uint32_t>> all_subsets(std::uint32_t n, std::uint32_t m) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> current(m);
  for (std::uint32_t i = 0; i < m; ++i) current[i] = i + 1;
  while (true) {
    out.push_back(current);
    std::int64_t i = static_cast<std::int64_t>(m) - 1;
    while (i >= 0 && current[i] == n - m + 1 + static_cast<std::uint32_t>(i)) --i;
    if (i < 0) break;
    ++current[i];
    for (auto k = static_cast<std::size_t>(i) + 1; k < m; ++k) current[k] = current[k - 1] + 1;
  }
  return out;
}

struct SubsetResult {
  std::uint64_t checked = 0;
  std::size_t min_F = SIZE_MAX;
  std::vector<ScanInstance> argmin;
  std::vector<ScanInstance> violations;
};

SubsetResult scan_subset(const std::vector<std::uint32_t>& values, const ScanConfig& cfg,
                         std::size_t bound) {
  std::vector<Int> A(values.begin(), values.end());
  SubsetResult r;
  const bool fast = cfg.x_mode == XMode::canonical && cfg.max_value <= divgraph::kSmallMaxValue;

  auto record = [&](const Rational& x, std::size_t F) {
    ++r.checked;
    if (F < r.min_F) {
      r.min_F = F;
      r.argmin.clear();
    }
    if (F == r.min_F && r.argmin.size() < cfg.max_witnesses) r.argmin.push_back({A, x, F});
    if (F < bound) r.violations.push_back({A, x, F});
  };

  if (fast) {
    const Int L = lcm_of(A);
    if (L > Int(static_cast<unsigned long>(cfg.period_cap))) {
      throw CapExceeded("period-cap", "period too large: lcm(A) = " + to_string(L));
    }
    const auto period = static_cast<std::int64_t>(L.get_ui());
    for (int half = 0; half < 2; ++half) {
      for (std::int64_t base = 0; base < period; ++base) {
        const auto F = divgraph::small_matching_size(values, base, half != 0);
        record(half ? Rational(Int(2 * base + 1), Int(2)) : Rational(Int(base)), F);
      }
    }
    return r;
  }

  const auto xs = cfg.x_mode == XMode::canonical ? canonical_x_values(A, cfg.period_cap) : cfg.x_values;
  for (const auto& x : xs) {
    const auto inst = divgraph::Instance::make(A, x);
    const auto graph = divgraph::build_graph(inst, divgraph::BMode::multiples_only, cfg.b_cap);
    record(x, divgraph::max_matching(graph).size());
  }
  return r;
}

}  // namespace

std::vector<Rational> canonical_x_values(const std::vector<Int>& A, std::uint64_t period_cap) {
  const Int L = lcm_of(A);
  if (L > Int(static_cast<unsigned long>(period_cap))) {
    throw CapExceeded("period-cap", "period too large: lcm(A) = " + to_string(L) + " exceeds " +
                                        std::to_string(period_cap));
  }
  std::vector<Rational> out;
  for (Int k = 0; k < L; ++k) out.emplace_back(k);
  for (Int k = 0; k < L; ++k) out.emplace_back(Int(2 * k + 1), Int(2));
  return out;
}

Rational canonical_representative(const std::vector<Int>& A, const Rational& x) {
  const Int L = lcm_of(A);
  if (is_integral(x)) return Rational(mod_floor(x.get_num(), L));
  return Rational(mod_floor(floor_of(x), L)) + Rational(1, 2);
}

Int estimate_work(const ScanConfig& cfg) {
  if (cfg.m == 0 || cfg.m > cfg.max_value) throw std::invalid_argument("scan: need 1 <= m <= max_value");
  const Int subsets = binomial(cfg.max_value, cfg.m);
  if (cfg.x_mode == XMode::explicit_list) return subsets * static_cast<unsigned long>(cfg.x_values.size());
  // lcm of any m-subset is at most lcm(1..n) and at most the product of the m largest values.
  Int product = 1;
  for (std::uint32_t k = 0; k < cfg.m; ++k) product *= cfg.max_value - k;
  const Int range_lcm = numtheory::lcm_range(cfg.max_value);
  return subsets * 2 * std::min(product, range_lcm);
}

ScanReport scan(const ScanConfig& cfg) {
  const Int estimate = estimate_work(cfg);
  if (estimate > Int(static_cast<unsigned long>(cfg.budget))) {
    throw CapExceeded("scan-budget", "scan budget exceeded: estimate " + to_string(estimate) +
                                         " > budget " + std::to_string(cfg.budget));
  }
  if (cfg.x_mode == XMode::explicit_list && cfg.x_values.empty()) {
    throw std::invalid_argument("scan: explicit x mode needs at least one x value");
  }

  const auto subsets = all_subsets(cfg.max_value, cfg.m);
  const std::size_t bound = static_cast<std::size_t>(
      std::min<std::uint64_t>(cfg.m, numtheory::ceil_two_sqrt(std::uint64_t{cfg.m})));
  std::vector<SubsetResult> results(subsets.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto worker = [&] {
    try {
      for (std::size_t i = next++; i < subsets.size(); i = next++) {
        results[i] = scan_subset(subsets[i], cfg, bound);
      }
    } catch (...) {
      std::lock_guard lock(failure_lock);
      if (!failure) failure = std::current_exception();
      next = subsets.size();
    }
  };
  const unsigned jobs = std::max(1u, cfg.parallelism);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < jobs; ++k) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  ScanReport report;
  report.m = cfg.m;
  report.max_value = cfg.max_value;
  report.x_mode = cfg.x_mode;
  report.lower_bound = bound;
  report.subsets_checked = subsets.size();
  report.min_F = SIZE_MAX;
  for (const auto& r : results) {
    report.instances_checked += r.checked;
    report.min_F = std::min(report.min_F, r.min_F);
    report.violations.insert(report.violations.end(), r.violations.begin(), r.violations.end());
  }
  for (const auto& r : results) {
    if (r.min_F != report.min_F) continue;
    for (const auto& w : r.argmin) {
      if (report.argmin.size() >= cfg.max_witnesses) break;
      report.argmin.push_back(w);
    }
  }
  return report;
}

}  // namespace multmatch::search
