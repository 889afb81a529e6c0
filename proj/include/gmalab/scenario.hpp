#pragma once
#include <cstdint>
#include <string>

#include "json.hpp"

#include "gmalab/instances.hpp"

namespace gmalab {

// --oracle exhaustive|fast and --max-order; exhaustive enables the
// brute-force cross-checks on small coefficient algebras
struct RunOptions {
  bool exhaustive = true;
  unsigned long long max_order = 4096;
};

// one scenario object -> report document; throws error(bad_scenario) on
// schema violations
nlohmann::json run_scenario(const nlohmann::json& scenario, const RunOptions& opt);

// 0 = all invariants pass, 1 = invariant failure (report still valid),
// 2 = parse or schema error
struct BatchResult {
  nlohmann::json report;
  int status = 0;
};

// parse a scenario file (single object or array); array entries run
// concurrently and the report is assembled in input order
BatchResult run_scenario_text(const std::string& text, const RunOptions& opt);

nlohmann::json demo_report(const std::string& name, const RunOptions& opt);
BatchResult fuzz_report(const std::string& kind, std::size_t count, std::uint64_t seed,
                        const RunOptions& opt);

} // namespace gmalab
