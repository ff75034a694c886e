#ifndef TAMEBOUNDS_SUITE_HPP
#define TAMEBOUNDS_SUITE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tamebounds/checks.hpp"

namespace tamebounds {

struct SuiteConfig {
    std::uint64_t seed = 42;
    /// Trials per property.
    std::uint64_t trials = 10;
    /// Per-property trial counts, keyed by property id.
    std::map<std::string, std::uint64_t> trial_overrides;
    std::vector<std::string> weights;
    std::vector<std::string> functions;
    std::vector<std::string> bodies;
    /// Relative slack of the derivative-norm spot check.
    double weight_spot_check = 1e-9;
    /// |S_t| at t = 1e-6 M0 must stay below this fraction of |K|.
    double zero_measure_fraction = 1e-2;
    long precision_cap = 4096;

    std::uint64_t trials_for(const std::string& id) const;
};

/// Parses and validates a JSON config; throws ParseError with the reason.
SuiteConfig parse_suite_config(const std::string& json_text);

struct SuiteRecord {
    std::string id;
    CheckRecord record;
    double seconds = 0;
};

struct SuiteSummary {
    std::size_t total = 0;
    std::size_t holds = 0;
    std::size_t violated = 0;
    std::size_t inconclusive = 0;
    std::size_t skipped = 0;
};

struct SuiteReport {
    SuiteConfig config;
    std::vector<SuiteRecord> records;
    SuiteSummary summary;
};

/// Property ids in run order, e.g. "bang.lemma".
const std::vector<std::string>& property_ids();

/// Runs every property with its trial count. Only ids matching `only` (all
/// when empty) are run. `progress` is called after each property.
SuiteReport run_suite(const SuiteConfig& config, const std::vector<std::string>& only = {},
                      const std::function<void(const std::string&, const SuiteSummary&)>& progress = {});

/// JSON text with a fixed key order; timings are included only on request so
/// that equal seeds give byte-identical reports.
std::string report_json(const SuiteReport& report, bool timing = false);

/// One record as a JSON object (the `check` command's output).
std::string record_json(const CheckRecord& record);

/// Tool version string.
const char* tool_version();

} // namespace tamebounds

#endif
