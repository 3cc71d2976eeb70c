#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "sigtest/analytic_tests.hpp"
#include "sigtest/data_model.hpp"
#include "sigtest/metrics.hpp"
#include "sigtest/randomization.hpp"

namespace sigtest {

inline constexpr std::string_view kToolName = "sigtest";
inline constexpr std::string_view kToolVersion = "1.0.0";

/// Which system a one-sided test hypothesizes to be better. `automatic`
/// follows the sign of the observed difference (system 1 on a tie).
enum class Better { automatic, first, second };

Better parse_better(std::string_view text);

struct TestRequest {
    Method method = Method::sign;
    /// Empty selects recall, or precision for chi2_2x2.
    std::optional<Metric> metric;
    /// Empty selects the default: one-sided, two-sided for chi2_2x2.
    std::optional<Sidedness> sidedness;
    Better better = Better::automatic;
    std::uint64_t trials = kDefaultTrials;
    std::uint64_t seed = 0;
    int exact_threshold = kDefaultExactThreshold;
    bool verify = false;
    double alpha = 0.05;
    unsigned workers = 0;
};

/// Successes and trials behind a metric when it is read as a single
/// proportion: recall R of T, precision R of R+S, F 2R of T+R+S.
struct ProportionView {
    std::int64_t successes = 0;
    std::int64_t trials = 0;
};

ProportionView proportion_view(const ResponseCounts& counts, System system, Metric metric);

nlohmann::json metrics_json(const ResponseCounts& counts);
nlohmann::json correlation_json(const ResponseCounts& counts);
nlohmann::json test_result_json(const TestResult& r, Metric metric, double alpha);
nlohmann::json randomization_json(const RandomizationResult& r, const RandomizationPlan& plan, double alpha);
nlohmann::json verification_json(const VerificationReport& v);

/// Full `metrics` report body (without tool/invocation header).
nlohmann::json metrics_report(const ResponseCounts& counts);

/// Full `test` report body. Throws InvalidCombination for disallowed
/// method/metric/sidedness pairings, DegenerateStatistic for statistics
/// that cannot be formed, InputError for bad input.
nlohmann::json test_report(const ResponseCounts& counts, const TestRequest& request);

std::string render_metrics_text(const nlohmann::json& report);
std::string render_test_text(const nlohmann::json& report);

}  // namespace sigtest
