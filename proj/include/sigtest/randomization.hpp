#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sigtest/analytic_tests.hpp"
#include "sigtest/data_model.hpp"
#include "sigtest/metrics.hpp"
#include "sigtest/numerics.hpp"
#include "sigtest/rational.hpp"

namespace sigtest {

enum class RandomizationMode { exact, approximate };

std::string_view to_string(RandomizationMode m);

inline constexpr int kDefaultExactThreshold = 20;
inline constexpr int kMaxExactThreshold = 30;
inline constexpr std::uint64_t kDefaultTrials = 1u << 20;

/// Stratified shuffle of the responses produced by exactly one system.
/// Shared responses stay with both systems in every trial.
struct RandomizationPlan {
    /// One entry per exclusive response: 1 when the response is an item of
    /// interest, 0 when spurious. Ordered c_only1, c_only2, s_only1, s_only2.
    std::vector<std::uint8_t> units;
    /// Assignment that reproduces the observed data (1 = system 1).
    std::vector<std::uint8_t> observed_assignment;
    std::int64_t shared_correct = 0;
    std::int64_t shared_spurious = 0;
    std::int64_t total_of_interest = 0;
    Metric metric = Metric::recall;
    Sidedness sidedness = Sidedness::one;
    /// Observed metric difference, system 1 minus system 2.
    Rational observed;
    RandomizationMode mode = RandomizationMode::approximate;
    std::uint64_t trials = kDefaultTrials;
    std::uint64_t master_seed = 0;
    int exact_threshold = kDefaultExactThreshold;
};

struct RandomizationResult {
    std::uint64_t nc = 0;
    std::uint64_t nt = 0;
    PValue p;
    Metric metric = Metric::recall;
    Sidedness sidedness = Sidedness::one;
    std::uint64_t seed = 0;
    RandomizationMode mode = RandomizationMode::approximate;
    Rational observed;
    /// No shuffleable units: nothing can be learned, p = 1.
    bool degenerate = false;
    /// Trials where the metric was undefined for a system; counted as
    /// qualifying.
    std::uint64_t undefined_trials = 0;
};

/// Throws DegenerateStatistic when the observed metric is undefined for
/// either system, InputError for an unusable threshold or trial count.
RandomizationPlan build_plan(const ResponseCounts& counts, Metric metric, Sidedness sidedness,
                             std::uint64_t trials = kDefaultTrials, std::uint64_t seed = 0,
                             int exact_threshold = kDefaultExactThreshold);

/// Metric difference (system 1 - system 2) when each unit k goes to system
/// 1 iff assignment[k] != 0. Empty when the metric is undefined for a side.
std::optional<Rational> run_trial(const RandomizationPlan& plan, std::span<const std::uint8_t> assignment);

/// Assignment drawn for approximate trial `trial_index`: each unit's bit is
/// fair and independent, determined by (seed, trial_index) alone.
std::vector<std::uint8_t> trial_assignment(const RandomizationPlan& plan, std::uint64_t trial_index);

/// workers == 0 picks the hardware concurrency. The counts do not depend
/// on the number of workers.
RandomizationResult randomization_test(const RandomizationPlan& plan, unsigned workers = 0);

/// Seed used for the second verification run. Injective, never a fixed point.
constexpr std::uint64_t derive_second_seed(std::uint64_t seed) {
    return seed ^ 0x9E3779B97F4A7C15ull;
}

struct VerificationReport {
    bool exact = false;
    std::uint64_t second_seed = 0;
    std::optional<RandomizationResult> first;
    std::optional<RandomizationResult> second;
    double abs_difference = 0.0;
    /// Recall significance over the same shuffles as `first` and `second`.
    std::optional<RandomizationResult> recall_first;
    std::optional<RandomizationResult> recall_second;
    std::optional<TestResult> sign;
    /// Monte Carlo standard error sqrt(p(1-p)/nt) at the sign-test p.
    double standard_error = 0.0;
    bool sign_agrees = false;
    std::string note;
};

/// Repeats an approximate run under a second seed and cross-checks the
/// recall estimate against the exact sign test.
VerificationReport verify(const RandomizationPlan& plan, unsigned workers = 0);

}  // namespace sigtest
