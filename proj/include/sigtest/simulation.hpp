#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "sigtest/analytic_tests.hpp"
#include "sigtest/data_model.hpp"

namespace sigtest {

/// Synthetic paired-outcome experiment: n_items items, system i recalls
/// an item with probability p_i, and the two outcomes have correlation rho.
struct SimSpec {
    std::int64_t n_items = 200;
    double p1 = 0.5;
    double p2 = 0.5;
    double rho = 0.0;
    std::int64_t replicates = 10000;
    double alpha = 0.05;
    std::uint64_t seed = 0;
};

/// Joint cell probabilities of the bivariate Bernoulli with the spec's
/// marginals and correlation.
struct JointCells {
    double both = 0;
    double only1 = 0;
    double only2 = 0;
    double neither = 0;
};

/// Throws InputError when rho is not attainable for (p1, p2) or any other
/// field is out of range.
JointCells joint_cells(const SimSpec& spec);
void validate(const SimSpec& spec);

/// Outcomes for one replicate; depends only on (seed, replicate).
PairedOutcomes generate_correlated_pairs(const SimSpec& spec, std::uint64_t replicate = 0);

struct PowerRow {
    Method method = Method::sign;
    double rho = 0;
    std::int64_t n = 0;
    double rejection_rate = 0;
    double std_error = 0;
    std::int64_t rejections = 0;
    std::int64_t replicates = 0;
    /// Replicates where the statistic could not be formed (never rejected).
    std::int64_t degenerate = 0;
};

/// Applies each method at level alpha to every replicate: one-sided
/// (system 1 better) except chi2_2x2, which is two-sided by construction.
/// Needs at least 1000 replicates.
std::vector<PowerRow> power_study(const SimSpec& spec, std::span<const Method> methods, unsigned workers = 0);

/// CSV with header "method,rho,n,rejection_rate,std_error".
void write_power_csv(std::ostream& out, std::span<const PowerRow> rows, bool header = true);

}  // namespace sigtest
