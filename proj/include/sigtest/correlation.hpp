#pragma once

#include <cstdint>

#include "sigtest/data_model.hpp"

namespace sigtest {

/// Sample correlation of two systems' per-item outcomes together with the
/// sample standard deviations (n - 1 denominator) it was formed from.
struct CorrelationReport {
    double r12 = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    std::int64_t n = 0;
};

/// Throws DegenerateStatistic for n < 2 or a constant sequence; r12 is
/// undefined there, not zero.
CorrelationReport estimate_r12(const PairedOutcomes& pairs);

/// Standard deviation of a difference of two correlated variables.
double combine_sd(double s1, double s2, double r12);

/// Factor by which assuming independence overstates the standard deviation
/// of a difference when both sides share one standard deviation:
/// 1/sqrt(1 - r12). Returns +inf at r12 == 1.
double independence_inflation(double r12);

}  // namespace sigtest
