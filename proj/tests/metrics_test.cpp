#include <gtest/gtest.h>

#include <random>

#include "sigtest/errors.hpp"
#include "sigtest/metrics.hpp"

using namespace sigtest;

namespace {
const ResponseCounts kModifierCounts{19, 28, 6, 50, 5, 43, 9, 103};
}

TEST(Metrics, ModifierRelationsSystem1) {
    const auto m = metrics_for(kModifierCounts, System::first);
    EXPECT_EQ(m.recall, Rational(47, 103));
    EXPECT_EQ(*m.precision, Rational(47, 95));
    EXPECT_EQ(format_percent(m.recall), "45.6%");
    EXPECT_EQ(format_percent(m.precision), "49.5%");
    EXPECT_EQ(format_percent(m.f_score), "47.5%");
    // F = 2R / (T + R + S)
    EXPECT_EQ(*m.f_score, Rational(94, 198));
}

TEST(Metrics, ModifierRelationsSystem2) {
    const auto m = metrics_for(kModifierCounts, System::second);
    EXPECT_EQ(m.recall, Rational(25, 103));
    EXPECT_EQ(*m.precision, Rational(25, 39));
    EXPECT_EQ(format_percent(m.recall), "24.3%");
    EXPECT_EQ(format_percent(m.precision), "64.1%");
    EXPECT_EQ(format_percent(m.f_score), "35.2%");
}

TEST(Metrics, PerfectSystem) {
    const ResponseCounts c{10, 0, 0, 0, 0, 0, 3, 10};
    const auto m = metrics_for(c, System::first);
    EXPECT_EQ(m.recall, Rational(1));
    EXPECT_EQ(*m.precision, Rational(1));
    EXPECT_EQ(*m.f_score, Rational(1));
    EXPECT_EQ(format_percent(m.f_score), "100.0%");
}

TEST(Metrics, EmptyOutputHasUndefinedPrecision) {
    const ResponseCounts c{0, 0, 4, 6, 0, 0, 1, 10};
    const auto m = metrics_for(c, System::first);
    EXPECT_EQ(m.recall, Rational(0));
    EXPECT_FALSE(m.precision.has_value());
    EXPECT_FALSE(m.f_score.has_value());
    EXPECT_EQ(format_percent(m.precision), "undef");
}

TEST(Metrics, OnlySpuriousResponsesLeaveFUndefined) {
    const ResponseCounts c{0, 0, 0, 5, 0, 2, 0, 5};
    const auto m = metrics_for(c, System::first);
    EXPECT_EQ(*m.precision, Rational(0));
    EXPECT_FALSE(m.f_score.has_value());
}

TEST(MetricDifference, Examples) {
    const auto a = metrics_for(kModifierCounts, System::first);
    const auto b = metrics_for(kModifierCounts, System::second);
    EXPECT_EQ(metric_difference(a, b, Metric::recall), Rational(22, 103));
    EXPECT_EQ(metric_difference(a, a, Metric::f_score), Rational(0));
    EXPECT_EQ(metric_difference(b, a, Metric::precision), Rational(25, 39) - Rational(47, 95));
}

TEST(MetricDifference, UndefinedSideThrows) {
    const ResponseCounts c{0, 0, 4, 6, 0, 0, 1, 10};
    EXPECT_THROW(metric_difference(metrics_for(c, System::first), metrics_for(c, System::second), Metric::precision),
                 DegenerateStatistic);
}

// Harmonic-mean bounds and F(a, a) = a over random counts.
TEST(MetricsProperty, HarmonicMeanBounds) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> cnt(0, 40);
    for (int i = 0; i < 5000; ++i) {
        ResponseCounts c{cnt(rng), cnt(rng), cnt(rng), cnt(rng), cnt(rng), cnt(rng), cnt(rng), 0};
        c.total_of_interest = c.c_both + c.c_only1 + c.c_only2 + c.miss_both;
        if (c.total_of_interest == 0) continue;
        for (auto sys : {System::first, System::second}) {
            const auto m = metrics_for(c, sys);
            if (!m.f_score) continue;
            const auto lo = std::min(m.recall, *m.precision);
            const auto hi = std::max(m.recall, *m.precision);
            EXPECT_LE(lo, *m.f_score);
            EXPECT_LE(*m.f_score, hi);
            if (m.recall == *m.precision) EXPECT_EQ(*m.f_score, m.recall);
            const auto r = c.recalled(sys), s = c.spurious(sys);
            EXPECT_EQ(*m.f_score, Rational(2 * r, c.total_of_interest + r + s));
        }
    }
}

TEST(Metrics, ParseMetric) {
    EXPECT_EQ(parse_metric("precision"), Metric::precision);
    EXPECT_EQ(parse_metric("f_score"), Metric::f_score);
    EXPECT_THROW(parse_metric("accuracy"), InputError);
}
