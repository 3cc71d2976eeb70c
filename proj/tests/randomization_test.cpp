#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "exact_oracle.hpp"
#include "sigtest/errors.hpp"
#include "sigtest/randomization.hpp"

using namespace sigtest;

namespace {

const ResponseCounts kModifierCounts{19, 28, 6, 50, 5, 43, 9, 103};

ResponseCounts random_small_counts(std::mt19937_64& rng, int max_units) {
    while (true) {
        ResponseCounts c;
        c.c_both = rng() % 6;
        c.c_only1 = rng() % 6;
        c.c_only2 = rng() % 6;
        c.miss_both = rng() % 10;
        c.s_both = rng() % 4;
        c.s_only1 = rng() % 6;
        c.s_only2 = rng() % 6;
        c.total_of_interest = c.c_both + c.c_only1 + c.c_only2 + c.miss_both;
        const auto units = c.c_only1 + c.c_only2 + c.s_only1 + c.s_only2;
        if (c.total_of_interest > 0 && units >= 1 && units <= max_units) return c;
    }
}

}  // namespace

TEST(BuildPlan, ModifierRelationsIsApproximate) {
    const auto plan = build_plan(kModifierCounts, Metric::recall, Sidedness::one);
    EXPECT_EQ(plan.units.size(), 86u);
    EXPECT_EQ(plan.mode, RandomizationMode::approximate);
    EXPECT_EQ(plan.trials, kDefaultTrials);
    EXPECT_EQ(plan.observed, Rational(22, 103));
    int correct = 0;
    for (auto u : plan.units) correct += u;
    EXPECT_EQ(correct, 34);
}

TEST(BuildPlan, SmallPlanIsExact) {
    const ResponseCounts c{3, 2, 0, 5, 1, 0, 0, 10};
    const auto plan = build_plan(c, Metric::recall, Sidedness::one);
    EXPECT_EQ(plan.units.size(), 2u);
    EXPECT_EQ(plan.mode, RandomizationMode::exact);
    EXPECT_EQ(plan.trials, 4u);
}

TEST(BuildPlan, IdenticalSystemsAreDegenerate) {
    const ResponseCounts c{7, 0, 0, 3, 2, 0, 0, 10};
    const auto plan = build_plan(c, Metric::f_score, Sidedness::one);
    EXPECT_TRUE(plan.units.empty());
    const auto res = randomization_test(plan);
    EXPECT_TRUE(res.degenerate);
    EXPECT_DOUBLE_EQ(res.p.value, 1.0);
}

TEST(BuildPlan, Errors) {
    EXPECT_THROW(build_plan(kModifierCounts, Metric::recall, Sidedness::one, 100, 0, 31), InputError);
    EXPECT_THROW(build_plan(kModifierCounts, Metric::recall, Sidedness::one, 0, 0), InputError);
    const ResponseCounts empty_output{0, 0, 4, 6, 0, 0, 1, 10};
    EXPECT_THROW(build_plan(empty_output, Metric::precision, Sidedness::one), DegenerateStatistic);
}

TEST(RunTrial, Examples) {
    const auto plan = build_plan(kModifierCounts, Metric::recall, Sidedness::one);
    std::vector<std::uint8_t> all_first(plan.units.size(), 1);
    EXPECT_EQ(*run_trial(plan, all_first), Rational(34, 103));

    // 17 correct units to each side
    std::vector<std::uint8_t> split(plan.units.size(), 0);
    int given = 0;
    for (std::size_t k = 0; k < plan.units.size(); ++k)
        if (plan.units[k] && given < 17) split[k] = 1, ++given;
    EXPECT_EQ(*run_trial(plan, split), Rational(0));

    for (auto m : {Metric::recall, Metric::precision, Metric::f_score}) {
        const auto p = build_plan(kModifierCounts, m, Sidedness::one);
        EXPECT_EQ(*run_trial(p, p.observed_assignment), p.observed);
    }
    EXPECT_THROW(run_trial(plan, std::vector<std::uint8_t>(3, 0)), InputError);
}

TEST(Randomization, ExactTwoUnitsRecall) {
    const ResponseCounts c{3, 2, 0, 5, 1, 0, 0, 10};
    const auto res = randomization_test(build_plan(c, Metric::recall, Sidedness::one));
    EXPECT_EQ(res.nc, 1u);
    EXPECT_EQ(res.nt, 4u);
    EXPECT_DOUBLE_EQ(res.p.value, 0.25);
    EXPECT_EQ(res.p.kind, PValueKind::exact);
}

TEST(Randomization, ExactMatchesEnumerationOracle) {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 150; ++trial) {
        const auto c = random_small_counts(rng, 16);
        for (int which = 0; which < 3; ++which) {
            const Metric metric = static_cast<Metric>(which);
            for (auto sided : {Sidedness::one, Sidedness::two}) {
                RandomizationPlan plan;
                try {
                    plan = build_plan(c, metric, sided);
                } catch (const DegenerateStatistic&) {
                    continue;
                }
                const auto res = randomization_test(plan, 2);
                const auto want = oracle::exact_randomization(c, which, sided == Sidedness::two);
                EXPECT_EQ(boost::multiprecision::cpp_int(res.nc), want.qualifying)
                    << "metric " << which << " sided " << int(sided);
                EXPECT_EQ(boost::multiprecision::cpp_int(res.nt), want.total);
            }
        }
    }
}

TEST(Randomization, ExactRecallEqualsBinomialClosedForm) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const auto c = random_small_counts(rng, 20);
        const auto res = randomization_test(build_plan(c, Metric::recall, Sidedness::one));
        const auto n = c.c_only1 + c.c_only2;
        boost::multiprecision::cpp_int upper = 0;
        for (auto k = c.c_only1; k <= n; ++k) upper += oracle::choose(n, k);
        upper <<= static_cast<unsigned>(c.s_only1 + c.s_only2);
        EXPECT_EQ(boost::multiprecision::cpp_int(res.nc), upper);
    }
}

TEST(Randomization, UndefinedTrialsCountAsQualifying) {
    // One correct unit for system 1, one spurious for system 2, nothing shared.
    const ResponseCounts c{0, 1, 0, 3, 0, 0, 1, 4};
    const auto res = randomization_test(build_plan(c, Metric::precision, Sidedness::one));
    EXPECT_EQ(res.nt, 4u);
    EXPECT_EQ(res.undefined_trials, 2u);
    // observed 1 - 0 = 1; qualifying: observed assignment plus the two undefined ones
    EXPECT_EQ(res.nc, 3u);
}

TEST(Randomization, ApproximateUsesBoundAndIsDeterministic) {
    const auto plan = build_plan(kModifierCounts, Metric::f_score, Sidedness::one, 20000, 99);
    const auto a = randomization_test(plan, 1);
    const auto b = randomization_test(plan, 2);
    const auto c = randomization_test(plan, 8);
    const auto d = randomization_test(plan, 8);
    EXPECT_EQ(a.nc, b.nc);
    EXPECT_EQ(a.nc, c.nc);
    EXPECT_EQ(c.nc, d.nc);
    EXPECT_EQ(a.p.kind, PValueKind::bound);
    EXPECT_DOUBLE_EQ(a.p.value, (a.nc + 1.0) / (a.nt + 1.0));
    EXPECT_EQ(a.seed, 99u);
}

TEST(Randomization, FastPathMatchesTrialAssignments) {
    for (auto metric : {Metric::recall, Metric::precision, Metric::f_score}) {
        for (auto sided : {Sidedness::one, Sidedness::two}) {
            const auto plan = build_plan(kModifierCounts, metric, sided, 3000, 5);
            std::uint64_t nc = 0;
            for (std::uint64_t t = 0; t < plan.trials; ++t) {
                const auto d = run_trial(plan, trial_assignment(plan, t));
                ASSERT_TRUE(d.has_value());
                nc += sided == Sidedness::one ? *d >= plan.observed : d->abs() >= plan.observed.abs();
            }
            EXPECT_EQ(randomization_test(plan).nc, nc);
        }
    }
}

TEST(Randomization, PrefixMonotonicity) {
    std::uint64_t prev = 0;
    for (std::uint64_t trials : {1000u, 2000u, 5000u, 5001u, 9000u}) {
        const auto res = randomization_test(build_plan(kModifierCounts, Metric::precision, Sidedness::two, trials, 3));
        EXPECT_GE(res.nc, prev);
        prev = res.nc;
    }
}

TEST(Randomization, SwapLabels) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 40; ++trial) {
        const auto c = random_small_counts(rng, 14);
        for (auto metric : {Metric::recall, Metric::precision, Metric::f_score}) {
            RandomizationPlan a, b;
            try {
                a = build_plan(c, metric, Sidedness::two);
                b = build_plan(c.swapped(), metric, Sidedness::two);
            } catch (const DegenerateStatistic&) {
                continue;
            }
            EXPECT_EQ(b.observed, -a.observed);
            EXPECT_EQ(randomization_test(a).nc, randomization_test(b).nc);
        }
    }
}

TEST(Randomization, AssignmentBitsAreFair) {
    const auto plan = build_plan(kModifierCounts, Metric::recall, Sidedness::one, 10, 11);
    std::vector<int> ones(plan.units.size(), 0);
    const int n = 4000;
    for (int t = 0; t < n; ++t) {
        const auto a = trial_assignment(plan, static_cast<std::uint64_t>(t));
        for (std::size_t k = 0; k < a.size(); ++k) ones[k] += a[k];
    }
    for (int c : ones) EXPECT_NEAR(c / double(n), 0.5, 5 * 0.5 / std::sqrt(double(n)));
}

TEST(Verify, ExactPlanNeedsNoVerification) {
    const ResponseCounts c{3, 2, 0, 5, 1, 0, 0, 10};
    const auto rep = verify(build_plan(c, Metric::recall, Sidedness::one));
    EXPECT_TRUE(rep.exact);
    EXPECT_EQ(rep.note, "verification unnecessary, exact");
}

TEST(Verify, SecondRunAndSignCheck) {
    const auto plan = build_plan(kModifierCounts, Metric::precision, Sidedness::one, 1u << 16, 21);
    const auto rep = verify(plan);
    ASSERT_FALSE(rep.exact);
    EXPECT_EQ(rep.second_seed, derive_second_seed(21));
    EXPECT_EQ(rep.first->seed, 21u);
    EXPECT_EQ(rep.second->seed, rep.second_seed);
    EXPECT_NEAR(rep.abs_difference, std::fabs(rep.first->p.value - rep.second->p.value), 0);
    ASSERT_TRUE(rep.sign.has_value());
    EXPECT_EQ(rep.sign->df_or_n, 34);
    EXPECT_EQ(rep.recall_first->metric, Metric::recall);
    EXPECT_EQ(rep.recall_first->observed, Rational(22, 103));
}

TEST(Verify, DerivedSeedNeverCollides) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 10000; ++i) {
        const auto s = rng();
        EXPECT_NE(derive_second_seed(s), s);
        EXPECT_EQ(derive_second_seed(derive_second_seed(s)), s);  // an involution, hence injective
    }
    EXPECT_NE(derive_second_seed(0), 0u);
}
