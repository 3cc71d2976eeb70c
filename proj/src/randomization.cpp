#include "sigtest/randomization.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <thread>

#include "sigtest/errors.hpp"
#include "sigtest/philox.hpp"

namespace sigtest {

namespace {

// Metric value for a system holding `recalled` items of interest and
// `spurious` spurious responses.
std::optional<Rational> metric_value(std::int64_t recalled, std::int64_t spurious, std::int64_t total, Metric metric) {
    ResponseCounts c;
    c.c_both = recalled;
    c.s_both = spurious;
    c.total_of_interest = total;
    c.miss_both = total - recalled;
    return metrics_for(c, System::first).get(metric);
}

// Outcome of one shuffle, indexed by how many correct and spurious units
// went to system 1. The whole table is evaluated once in exact arithmetic.
class QualifyTable {
public:
    explicit QualifyTable(const RandomizationPlan& plan) {
        for (auto u : plan.units) (u ? n_correct_ : n_spurious_) += 1;
        cells_.resize(static_cast<std::size_t>((n_correct_ + 1) * (n_spurious_ + 1)));
        const Rational threshold = plan.sidedness == Sidedness::one ? plan.observed : plan.observed.abs();
        for (std::int64_t kc = 0; kc <= n_correct_; ++kc) {
            for (std::int64_t ks = 0; ks <= n_spurious_; ++ks) {
                auto a = metric_value(plan.shared_correct + kc, plan.shared_spurious + ks, plan.total_of_interest,
                                      plan.metric);
                auto b = metric_value(plan.shared_correct + n_correct_ - kc,
                                      plan.shared_spurious + n_spurious_ - ks, plan.total_of_interest, plan.metric);
                Cell cell;
                if (!a || !b) {
                    cell.undefined = true;
                    cell.qualifies = true;
                } else {
                    const Rational d = *a - *b;
                    cell.qualifies = plan.sidedness == Sidedness::one ? d >= threshold : d.abs() >= threshold;
                }
                cells_[index(kc, ks)] = cell;
            }
        }
    }

    struct Cell {
        bool qualifies = false;
        bool undefined = false;
    };

    const Cell& at(std::int64_t kc, std::int64_t ks) const { return cells_[index(kc, ks)]; }

private:
    std::size_t index(std::int64_t kc, std::int64_t ks) const {
        return static_cast<std::size_t>(kc * (n_spurious_ + 1) + ks);
    }

    std::int64_t n_correct_ = 0;
    std::int64_t n_spurious_ = 0;
    std::vector<Cell> cells_;
};

struct Tally {
    std::uint64_t qualifying = 0;
    std::uint64_t undefined = 0;
};

// Bit masks selecting units of interest, 64 units per word.
std::vector<std::uint64_t> correct_masks(const RandomizationPlan& plan) {
    std::vector<std::uint64_t> masks((plan.units.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < plan.units.size(); ++i)
        if (plan.units[i]) masks[i / 64] |= std::uint64_t{1} << (i % 64);
    return masks;
}

std::vector<std::uint64_t> full_masks(std::size_t n) {
    std::vector<std::uint64_t> masks((n + 63) / 64, ~std::uint64_t{0});
    if (n % 64 != 0) masks.back() = (std::uint64_t{1} << (n % 64)) - 1;
    return masks;
}

template <typename Body>
Tally parallel_tally(std::uint64_t count, unsigned workers, Body body) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(count, 1)));
    std::vector<Tally> partial(workers);
    auto run = [&](unsigned w) {
        const std::uint64_t begin = count * w / workers;
        const std::uint64_t end = count * (w + 1) / workers;
        partial[w] = body(begin, end);
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    }
    Tally total;
    for (const auto& t : partial) {
        total.qualifying += t.qualifying;
        total.undefined += t.undefined;
    }
    return total;
}

}  // namespace

std::string_view to_string(RandomizationMode m) {
    return m == RandomizationMode::exact ? "exact" : "approximate";
}

RandomizationPlan build_plan(const ResponseCounts& counts, Metric metric, Sidedness sidedness, std::uint64_t trials,
                             std::uint64_t seed, int exact_threshold) {
    counts.validate();
    if (exact_threshold < 0 || exact_threshold > kMaxExactThreshold)
        throw InputError("exact threshold must be in [0, " + std::to_string(kMaxExactThreshold) + "]");
    if (metric != Metric::precision && !counts.total_known)
        throw InputError(std::string(to_string(metric)) + " needs miss_both or total_of_interest");

    RandomizationPlan plan;
    plan.metric = metric;
    plan.sidedness = sidedness;
    plan.master_seed = seed;
    plan.exact_threshold = exact_threshold;
    plan.shared_correct = counts.c_both;
    plan.shared_spurious = counts.s_both;
    plan.total_of_interest = counts.total_known ? counts.total_of_interest
                                                : counts.c_both + counts.c_only1 + counts.c_only2;
    if (plan.total_of_interest < 1) plan.total_of_interest = 1;  // precision only; recall denominator unused

    auto add = [&](std::int64_t n, std::uint8_t interest, std::uint8_t to_first) {
        for (std::int64_t k = 0; k < n; ++k) {
            plan.units.push_back(interest);
            plan.observed_assignment.push_back(to_first);
        }
    };
    add(counts.c_only1, 1, 1);
    add(counts.c_only2, 1, 0);
    add(counts.s_only1, 0, 1);
    add(counts.s_only2, 0, 0);

    auto observed = run_trial(plan, plan.observed_assignment);
    if (!observed) throw DegenerateStatistic(std::string(to_string(metric)) + " undefined for a system on the observed data");
    plan.observed = *observed;

    if (plan.units.size() <= static_cast<std::size_t>(exact_threshold)) {
        plan.mode = RandomizationMode::exact;
        plan.trials = std::uint64_t{1} << plan.units.size();
    } else {
        if (trials == 0) throw InputError("approximate randomization needs at least one trial");
        plan.mode = RandomizationMode::approximate;
        plan.trials = trials;
    }
    return plan;
}

std::optional<Rational> run_trial(const RandomizationPlan& plan, std::span<const std::uint8_t> assignment) {
    if (assignment.size() != plan.units.size()) throw InputError("run_trial: assignment length differs from unit count");
    std::int64_t r1 = plan.shared_correct, r2 = plan.shared_correct;
    std::int64_t s1 = plan.shared_spurious, s2 = plan.shared_spurious;
    for (std::size_t k = 0; k < assignment.size(); ++k) {
        const bool first = assignment[k] != 0;
        if (plan.units[k]) (first ? r1 : r2) += 1;
        else (first ? s1 : s2) += 1;
    }
    auto a = metric_value(r1, s1, plan.total_of_interest, plan.metric);
    auto b = metric_value(r2, s2, plan.total_of_interest, plan.metric);
    if (!a || !b) return std::nullopt;
    return *a - *b;
}

std::vector<std::uint8_t> trial_assignment(const RandomizationPlan& plan, std::uint64_t trial_index) {
    std::vector<std::uint8_t> out(plan.units.size());
    for (std::size_t block = 0; block * 128 < out.size(); ++block) {
        const auto words = Philox4x32::block(plan.master_seed, trial_index, block);
        for (std::size_t bit = 0; bit < 128 && block * 128 + bit < out.size(); ++bit)
            out[block * 128 + bit] = static_cast<std::uint8_t>((words[bit / 64] >> (bit % 64)) & 1u);
    }
    return out;
}

RandomizationResult randomization_test(const RandomizationPlan& plan, unsigned workers) {
    RandomizationResult res;
    res.metric = plan.metric;
    res.sidedness = plan.sidedness;
    res.seed = plan.master_seed;
    res.mode = plan.mode;
    res.observed = plan.observed;

    if (plan.units.empty()) {
        res.degenerate = true;
        res.nc = res.nt = 1;
        res.p = {1.0, PValueKind::exact};
        return res;
    }

    const QualifyTable table(plan);
    const auto correct = correct_masks(plan);
    const auto all = full_masks(plan.units.size());
    const std::size_t words = all.size();

    Tally tally;
    if (plan.mode == RandomizationMode::exact) {
        if (plan.units.size() > 62) throw InputError("exact randomization limited to 62 units");
        const std::uint64_t total = std::uint64_t{1} << plan.units.size();
        tally = parallel_tally(total, workers, [&](std::uint64_t begin, std::uint64_t end) {
            Tally t;
            for (std::uint64_t mask = begin; mask < end; ++mask) {
                const auto kc = std::popcount(mask & correct[0]);
                const auto ks = std::popcount(mask & ~correct[0] & all[0]);
                const auto& cell = table.at(kc, ks);
                t.qualifying += cell.qualifies;
                t.undefined += cell.undefined;
            }
            return t;
        });
        res.nt = total;
        res.nc = tally.qualifying;
        res.p = {static_cast<double>(res.nc) / static_cast<double>(res.nt), PValueKind::exact};
    } else {
        tally = parallel_tally(plan.trials, workers, [&](std::uint64_t begin, std::uint64_t end) {
            Tally t;
            std::vector<std::uint64_t> bits(words + 1);
            for (std::uint64_t trial = begin; trial < end; ++trial) {
                for (std::size_t w = 0; w < words; w += 2) {
                    const auto block = Philox4x32::block(plan.master_seed, trial, w / 2);
                    bits[w] = block[0];
                    bits[w + 1] = block[1];
                }
                std::int64_t kc = 0, ks = 0;
                for (std::size_t w = 0; w < words; ++w) {
                    kc += std::popcount(bits[w] & correct[w]);
                    ks += std::popcount(bits[w] & ~correct[w] & all[w]);
                }
                const auto& cell = table.at(kc, ks);
                t.qualifying += cell.qualifies;
                t.undefined += cell.undefined;
            }
            return t;
        });
        res.nt = plan.trials;
        res.nc = tally.qualifying;
        res.p = {static_cast<double>(res.nc + 1) / static_cast<double>(res.nt + 1), PValueKind::bound};
    }
    res.undefined_trials = tally.undefined;
    return res;
}

VerificationReport verify(const RandomizationPlan& plan, unsigned workers) {
    VerificationReport rep;
    if (plan.mode == RandomizationMode::exact) {
        rep.exact = true;
        rep.note = "verification unnecessary, exact";
        return rep;
    }
    rep.second_seed = derive_second_seed(plan.master_seed);
    RandomizationPlan second = plan;
    second.master_seed = rep.second_seed;
    rep.first = randomization_test(plan, workers);
    rep.second = randomization_test(second, workers);
    rep.abs_difference = std::fabs(rep.first->p.value - rep.second->p.value);

    // Same units and seeds give the same shuffles; only the metric changes.
    std::int64_t plus = 0, minus = 0;
    for (std::size_t k = 0; k < plan.units.size(); ++k) {
        if (!plan.units[k]) continue;
        (plan.observed_assignment[k] ? plus : minus) += 1;
    }
    RandomizationPlan recall = plan;
    recall.metric = Metric::recall;
    recall.observed = *run_trial(recall, recall.observed_assignment);
    RandomizationPlan recall_second = recall;
    recall_second.master_seed = rep.second_seed;
    rep.recall_first = randomization_test(recall, workers);
    rep.recall_second = randomization_test(recall_second, workers);

    if (plus + minus == 0) {
        rep.note = "no discriminating items of interest; sign test not applicable";
        return rep;
    }
    rep.sign = sign_test(plus, minus, plan.sidedness);
    const double p = rep.sign->p.value;
    rep.standard_error = std::sqrt(p * (1 - p) / static_cast<double>(plan.trials));
    const double slack = 3 * rep.standard_error;
    rep.sign_agrees = std::fabs(rep.recall_first->p.value - p) <= slack &&
                      std::fabs(rep.recall_second->p.value - p) <= slack;
    rep.note = rep.sign_agrees ? "recall estimates agree with the sign test" : "recall estimates disagree with the sign test";
    return rep;
}

}  // namespace sigtest
