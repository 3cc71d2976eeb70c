#include "sigtest/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <thread>

#include "sigtest/errors.hpp"
#include "sigtest/philox.hpp"

namespace sigtest {

namespace {

constexpr double kCellTolerance = 1e-12;

bool rejects(Method method, const PairedOutcomes& pairs, double alpha) {
    const auto n = static_cast<std::int64_t>(pairs.size());
    std::int64_t r1 = 0, r2 = 0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        r1 += pairs.y1[k];
        r2 += pairs.y2[k];
    }
    TestResult res;
    switch (method) {
        case Method::sign: res = sign_test(pairs, Sidedness::one); break;
        case Method::matched_pair_t: res = matched_pair_t(pairs, Sidedness::one); break;
        case Method::wilcoxon: res = wilcoxon_test(pairs.differences(), Sidedness::one); break;
        case Method::two_proportion_z: res = two_proportion_z(r1, n, r2, n, Sidedness::one); break;
        case Method::two_sample_t: {
            std::vector<double> a(pairs.y1.begin(), pairs.y1.end());
            std::vector<double> b(pairs.y2.begin(), pairs.y2.end());
            res = two_sample_t(a, b, Sidedness::one);
            break;
        }
        case Method::chi2_2x2: res = chi2_2x2(r1, n - r1, r2, n - r2); break;
        case Method::randomization:
            throw InvalidCombination("randomization is not part of the power study");
    }
    return res.p.value <= alpha;
}

}  // namespace

JointCells joint_cells(const SimSpec& spec) {
    if (!(spec.p1 > 0 && spec.p1 < 1) || !(spec.p2 > 0 && spec.p2 < 1))
        throw InputError("marginal probabilities must lie in (0, 1)");
    if (!(spec.rho >= -1 && spec.rho <= 1)) throw InputError("rho must lie in [-1, 1]");
    JointCells c;
    c.both = spec.p1 * spec.p2 + spec.rho * std::sqrt(spec.p1 * (1 - spec.p1) * spec.p2 * (1 - spec.p2));
    c.only1 = spec.p1 - c.both;
    c.only2 = spec.p2 - c.both;
    c.neither = 1 - spec.p1 - spec.p2 + c.both;
    for (double* cell : {&c.both, &c.only1, &c.only2, &c.neither}) {
        if (*cell < -kCellTolerance || *cell > 1 + kCellTolerance)
            throw InputError("rho is not admissible for the given marginals");
        *cell = std::clamp(*cell, 0.0, 1.0);
    }
    return c;
}

void validate(const SimSpec& spec) {
    if (spec.n_items < 2) throw InputError("n_items must be at least 2");
    if (spec.replicates < 1) throw InputError("replicates must be positive");
    if (!(spec.alpha > 0 && spec.alpha < 1)) throw InputError("alpha must lie in (0, 1)");
    joint_cells(spec);
}

PairedOutcomes generate_correlated_pairs(const SimSpec& spec, std::uint64_t replicate) {
    if (spec.n_items < 1) throw InputError("n_items must be positive");
    const JointCells cells = joint_cells(spec);
    const double cut_both = cells.both;
    const double cut_only1 = cut_both + cells.only1;
    const double cut_only2 = cut_only1 + cells.only2;
    PairedOutcomes out;
    out.y1.resize(static_cast<std::size_t>(spec.n_items));
    out.y2.resize(static_cast<std::size_t>(spec.n_items));
    for (std::int64_t k = 0; k < spec.n_items; ++k) {
        const double u = Philox4x32::to_unit(Philox4x32::block(spec.seed, replicate, static_cast<std::uint64_t>(k))[0]);
        std::uint8_t a = 0, b = 0;
        if (u < cut_both) a = b = 1;
        else if (u < cut_only1) a = 1;
        else if (u < cut_only2) b = 1;
        out.y1[static_cast<std::size_t>(k)] = a;
        out.y2[static_cast<std::size_t>(k)] = b;
    }
    return out;
}

std::vector<PowerRow> power_study(const SimSpec& spec, std::span<const Method> methods, unsigned workers) {
    validate(spec);
    if (spec.replicates < 1000) throw InputError("power study needs at least 1000 replicates");
    for (auto m : methods)
        if (m == Method::randomization) throw InvalidCombination("randomization is not part of the power study");

    const std::size_t m_count = methods.size();
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::int64_t>(workers, spec.replicates));

    struct Counts {
        std::vector<std::int64_t> rejections;
        std::vector<std::int64_t> degenerate;
    };
    std::vector<Counts> partial(workers, Counts{std::vector<std::int64_t>(m_count, 0), std::vector<std::int64_t>(m_count, 0)});
    const auto reps = static_cast<std::uint64_t>(spec.replicates);
    auto run = [&](unsigned w) {
        const std::uint64_t begin = reps * w / workers;
        const std::uint64_t end = reps * (w + 1) / workers;
        for (std::uint64_t r = begin; r < end; ++r) {
            const auto pairs = generate_correlated_pairs(spec, r);
            for (std::size_t i = 0; i < m_count; ++i) {
                try {
                    partial[w].rejections[i] += rejects(methods[i], pairs, spec.alpha);
                } catch (const DegenerateStatistic&) {
                    partial[w].degenerate[i] += 1;
                }
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    }

    std::vector<PowerRow> rows;
    for (std::size_t i = 0; i < m_count; ++i) {
        PowerRow row;
        row.method = methods[i];
        row.rho = spec.rho;
        row.n = spec.n_items;
        row.replicates = spec.replicates;
        for (const auto& c : partial) {
            row.rejections += c.rejections[i];
            row.degenerate += c.degenerate[i];
        }
        row.rejection_rate = static_cast<double>(row.rejections) / static_cast<double>(row.replicates);
        row.std_error = std::sqrt(row.rejection_rate * (1 - row.rejection_rate) / static_cast<double>(row.replicates));
        rows.push_back(row);
    }
    return rows;
}

void write_power_csv(std::ostream& out, std::span<const PowerRow> rows, bool header) {
    if (header) out << "method,rho,n,rejection_rate,std_error\n";
    const auto flags = out.flags();
    for (const auto& r : rows) {
        out << to_string(r.method) << ',' << std::setprecision(6) << r.rho << ',' << r.n << ','
            << std::setprecision(6) << r.rejection_rate << ',' << std::setprecision(6) << r.std_error << '\n';
    }
    out.flags(flags);
}

}  // namespace sigtest
