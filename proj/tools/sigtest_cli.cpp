// sigtest: significance tests for recall, precision and F-score differences
// between two systems scored on the same test set.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sigtest/analytic_tests.hpp"
#include "sigtest/data_model.hpp"
#include "sigtest/errors.hpp"
#include "sigtest/report.hpp"
#include "sigtest/simulation.hpp"

namespace {

enum ExitCode { kOk = 0, kInputError = 2, kInvalidCombination = 3, kDegenerate = 4 };

struct InputOptions {
    std::string items;
    std::string counts;
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
    auto* items = cmd->add_option("--items", in.items, "detail file: item_id<TAB>of_interest<TAB>found_by_1<TAB>found_by_2");
    auto* counts = cmd->add_option("--counts", in.counts, "counts as a JSON object, a JSON file, or key=value,...");
    items->excludes(counts);
}

sigtest::ResponseCounts load_counts(const InputOptions& in) {
    if (!in.items.empty()) return sigtest::summarize(sigtest::parse_detail_file(in.items));
    if (in.counts.empty()) throw sigtest::InputError("one of --items or --counts is required");
    const auto& text = in.counts;
    if (text.front() == '{') {
        try {
            return sigtest::counts_from_json(nlohmann::json::parse(text));
        } catch (const nlohmann::json::exception& e) {
            throw sigtest::InputError(std::string("counts JSON: ") + e.what());
        }
    }
    if (std::filesystem::is_regular_file(text)) {
        std::ifstream f(text);
        try {
            return sigtest::counts_from_json(nlohmann::json::parse(f));
        } catch (const nlohmann::json::exception& e) {
            throw sigtest::InputError(text + ": " + e.what());
        }
    }
    return sigtest::counts_from_inline(text);
}

std::string invocation(int argc, char** argv) {
    std::string out;
    for (int i = 0; i < argc; ++i) {
        if (i) out += ' ';
        std::string arg = argv[i];
        if (arg.find_first_of(" \t\"'{}") != std::string::npos) arg = "'" + arg + "'";
        out += arg;
    }
    return out;
}

nlohmann::json with_header(nlohmann::json body, const std::string& command, const std::string& invoked) {
    nlohmann::json j;
    j["tool"] = sigtest::kToolName;
    j["version"] = sigtest::kToolVersion;
    j["command"] = command;
    j["invocation"] = invoked;
    j.update(body);
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Significance testing for recall, precision and F-score differences between two systems"};
    app.require_subcommand(1);
    bool json_out = false;
    app.add_flag("--json", json_out, "emit JSON instead of text");

    InputOptions metrics_in;
    auto* metrics_cmd = app.add_subcommand("metrics", "recall, precision and F-score for both systems");
    add_input_options(metrics_cmd, metrics_in);
    metrics_cmd->add_flag("--json", json_out, "emit JSON instead of text");

    InputOptions test_in;
    std::string method_text = "rand";
    std::string metric_text;
    std::string sided_text;
    std::string better_text = "auto";
    sigtest::TestRequest req;
    auto* test_cmd = app.add_subcommand("test", "significance test of the difference between the systems");
    add_input_options(test_cmd, test_in);
    test_cmd->add_option("--method", method_text,
                         "rand | sign | wilcoxon | matched_t | z | t | chi2 (default rand)");
    test_cmd->add_option("--metric", metric_text, "recall | precision | f_score (default recall; precision for chi2)");
    test_cmd->add_option("--sided", sided_text, "one | two (default one; two for chi2)");
    test_cmd->add_option("--better", better_text, "system hypothesized better for one-sided tests: auto | 1 | 2");
    test_cmd->add_option("--trials", req.trials, "approximate randomization trials")->capture_default_str();
    test_cmd->add_option("--seed", req.seed, "master seed")->capture_default_str();
    test_cmd->add_option("--exact-threshold", req.exact_threshold, "enumerate exactly up to this many units (<= 30)")
        ->capture_default_str();
    test_cmd->add_option("--workers", req.workers, "worker threads (0 = all cores); results do not depend on it");
    test_cmd->add_option("--alpha", req.alpha, "significance level")->capture_default_str();
    test_cmd->add_flag("--verify", req.verify, "repeat randomization with a second seed and cross-check with the sign test");
    test_cmd->add_flag("--json", json_out, "emit JSON instead of text");

    sigtest::SimSpec spec;
    std::vector<double> rhos;
    std::vector<std::string> sim_methods = {"sign", "matched_t", "wilcoxon", "z", "t", "chi2"};
    unsigned sim_workers = 0;
    auto* sim_cmd = app.add_subcommand("simulate", "rejection rates on synthetic correlated paired outcomes (CSV)");
    sim_cmd->add_option("--n", spec.n_items, "items per replicate")->capture_default_str();
    sim_cmd->add_option("--p1", spec.p1, "system 1 success probability")->capture_default_str();
    sim_cmd->add_option("--p2", spec.p2, "system 2 success probability")->capture_default_str();
    sim_cmd->add_option("--rho", rhos, "correlation(s); repeat or comma-separate for a sweep")->delimiter(',');
    sim_cmd->add_option("--replicates", spec.replicates, "replicates per rho")->capture_default_str();
    sim_cmd->add_option("--alpha", spec.alpha, "significance level")->capture_default_str();
    sim_cmd->add_option("--seed", spec.seed, "master seed")->capture_default_str();
    sim_cmd->add_option("--methods", sim_methods, "methods to apply")->delimiter(',');
    sim_cmd->add_option("--workers", sim_workers, "worker threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInputError;
    }

    const std::string invoked = invocation(argc, argv);
    try {
        if (metrics_cmd->parsed()) {
            auto report = with_header(sigtest::metrics_report(load_counts(metrics_in)), "metrics", invoked);
            if (json_out) std::cout << report.dump(2) << '\n';
            else std::cout << sigtest::render_metrics_text(report);
        } else if (test_cmd->parsed()) {
            req.method = sigtest::parse_method(method_text);
            if (!metric_text.empty()) req.metric = sigtest::parse_metric(metric_text);
            if (!sided_text.empty()) req.sidedness = sigtest::parse_sidedness(sided_text);
            req.better = sigtest::parse_better(better_text);
            auto report = with_header(sigtest::test_report(load_counts(test_in), req), "test", invoked);
            if (json_out) std::cout << report.dump(2) << '\n';
            else std::cout << sigtest::render_test_text(report);
        } else if (sim_cmd->parsed()) {
            std::vector<sigtest::Method> methods;
            for (const auto& m : sim_methods) methods.push_back(sigtest::parse_method(m));
            if (rhos.empty()) rhos.push_back(spec.rho);
            bool header = true;
            for (double rho : rhos) {
                spec.rho = rho;
                const auto rows = sigtest::power_study(spec, methods, sim_workers);
                sigtest::write_power_csv(std::cout, rows, header);
                header = false;
            }
        }
    } catch (const sigtest::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const sigtest::InvalidCombination& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalidCombination;
    } catch (const sigtest::DegenerateStatistic& e) {
        std::cerr << "error: degenerate statistic: " << e.what() << '\n';
        return kDegenerate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kOk;
}
