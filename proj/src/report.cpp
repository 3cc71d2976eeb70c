#include "sigtest/report.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

#include "sigtest/correlation.hpp"
#include "sigtest/errors.hpp"

namespace sigtest {

namespace {

constexpr std::string_view kIndependenceWarning =
    "assumes independence between the two systems' results; positively correlated systems make this test "
    "understate significance";

nlohmann::json rational_json(const std::optional<Rational>& r) {
    nlohmann::json j;
    if (!r) {
        j["fraction"] = nullptr;
        j["value"] = nullptr;
        j["percent"] = "undef";
        return j;
    }
    j["fraction"] = r->to_string();
    j["value"] = r->to_double();
    j["percent"] = format_percent(r);
    return j;
}

nlohmann::json triple_json(const MetricTriple& m) {
    return {{"recall", rational_json(m.recall)},
            {"precision", rational_json(m.precision)},
            {"f_score", rational_json(m.f_score)}};
}

std::vector<double> indicator_sample(std::int64_t successes, std::int64_t trials) {
    std::vector<double> v(static_cast<std::size_t>(trials), 0.0);
    for (std::int64_t k = 0; k < successes; ++k) v[static_cast<std::size_t>(k)] = 1.0;
    return v;
}

std::string hypothesis_text(Sidedness sided, bool swapped) {
    if (sided == Sidedness::two) return "systems differ (either direction)";
    return swapped ? "system 2 better than system 1" : "system 1 better than system 2";
}

std::string fmt(double v, const char* spec = "%.6g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

}  // namespace

Better parse_better(std::string_view text) {
    if (text == "auto") return Better::automatic;
    if (text == "1") return Better::first;
    if (text == "2") return Better::second;
    throw InputError("--better must be auto, 1 or 2");
}

ProportionView proportion_view(const ResponseCounts& counts, System system, Metric metric) {
    const std::int64_t r = counts.recalled(system);
    const std::int64_t s = counts.spurious(system);
    switch (metric) {
        case Metric::recall: return {r, counts.total_of_interest};
        case Metric::precision: return {r, r + s};
        case Metric::f_score: return {2 * r, counts.total_of_interest + r + s};
    }
    return {};
}

nlohmann::json metrics_json(const ResponseCounts& counts) {
    return {{"system1", triple_json(metrics_for(counts, System::first))},
            {"system2", triple_json(metrics_for(counts, System::second))}};
}

nlohmann::json correlation_json(const ResponseCounts& counts) {
    nlohmann::json j;
    if (!counts.total_known) {
        j["r12"] = nullptr;
        j["note"] = "needs miss_both / total_of_interest";
        return j;
    }
    try {
        const auto rep = estimate_r12(to_paired_outcomes(counts));
        j["r12"] = rep.r12;
        j["s1"] = rep.s1;
        j["s2"] = rep.s2;
        j["n"] = rep.n;
        j["independence_inflation"] = rep.r12 < 1 ? nlohmann::json(independence_inflation(rep.r12)) : nlohmann::json("inf");
    } catch (const DegenerateStatistic& e) {
        j["r12"] = nullptr;
        j["note"] = e.what();
    }
    return j;
}

nlohmann::json test_result_json(const TestResult& r, Metric metric, double alpha) {
    nlohmann::json j;
    j["method"] = to_string(r.method);
    j["metric"] = to_string(metric);
    j["statistic"] = r.statistic;
    j["sided"] = to_string(r.sidedness);
    j["p_value"] = r.p.value;
    j["p_kind"] = to_string(r.p.kind);
    j["df_or_n"] = r.df_or_n;
    j["assumes_independence"] = r.assumes_independence;
    j["significant"] = r.p.value <= alpha;
    if (!r.two_sided_convention.empty()) j["two_sided_convention"] = r.two_sided_convention;
    if (r.assumes_independence) j["warning"] = kIndependenceWarning;
    return j;
}

nlohmann::json randomization_json(const RandomizationResult& r, const RandomizationPlan& plan, double alpha) {
    nlohmann::json j;
    j["method"] = "randomization";
    j["metric"] = to_string(r.metric);
    j["sided"] = to_string(r.sidedness);
    j["mode"] = to_string(r.mode);
    j["nc"] = r.nc;
    j["nt"] = r.nt;
    j["seed"] = r.seed;
    j["units"] = plan.units.size();
    j["exact_threshold"] = plan.exact_threshold;
    j["observed_difference"] = rational_json(r.observed);
    j["observed_difference"].erase("percent");
    j["p_value"] = r.p.value;
    j["p_kind"] = to_string(r.p.kind);
    j["p_formula"] = r.mode == RandomizationMode::exact ? "nc/nt" : "(nc+1)/(nt+1)";
    j["qualifying"] = r.sidedness == Sidedness::one ? "trial difference >= observed (exact rationals)"
                                                    : "|trial difference| >= |observed| (exact rationals)";
    j["degenerate"] = r.degenerate;
    j["undefined_trials"] = r.undefined_trials;
    j["assumes_independence"] = false;
    j["significant"] = r.p.value <= alpha;
    return j;
}

nlohmann::json verification_json(const VerificationReport& v) {
    nlohmann::json j;
    j["exact"] = v.exact;
    j["note"] = v.note;
    if (v.exact) return j;
    auto brief = [](const RandomizationResult& r) {
        return nlohmann::json{{"seed", r.seed}, {"nc", r.nc}, {"nt", r.nt}, {"p_value", r.p.value}};
    };
    j["second_seed"] = v.second_seed;
    j["first"] = brief(*v.first);
    j["second"] = brief(*v.second);
    j["abs_difference"] = v.abs_difference;
    j["recall_first"] = brief(*v.recall_first);
    j["recall_second"] = brief(*v.recall_second);
    if (v.sign) {
        j["sign_test_p"] = v.sign->p.value;
        j["standard_error"] = v.standard_error;
        j["sign_agrees_within_3se"] = v.sign_agrees;
    }
    return j;
}

nlohmann::json metrics_report(const ResponseCounts& counts) {
    counts.validate();
    if (!counts.total_known) throw InputError("metrics need miss_both or total_of_interest");
    nlohmann::json j;
    j["input"] = counts_to_json(counts);
    j["metrics"] = metrics_json(counts);
    j["correlation"] = correlation_json(counts);
    return j;
}

nlohmann::json test_report(const ResponseCounts& input, const TestRequest& req) {
    input.validate();
    const Method method = req.method;
    const Metric metric = req.metric.value_or(method == Method::chi2_2x2 ? Metric::precision : Metric::recall);
    if (!(req.alpha > 0 && req.alpha < 1)) throw InputError("alpha must lie in (0, 1)");

    const bool matched = method == Method::matched_pair_t || method == Method::sign || method == Method::wilcoxon;
    if (matched && metric != Metric::recall)
        throw InvalidCombination(std::string(to_string(method)) + " applies to recall only; use randomization for " +
                                 std::string(to_string(metric)));
    if (method == Method::chi2_2x2 && req.sidedness == Sidedness::one)
        throw InvalidCombination("chi2_2x2 is inherently two-sided");
    if (metric != Metric::precision && !input.total_known)
        throw InputError(std::string(to_string(metric)) + " needs miss_both or total_of_interest");

    const Sidedness sided = req.sidedness.value_or(method == Method::chi2_2x2 ? Sidedness::two : Sidedness::one);

    // Resolve which system the one-sided alternative favours.
    bool swapped = false;
    if (sided == Sidedness::one) {
        if (req.better == Better::second) {
            swapped = true;
        } else if (req.better == Better::automatic && input.total_known) {
            const auto d = metric_difference(metrics_for(input, System::first), metrics_for(input, System::second), metric);
            swapped = d.sign() < 0;
        } else if (req.better == Better::automatic) {
            // precision with unknown totals: compare R/(R+S) directly
            const auto a = proportion_view(input, System::first, Metric::precision);
            const auto b = proportion_view(input, System::second, Metric::precision);
            if (a.trials == 0 || b.trials == 0) throw DegenerateStatistic("precision undefined for a system");
            swapped = Rational(a.successes, a.trials) < Rational(b.successes, b.trials);
        }
    }
    const ResponseCounts counts = swapped ? input.swapped() : input;

    nlohmann::json j;
    j["input"] = counts_to_json(input);
    if (input.total_known) {
        j["metrics"] = metrics_json(input);
        j["correlation"] = correlation_json(input);
    }
    j["hypothesis"] = hypothesis_text(sided, swapped);
    j["alpha"] = req.alpha;

    nlohmann::json result;
    switch (method) {
        case Method::two_sample_t: {
            const auto a = proportion_view(counts, System::first, metric);
            const auto b = proportion_view(counts, System::second, metric);
            result = test_result_json(
                two_sample_t(indicator_sample(a.successes, a.trials), indicator_sample(b.successes, b.trials), sided),
                metric, req.alpha);
            break;
        }
        case Method::two_proportion_z: {
            const auto a = proportion_view(counts, System::first, metric);
            const auto b = proportion_view(counts, System::second, metric);
            result = test_result_json(two_proportion_z(a.successes, a.trials, b.successes, b.trials, sided),
                                      metric, req.alpha);
            break;
        }
        case Method::chi2_2x2: {
            const auto a = proportion_view(counts, System::first, metric);
            const auto b = proportion_view(counts, System::second, metric);
            result = test_result_json(chi2_2x2(a.successes, a.trials - a.successes, b.successes, b.trials - b.successes),
                                      metric, req.alpha);
            break;
        }
        case Method::matched_pair_t:
            result = test_result_json(matched_pair_t(to_paired_outcomes(counts), sided), metric, req.alpha);
            break;
        case Method::sign:
            result = test_result_json(sign_test(counts.c_only1, counts.c_only2, sided), metric, req.alpha);
            break;
        case Method::wilcoxon:
            result = test_result_json(wilcoxon_test(to_paired_outcomes(counts).differences(), sided), metric,
                                      req.alpha);
            break;
        case Method::randomization: {
            const auto plan = build_plan(counts, metric, sided, req.trials, req.seed, req.exact_threshold);
            result = randomization_json(randomization_test(plan, req.workers), plan, req.alpha);
            if (req.verify) result["verification"] = verification_json(verify(plan, req.workers));
            break;
        }
    }
    if (req.verify && method != Method::randomization)
        result["verification"] = {{"note", "--verify applies to randomization only"}};
    j["results"] = nlohmann::json::array({result});
    return j;
}

std::string render_metrics_text(const nlohmann::json& report) {
    std::ostringstream out;
    const auto& m = report.at("metrics");
    out << "system  recall           precision        f_score\n";
    for (const char* sys : {"system1", "system2"}) {
        out << (sys[6] == '1' ? "1       " : "2       ");
        for (const char* key : {"recall", "precision", "f_score"}) {
            const auto& cell = m.at(sys).at(key);
            std::string text = cell.at("percent").get<std::string>();
            if (!cell.at("fraction").is_null()) text += " (" + cell.at("fraction").get<std::string>() + ")";
            text.resize(std::max<std::size_t>(text.size(), 17), ' ');
            out << text;
        }
        out << '\n';
    }
    if (report.contains("correlation") && !report.at("correlation").at("r12").is_null()) {
        const auto& c = report.at("correlation");
        out << "r12 " << fmt(c.at("r12").get<double>(), "%.4f");
        if (c.at("independence_inflation").is_number())
            out << "  independence inflation " << fmt(c.at("independence_inflation").get<double>(), "%.3f");
        out << '\n';
    }
    return out.str();
}

std::string render_test_text(const nlohmann::json& report) {
    std::ostringstream out;
    if (report.contains("metrics")) out << render_metrics_text(report);
    out << "hypothesis: " << report.at("hypothesis").get<std::string>() << '\n';
    for (const auto& r : report.at("results")) {
        out << r.at("method").get<std::string>() << " on " << r.at("metric").get<std::string>() << " ("
            << r.at("sided").get<std::string>() << "-sided)\n";
        if (r.contains("statistic")) out << "  statistic " << fmt(r.at("statistic").get<double>(), "%.4f") << '\n';
        if (r.contains("nc")) {
            out << "  mode " << r.at("mode").get<std::string>() << ", nc " << r.at("nc").get<std::uint64_t>() << ", nt "
                << r.at("nt").get<std::uint64_t>() << ", seed " << r.at("seed").get<std::uint64_t>() << '\n';
            out << "  observed difference " << r.at("observed_difference").at("fraction").get<std::string>() << '\n';
            if (r.at("degenerate").get<bool>()) out << "  degenerate: no shuffleable responses\n";
        }
        out << "  p " << fmt(r.at("p_value").get<double>()) << " (" << r.at("p_kind").get<std::string>() << ")";
        if (r.contains("df_or_n")) out << ", df/n " << r.at("df_or_n").get<std::int64_t>();
        out << (r.at("significant").get<bool>() ? ", significant" : ", not significant") << " at alpha "
            << fmt(report.at("alpha").get<double>()) << '\n';
        if (r.contains("two_sided_convention"))
            out << "  two-sided convention: " << r.at("two_sided_convention").get<std::string>() << '\n';
        if (r.contains("warning")) out << "  WARNING: " << r.at("warning").get<std::string>() << '\n';
        if (r.contains("verification")) out << "  verification: " << r.at("verification").dump() << '\n';
    }
    return out.str();
}

}  // namespace sigtest
