#include "sigtest/metrics.hpp"

#include "sigtest/errors.hpp"

namespace sigtest {

std::string_view to_string(Metric m) {
    switch (m) {
        case Metric::recall: return "recall";
        case Metric::precision: return "precision";
        case Metric::f_score: return "f_score";
    }
    return "?";
}

Metric parse_metric(std::string_view text) {
    if (text == "recall") return Metric::recall;
    if (text == "precision") return Metric::precision;
    if (text == "f_score" || text == "f" || text == "f1") return Metric::f_score;
    throw InputError("unknown metric '" + std::string(text) + "'");
}

std::optional<Rational> MetricTriple::get(Metric m) const {
    switch (m) {
        case Metric::recall: return recall;
        case Metric::precision: return precision;
        case Metric::f_score: return f_score;
    }
    return std::nullopt;
}

MetricTriple metrics_for(const ResponseCounts& counts, System system) {
    if (counts.total_of_interest < 1) throw InputError("metrics need total_of_interest >= 1");
    const std::int64_t r = counts.recalled(system);
    const std::int64_t s = counts.spurious(system);
    if (r > counts.total_of_interest) throw InputError("recalled count exceeds total_of_interest");
    MetricTriple m;
    m.recall = Rational(r, counts.total_of_interest);
    if (r + s > 0) {
        m.precision = Rational(r, r + s);
        const Rational sum = m.recall + *m.precision;
        if (sum.sign() > 0) m.f_score = Rational(2) * m.recall * *m.precision / sum;
    }
    return m;
}

Rational metric_difference(const MetricTriple& a, const MetricTriple& b, Metric which) {
    auto x = a.get(which);
    auto y = b.get(which);
    if (!x || !y) throw DegenerateStatistic(std::string(to_string(which)) + " undefined for a system");
    return *x - *y;
}

std::string format_percent(const std::optional<Rational>& value, int decimals) {
    if (!value) return "undef";
    return value->to_fixed(decimals, 100) + "%";
}

}  // namespace sigtest
