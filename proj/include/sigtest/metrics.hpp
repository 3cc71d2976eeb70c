#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "sigtest/data_model.hpp"
#include "sigtest/rational.hpp"

namespace sigtest {

enum class Metric { recall, precision, f_score };

std::string_view to_string(Metric m);
Metric parse_metric(std::string_view text);

/// Recall, precision and balanced F of one system, as exact rationals.
/// Precision is empty when the system produced no responses; F is empty
/// when precision is, or when recall + precision == 0.
struct MetricTriple {
    Rational recall;
    std::optional<Rational> precision;
    std::optional<Rational> f_score;

    std::optional<Rational> get(Metric m) const;
};

MetricTriple metrics_for(const ResponseCounts& counts, System system);

/// a - b for the selected metric. Throws DegenerateStatistic if the metric
/// is undefined on either side.
Rational metric_difference(const MetricTriple& a, const MetricTriple& b, Metric which);

/// "45.6%" style rendering (half away from zero), or "undef".
std::string format_percent(const std::optional<Rational>& value, int decimals = 1);

}  // namespace sigtest
