#include "sigtest/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sigtest/errors.hpp"

namespace sigtest {

CorrelationReport estimate_r12(const PairedOutcomes& pairs) {
    const std::size_t n = pairs.size();
    if (pairs.y2.size() != n) throw InputError("paired outcomes of unequal length");
    if (n < 2) throw DegenerateStatistic("r12 needs at least two items");
    const double m1 = pairs.mean1();
    const double m2 = pairs.mean2();
    double ss1 = 0, ss2 = 0, cross = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double a = pairs.y1[k] - m1;
        const double b = pairs.y2[k] - m2;
        ss1 += a * a;
        ss2 += b * b;
        cross += a * b;
    }
    CorrelationReport rep;
    rep.n = static_cast<std::int64_t>(n);
    rep.s1 = std::sqrt(ss1 / static_cast<double>(n - 1));
    rep.s2 = std::sqrt(ss2 / static_cast<double>(n - 1));
    if (rep.s1 == 0 || rep.s2 == 0) throw DegenerateStatistic("r12 undefined: a system's outcomes are constant");
    rep.r12 = cross / (rep.s1 * rep.s2 * static_cast<double>(n - 1));
    rep.r12 = std::clamp(rep.r12, -1.0, 1.0);
    return rep;
}

double combine_sd(double s1, double s2, double r12) {
    if (s1 < 0 || s2 < 0) throw std::domain_error("combine_sd: negative standard deviation");
    if (r12 < -1 || r12 > 1) throw std::domain_error("combine_sd: r12 outside [-1, 1]");
    const double radicand = s1 * s1 + s2 * s2 - 2.0 * r12 * s1 * s2;
    return std::sqrt(std::max(0.0, radicand));
}

double independence_inflation(double r12) {
    if (r12 < -1 || r12 > 1) throw std::domain_error("independence_inflation: r12 outside [-1, 1]");
    if (r12 == 1.0) return std::numeric_limits<double>::infinity();
    return 1.0 / std::sqrt(1.0 - r12);
}

}  // namespace sigtest
