#include "sigtest/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sigtest {

namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 200000;

// Modified Lentz evaluation of the ibeta continued fraction.
double beta_continued_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    throw std::runtime_error("regularized_beta: continued fraction did not converge");
}

double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

}  // namespace

std::string_view to_string(PValueKind k) {
    switch (k) {
        case PValueKind::exact: return "exact";
        case PValueKind::bound: return "bound";
        case PValueKind::approximation: return "approximation";
    }
    return "?";
}

double regularized_beta(double a, double b, double x, double y) {
    if (a <= 0 || b <= 0) throw std::domain_error("regularized_beta: a, b must be positive");
    if (x <= 0) return 0.0;
    if (y <= 0) return 1.0;
    const double log_front = a * std::log(x) + b * std::log(y) - log_beta(a, b);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, y) / b;
}

double regularized_gamma_p(double a, double x) {
    if (a <= 0) throw std::domain_error("regularized_gamma_p: a must be positive");
    if (x < 0) throw std::domain_error("regularized_gamma_p: x must be non-negative");
    if (x == 0) return 0.0;
    if (x >= a + 1.0) return 1.0 - regularized_gamma_q(a, x);
    // series
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int n = 0; n < kMaxIter; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps) return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw std::runtime_error("regularized_gamma_p: series did not converge");
}

double regularized_gamma_q(double a, double x) {
    if (a <= 0) throw std::domain_error("regularized_gamma_q: a must be positive");
    if (x < 0) throw std::domain_error("regularized_gamma_q: x must be non-negative");
    if (x == 0) return 1.0;
    if (x < a + 1.0) return 1.0 - regularized_gamma_p(a, x);
    // Lentz continued fraction
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
    }
    throw std::runtime_error("regularized_gamma_q: continued fraction did not converge");
}

double normal_sf(double z) {
    if (std::isnan(z)) throw std::domain_error("normal_sf: NaN");
    return 0.5 * std::erfc(z / std::sqrt(2.0));
}

double t_sf(double t, std::int64_t df) {
    if (df < 1) throw std::domain_error("t_sf: df must be >= 1");
    if (std::isnan(t)) throw std::domain_error("t_sf: NaN");
    if (t == 0) return 0.5;
    if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
    const double nu = static_cast<double>(df);
    const double t2 = t * t;
    // P(|T| > |t|) = I_{nu/(nu+t^2)}(nu/2, 1/2)
    const double x = nu / (nu + t2);
    const double y = t2 / (nu + t2);
    const double two_tail = regularized_beta(nu / 2.0, 0.5, x, y);
    return t > 0 ? 0.5 * two_tail : 1.0 - 0.5 * two_tail;
}

double chi2_sf(double x, std::int64_t df) {
    if (df < 1) throw std::domain_error("chi2_sf: df must be >= 1");
    if (!(x >= 0)) throw std::domain_error("chi2_sf: x must be non-negative");
    if (std::isinf(x)) return 0.0;
    return regularized_gamma_q(static_cast<double>(df) / 2.0, x / 2.0);
}

double binomial_tail(std::int64_t k, std::int64_t n, double p) {
    if (n < 0 || k < 0 || k > n) throw std::domain_error("binomial_tail: need 0 <= k <= n");
    if (!(p >= 0 && p <= 1)) throw std::domain_error("binomial_tail: p must be in [0,1]");
    if (k == 0) return 1.0;
    if (p == 0) return 0.0;
    if (p == 1) return 1.0;
    const double log_p = std::log(p);
    const double log_q = std::log1p(-p);
    // log pmf at k, then the ratio recurrence pmf(i+1)/pmf(i) = (n-i)/(i+1) * p/q.
    double log_term = std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1) -
                      std::lgamma(static_cast<double>(n - k) + 1) + k * log_p + (n - k) * log_q;
    double log_max = log_term;
    std::vector<double> logs;
    logs.reserve(static_cast<std::size_t>(n - k + 1));
    for (std::int64_t i = k; i <= n; ++i) {
        logs.push_back(log_term);
        log_max = std::max(log_max, log_term);
        if (i < n) log_term += std::log(static_cast<double>(n - i) / static_cast<double>(i + 1)) + log_p - log_q;
    }
    double sum = 0.0;
    for (double l : logs) sum += std::exp(l - log_max);
    return std::min(1.0, std::exp(log_max + std::log(sum)));
}

std::vector<std::uint64_t> wilcoxon_null_counts_doubled(std::span<const std::int64_t> doubled_ranks) {
    if (doubled_ranks.size() > 62) throw std::domain_error("wilcoxon: exact distribution limited to 62 ranks");
    std::int64_t total = 0;
    for (auto r : doubled_ranks) {
        if (r <= 0) throw std::domain_error("wilcoxon: ranks must be positive");
        total += r;
    }
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(total) + 1, 0);
    counts[0] = 1;
    std::int64_t reach = 0;
    for (auto r : doubled_ranks) {
        reach += r;
        for (std::int64_t s = reach; s >= r; --s) counts[static_cast<std::size_t>(s)] += counts[static_cast<std::size_t>(s - r)];
    }
    return counts;
}

std::vector<std::uint64_t> wilcoxon_null_counts(int n) {
    if (n < 0 || n > 62) throw std::domain_error("wilcoxon_null_counts: n must be in [0, 62]");
    const std::int64_t max_sum = static_cast<std::int64_t>(n) * (n + 1) / 2;
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_sum) + 1, 0);
    counts[0] = 1;
    std::int64_t reach = 0;
    for (int r = 1; r <= n; ++r) {
        reach += r;
        for (std::int64_t s = reach; s >= r; --s) counts[static_cast<std::size_t>(s)] += counts[static_cast<std::size_t>(s - r)];
    }
    return counts;
}

double wilcoxon_signed_rank_sf(double w, int n, int exact_max_n) {
    if (n < 1) throw std::domain_error("wilcoxon_signed_rank_sf: n must be >= 1");
    if (std::isnan(w)) throw std::domain_error("wilcoxon_signed_rank_sf: NaN");
    if (n <= std::min(exact_max_n, 62)) {
        const auto counts = wilcoxon_null_counts(n);
        const auto max_sum = static_cast<std::int64_t>(counts.size()) - 1;
        const auto from = static_cast<std::int64_t>(std::ceil(w));
        if (from <= 0) return 1.0;
        if (from > max_sum) return 0.0;
        std::uint64_t tail = 0;
        for (std::int64_t s = from; s <= max_sum; ++s) tail += counts[static_cast<std::size_t>(s)];
        return std::ldexp(static_cast<double>(tail), -n);
    }
    const double nn = n;
    const double mean = nn * (nn + 1) / 4.0;
    const double var = nn * (nn + 1) * (2 * nn + 1) / 24.0;
    return normal_sf((w - mean) / std::sqrt(var));
}

}  // namespace sigtest
