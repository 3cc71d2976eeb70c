#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace sigtest {

enum class PValueKind { exact, bound, approximation };

std::string_view to_string(PValueKind k);

/// Probability, under the null hypothesis, of a result at least as skewed
/// as the one observed.
struct PValue {
    double value = 1.0;
    PValueKind kind = PValueKind::approximation;
};

// Regularized incomplete functions. x and y = 1 - x are both passed to
// ibeta so callers can supply the complement without cancellation.
double regularized_beta(double a, double b, double x, double y);
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

/// Upper tail of the standard normal.
double normal_sf(double z);

/// Upper tail of Student's t with df degrees of freedom.
double t_sf(double t, std::int64_t df);

/// Upper tail of chi-squared with df degrees of freedom.
double chi2_sf(double x, std::int64_t df);

/// P(X >= k) for X ~ Binomial(n, p).
double binomial_tail(std::int64_t k, std::int64_t n, double p);

inline constexpr int kWilcoxonExactMaxN = 50;

/// Number of sign assignments over ranks 1..n giving each positive-rank
/// sum s = 0..n(n+1)/2. Entries sum to 2^n. n <= 62.
std::vector<std::uint64_t> wilcoxon_null_counts(int n);

/// Same, for arbitrary doubled ranks (2*midrank, always integral). Entry s
/// counts assignments whose doubled positive-rank sum equals s.
std::vector<std::uint64_t> wilcoxon_null_counts_doubled(std::span<const std::int64_t> doubled_ranks);

/// P(W >= w) for the signed-rank statistic with untied ranks 1..n. Exact
/// when n <= exact_max_n, otherwise normal approximation with mean
/// n(n+1)/4 and variance n(n+1)(2n+1)/24.
double wilcoxon_signed_rank_sf(double w, int n, int exact_max_n = kWilcoxonExactMaxN);

}  // namespace sigtest
