#pragma once

// Independent reference computations used by the unit and acceptance
// tests. Nothing here calls into the library's numerics.

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

using Float50 = boost::multiprecision::cpp_bin_float_50;
using BigInt = boost::multiprecision::cpp_int;

inline double normal_sf(double z) {
    boost::math::normal_distribution<Float50> d;
    return static_cast<double>(boost::math::cdf(boost::math::complement(d, Float50(z))));
}

inline double t_sf(double t, std::int64_t df) {
    boost::math::students_t_distribution<Float50> d{Float50(df)};
    return static_cast<double>(boost::math::cdf(boost::math::complement(d, Float50(t))));
}

inline double chi2_sf(double x, std::int64_t df) {
    boost::math::chi_squared_distribution<Float50> d{Float50(df)};
    return static_cast<double>(boost::math::cdf(boost::math::complement(d, Float50(x))));
}

inline BigInt binomial(unsigned n, unsigned k) {
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// P(X >= k) for Binomial(n, p) by direct summation in 50-digit floats.
inline double binomial_tail(unsigned k, unsigned n, double p) {
    Float50 sum = 0;
    const Float50 pp = p, qq = Float50(1) - pp;
    for (unsigned i = k; i <= n; ++i)
        sum += Float50(binomial(n, i)) * boost::multiprecision::pow(pp, i) * boost::multiprecision::pow(qq, n - i);
    return static_cast<double>(sum);
}

/// Sum of C(n, i) for i = k..n; the numerator of P(X >= k) at p = 1/2.
inline BigInt binomial_upper_count(unsigned k, unsigned n) {
    BigInt sum = 0;
    for (unsigned i = k; i <= n; ++i) sum += binomial(n, i);
    return sum;
}

/// Upper tail of a density by adaptive Gauss-Kronrod quadrature on [x, inf).
template <typename Density>
double upper_tail_quadrature(Density f, double x) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, x, std::numeric_limits<double>::infinity(),
                                                                         15, 1e-14);
}

inline double normal_density(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2 * M_PI);
}

inline double t_density(double x, double nu) {
    const double c = std::exp(std::lgamma((nu + 1) / 2) - std::lgamma(nu / 2)) / std::sqrt(nu * M_PI);
    return c * std::pow(1 + x * x / nu, -(nu + 1) / 2);
}

/// P(W >= w) over all 2^n sign patterns of ranks 1..n.
inline double wilcoxon_enumerated_sf(double w, int n) {
    std::uint64_t hits = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        int sum = 0;
        for (int r = 1; r <= n; ++r)
            if (mask >> (r - 1) & 1) sum += r;
        hits += sum >= w;
    }
    return std::ldexp(static_cast<double>(hits), -n);
}

/// Deterministic grids of 50 evaluation points.
inline std::vector<double> normal_grid() {
    std::vector<double> g;
    for (int i = 0; i < 50; ++i) g.push_back(-9.0 + 18.0 * i / 49.0);
    return g;
}

inline std::vector<std::pair<double, std::int64_t>> t_grid() {
    const std::int64_t dfs[] = {1, 2, 3, 5, 10, 30, 100, 1000, 1000000, 7};
    std::vector<std::pair<double, std::int64_t>> g;
    for (int i = 0; i < 50; ++i) g.emplace_back(-8.0 + 16.0 * ((i * 37) % 50) / 49.0, dfs[i % 10]);
    return g;
}

inline std::vector<std::pair<double, std::int64_t>> chi2_grid() {
    const std::int64_t dfs[] = {1, 2, 3, 4, 5, 10, 20, 50, 100};
    std::vector<std::pair<double, std::int64_t>> g;
    for (int i = 0; i < 50; ++i) {
        const std::int64_t df = dfs[i % 9];
        g.emplace_back(df * (0.02 + 4.0 * ((i * 13) % 50) / 49.0), df);
    }
    return g;
}

struct BinomialPoint {
    unsigned k, n;
    double p;
};

inline std::vector<BinomialPoint> binomial_grid() {
    const double ps[] = {0.5, 0.1, 0.3, 0.5, 0.7, 0.95, 0.5, 0.02};
    std::vector<BinomialPoint> g;
    for (unsigned i = 0; i < 50; ++i) {
        const unsigned n = 1 + (i * 29) % 300;
        const unsigned k = (i * 17) % (n + 1);
        g.push_back({k, n, ps[i % 8]});
    }
    return g;
}

}  // namespace oracle
