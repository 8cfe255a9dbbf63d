// Independent brute-force oracles used to verify the statistics engine.
// Everything here deliberately takes a different computational route from
// the library: counting ranks instead of sort-based ranking, the raw-moment
// correlation formula instead of centered sums, and numeric quadrature of
// the t density instead of a library CDF.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

namespace oracle {

// Mid-rank by counting: rank = 1 + #smaller + (#equal - 1) / 2.
inline std::vector<double> mid_ranks(const std::vector<double>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::size_t smaller = 0, equal = 0;
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j] < v[i]) ++smaller;
            if (v[j] == v[i]) ++equal;
        }
        out[i] = 1.0 + static_cast<double>(smaller) +
                 (static_cast<double>(equal) - 1.0) / 2.0;
    }
    return out;
}

// Raw-moment Pearson: (n*Sxy - Sx*Sy) / sqrt((n*Sxx - Sx^2)(n*Syy - Sy^2)).
inline double pearson_r(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        syy += ys[i] * ys[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) /
           std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

inline double spearman_rho(const std::vector<double>& xs, const std::vector<double>& ys) {
    return pearson_r(mid_ranks(xs), mid_ranks(ys));
}

// Exact two-sided permutation p-value: the share of y permutations whose
// |rho| reaches the observed |rho|.
inline double spearman_permutation_p(const std::vector<double>& xs,
                                     const std::vector<double>& ys) {
    const std::vector<double> rx = mid_ranks(xs);
    std::vector<double> ry = mid_ranks(ys);
    const double observed = std::abs(pearson_r(rx, ry));

    std::sort(ry.begin(), ry.end());
    std::uint64_t total = 0, hits = 0;
    do {
        ++total;
        if (std::abs(pearson_r(rx, ry)) >= observed - 1e-12) ++hits;
    } while (std::next_permutation(ry.begin(), ry.end()));
    return static_cast<double>(hits) / static_cast<double>(total);
}

// Student-t density.
inline double t_pdf(double x, double dof) {
    const double c = std::lgamma((dof + 1.0) / 2.0) - std::lgamma(dof / 2.0) -
                     0.5 * std::log(dof * 3.14159265358979323846);
    return std::exp(c - (dof + 1.0) / 2.0 * std::log1p(x * x / dof));
}

// Two-sided tail by composite Simpson over the substitution
// x = t + s/(1-s), integrating the upper tail on s in [0, 1).
inline double t_two_sided_p(double t, double dof) {
    const double a = std::abs(t);
    const std::size_t steps = 40000;  // even
    const double h = 1.0 / static_cast<double>(steps);
    auto integrand = [&](double s) {
        if (s >= 1.0) return 0.0;
        const double x = a + s / (1.0 - s);
        const double jac = 1.0 / ((1.0 - s) * (1.0 - s));
        return t_pdf(x, dof) * jac;
    };
    double sum = integrand(0.0);
    for (std::size_t i = 1; i < steps; ++i)
        sum += integrand(static_cast<double>(i) * h) * (i % 2 ? 4.0 : 2.0);
    sum *= h / 3.0;
    return std::min(1.0, 2.0 * sum);
}

// p-value matching the library's documented scheme, from oracle parts only.
inline double spearman_p(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() <= 8) return spearman_permutation_p(xs, ys);
    const double rho = spearman_rho(xs, ys);
    const double denom = 1.0 - rho * rho;
    if (denom <= 0.0) return 0.0;
    const double n = static_cast<double>(xs.size());
    return t_two_sided_p(rho * std::sqrt((n - 2.0) / denom), n - 2.0);
}

inline double pearson_p(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double r = pearson_r(xs, ys);
    const double denom = 1.0 - r * r;
    if (denom <= 0.0) return 0.0;
    const double n = static_cast<double>(xs.size());
    return t_two_sided_p(r * std::sqrt((n - 2.0) / denom), n - 2.0);
}

}  // namespace oracle
