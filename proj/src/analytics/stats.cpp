#include "vaxwatch/analytics/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

namespace vaxwatch::analytics {

namespace {

struct Centered {
    std::vector<double> dx, dy;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
};

Centered center(std::span<const double> xs, std::span<const double> ys) {
    const std::size_t n = xs.size();
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(n);
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(n);
    Centered c;
    c.dx.resize(n);
    c.dy.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        c.dx[i] = xs[i] - mx;
        c.dy[i] = ys[i] - my;
        c.sxx += c.dx[i] * c.dx[i];
        c.syy += c.dy[i] * c.dy[i];
        c.sxy += c.dx[i] * c.dy[i];
    }
    return c;
}

void check_args(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("correlation inputs differ in length");
    if (xs.size() < 3) throw std::invalid_argument("correlation needs at least 3 points");
}

double coefficient_from(const Centered& c) {
    if (c.sxx <= 0.0 || c.syy <= 0.0)
        throw UndefinedCorrelation("correlation undefined for constant input");
    double r = c.sxy / std::sqrt(c.sxx * c.syy);
    return std::clamp(r, -1.0, 1.0);
}

double t_approx_p(double r, std::size_t n) {
    const double denom = 1.0 - r * r;
    if (denom <= 0.0) return 0.0;  // |r| == 1, off-the-chart t
    const double t = r * std::sqrt((static_cast<double>(n) - 2.0) / denom);
    return student_t_two_sided_p(t, static_cast<double>(n) - 2.0);
}

// Exact two-sided permutation p-value over rank vectors: the fraction of
// y-rank permutations whose |rho| is at least the observed |rho|.
double exact_permutation_p(const std::vector<double>& rx, const std::vector<double>& ry,
                           double observed) {
    const std::size_t n = rx.size();
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / static_cast<double>(n);
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / static_cast<double>(n);
    double sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    const double denom = std::sqrt(sxx * syy);

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t total = 0, at_least = 0;
    const double threshold = std::abs(observed) - 1e-12;
    do {
        double sxy = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            sxy += (rx[i] - mx) * (ry[perm[i]] - my);
        ++total;
        if (std::abs(sxy / denom) >= threshold) ++at_least;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return static_cast<double>(at_least) / static_cast<double>(total);
}

}  // namespace

std::vector<double> mid_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        // Positions i..j (0-based) share the mid-rank.
        const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

Correlation pearson(std::span<const double> xs, std::span<const double> ys) {
    check_args(xs, ys);
    const Centered c = center(xs, ys);
    const double r = coefficient_from(c);
    return Correlation{r, t_approx_p(r, xs.size()), xs.size()};
}

Correlation spearman(std::span<const double> xs, std::span<const double> ys) {
    check_args(xs, ys);
    const std::vector<double> rx = mid_ranks(xs);
    const std::vector<double> ry = mid_ranks(ys);
    const Centered c = center(rx, ry);
    const double rho = coefficient_from(c);

    double p = xs.size() <= kExactPermutationLimit ? exact_permutation_p(rx, ry, rho)
                                                   : t_approx_p(rho, xs.size());
    return Correlation{rho, p, xs.size()};
}

double student_t_two_sided_p(double t, double dof) {
    if (std::isinf(t)) return 0.0;
    boost::math::students_t_distribution<double> dist(dof);
    double tail = boost::math::cdf(boost::math::complement(dist, std::abs(t)));
    return std::min(1.0, 2.0 * tail);
}

}  // namespace vaxwatch::analytics
