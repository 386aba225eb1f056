#include "alpha/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <numeric>
#include <vector>

namespace alpha {

namespace {

std::vector<double> average_ranks(std::span<const double> values) {
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
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

SpearmanResult spearman_rank_correlation(std::span<const double> x,
                                         std::span<const double> y) {
    if (x.size() != y.size())
        throw ConfigError("spearman: input lengths differ");
    const std::size_t n = x.size();
    if (n < 3) throw ConfigError("spearman: need at least 3 observations");

    const std::vector<double> rx = average_ranks(x);
    const std::vector<double> ry = average_ranks(y);

    const double mean = (static_cast<double>(n) + 1.0) / 2.0;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = rx[i] - mean;
        const double dy = ry[i] - mean;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw ConfigError("spearman: constant input, correlation undefined");

    double rho = sxy / std::sqrt(sxx * syy);
    rho = std::clamp(rho, -1.0, 1.0);

    SpearmanResult result{rho, 0.0};
    if (std::abs(rho) >= 1.0) {
        result.p_value = 0.0;
        return result;
    }
    const double df = static_cast<double>(n) - 2.0;
    const double t = rho * std::sqrt(df / (1.0 - rho * rho));
    boost::math::students_t dist(df);
    result.p_value = 2.0 * boost::math::cdf(dist, -std::abs(t));
    return result;
}

}  // namespace alpha
