#pragma once

#include <span>

#include "alpha/cwe.hpp"

namespace alpha {

struct SpearmanResult {
    double rho = 0.0;
    double p_value = 1.0;
};

/// Spearman rank correlation with average-rank tie handling. The p-value
/// is the two-sided t-approximation with n-2 degrees of freedom. Throws
/// ConfigError on length mismatch, n < 3, or constant input.
SpearmanResult spearman_rank_correlation(std::span<const double> x,
                                         std::span<const double> y);

}  // namespace alpha
