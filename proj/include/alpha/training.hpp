#pragma once

#include <map>

#include "alpha/penalty.hpp"

namespace alpha {

/// Probability distribution over CWE classes. Out-of-support classes carry
/// implicit probability zero. validate() enforces non-negativity and a
/// total of 1 within 1e-9; there is no silent renormalization.
struct ClassDistribution {
    std::map<CweId, double> probs;

    void validate() const;  // throws ConfigError
};

/// Expected normalized penalty of the distribution against the truth:
/// sum over the support of prob(v) * matrix(v, truth). The matrix must be
/// normalized, so the result lies in [0, 1].
double alpha_loss(const ClassDistribution& dist, CweId truth,
                  const PenaltyMatrix& matrix);

/// Partial derivative of alpha_loss with respect to each support
/// probability; the loss is linear, so this is just the matrix column.
std::map<CweId, double> alpha_loss_gradient(const ClassDistribution& dist,
                                            CweId truth,
                                            const PenaltyMatrix& matrix);

/// ce_loss + lambda * alpha_loss. Negative lambda is rejected.
double combined_loss(double ce_loss, double alpha_loss_value, double lambda);

}  // namespace alpha
