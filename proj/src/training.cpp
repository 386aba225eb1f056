#include "alpha/training.hpp"

#include <cmath>

namespace alpha {

void ClassDistribution::validate() const {
    double total = 0.0;
    for (const auto& [id, p] : probs) {
        if (p < 0.0)
            throw ConfigError("class distribution: negative probability for " +
                              id.str());
        if (!std::isfinite(p))
            throw ConfigError("class distribution: non-finite probability for " +
                              id.str());
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw ConfigError("class distribution: probabilities sum to " +
                          std::to_string(total) + ", expected 1");
}

double alpha_loss(const ClassDistribution& dist, CweId truth,
                  const PenaltyMatrix& matrix) {
    dist.validate();
    if (!matrix.normalized())
        throw ConfigError("alpha_loss requires a normalized penalty matrix");
    double loss = 0.0;
    for (const auto& [v, p] : dist.probs) loss += p * matrix.at(v, truth);
    return loss;
}

std::map<CweId, double> alpha_loss_gradient(const ClassDistribution& dist,
                                            CweId truth,
                                            const PenaltyMatrix& matrix) {
    dist.validate();
    if (!matrix.normalized())
        throw ConfigError("alpha_loss_gradient requires a normalized penalty matrix");
    std::map<CweId, double> grad;
    for (const auto& [v, p] : dist.probs) grad[v] = matrix.at(v, truth);
    return grad;
}

double combined_loss(double ce_loss, double alpha_loss_value, double lambda) {
    if (lambda < 0.0) throw ConfigError("combined_loss: lambda must be >= 0");
    if (!std::isfinite(ce_loss) || !std::isfinite(alpha_loss_value) ||
        !std::isfinite(lambda))
        throw ConfigError("combined_loss: inputs must be finite");
    if (ce_loss < 0.0) throw ConfigError("combined_loss: ce_loss must be >= 0");
    return ce_loss + lambda * alpha_loss_value;
}

}  // namespace alpha
