#pragma once

#include <cstddef>
#include <vector>

#include "isorec/loss.hpp"
#include "isorec/types.hpp"

namespace isorec {

// Absolute gap per block between the fitted value and the weighted mean of
// the responses it covers. Solver output keeps every gap at rounding level.
std::vector<double> check_autocalibration(const IsotonicFit& fit, const OrderedDataset& data);

// Signed total: sum of w*fitted minus sum of w*response over all samples.
double balance_gap(const IsotonicFit& fit, const OrderedDataset& data);

// Weighted mean of per-sample losses: sum w_i * L(y_i, mu_i) / sum w_i.
double mean_loss(const std::vector<double>& responses, const std::vector<double>& weights,
                 const std::vector<double>& fitted, LossKind kind);

// Square root of the weighted mean squared error.
double rmse(const std::vector<double>& responses, const std::vector<double>& weights,
            const std::vector<double>& fitted);

struct LossComparison {
    LossKind kind = LossKind::Squared;
    double score_loss = 0.0;
    double recalibrated_loss = 0.0;
};

struct LossImprovementReport {
    std::vector<LossComparison> rows;
    bool all_non_increasing = true;
};

// Compares in-sample loss of the raw scores used as predictions against the
// recalibrated fitted values, for every loss kind applicable to the data.
// Squared loss always applies; gamma deviance and qlike only when responses
// and both prediction vectors are strictly positive.
LossImprovementReport loss_improvement_check(const std::vector<double>& responses,
                                             const std::vector<double>& weights,
                                             const std::vector<double>& score_fitted,
                                             const std::vector<double>& recalibrated_fitted);

struct ReliabilityPoint {
    double prediction = 0.0;       // weighted mean prediction within the block
    double conditional_mean = 0.0; // isotonic estimate of E[outcome | prediction]
};

// Mean reliability diagram: isotonic regression of outcomes on predictions,
// one point per block. An auto-calibrated predictor puts every point on the
// diagonal.
std::vector<ReliabilityPoint> reliability_points(const std::vector<double>& predictions,
                                                 const std::vector<double>& outcomes,
                                                 const std::vector<double>& weights);

}  // namespace isorec
