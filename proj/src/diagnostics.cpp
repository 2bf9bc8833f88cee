#include "isorec/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "isorec/numeric.hpp"
#include "isorec/pav.hpp"

namespace isorec {

namespace {

void require_same_length(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw LengthMismatch(what);
}

void require_valid_weights(const std::vector<double>& weights) {
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
            throw InvalidSample(i, "weight must be a positive finite number");
    }
}

bool all_positive(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x > 0.0; });
}

}  // namespace

std::vector<double> check_autocalibration(const IsotonicFit& fit, const OrderedDataset& data) {
    if (fit.n != data.size()) throw FitDataMismatch(fit.n, data.size());
    std::vector<double> gaps;
    gaps.reserve(fit.blocks.size());
    for (const Block& b : fit.blocks) {
        CompensatedSum swy, sw;
        for (std::size_t i = b.begin; i < b.end; ++i) {
            swy.add(data[i].weight * data[i].response);
            sw.add(data[i].weight);
        }
        gaps.push_back(std::abs(b.value - swy.value() / sw.value()));
    }
    return gaps;
}

double balance_gap(const IsotonicFit& fit, const OrderedDataset& data) {
    if (fit.n != data.size()) throw FitDataMismatch(fit.n, data.size());
    CompensatedSum gap;
    for (const Block& b : fit.blocks) {
        for (std::size_t i = b.begin; i < b.end; ++i)
            gap.add(data[i].weight * (b.value - data[i].response));
    }
    return gap.value();
}

double mean_loss(const std::vector<double>& responses, const std::vector<double>& weights,
                 const std::vector<double>& fitted, LossKind kind) {
    require_same_length(responses.size(), weights.size(), "weights length differs from responses");
    require_same_length(responses.size(), fitted.size(), "fitted length differs from responses");
    if (responses.empty()) throw EmptyDataset();
    require_valid_weights(weights);
    if (requires_positive(kind)) {
        for (std::size_t i = 0; i < responses.size(); ++i) {
            if (!(responses[i] > 0.0))
                throw NonPositiveValue(i, std::string(to_string(kind)) +
                                              " loss requires positive responses");
            if (!(fitted[i] > 0.0))
                throw NonPositiveValue(i, std::string(to_string(kind)) +
                                              " loss requires positive fitted values");
        }
    }
    CompensatedSum num, den;
    for (std::size_t i = 0; i < responses.size(); ++i) {
        num.add(weights[i] * sample_loss(kind, responses[i], fitted[i]));
        den.add(weights[i]);
    }
    return num.value() / den.value();
}

double rmse(const std::vector<double>& responses, const std::vector<double>& weights,
            const std::vector<double>& fitted) {
    return std::sqrt(mean_loss(responses, weights, fitted, LossKind::Squared));
}

LossImprovementReport loss_improvement_check(const std::vector<double>& responses,
                                             const std::vector<double>& weights,
                                             const std::vector<double>& score_fitted,
                                             const std::vector<double>& recalibrated_fitted) {
    require_same_length(responses.size(), score_fitted.size(),
                        "score predictions length differs from responses");
    require_same_length(responses.size(), recalibrated_fitted.size(),
                        "recalibrated predictions length differs from responses");

    std::vector<LossKind> kinds{LossKind::Squared};
    if (all_positive(responses) && all_positive(score_fitted) &&
        all_positive(recalibrated_fitted)) {
        kinds.push_back(LossKind::GammaDeviance);
        kinds.push_back(LossKind::Qlike);
    }

    LossImprovementReport report;
    for (LossKind kind : kinds) {
        LossComparison row;
        row.kind = kind;
        row.score_loss = mean_loss(responses, weights, score_fitted, kind);
        row.recalibrated_loss = mean_loss(responses, weights, recalibrated_fitted, kind);
        if (row.recalibrated_loss > row.score_loss) report.all_non_increasing = false;
        report.rows.push_back(row);
    }
    return report;
}

std::vector<ReliabilityPoint> reliability_points(const std::vector<double>& predictions,
                                                 const std::vector<double>& outcomes,
                                                 const std::vector<double>& weights) {
    require_same_length(predictions.size(), outcomes.size(),
                        "outcomes length differs from predictions");
    require_same_length(predictions.size(), weights.size(),
                        "weights length differs from predictions");

    std::vector<WeightedSample> raw;
    raw.reserve(predictions.size());
    for (std::size_t i = 0; i < predictions.size(); ++i)
        raw.push_back(WeightedSample{outcomes[i], weights[i], predictions[i]});

    const OrderedDataset merged = merge_ties(raw);
    const IsotonicFit fit = pav_fit(merged);

    std::vector<ReliabilityPoint> points;
    points.reserve(fit.blocks.size());
    for (const Block& b : fit.blocks) {
        CompensatedSum sws, sw;
        for (std::size_t i = b.begin; i < b.end; ++i) {
            sws.add(merged[i].weight * merged[i].score);
            sw.add(merged[i].weight);
        }
        points.push_back(ReliabilityPoint{sws.value() / sw.value(), b.value});
    }
    return points;
}

}  // namespace isorec
