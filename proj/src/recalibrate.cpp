#include "isorec/recalibrate.hpp"

#include <algorithm>
#include <cmath>

#include "isorec/numeric.hpp"

namespace isorec {

namespace {

std::size_t breakpoint_block(const Recalibrator& model, std::size_t breakpoint_index) {
    return model.fit.block_of_sample(breakpoint_index);
}

double breakpoint_value(const Recalibrator& model, std::size_t breakpoint_index) {
    return model.fit.blocks[breakpoint_block(model, breakpoint_index)].value;
}

}  // namespace

OrderedDataset collapse_ties(const OrderedDataset& merged) {
    const std::size_t n = merged.size();
    if (n == 0) throw EmptyDataset();

    std::vector<WeightedSample> samples;
    std::vector<std::vector<std::size_t>> provenance;
    std::size_t g0 = 0;
    while (g0 < n) {
        std::size_t g1 = g0 + 1;
        while (g1 < n && merged[g1].score == merged[g0].score) ++g1;
        CompensatedSum sw;
        for (std::size_t i = g0; i < g1; ++i) sw.add(merged[i].weight);
        samples.push_back(WeightedSample{merged[g0].response, sw.value(), merged[g0].score});
        provenance.push_back(merged.raw_indices(g0));
        g0 = g1;
    }
    return OrderedDataset(std::move(samples), std::move(provenance));
}

Recalibrator recalibrate(const std::vector<WeightedSample>& raw) {
    const OrderedDataset merged = merge_ties(raw);
    const IsotonicFit full = pav_fit(merged);

    // Group by distinct score; group g covers pseudo-samples
    // [starts[g], starts[g+1]).
    std::vector<std::size_t> starts;
    std::vector<double> scores;
    for (std::size_t i = 0; i < merged.size(); ++i) {
        if (i == 0 || merged[i].score != merged[i - 1].score) {
            starts.push_back(i);
            scores.push_back(merged[i].score);
        }
    }
    starts.push_back(merged.size());
    const std::size_t m = scores.size();

    // Equal-score samples are identical after merge_ties, so no block
    // boundary can fall inside a group; reindex block ends to group space.
    IsotonicFit reduced;
    reduced.n = m;
    reduced.blocks.reserve(full.blocks.size());
    std::size_t g = 0;
    std::size_t begin = 0;
    for (const Block& b : full.blocks) {
        while (g < m && starts[g + 1] <= b.end) ++g;
        if (starts[g] != b.end)
            throw Error("internal: block boundary splits a tied score group");
        reduced.blocks.push_back(Block{begin, g, b.value, b.weight});
        begin = g;
    }
    reduced.check_invariants();

    Recalibrator model;
    model.breakpoints = std::move(scores);
    model.fit = std::move(reduced);
    model.range = {model.breakpoints.front(), model.breakpoints.back()};
    return model;
}

double predict_midpoint(const Recalibrator& model, double score) {
    const auto& b = model.breakpoints;
    const auto it = std::lower_bound(b.begin(), b.end(), score);
    if (it != b.end() && *it == score)
        return breakpoint_value(model, static_cast<std::size_t>(it - b.begin()));
    if (it == b.begin()) return model.fit.blocks.front().value;
    if (it == b.end()) return model.fit.blocks.back().value;
    const std::size_t hi = static_cast<std::size_t>(it - b.begin());
    return 0.5 * (breakpoint_value(model, hi - 1) + breakpoint_value(model, hi));
}

StepPrediction predict_step(const Recalibrator& model, double score) {
    const auto& b = model.breakpoints;
    const auto it = std::upper_bound(b.begin(), b.end(), score);
    const std::size_t anchor =
        it == b.begin() ? 0 : static_cast<std::size_t>(it - b.begin()) - 1;
    const std::size_t block = breakpoint_block(model, anchor);
    return StepPrediction{model.fit.blocks[block].value, block + 1};
}

PartitionLabeling assign_partition(const Recalibrator& model, const std::vector<double>& scores) {
    PartitionLabeling out;
    out.labels.reserve(scores.size());
    for (double s : scores) out.labels.push_back(predict_step(model, s).block);
    out.block_values.reserve(model.fit.blocks.size());
    for (const Block& blk : model.fit.blocks) out.block_values.push_back(blk.value);
    return out;
}

MarginalSummary marginal_summary(const PartitionLabeling& labeling,
                                 const std::vector<std::string>& covariate,
                                 const std::vector<double>& weights) {
    const std::size_t n = labeling.labels.size();
    if (covariate.size() != n) throw LengthMismatch("covariate length differs from labels");
    if (weights.size() != n) throw LengthMismatch("weights length differs from labels");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
            throw InvalidSample(i, "weight must be a positive finite number");
    }

    MarginalSummary out;
    out.block_count = labeling.block_values.size();

    std::vector<std::size_t> level_of(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto it = std::find(out.levels.begin(), out.levels.end(), covariate[i]);
        if (it == out.levels.end()) {
            level_of[i] = out.levels.size();
            out.levels.push_back(covariate[i]);
        } else {
            level_of[i] = static_cast<std::size_t>(it - out.levels.begin());
        }
    }

    std::vector<std::vector<CompensatedSum>> mass(
        out.levels.size(), std::vector<CompensatedSum>(out.block_count));
    std::vector<CompensatedSum> total(out.levels.size());
    for (std::size_t i = 0; i < n; ++i) {
        mass[level_of[i]][labeling.labels[i] - 1].add(weights[i]);
        total[level_of[i]].add(weights[i]);
    }
    out.shares.resize(out.levels.size());
    for (std::size_t l = 0; l < out.levels.size(); ++l) {
        out.shares[l].resize(out.block_count);
        for (std::size_t k = 0; k < out.block_count; ++k)
            out.shares[l][k] = mass[l][k].value() / total[l].value();
    }
    return out;
}

Recalibrator apply_merge(const Recalibrator& model, std::size_t k) {
    const std::size_t K = model.complexity();
    if (K < 2) throw OutOfRange(k, "model has a single block; nothing to merge");
    if (k < 1 || k >= K) throw OutOfRange(k, "block pair index must be in [1, K-1]");

    const Block& left = model.fit.blocks[k - 1];
    const Block& right = model.fit.blocks[k];
    CompensatedSum swv, sw;
    swv.add(left.weight * left.value);
    swv.add(right.weight * right.value);
    sw.add(left.weight);
    sw.add(right.weight);
    const double value = swv.value() / sw.value();

    if (k >= 2) {
        const double below = model.fit.blocks[k - 2].value;
        if (!(below < value) || block_values_equal(below, value))
            throw WouldBreakMonotonicity(k);
    }
    if (k + 1 < K) {
        const double above = model.fit.blocks[k + 1].value;
        if (!(value < above) || block_values_equal(value, above))
            throw WouldBreakMonotonicity(k);
    }

    Recalibrator out;
    out.breakpoints = model.breakpoints;
    out.range = model.range;
    out.edits = model.edits;
    out.edits.push_back(MergeEdit{k});
    out.fit.n = model.fit.n;
    out.fit.blocks.reserve(K - 1);
    for (std::size_t j = 0; j + 1 < k; ++j) out.fit.blocks.push_back(model.fit.blocks[j]);
    out.fit.blocks.push_back(Block{left.begin, right.end, value, sw.value()});
    for (std::size_t j = k + 1; j < K; ++j) out.fit.blocks.push_back(model.fit.blocks[j]);
    out.fit.check_invariants();
    return out;
}

Recalibrator apply_merge(const Recalibrator& model, MergeTarget which) {
    const std::size_t K = model.complexity();
    if (K < 2) throw OutOfRange(1, "model has a single block; nothing to merge");
    return apply_merge(model, which == MergeTarget::Low ? 1 : K - 1);
}

}  // namespace isorec
