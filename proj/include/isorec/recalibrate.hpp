#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "isorec/pav.hpp"
#include "isorec/types.hpp"

namespace isorec {

// Block membership for a batch of query scores. Labels are 1-based block
// indices; rows with equal scores always receive equal labels.
struct PartitionLabeling {
    std::vector<std::size_t> labels;
    std::vector<double> block_values;
};

struct StepPrediction {
    double value = 0.0;
    std::size_t block = 0;  // 1-based
};

// Weighted share of each block within each covariate level. Rows follow
// first-appearance order of the levels and sum to 1.
struct MarginalSummary {
    std::vector<std::string> levels;
    std::size_t block_count = 0;
    std::vector<std::vector<double>> shares;  // levels x blocks
};

// Collapses each run of equal scores into a single sample carrying the run's
// pooled weight and common response. Input must come from merge_ties, so the
// members of a run are already identical.
OrderedDataset collapse_ties(const OrderedDataset& merged);

// Two-step procedure: merge ties, fit isotonic regression, then index the
// result by distinct score. The model keeps one breakpoint per distinct
// training score; its fit partitions those breakpoints into K blocks.
Recalibrator recalibrate(const std::vector<WeightedSample>& raw);

// Exact breakpoint hit returns that breakpoint's fitted value; a query
// strictly between two breakpoints returns the midpoint of their fitted
// values; out-of-range queries clamp to the boundary block value.
double predict_midpoint(const Recalibrator& model, double score);

// Step-function rule: the block of the last breakpoint at or below the
// query. Below-range queries clamp to block 1, at-or-above the last
// breakpoint to block K.
StepPrediction predict_step(const Recalibrator& model, double score);

PartitionLabeling assign_partition(const Recalibrator& model, const std::vector<double>& scores);

// Per covariate level, the weighted share of rows landing in each block.
MarginalSummary marginal_summary(const PartitionLabeling& labeling,
                                 const std::vector<std::string>& covariate,
                                 const std::vector<double>& weights);

// Manual boundary correction: pools blocks k and k+1 (1-based) using the
// stored block weights, so it works on a deserialized model without the
// training data. The edit is appended to the model's edit log. Throws
// OutOfRange on an invalid pair index and WouldBreakMonotonicity if the
// pooled value would collide with a neighboring block.
Recalibrator apply_merge(const Recalibrator& model, std::size_t k);

enum class MergeTarget { Low, High };

// Low merges the bottom pair (k = 1), High the top pair (k = K-1).
Recalibrator apply_merge(const Recalibrator& model, MergeTarget which);

}  // namespace isorec
