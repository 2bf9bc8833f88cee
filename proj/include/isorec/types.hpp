#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "isorec/errors.hpp"

namespace isorec {

/// One (response, weight, score) triple. The response is the observed
/// outcome y, the weight a positive case weight or exposure, and the
/// score the candidate model's value used purely as a rank carrier.
struct WeightedSample {
    double response = 0.0;
    double weight = 1.0;
    double score = 0.0;
};

/// Tie-merged samples sorted by score. Scores are nondecreasing; a run of
/// equal scores only ever contains pseudo-samples that carry identical
/// response and weight (the tie rule makes them interchangeable), so the
/// distinct score values are strictly increasing. Total weight and the
/// weighted response sum match the raw input the dataset was built from.
class OrderedDataset {
  public:
    OrderedDataset() = default;

    /// Builds from samples already sorted with strictly increasing scores.
    /// Provenance is the identity. Throws InvalidSample on a bad field or
    /// an out-of-order score, EmptyDataset on empty input.
    static OrderedDataset from_sorted(std::vector<WeightedSample> samples);

    /// Internal constructor used by merge_ties; invariants are established
    /// by the caller.
    OrderedDataset(std::vector<WeightedSample> samples,
                   std::vector<std::vector<std::size_t>> provenance)
        : samples_(std::move(samples)), provenance_(std::move(provenance)) {}

    std::size_t size() const { return samples_.size(); }
    const std::vector<WeightedSample>& samples() const { return samples_; }
    const WeightedSample& operator[](std::size_t i) const { return samples_[i]; }

    /// Raw input indices absorbed by pseudo-sample i. Empty provenance
    /// means the identity mapping (from_sorted construction).
    std::vector<std::size_t> raw_indices(std::size_t i) const {
        if (provenance_.empty()) return {i};
        return provenance_[i];
    }

    bool has_provenance() const { return !provenance_.empty(); }

  private:
    std::vector<WeightedSample> samples_;
    std::vector<std::vector<std::size_t>> provenance_;
};

/// One maximal constant piece of an isotonic fit: the samples in
/// [begin, end), the fitted value (the weighted mean of their responses),
/// and the total weight pooled into the block.
struct Block {
    std::size_t begin = 0;  // first sample index, 0-based
    std::size_t end = 0;    // one past the last sample index
    double value = 0.0;
    double weight = 0.0;

    std::size_t size() const { return end - begin; }
};

/// Block partition produced by the isotonic regression solver: blocks tile
/// 0..n contiguously with strictly increasing values. The number of blocks
/// is the complexity number K.
struct IsotonicFit {
    std::vector<Block> blocks;
    std::size_t n = 0;

    std::size_t complexity() const { return blocks.size(); }

    /// Per-sample fitted values, expanded from the blocks.
    std::vector<double> fitted_values() const;

    /// 0-based block index containing sample i.
    std::size_t block_of_sample(std::size_t i) const;

    /// Slicing points 0 = i_0 < i_1 < ... < i_K = n (block end offsets).
    std::vector<std::size_t> slicing_points() const;

    /// Throws Error if the blocks do not tile 0..n, a value is not strictly
    /// below its successor, or a weight is not positive. Solver outputs are
    /// checked with this before they are returned.
    void check_invariants() const;
};

/// Record of one manual block merge applied to a recalibrator.
struct MergeEdit {
    std::size_t block_index = 0;  // 1-based block k merged with k+1
};

/// Deployable recalibration model: the distinct score breakpoints observed
/// at fit time bound to an isotonic fit over those breakpoints. Immutable;
/// edits produce a new model.
struct Recalibrator {
    std::vector<double> breakpoints;  // strictly increasing merged scores
    IsotonicFit fit;                  // fit.n == breakpoints.size()
    std::pair<double, double> range{0.0, 0.0};
    std::vector<MergeEdit> edits;

    std::size_t complexity() const { return fit.complexity(); }
};

}  // namespace isorec
