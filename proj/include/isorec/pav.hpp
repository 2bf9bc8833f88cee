#pragma once

#include <vector>

#include "isorec/loss.hpp"
#include "isorec/types.hpp"

namespace isorec {

/// Tie handling policy. The single variant replaces each maximal group of
/// g tied scores with g pseudo-samples that all carry the group's weighted
/// average response and an equal share (sum of group weights)/g of the
/// group's weight, preserving totals.
struct TieMergePolicy {
    enum class Mode { WeightedAverage } mode = Mode::WeightedAverage;
};

/// Sorts raw samples by score and applies the tie rule above. Provenance
/// maps every pseudo-sample back to the raw indices of its tie group.
/// Throws EmptyDataset on empty input, InvalidSample on non-finite fields
/// or non-positive weights.
OrderedDataset merge_ties(const std::vector<WeightedSample>& raw,
                          TieMergePolicy policy = {});

/// Pool adjacent violators. Returns the unique minimizer of
/// sum w_i (y_i - mu_i)^2 subject to mu_1 <= ... <= mu_n, as a block
/// partition with strictly increasing block values. Linear time, single
/// left-to-right pass with backward re-merging; block sums are kept with
/// compensated accumulation. Adjacent blocks whose values agree within
/// the relative tolerance are merged in a terminal sweep so that the
/// complexity number counts distinct values.
IsotonicFit pav_fit(const OrderedDataset& data);

/// Independent oracle: evaluates the closed-form solution
///   mu_i = min over l in {i..n} of max over k in {1..l} of
///          the weighted mean of y over [k, l].
/// O(n^2) with long double prefix sums; intended for n up to a few
/// thousand. Blocks are derived by grouping equal adjacent values and
/// their values recomputed as block weighted means.
IsotonicFit minmax_fit(const OrderedDataset& data);

/// Second independent oracle: enumerates all 2^(n-1) interval partitions,
/// keeps those whose block weighted means are nondecreasing, and returns
/// the one with minimal total weighted loss (ties broken toward fewer
/// blocks, then equal-value neighbors merged). For any Bregman loss the
/// result equals pav_fit. Throws TooLarge for n > 14.
IsotonicFit brute_force_fit(const OrderedDataset& data,
                            LossKind loss = LossKind::Squared);

/// Replaces blocks k and k+1 (1-based k, 1 <= k < K) with one block whose
/// value is the weighted mean of responses over the union, recomputed from
/// the data with compensated sums. Rejects a merge whose pooled value
/// would not remain strictly between the neighboring block values. Throws
/// OutOfRange or WouldBreakMonotonicity.
IsotonicFit merge_blocks(const IsotonicFit& fit, const OrderedDataset& data,
                         std::size_t k);

}  // namespace isorec
