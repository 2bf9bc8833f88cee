#include "isorec/pav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "isorec/numeric.hpp"

namespace isorec {

namespace {

struct BlockAcc {
    std::size_t begin = 0;
    std::size_t end = 0;
    CompensatedSum swy;  // sum of w*y over [begin, end)
    CompensatedSum sw;   // sum of w over [begin, end)

    double mean() const { return swy.value() / sw.value(); }
};

BlockAcc accumulate_range(const OrderedDataset& data, std::size_t begin, std::size_t end) {
    BlockAcc acc;
    acc.begin = begin;
    acc.end = end;
    for (std::size_t i = begin; i < end; ++i) {
        acc.swy.add(data[i].weight * data[i].response);
        acc.sw.add(data[i].weight);
    }
    return acc;
}

// Terminal step: merge adjacent blocks carrying the same estimate so the
// complexity number counts distinct values, then freeze the partition.
IsotonicFit finalize_blocks(std::vector<BlockAcc> accs, std::size_t n) {
    std::vector<BlockAcc> merged;
    merged.reserve(accs.size());
    for (auto& acc : accs) {
        merged.push_back(std::move(acc));
        while (merged.size() >= 2 &&
               block_values_equal(merged[merged.size() - 2].mean(), merged.back().mean())) {
            BlockAcc top = std::move(merged.back());
            merged.pop_back();
            merged.back().end = top.end;
            merged.back().swy.add(top.swy);
            merged.back().sw.add(top.sw);
        }
    }
    IsotonicFit fit;
    fit.n = n;
    fit.blocks.reserve(merged.size());
    for (const auto& acc : merged) {
        fit.blocks.push_back(Block{acc.begin, acc.end, acc.mean(), acc.sw.value()});
    }
    fit.check_invariants();
    return fit;
}

}  // namespace

OrderedDataset merge_ties(const std::vector<WeightedSample>& raw, TieMergePolicy) {
    if (raw.empty()) throw EmptyDataset();
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const auto& s = raw[i];
        if (!std::isfinite(s.response)) throw InvalidSample(i, "response is not finite");
        if (!std::isfinite(s.score)) throw InvalidSample(i, "score is not finite");
        if (!(s.weight > 0.0) || !std::isfinite(s.weight))
            throw InvalidSample(i, "weight must be a positive finite number");
    }

    std::vector<std::size_t> order(raw.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&raw](std::size_t a, std::size_t b) {
        return raw[a].score < raw[b].score;
    });

    std::vector<WeightedSample> samples;
    std::vector<std::vector<std::size_t>> provenance;
    samples.reserve(raw.size());
    provenance.reserve(raw.size());

    std::size_t g0 = 0;
    while (g0 < order.size()) {
        std::size_t g1 = g0 + 1;
        while (g1 < order.size() && raw[order[g1]].score == raw[order[g0]].score) ++g1;
        const std::size_t g = g1 - g0;

        CompensatedSum swy, sw;
        std::vector<std::size_t> group;
        group.reserve(g);
        for (std::size_t j = g0; j < g1; ++j) {
            const auto& s = raw[order[j]];
            swy.add(s.weight * s.response);
            sw.add(s.weight);
            group.push_back(order[j]);
        }
        const double avg = swy.value() / sw.value();
        const double share = sw.value() / static_cast<double>(g);
        for (std::size_t j = 0; j < g; ++j) {
            samples.push_back(WeightedSample{avg, share, raw[order[g0]].score});
            provenance.push_back(group);
        }
        g0 = g1;
    }
    return OrderedDataset(std::move(samples), std::move(provenance));
}

IsotonicFit pav_fit(const OrderedDataset& data) {
    const std::size_t n = data.size();
    if (n == 0) throw EmptyDataset();

    std::vector<BlockAcc> stack;
    for (std::size_t i = 0; i < n; ++i) {
        BlockAcc cur;
        cur.begin = i;
        cur.end = i + 1;
        cur.swy.add(data[i].weight * data[i].response);
        cur.sw.add(data[i].weight);
        stack.push_back(cur);
        // Pool on strict violation only; equal estimates stay separate
        // until the terminal sweep.
        while (stack.size() >= 2 && stack[stack.size() - 2].mean() > stack.back().mean()) {
            BlockAcc top = std::move(stack.back());
            stack.pop_back();
            stack.back().end = top.end;
            stack.back().swy.add(top.swy);
            stack.back().sw.add(top.sw);
        }
    }
    return finalize_blocks(std::move(stack), n);
}

IsotonicFit minmax_fit(const OrderedDataset& data) {
    const std::size_t n = data.size();
    if (n == 0) throw EmptyDataset();

    // Prefix sums in long double; the oracle deliberately avoids the
    // solver's compensated-pair accumulation path.
    std::vector<long double> pw(n + 1, 0.0L), pwy(n + 1, 0.0L);
    for (std::size_t i = 0; i < n; ++i) {
        pw[i + 1] = pw[i] + static_cast<long double>(data[i].weight);
        pwy[i + 1] = pwy[i] + static_cast<long double>(data[i].weight) * data[i].response;
    }
    const auto interval_mean = [&](std::size_t k, std::size_t l) {
        // weighted mean of y over samples k..l, 0-based inclusive
        return (pwy[l + 1] - pwy[k]) / (pw[l + 1] - pw[k]);
    };

    // inner_max[l] = max over k <= l of the interval mean on [k, l]
    std::vector<long double> inner_max(n);
    for (std::size_t l = 0; l < n; ++l) {
        long double m = interval_mean(0, l);
        for (std::size_t k = 1; k <= l; ++k) m = std::max(m, interval_mean(k, l));
        inner_max[l] = m;
    }
    // mu_i = min over l >= i of inner_max[l], via a suffix sweep
    std::vector<double> mu(n);
    long double suffix_min = inner_max[n - 1];
    mu[n - 1] = static_cast<double>(suffix_min);
    for (std::size_t i = n - 1; i-- > 0;) {
        suffix_min = std::min(suffix_min, inner_max[i]);
        mu[i] = static_cast<double>(suffix_min);
    }

    std::vector<BlockAcc> accs;
    std::size_t b0 = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (i == n || !block_values_equal(mu[i], mu[b0])) {
            accs.push_back(accumulate_range(data, b0, i));
            b0 = i;
        }
    }
    return finalize_blocks(std::move(accs), n);
}

IsotonicFit brute_force_fit(const OrderedDataset& data, LossKind loss) {
    const std::size_t n = data.size();
    if (n == 0) throw EmptyDataset();
    if (n > 14) throw TooLarge(n, 14);
    if (requires_positive(loss)) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!(data[i].response > 0.0))
                throw NonPositiveValue(i, std::string(to_string(loss)) +
                                              " loss requires positive responses");
        }
    }

    const std::uint32_t num_masks = n == 1 ? 1u : (1u << (n - 1));
    long double best_loss = 0.0L;
    std::uint32_t best_mask = 0;
    std::size_t best_blocks = 0;
    bool have_best = false;

    std::vector<std::size_t> cuts;  // block end offsets for the current mask
    for (std::uint32_t mask = 0; mask < num_masks; ++mask) {
        cuts.clear();
        for (std::size_t j = 0; j + 1 < n; ++j) {
            if (mask & (1u << j)) cuts.push_back(j + 1);
        }
        cuts.push_back(n);

        bool monotone = true;
        long double total = 0.0L;
        long double prev_mean = 0.0L;
        std::size_t begin = 0;
        for (std::size_t c = 0; c < cuts.size() && monotone; ++c) {
            const std::size_t end = cuts[c];
            long double sw = 0.0L, swy = 0.0L;
            for (std::size_t i = begin; i < end; ++i) {
                sw += data[i].weight;
                swy += static_cast<long double>(data[i].weight) * data[i].response;
            }
            const long double mean = swy / sw;
            if (c > 0 && mean < prev_mean) {
                monotone = false;
                break;
            }
            const double mu = static_cast<double>(mean);
            for (std::size_t i = begin; i < end; ++i) {
                total += static_cast<long double>(data[i].weight) *
                         sample_loss(loss, data[i].response, mu);
            }
            prev_mean = mean;
            begin = end;
        }
        if (!monotone) continue;

        const long double tol = 1e-12L * std::max<long double>(1.0L, std::abs(best_loss));
        if (!have_best || total < best_loss - tol ||
            (std::abs(total - best_loss) <= tol && cuts.size() < best_blocks)) {
            best_loss = total;
            best_mask = mask;
            best_blocks = cuts.size();
            have_best = true;
        }
    }

    std::vector<BlockAcc> accs;
    std::size_t begin = 0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        if (best_mask & (1u << j)) {
            accs.push_back(accumulate_range(data, begin, j + 1));
            begin = j + 1;
        }
    }
    accs.push_back(accumulate_range(data, begin, n));
    return finalize_blocks(std::move(accs), n);
}

IsotonicFit merge_blocks(const IsotonicFit& fit, const OrderedDataset& data, std::size_t k) {
    fit.check_invariants();
    if (fit.n != data.size()) throw FitDataMismatch(fit.n, data.size());
    const std::size_t K = fit.complexity();
    if (k < 1 || k >= K) throw OutOfRange(k, "block pair index must be in [1, K-1]");

    const Block& left = fit.blocks[k - 1];
    const Block& right = fit.blocks[k];
    const BlockAcc pooled = accumulate_range(data, left.begin, right.end);
    const double value = pooled.mean();

    if (k >= 2) {
        const double below = fit.blocks[k - 2].value;
        if (!(below < value) || block_values_equal(below, value))
            throw WouldBreakMonotonicity(k);
    }
    if (k + 1 < K) {
        const double above = fit.blocks[k + 1].value;
        if (!(value < above) || block_values_equal(value, above))
            throw WouldBreakMonotonicity(k);
    }

    IsotonicFit out;
    out.n = fit.n;
    out.blocks.reserve(K - 1);
    for (std::size_t j = 0; j + 1 < k; ++j) out.blocks.push_back(fit.blocks[j]);
    out.blocks.push_back(Block{left.begin, right.end, value, pooled.sw.value()});
    for (std::size_t j = k + 1; j < K; ++j) out.blocks.push_back(fit.blocks[j]);
    out.check_invariants();
    return out;
}

}  // namespace isorec
