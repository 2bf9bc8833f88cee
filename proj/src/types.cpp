#include "isorec/types.hpp"

#include <cmath>
#include <string>

namespace isorec {

OrderedDataset OrderedDataset::from_sorted(std::vector<WeightedSample> samples) {
    if (samples.empty()) throw EmptyDataset();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        if (!std::isfinite(s.response)) throw InvalidSample(i, "response is not finite");
        if (!std::isfinite(s.score)) throw InvalidSample(i, "score is not finite");
        if (!(s.weight > 0.0) || !std::isfinite(s.weight))
            throw InvalidSample(i, "weight must be a positive finite number");
        if (i > 0 && !(samples[i - 1].score < s.score))
            throw InvalidSample(i, "scores must be strictly increasing");
    }
    return OrderedDataset(std::move(samples), {});
}

std::vector<double> IsotonicFit::fitted_values() const {
    std::vector<double> out(n);
    for (const auto& b : blocks) {
        for (std::size_t i = b.begin; i < b.end; ++i) out[i] = b.value;
    }
    return out;
}

std::size_t IsotonicFit::block_of_sample(std::size_t i) const {
    if (i >= n) throw OutOfRange(i, "sample index beyond fit");
    std::size_t lo = 0, hi = blocks.size();
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (blocks[mid].begin <= i) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

std::vector<std::size_t> IsotonicFit::slicing_points() const {
    std::vector<std::size_t> pts;
    pts.reserve(blocks.size() + 1);
    pts.push_back(0);
    for (const auto& b : blocks) pts.push_back(b.end);
    return pts;
}

void IsotonicFit::check_invariants() const {
    if (blocks.empty() || n == 0) throw Error("fit has no blocks");
    std::size_t expect = 0;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        const auto& b = blocks[k];
        if (b.begin != expect || b.end <= b.begin)
            throw Error("blocks do not tile the sample range contiguously");
        if (!(b.weight > 0.0)) throw Error("block " + std::to_string(k + 1) + " has non-positive weight");
        if (k > 0 && !(blocks[k - 1].value < b.value))
            throw Error("block values are not strictly increasing at block " + std::to_string(k + 1));
        expect = b.end;
    }
    if (expect != n) throw Error("blocks do not cover all samples");
}

}  // namespace isorec
