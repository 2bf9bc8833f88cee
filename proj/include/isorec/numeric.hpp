#pragma once

#include <cmath>
#include <cstddef>

namespace isorec {

/// Neumaier compensated accumulator. Running block sums (sum w*y, sum w)
/// must keep the balance identity to ~1e-12 relative even for very long
/// pooled blocks, which plain summation does not guarantee.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    CompensatedSum() = default;
    explicit CompensatedSum(double x) : sum(x) {}

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }

    void add(const CompensatedSum& other) {
        add(other.sum);
        add(other.comp);
    }

    double value() const { return sum + comp; }
};

/// Relative-tolerance equality used when deciding whether two adjacent
/// block estimates are "the same". 1e-12 absorbs floating-point drift in
/// weighted means; exact comparison can leave spuriously split blocks.
inline constexpr double kBlockValueRelTol = 1e-12;

inline bool block_values_equal(double a, double b) {
    return std::abs(a - b) <= kBlockValueRelTol * std::fmax(std::abs(a), std::abs(b));
}

}  // namespace isorec
