#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "isorec/types.hpp"

namespace isorec {

enum class NoiseKind { StandardGaussian, StudentT, UniformSym };

struct NoiseSpec {
    NoiseKind kind = NoiseKind::StandardGaussian;
    double df = 0.0;  // Student-t degrees of freedom; ignored otherwise
};

// Location-scale experiment: y_i = mu_i + sigma * eps_i, evaluated on a
// sigma grid with one shared noise vector per replicate.
struct SimulationConfig {
    std::size_t n = 0;
    std::vector<double> mu;       // size n, nondecreasing
    std::vector<double> sigmas;   // positive, nondecreasing
    NoiseSpec noise;
    std::size_t replicates = 1;
    std::uint64_t seed = 0;
    std::vector<double> weights;  // empty means all 1

    void validate() const;  // throws InvalidConfig naming the offending field
};

// The shared noise vector of one replicate. Deterministic in (seed,
// replicate) regardless of scheduling.
std::vector<double> replicate_noise(const SimulationConfig& config, std::size_t replicate);

struct CoupledSample {
    std::vector<double> noise;                   // n entries
    std::vector<std::vector<double>> responses;  // one vector per sigma
};

// Responses for one replicate across the whole sigma grid, all computed
// from the same noise draw.
CoupledSample sample_coupled(const SimulationConfig& config, std::size_t replicate);

struct ComplexityCurve {
    std::vector<double> sigmas;
    std::vector<double> mean_K;
    std::vector<double> se_K;
    std::vector<std::vector<std::size_t>> K;  // replicates x sigmas
};

// Fits each replicate's responses in mu-order for every sigma and records
// the block count. Replicates may run on several threads; aggregation is a
// fixed-order reduction, so the result is independent of the thread count.
ComplexityCurve complexity_curve(const SimulationConfig& config, unsigned threads = 1);

// Counts (replicate, sigma pair) instances where the block count at the
// larger sigma exceeds the one at the smaller sigma. Coupling makes the
// expected count exactly zero.
std::size_t count_pointwise_violations(const ComplexityCurve& curve);

// Runs the experiment and counts violations. Requires at least two sigmas.
std::size_t check_pointwise_monotone(const SimulationConfig& config, unsigned threads = 1);

}  // namespace isorec
