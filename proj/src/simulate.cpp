#include "isorec/simulate.hpp"

#include <cmath>
#include <thread>

#include "isorec/numeric.hpp"
#include "isorec/pav.hpp"
#include "isorec/rng.hpp"

namespace isorec {

void SimulationConfig::validate() const {
    if (n < 1) throw InvalidConfig("n", "sample size must be at least 1");
    if (mu.size() != n) throw InvalidConfig("mu", "needs exactly n location parameters");
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(mu[i])) throw InvalidConfig("mu", "entries must be finite");
        if (i > 0 && mu[i] < mu[i - 1]) throw InvalidConfig("mu", "must be nondecreasing");
    }
    if (sigmas.empty()) throw InvalidConfig("sigmas", "grid must be nonempty");
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        if (!(sigmas[i] > 0.0) || !std::isfinite(sigmas[i]))
            throw InvalidConfig("sigmas", "entries must be positive finite");
        if (i > 0 && sigmas[i] < sigmas[i - 1])
            throw InvalidConfig("sigmas", "grid must be nondecreasing");
    }
    if (noise.kind == NoiseKind::StudentT && !(noise.df > 0.0))
        throw InvalidConfig("noise", "student-t needs positive degrees of freedom");
    if (replicates < 1) throw InvalidConfig("replicates", "must be at least 1");
    if (!weights.empty()) {
        if (weights.size() != n) throw InvalidConfig("weights", "needs exactly n entries");
        for (double w : weights) {
            if (!(w > 0.0) || !std::isfinite(w))
                throw InvalidConfig("weights", "entries must be positive finite");
        }
    }
}

std::vector<double> replicate_noise(const SimulationConfig& config, std::size_t replicate) {
    config.validate();
    NoiseStream stream(config.seed, replicate);
    std::vector<double> eps(config.n);
    switch (config.noise.kind) {
        case NoiseKind::StandardGaussian:
            for (double& e : eps) e = stream.normal();
            break;
        case NoiseKind::StudentT:
            for (double& e : eps) e = stream.student_t(config.noise.df);
            break;
        case NoiseKind::UniformSym:
            for (double& e : eps) e = stream.uniform_pm1();
            break;
    }
    return eps;
}

CoupledSample sample_coupled(const SimulationConfig& config, std::size_t replicate) {
    CoupledSample out;
    out.noise = replicate_noise(config, replicate);
    out.responses.reserve(config.sigmas.size());
    for (double sigma : config.sigmas) {
        std::vector<double> y(config.n);
        for (std::size_t i = 0; i < config.n; ++i) y[i] = config.mu[i] + sigma * out.noise[i];
        out.responses.push_back(std::move(y));
    }
    return out;
}

namespace {

// Block counts for one replicate, one entry per sigma. Responses are fitted
// in mu-order: the score is the sample index itself.
std::vector<std::size_t> replicate_complexities(const SimulationConfig& config,
                                                std::size_t replicate) {
    const CoupledSample sample = sample_coupled(config, replicate);
    std::vector<std::size_t> ks;
    ks.reserve(config.sigmas.size());
    std::vector<WeightedSample> samples(config.n);
    for (std::size_t s = 0; s < config.sigmas.size(); ++s) {
        for (std::size_t i = 0; i < config.n; ++i) {
            samples[i].response = sample.responses[s][i];
            samples[i].weight = config.weights.empty() ? 1.0 : config.weights[i];
            samples[i].score = static_cast<double>(i);
        }
        ks.push_back(pav_fit(OrderedDataset::from_sorted(samples)).complexity());
    }
    return ks;
}

}  // namespace

ComplexityCurve complexity_curve(const SimulationConfig& config, unsigned threads) {
    config.validate();
    const std::size_t R = config.replicates;
    const std::size_t S = config.sigmas.size();

    ComplexityCurve curve;
    curve.sigmas = config.sigmas;
    curve.K.assign(R, {});

    if (threads < 1) threads = 1;
    const unsigned workers = static_cast<unsigned>(
        std::min<std::size_t>(threads, R));
    if (workers <= 1) {
        for (std::size_t r = 0; r < R; ++r) curve.K[r] = replicate_complexities(config, r);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t r = t; r < R; r += workers)
                    curve.K[r] = replicate_complexities(config, r);
            });
        }
        for (auto& th : pool) th.join();
    }

    // Fixed-order reduction over the completed matrix; the thread count
    // cannot influence these sums.
    curve.mean_K.resize(S);
    curve.se_K.resize(S);
    for (std::size_t s = 0; s < S; ++s) {
        CompensatedSum sum;
        for (std::size_t r = 0; r < R; ++r) sum.add(static_cast<double>(curve.K[r][s]));
        const double mean = sum.value() / static_cast<double>(R);
        curve.mean_K[s] = mean;
        if (R < 2) {
            curve.se_K[s] = 0.0;
        } else {
            CompensatedSum sq;
            for (std::size_t r = 0; r < R; ++r) {
                const double d = static_cast<double>(curve.K[r][s]) - mean;
                sq.add(d * d);
            }
            curve.se_K[s] =
                std::sqrt(sq.value() / static_cast<double>(R - 1)) /
                std::sqrt(static_cast<double>(R));
        }
    }
    return curve;
}

std::size_t count_pointwise_violations(const ComplexityCurve& curve) {
    std::size_t violations = 0;
    for (const auto& row : curve.K) {
        for (std::size_t a = 0; a < row.size(); ++a) {
            for (std::size_t b = a + 1; b < row.size(); ++b) {
                if (row[b] > row[a]) ++violations;
            }
        }
    }
    return violations;
}

std::size_t check_pointwise_monotone(const SimulationConfig& config, unsigned threads) {
    config.validate();
    if (config.sigmas.size() < 2)
        throw InvalidConfig("sigmas", "monotonicity check needs at least two sigmas");
    return count_pointwise_violations(complexity_curve(config, threads));
}

}  // namespace isorec
