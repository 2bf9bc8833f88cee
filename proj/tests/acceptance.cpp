// Release gate for the solver, the simulator, and the command pipeline.
// Each numbered criterion prints one [PASS]/[FAIL] line; the process exits
// nonzero if any criterion fails. Run it from the build tree (it creates a
// scratch directory under the working directory).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "isorec/commands.hpp"
#include "isorec/csv.hpp"
#include "isorec/diagnostics.hpp"
#include "isorec/model_io.hpp"
#include "isorec/numeric.hpp"
#include "isorec/pav.hpp"
#include "isorec/recalibrate.hpp"
#include "isorec/rng.hpp"
#include "isorec/simulate.hpp"

using namespace isorec;
namespace fs = std::filesystem;

namespace {

struct Check {
    bool pass = true;
    std::string detail;
    int failures = 0;

    void fail(const std::string& msg) {
        pass = false;
        if (++failures <= 3) {
            if (!detail.empty()) detail += "; ";
            detail += msg;
        }
    }
    void require(bool ok, const std::string& msg) {
        if (!ok) fail(msg);
    }
    void note(const std::string& msg) {
        if (pass) detail = msg;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", x);
    return buf;
}

bool run_criterion(int id, const std::string& label,
                   const std::function<void(Check&)>& body) {
    Check c;
    try {
        body(c);
    } catch (const std::exception& e) {
        c.fail(std::string("unexpected exception: ") + e.what());
    }
    std::printf("[%s] criterion %d: %s%s%s\n", c.pass ? "PASS" : "FAIL", id,
                label.c_str(), c.detail.empty() ? "" : " -- ", c.detail.c_str());
    std::fflush(stdout);
    return c.pass;
}

// Random fitting instance: strictly increasing scores 1..n, trend plus
// noise responses, and a mix of unit, varied, and value-tied weight layouts.
OrderedDataset random_instance(std::uint64_t seed, std::uint64_t trial,
                               std::size_t n_max, bool positive = false) {
    SplitMix64 rng(mix64(seed) ^ mix64(trial));
    NoiseStream noise(seed, trial);
    const std::size_t n = 1 + rng.next_u64() % n_max;
    const bool unit_weights = (rng.next_u64() & 3) == 0;
    const bool quantized = (rng.next_u64() & 3) == 0;

    std::vector<WeightedSample> samples(n);
    for (std::size_t i = 0; i < n; ++i) {
        double y = 0.05 * static_cast<double>(i) + noise.normal();
        if (positive) y = 0.1 + std::exp(0.02 * static_cast<double>(i) + 0.4 * noise.normal());
        if (quantized) y = std::round(2.0 * y) / 2.0;
        if (positive && !(y > 0.0)) y = 0.1;
        const double w = unit_weights ? 1.0 : 0.1 + 9.9 * rng.next_unit();
        samples[i] = WeightedSample{y, w, static_cast<double>(i + 1)};
    }
    return OrderedDataset::from_sorted(std::move(samples));
}

double data_scale(const OrderedDataset& data) {
    CompensatedSum s;
    for (const WeightedSample& x : data.samples()) s.add(x.weight * std::fabs(x.response));
    return 1.0 + s.value();
}

void check_fit_pair(Check& c, const IsotonicFit& a, const IsotonicFit& b, double tol,
                    const std::string& who, double* worst) {
    if (a.slicing_points() != b.slicing_points()) {
        c.fail(who + ": block boundaries differ");
        return;
    }
    for (std::size_t k = 0; k < a.blocks.size(); ++k) {
        const double d = std::fabs(a.blocks[k].value - b.blocks[k].value);
        if (worst) *worst = std::max(*worst, d);
        if (!(d <= tol)) {
            c.fail(who + ": block value deviation " + fmt(d));
            return;
        }
    }
}

void check_identities(Check& c, const IsotonicFit& fit, const OrderedDataset& data,
                      double* worst) {
    const double tol = 1e-10 * data_scale(data);
    const std::vector<double> gaps = check_autocalibration(fit, data);
    for (double g : gaps) {
        if (worst) *worst = std::max(*worst, g / data_scale(data));
        if (!(g <= tol)) {
            c.fail("auto-calibration gap " + fmt(g) + " over tol " + fmt(tol));
            return;
        }
    }
    const double balance = std::fabs(balance_gap(fit, data));
    if (worst) *worst = std::max(*worst, balance / data_scale(data));
    if (!(balance <= tol)) c.fail("balance gap " + fmt(balance) + " over tol " + fmt(tol));
}

}  // namespace

// --- criteria -------------------------------------------------------------

static bool criterion_1() {
    return run_criterion(1, "solver matches both independent oracles", [](Check& c) {
        const auto t0 = std::chrono::steady_clock::now();
        double worst = 0.0;
        for (std::uint64_t t = 0; t < 1000 && c.pass; ++t) {
            const OrderedDataset data = random_instance(0xACC001, t, 200);
            check_fit_pair(c, pav_fit(data), minmax_fit(data), 1e-10,
                           "minmax trial " + std::to_string(t), &worst);
        }
        for (std::uint64_t t = 0; t < 500 && c.pass; ++t) {
            const OrderedDataset data = random_instance(0xACC002, t, 10);
            check_fit_pair(c, pav_fit(data), brute_force_fit(data), 1e-10,
                           "brute trial " + std::to_string(t), &worst);
        }
        const double elapsed = seconds_since(t0);
        c.require(elapsed < 30.0, "runtime " + fmt(elapsed) + "s exceeds 30s");
        c.note("1000 min-max + 500 brute-force instances, max value deviation " +
               fmt(worst) + ", " + fmt(elapsed) + "s");
    });
}

static bool criterion_2() {
    return run_criterion(2, "brute-force optimum is loss-invariant across Bregman losses",
                         [](Check& c) {
        for (std::uint64_t t = 0; t < 200 && c.pass; ++t) {
            const OrderedDataset data = random_instance(0xACC003, t, 8, /*positive=*/true);
            const IsotonicFit sq = brute_force_fit(data, LossKind::Squared);
            const IsotonicFit gd = brute_force_fit(data, LossKind::GammaDeviance);
            const IsotonicFit ql = brute_force_fit(data, LossKind::Qlike);
            if (sq.slicing_points() != gd.slicing_points() ||
                sq.slicing_points() != ql.slicing_points()) {
                c.fail("partitions differ at trial " + std::to_string(t));
                break;
            }
            for (std::size_t k = 0; k < sq.blocks.size(); ++k) {
                if (sq.blocks[k].value != gd.blocks[k].value ||
                    sq.blocks[k].value != ql.blocks[k].value) {
                    c.fail("values differ at trial " + std::to_string(t));
                    break;
                }
            }
        }
        c.note("200 positive instances, partitions and values identical under "
               "squared, gamma-deviance, and qlike");
    });
}

static bool criterion_3() {
    return run_criterion(3, "auto-calibration and balance hold, merges included",
                         [](Check& c) {
        double worst = 0.0;
        std::size_t merges = 0;
        for (std::uint64_t t = 0; t < 1000 && c.pass; ++t) {
            const OrderedDataset data = random_instance(0xACC004, t, 150);
            const IsotonicFit fit = pav_fit(data);
            check_identities(c, fit, data, &worst);
            if (!c.pass) {
                c.fail("at trial " + std::to_string(t));
                break;
            }
            const std::size_t K = fit.complexity();
            if (K < 2) continue;
            for (std::size_t k : {std::size_t{1}, K - 1}) {
                try {
                    check_identities(c, merge_blocks(fit, data, k), data, &worst);
                    ++merges;
                } catch (const WouldBreakMonotonicity&) {
                    // legal refusal on a degenerate pooled value; nothing to verify
                }
                if (!c.pass) {
                    c.fail("after merge k=" + std::to_string(k) + " at trial " +
                           std::to_string(t));
                    break;
                }
            }
        }
        c.note("1000 instances plus " + std::to_string(merges) +
               " boundary merges, worst relative gap " + fmt(worst));
    });
}

static bool criterion_4() {
    return run_criterion(4, "KKT multipliers are nonnegative with complementary slackness",
                         [](Check& c) {
        double worst = 0.0;
        for (std::uint64_t t = 0; t < 500 && c.pass; ++t) {
            const OrderedDataset data = random_instance(0xACC005, t, 200);
            const IsotonicFit fit = pav_fit(data);
            const std::vector<double> mu = fit.fitted_values();
            const double tol = 1e-9 * data_scale(data);

            // eta_j = sum_{i<=j} w_i (y_i - mu_i): nonnegative everywhere,
            // zero at block boundaries (slack pairs with an active constraint)
            CompensatedSum eta;
            std::vector<bool> is_end(data.size(), false);
            for (const Block& b : fit.blocks) is_end[b.end - 1] = true;
            for (std::size_t j = 0; j < data.size(); ++j) {
                eta.add(data[j].weight * (data[j].response - mu[j]));
                const double e = eta.value();
                worst = std::max(worst, std::max(-e, is_end[j] ? std::fabs(e) : 0.0));
                if (e < -tol) {
                    c.fail("negative multiplier " + fmt(e) + " at trial " +
                           std::to_string(t));
                    break;
                }
                if (is_end[j] && std::fabs(e) > tol) {
                    c.fail("nonzero multiplier " + fmt(e) +
                           " at a block boundary, trial " + std::to_string(t));
                    break;
                }
            }
        }
        c.note("500 instances, worst violation " + fmt(worst) + " against 1e-9 scale");
    });
}

// Criteria 5 and 6 share one simulated curve; keep the setup in one place.
static SimulationConfig monotonicity_config() {
    SimulationConfig config;
    config.n = 100;
    config.mu.resize(config.n);
    for (std::size_t i = 0; i < config.n; ++i) config.mu[i] = static_cast<double>(i + 1);
    config.sigmas = {1.0, 2.0, 5.0, 10.0, 20.0, 50.0};
    config.replicates = 1000;
    config.seed = 20260822ULL;
    return config;
}

static bool criterion_5(const ComplexityCurve& curve, double elapsed) {
    return run_criterion(5, "complexity never increases with sigma under coupled noise",
                         [&](Check& c) {
        const std::size_t violations = count_pointwise_violations(curve);
        c.require(violations == 0,
                  std::to_string(violations) + " pointwise violations");
        c.require(elapsed < 60.0, "runtime " + fmt(elapsed) + "s exceeds 60s");
        c.note("n=100, 1000 replicates, 6 sigmas, 0 violations in " + fmt(elapsed) + "s");
    });
}

static bool criterion_6(const ComplexityCurve& curve) {
    return run_criterion(6, "mean complexity strictly decreases along the sigma grid",
                         [&](Check& c) {
        std::string means;
        for (std::size_t s = 0; s < curve.sigmas.size(); ++s) {
            means += (s ? " " : "") + fmt(curve.mean_K[s]);
            if (s == 0) continue;
            const double drop = curve.mean_K[s - 1] - curve.mean_K[s];
            const double se = std::sqrt(curve.se_K[s - 1] * curve.se_K[s - 1] +
                                        curve.se_K[s] * curve.se_K[s]);
            c.require(drop > 0.0, "mean K not decreasing at sigma " + fmt(curve.sigmas[s]));
            c.require(drop > 3.0 * se, "drop " + fmt(drop) + " below 3 standard errors (" +
                                           fmt(se) + ") at sigma " + fmt(curve.sigmas[s]));
        }
        // validated magnitude check: the curve retains more than twice the
        // blocks at sigma=2 than at sigma=20
        c.require(curve.mean_K[1] > 2.0 * curve.mean_K[4],
                  "mean K(2) = " + fmt(curve.mean_K[1]) + " not above 2 x mean K(20) = " +
                      fmt(2.0 * curve.mean_K[4]));
        c.note("mean K by sigma: " + means);
    });
}

static bool criterion_7(const fs::path& scratch) {
    return run_criterion(7, "recalibration never worsens in-sample loss, all metrics",
                         [&](Check& c) {
        std::size_t gamma_rows = 0;
        for (std::uint64_t t = 0; t < 50 && c.pass; ++t) {
            SplitMix64 rng(mix64(0xACC007) ^ mix64(t));
            NoiseStream noise(0xACC007, t);
            const std::size_t n = 5 + rng.next_u64() % 120;
            const bool positive = (t & 1) == 0;
            const bool with_weights = (rng.next_u64() & 1) == 0;

            CsvTable csv;
            csv.header = with_weights ? std::vector<std::string>{"y", "w", "score"}
                                      : std::vector<std::string>{"y", "score"};
            double score = 0.5;
            for (std::size_t i = 0; i < n; ++i) {
                if ((rng.next_u64() & 7) != 0) score += rng.next_unit();
                double y = 0.04 * static_cast<double>(i) + noise.normal();
                if (positive) y = std::exp(0.02 * static_cast<double>(i) + 0.5 * noise.normal());
                std::vector<std::string> row{format_double(y)};
                if (with_weights) row.push_back(format_double(0.2 + 2.0 * rng.next_unit()));
                row.push_back(format_double(score));
                csv.rows.push_back(std::move(row));
            }
            const std::string input = (scratch / ("c7_" + std::to_string(t) + ".csv")).string();
            const std::string report = (scratch / ("c7_" + std::to_string(t) + ".json")).string();
            write_csv_file(input, csv);

            RecalibrateOptions opt;
            opt.input_csv = input;
            opt.report_out = report;
            std::ostringstream out, err;
            if (run_recalibrate(opt, out, err) != kExitOk) {
                c.fail("recalibrate exited nonzero at trial " + std::to_string(t) + ": " +
                       err.str());
                break;
            }
            std::ifstream in(report);
            const auto doc = nlohmann::json::parse(in);
            for (const auto& row : doc.at("loss").at("rows")) {
                const std::string metric = row.at("metric").get<std::string>();
                if (metric == "average") continue;  // a location, not a loss
                if (metric == "gamma-deviance") ++gamma_rows;
                const double before = row.at("scores").get<double>();
                const double after = row.at("recalibrated").get<double>();
                if (!(after <= before + 1e-12 * (1.0 + std::fabs(before)))) {
                    c.fail(metric + " increased from " + fmt(before) + " to " + fmt(after) +
                           " at trial " + std::to_string(t));
                    break;
                }
            }
        }
        c.require(gamma_rows >= 20, "gamma-deviance rows missing from positive datasets");
        c.note("50 datasets through the command pipeline, " + std::to_string(gamma_rows) +
               " gamma-deviance rows checked");
    });
}

static bool criterion_8() {
    return run_criterion(8, "reliability points of a recalibrated model sit on the diagonal",
                         [](Check& c) {
        double worst = 0.0;
        for (std::uint64_t t = 0; t < 100 && c.pass; ++t) {
            SplitMix64 rng(mix64(0xACC008) ^ mix64(t));
            NoiseStream noise(0xACC008, t);
            const std::size_t n = 2 + rng.next_u64() % 149;
            std::vector<WeightedSample> raw(n);
            double score = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (i == 0 || (rng.next_u64() & 7) != 0) score += 0.01 + rng.next_unit();
                raw[i] = WeightedSample{0.05 * static_cast<double>(i) + noise.normal(),
                                        0.2 + 5.0 * rng.next_unit(), score};
            }
            const Recalibrator model = recalibrate(raw);

            std::vector<double> predictions, outcomes, weights;
            for (const WeightedSample& s : raw) {
                predictions.push_back(predict_step(model, s.score).value);
                outcomes.push_back(s.response);
                weights.push_back(s.weight);
            }
            for (const ReliabilityPoint& p : reliability_points(predictions, outcomes, weights)) {
                const double gap = std::fabs(p.prediction - p.conditional_mean);
                const double tol = 1e-10 * (1.0 + std::fabs(p.prediction));
                worst = std::max(worst, gap);
                if (!(gap <= tol)) {
                    c.fail("off-diagonal point (" + fmt(p.prediction) + ", " +
                           fmt(p.conditional_mean) + ") at trial " + std::to_string(t));
                    break;
                }
            }
        }
        c.note("100 instances, worst diagonal gap " + fmt(worst));
    });
}

static bool criterion_9(const fs::path& scratch) {
    return run_criterion(9, "simulation output is byte-identical across runs and thread counts",
                         [&](Check& c) {
        SimulateOptions opt;
        opt.n = 60;
        opt.sigmas = {1.0, 2.0, 5.0};
        opt.replicates = 200;
        opt.seed = 99;
        opt.output_csv = (scratch / "c9_curve.csv").string();
        opt.matrix_out = (scratch / "c9_matrix.csv").string();

        auto read_all = [](const std::string& path) {
            std::ifstream in(path, std::ios::binary);
            std::ostringstream buf;
            buf << in.rdbuf();
            return buf.str();
        };

        std::string curve_ref, matrix_ref;
        for (unsigned threads : {1u, 1u, 4u, 7u}) {
            opt.threads = threads;
            std::ostringstream out, err;
            if (run_simulate(opt, out, err) != kExitOk) {
                c.fail("simulate exited nonzero with " + std::to_string(threads) +
                       " threads: " + err.str());
                return;
            }
            const std::string curve = read_all(opt.output_csv);
            const std::string matrix = read_all(opt.matrix_out);
            if (curve_ref.empty()) {
                curve_ref = curve;
                matrix_ref = matrix;
            } else {
                c.require(curve == curve_ref, "curve bytes differ with " +
                                                  std::to_string(threads) + " threads");
                c.require(matrix == matrix_ref, "matrix bytes differ with " +
                                                    std::to_string(threads) + " threads");
            }
        }
        c.note("4 runs (1, 1, 4, 7 threads) produced identical curve and matrix bytes");
    });
}

static bool criterion_10() {
    return run_criterion(10, "ten million samples fit in under two seconds", [](Check& c) {
        const std::size_t n = 10'000'000;
        SplitMix64 rng(0xACC00AULL);
        std::vector<WeightedSample> samples(n);
        for (std::size_t i = 0; i < n; ++i) {
            samples[i] = WeightedSample{1e-4 * static_cast<double>(i) +
                                            2.0 * rng.next_unit() - 1.0,
                                        1.0, static_cast<double>(i)};
        }
        const OrderedDataset data = OrderedDataset::from_sorted(std::move(samples));

        const auto t0 = std::chrono::steady_clock::now();
        const IsotonicFit fit = pav_fit(data);
        const double elapsed = seconds_since(t0);

        c.require(fit.n == n, "fit lost samples");
        c.require(elapsed < 2.0, "runtime " + fmt(elapsed) + "s exceeds 2s");
        c.note("n=1e7 in " + fmt(elapsed) + "s, K=" + std::to_string(fit.complexity()));
    });
}

int main() {
    const fs::path scratch = "scratch/acceptance";
    fs::remove_all(scratch);
    fs::create_directories(scratch);

    int failed = 0;
    auto tally = [&](bool ok) {
        if (!ok) ++failed;
    };

    tally(criterion_1());
    tally(criterion_2());
    tally(criterion_3());
    tally(criterion_4());

    // one shared simulation run for the two monotonicity criteria
    const SimulationConfig config = monotonicity_config();
    const auto t0 = std::chrono::steady_clock::now();
    ComplexityCurve curve;
    bool curve_ok = true;
    try {
        curve = complexity_curve(config, 4);
    } catch (const std::exception& e) {
        curve_ok = false;
        std::printf("[FAIL] criterion 5: simulation threw: %s\n", e.what());
        std::printf("[FAIL] criterion 6: simulation threw: %s\n", e.what());
        failed += 2;
    }
    if (curve_ok) {
        const double elapsed = seconds_since(t0);
        tally(criterion_5(curve, elapsed));
        tally(criterion_6(curve));
    }

    tally(criterion_7(scratch));
    tally(criterion_8());
    tally(criterion_9(scratch));
    tally(criterion_10());

    fs::remove_all(scratch);
    if (failed == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criteria failed\n", failed);
    return 1;
}
