#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace isorec {

// Shared exit code convention: 0 success, 2 malformed input or arguments,
// 3 filesystem failure. 4 is reserved for the simulator detecting complexity
// growing with sigma, so CI can tell a broken guarantee from a broken run.
inline constexpr int kExitOk = 0;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitMonotonicityViolation = 4;

struct DatasetColumns {
    std::string response = "y";
    std::string weight = "w";  // applied only when the column exists
    std::string score = "score";
};

struct RecalibrateOptions {
    std::string input_csv;
    DatasetColumns columns;
    std::string model_out;
    std::string report_out;  // empty: text report to stdout; *.json: JSON file
};

struct PredictOptions {
    std::string model_path;
    std::string input_csv;
    std::string score_column = "score";
    std::string output_csv;
    bool step_mode = false;  // midpoint interpolation by default
};

struct PartitionOptions {
    std::string model_path;
    std::string input_csv;
    DatasetColumns columns;
    std::vector<std::string> covariates;  // empty: every non-role column
    std::string partition_out;
    std::string marginal_out;
};

struct EditOptions {
    std::string model_path;
    std::string merge_spec;  // "low", "high", or a 1-based pair index
    std::string model_out;
    std::string report_out;
};

struct SimulateOptions {
    std::size_t n = 0;
    std::string mu_spec = "linear";  // "linear" or "linear:<lo>:<hi>"
    std::string mu_csv;              // overrides mu_spec when nonempty
    std::string mu_column = "mu";
    std::vector<double> sigmas;
    std::string noise = "standard-gaussian";  // or "student-t:<df>", "uniform"
    std::size_t replicates = 1;
    std::uint64_t seed = 0;
    std::string output_csv;
    std::string matrix_out;  // optional long-format replicate matrix
    unsigned threads = 1;
};

struct DiagnoseOptions {
    std::string input_csv;
    std::string prediction_column = "prediction";
    std::string outcome_column = "y";
    std::string weight_column = "w";
    std::string reliability_out;
    std::string report_out;
};

int run_recalibrate(const RecalibrateOptions& opt, std::ostream& out, std::ostream& err);
int run_predict(const PredictOptions& opt, std::ostream& out, std::ostream& err);
int run_partition(const PartitionOptions& opt, std::ostream& out, std::ostream& err);
int run_edit(const EditOptions& opt, std::ostream& out, std::ostream& err);
int run_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err);
int run_diagnose(const DiagnoseOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace isorec
