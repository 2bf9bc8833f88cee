#include "isorec/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "isorec/csv.hpp"
#include "isorec/diagnostics.hpp"
#include "isorec/model_io.hpp"
#include "isorec/numeric.hpp"
#include "isorec/pav.hpp"
#include "isorec/recalibrate.hpp"
#include "isorec/simulate.hpp"

namespace isorec {

namespace {

using nlohmann::json;

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    }
}

std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

double parse_finite(const std::string& text, std::size_t row, const std::string& column) {
    const double v = parse_double(text, row, column);
    if (!std::isfinite(v))
        throw ParseError("row " + std::to_string(row) + ", column '" + column +
                         "': value must be finite");
    return v;
}

struct LoadedDataset {
    std::vector<WeightedSample> samples;
    bool had_weights = false;
};

LoadedDataset load_dataset(const CsvTable& csv, const DatasetColumns& cols) {
    LoadedDataset ds;
    const std::size_t yc = csv.column(cols.response);
    const std::size_t sc = csv.column(cols.score);
    ds.had_weights = csv.has_column(cols.weight);
    const std::size_t wc = ds.had_weights ? csv.column(cols.weight) : 0;

    ds.samples.reserve(csv.rows.size());
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
        WeightedSample s;
        s.response = parse_finite(csv.rows[r][yc], r + 1, cols.response);
        s.score = parse_finite(csv.rows[r][sc], r + 1, cols.score);
        s.weight = ds.had_weights ? parse_finite(csv.rows[r][wc], r + 1, cols.weight) : 1.0;
        if (!(s.weight > 0.0))
            throw ParseError("row " + std::to_string(r + 1) + ", column '" + cols.weight +
                             "': weight must be positive");
        ds.samples.push_back(s);
    }
    if (ds.samples.empty()) throw ParseError("input has a header but no data rows");
    return ds;
}

std::string fmt6(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

void print_aligned(std::ostream& out, const std::vector<std::vector<std::string>>& rows,
                   const std::string& indent = "  ") {
    std::vector<std::size_t> width;
    for (const auto& row : rows) {
        if (width.size() < row.size()) width.resize(row.size(), 0);
        for (std::size_t j = 0; j < row.size(); ++j)
            width[j] = std::max(width[j], row[j].size());
    }
    for (const auto& row : rows) {
        out << indent;
        for (std::size_t j = 0; j < row.size(); ++j) {
            out << row[j];
            if (j + 1 < row.size())
                out << std::string(width[j] - row[j].size() + 2, ' ');
        }
        out << '\n';
    }
}

bool wants_json(const std::string& path) {
    return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

double weighted_mean(const std::vector<double>& values, const std::vector<double>& weights) {
    CompensatedSum num, den;
    for (std::size_t i = 0; i < values.size(); ++i) {
        num.add(weights[i] * values[i]);
        den.add(weights[i]);
    }
    return num.value() / den.value();
}

struct LossTable {
    double response_average = 0.0;
    // metric name -> value under the score predictions and the recalibrated ones
    struct Row {
        std::string metric;
        double scores = 0.0;
        double recalibrated = 0.0;
    };
    std::vector<Row> rows;
};

LossTable build_loss_table(const std::vector<double>& responses,
                           const std::vector<double>& weights,
                           const std::vector<double>& scores,
                           const std::vector<double>& fitted) {
    LossTable table;
    table.response_average = weighted_mean(responses, weights);
    table.rows.push_back({"average", weighted_mean(scores, weights),
                          weighted_mean(fitted, weights)});
    const LossImprovementReport rep =
        loss_improvement_check(responses, weights, scores, fitted);
    for (const LossComparison& c : rep.rows) {
        table.rows.push_back({to_string(c.kind), c.score_loss, c.recalibrated_loss});
        if (c.kind == LossKind::Squared) {
            table.rows.push_back({"rmse", std::sqrt(c.score_loss),
                                  std::sqrt(c.recalibrated_loss)});
        }
    }
    return table;
}

json loss_table_json(const LossTable& table) {
    json rows = json::array();
    for (const auto& r : table.rows)
        rows.push_back(json{{"metric", r.metric},
                            {"scores", r.scores},
                            {"recalibrated", r.recalibrated}});
    return json{{"response_average", table.response_average}, {"rows", std::move(rows)}};
}

void loss_table_text(std::ostream& out, const LossTable& table) {
    out << "in-sample loss (weighted; response average " << fmt6(table.response_average)
        << ")\n";
    std::vector<std::vector<std::string>> rows{{"metric", "scores", "recalibrated"}};
    for (const auto& r : table.rows)
        rows.push_back({r.metric, fmt6(r.scores), fmt6(r.recalibrated)});
    print_aligned(out, rows);
}

struct BlockRow {
    std::size_t block = 0;
    double score_lo = 0.0;
    double score_hi = 0.0;
    double value = 0.0;
    double weight = 0.0;
    double gap = 0.0;
    bool has_gap = false;
};

std::vector<BlockRow> block_rows(const Recalibrator& model, const std::vector<double>* gaps) {
    std::vector<BlockRow> rows;
    rows.reserve(model.fit.blocks.size());
    for (std::size_t k = 0; k < model.fit.blocks.size(); ++k) {
        const Block& b = model.fit.blocks[k];
        BlockRow row;
        row.block = k + 1;
        row.score_lo = model.breakpoints[b.begin];
        row.score_hi = model.breakpoints[b.end - 1];
        row.value = b.value;
        row.weight = b.weight;
        if (gaps) {
            row.gap = (*gaps)[k];
            row.has_gap = true;
        }
        rows.push_back(row);
    }
    return rows;
}

json block_rows_json(const std::vector<BlockRow>& rows) {
    json out = json::array();
    for (const auto& r : rows) {
        json j{{"block", r.block},
               {"score_lo", r.score_lo},
               {"score_hi", r.score_hi},
               {"value", r.value},
               {"weight", r.weight}};
        if (r.has_gap) j["calibration_gap"] = r.gap;
        out.push_back(std::move(j));
    }
    return out;
}

void block_rows_text(std::ostream& out, const std::vector<BlockRow>& rows) {
    out << "blocks\n";
    std::vector<std::vector<std::string>> table;
    std::vector<std::string> head{"block", "score_lo", "score_hi", "value", "weight"};
    if (!rows.empty() && rows.front().has_gap) head.push_back("calibration_gap");
    table.push_back(head);
    for (const auto& r : rows) {
        std::vector<std::string> row{std::to_string(r.block), fmt6(r.score_lo),
                                     fmt6(r.score_hi), fmt6(r.value), fmt6(r.weight)};
        if (r.has_gap) row.push_back(fmt6(r.gap));
        table.push_back(std::move(row));
    }
    print_aligned(out, table);
}

void emit_report(const std::string& report_out, const std::string& text, const json& doc,
                 std::ostream& out) {
    if (report_out.empty()) {
        out << text;
    } else if (wants_json(report_out)) {
        write_text_file(report_out, doc.dump(2) + "\n");
    } else {
        write_text_file(report_out, text);
    }
}

std::vector<std::string> covariate_columns(const CsvTable& csv, const DatasetColumns& cols,
                                           const std::vector<std::string>& requested) {
    if (!requested.empty()) {
        for (const auto& name : requested) {
            if (!csv.has_column(name))
                throw ParseError("missing requested covariate column '" + name + "'");
        }
        return requested;
    }
    std::vector<std::string> out;
    for (const auto& name : csv.header) {
        if (name != cols.response && name != cols.weight && name != cols.score)
            out.push_back(name);
    }
    return out;
}

NoiseSpec parse_noise(const std::string& text) {
    if (text == "standard-gaussian" || text == "gaussian")
        return NoiseSpec{NoiseKind::StandardGaussian, 0.0};
    if (text == "uniform") return NoiseSpec{NoiseKind::UniformSym, 0.0};
    const std::string prefix = "student-t:";
    if (text.compare(0, prefix.size(), prefix) == 0) {
        const double df = parse_double(text.substr(prefix.size()), 0, "noise");
        if (!(df > 0.0) || !std::isfinite(df))
            throw InvalidConfig("noise", "student-t needs positive degrees of freedom");
        return NoiseSpec{NoiseKind::StudentT, df};
    }
    throw InvalidConfig("noise",
                        "expected standard-gaussian, student-t:<df>, or uniform; got '" +
                            text + "'");
}

std::vector<double> build_mu(const SimulateOptions& opt, std::size_t& n) {
    if (!opt.mu_csv.empty()) {
        const CsvTable csv = read_csv(opt.mu_csv);
        const std::size_t mc = csv.column(opt.mu_column);
        std::vector<double> mu;
        mu.reserve(csv.rows.size());
        for (std::size_t r = 0; r < csv.rows.size(); ++r)
            mu.push_back(parse_finite(csv.rows[r][mc], r + 1, opt.mu_column));
        if (n == 0) n = mu.size();
        if (mu.size() != n)
            throw InvalidConfig("mu", "profile has " + std::to_string(mu.size()) +
                                          " rows but n is " + std::to_string(n));
        return mu;
    }
    if (n == 0) throw InvalidConfig("n", "sample size is required");
    if (opt.mu_spec == "linear") {
        std::vector<double> mu(n);
        for (std::size_t i = 0; i < n; ++i) mu[i] = static_cast<double>(i + 1);
        return mu;
    }
    const std::string prefix = "linear:";
    if (opt.mu_spec.compare(0, prefix.size(), prefix) == 0) {
        const std::string rest = opt.mu_spec.substr(prefix.size());
        const std::size_t sep = rest.find(':');
        if (sep == std::string::npos)
            throw InvalidConfig("mu", "expected linear:<lo>:<hi>; got '" + opt.mu_spec + "'");
        const double lo = parse_double(rest.substr(0, sep), 0, "mu");
        const double hi = parse_double(rest.substr(sep + 1), 0, "mu");
        std::vector<double> mu(n);
        for (std::size_t i = 0; i < n; ++i) {
            mu[i] = n == 1 ? lo
                           : lo + (hi - lo) * static_cast<double>(i) /
                                      static_cast<double>(n - 1);
        }
        return mu;
    }
    throw InvalidConfig("mu", "expected linear or linear:<lo>:<hi>; got '" + opt.mu_spec + "'");
}

}  // namespace

int run_recalibrate(const RecalibrateOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const std::string bytes = read_file_bytes(opt.input_csv);
        std::istringstream stream(bytes);
        const CsvTable csv = parse_csv(stream, opt.input_csv);
        const LoadedDataset ds = load_dataset(csv, opt.columns);

        const Recalibrator model = recalibrate(ds.samples);
        const OrderedDataset reduced = collapse_ties(merge_ties(ds.samples));
        const std::vector<double> gaps = check_autocalibration(model.fit, reduced);
        const double balance = balance_gap(model.fit, reduced);
        const double max_gap = gaps.empty() ? 0.0 : *std::max_element(gaps.begin(), gaps.end());

        std::vector<double> responses, weights, scores, fitted;
        responses.reserve(ds.samples.size());
        for (const WeightedSample& s : ds.samples) {
            responses.push_back(s.response);
            weights.push_back(s.weight);
            scores.push_back(s.score);
            fitted.push_back(predict_step(model, s.score).value);
        }
        const LossTable losses = build_loss_table(responses, weights, scores, fitted);
        const std::vector<BlockRow> blocks = block_rows(model, &gaps);

        if (!opt.model_out.empty()) {
            ModelDocument doc;
            doc.model = model;
            doc.metadata.created = current_utc_timestamp();
            doc.metadata.input_digest = fnv1a64_hex(bytes);
            doc.metadata.tool_version = kToolVersion;
            save_model(opt.model_out, doc);
        }

        std::ostringstream text;
        text << "recalibration of " << opt.input_csv << '\n';
        print_aligned(text,
                      {{"rows", std::to_string(ds.samples.size())},
                       {"distinct scores", std::to_string(model.breakpoints.size())},
                       {"complexity K", std::to_string(model.complexity())},
                       {"score range",
                        "[" + fmt6(model.range.first) + ", " + fmt6(model.range.second) + "]"},
                       {"balance gap", fmt6(balance)},
                       {"max calibration gap", fmt6(max_gap)}});
        text << '\n';
        block_rows_text(text, blocks);
        text << '\n';
        loss_table_text(text, losses);

        json doc{{"input", opt.input_csv},
                 {"rows", ds.samples.size()},
                 {"distinct_scores", model.breakpoints.size()},
                 {"complexity", model.complexity()},
                 {"score_range", json::array({model.range.first, model.range.second})},
                 {"balance_gap", balance},
                 {"max_calibration_gap", max_gap},
                 {"blocks", block_rows_json(blocks)},
                 {"loss", loss_table_json(losses)}};

        emit_report(opt.report_out, text.str(), doc, out);
        if (!opt.model_out.empty())
            out << "wrote model with K=" << model.complexity() << " to " << opt.model_out
                << '\n';
        if (!opt.report_out.empty()) out << "wrote report to " << opt.report_out << '\n';
        return kExitOk;
    });
}

int run_predict(const PredictOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Recalibrator model = load_model(opt.model_path).model;
        const CsvTable csv = read_csv(opt.input_csv);
        const std::size_t sc = csv.column(opt.score_column);

        CsvTable result;
        result.header = csv.header;
        result.header.push_back("prediction");
        if (opt.step_mode) result.header.push_back("block");

        result.rows.reserve(csv.rows.size());
        for (std::size_t r = 0; r < csv.rows.size(); ++r) {
            const double score = parse_finite(csv.rows[r][sc], r + 1, opt.score_column);
            std::vector<std::string> row = csv.rows[r];
            if (opt.step_mode) {
                const StepPrediction p = predict_step(model, score);
                row.push_back(format_double(p.value));
                row.push_back(std::to_string(p.block));
            } else {
                row.push_back(format_double(predict_midpoint(model, score)));
            }
            result.rows.push_back(std::move(row));
        }
        write_csv_file(opt.output_csv, result);
        out << "wrote " << result.rows.size() << " predictions to " << opt.output_csv << '\n';
        return kExitOk;
    });
}

int run_partition(const PartitionOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Recalibrator model = load_model(opt.model_path).model;
        const CsvTable csv = read_csv(opt.input_csv);
        const std::size_t sc = csv.column(opt.columns.score);
        const bool has_w = csv.has_column(opt.columns.weight);
        const std::size_t wc = has_w ? csv.column(opt.columns.weight) : 0;
        const std::vector<std::string> covs = covariate_columns(csv, opt.columns, opt.covariates);

        std::vector<double> scores, weights;
        scores.reserve(csv.rows.size());
        weights.reserve(csv.rows.size());
        for (std::size_t r = 0; r < csv.rows.size(); ++r) {
            scores.push_back(parse_finite(csv.rows[r][sc], r + 1, opt.columns.score));
            const double w =
                has_w ? parse_finite(csv.rows[r][wc], r + 1, opt.columns.weight) : 1.0;
            if (!(w > 0.0))
                throw ParseError("row " + std::to_string(r + 1) + ", column '" +
                                 opt.columns.weight + "': weight must be positive");
            weights.push_back(w);
        }
        if (scores.empty()) throw ParseError("input has a header but no data rows");

        const PartitionLabeling labeling = assign_partition(model, scores);

        CsvTable partition;
        partition.header = csv.header;
        partition.header.push_back("block");
        partition.header.push_back("block_value");
        partition.rows.reserve(csv.rows.size());
        for (std::size_t r = 0; r < csv.rows.size(); ++r) {
            std::vector<std::string> row = csv.rows[r];
            row.push_back(std::to_string(labeling.labels[r]));
            row.push_back(format_double(labeling.block_values[labeling.labels[r] - 1]));
            partition.rows.push_back(std::move(row));
        }
        write_csv_file(opt.partition_out, partition);

        CsvTable marginal;
        marginal.header = {"covariate", "level", "block", "share"};
        for (const auto& cov : covs) {
            std::vector<std::string> values;
            values.reserve(csv.rows.size());
            const std::size_t cc = csv.column(cov);
            for (const auto& row : csv.rows) values.push_back(row[cc]);
            const MarginalSummary summary = marginal_summary(labeling, values, weights);
            for (std::size_t l = 0; l < summary.levels.size(); ++l) {
                for (std::size_t k = 0; k < summary.block_count; ++k) {
                    marginal.rows.push_back({cov, summary.levels[l], std::to_string(k + 1),
                                             format_double(summary.shares[l][k])});
                }
            }
        }
        write_csv_file(opt.marginal_out, marginal);

        out << "wrote " << partition.rows.size() << " labeled rows to " << opt.partition_out
            << '\n';
        out << "wrote marginal shares for " << covs.size() << " covariate(s) to "
            << opt.marginal_out << '\n';
        return kExitOk;
    });
}

int run_edit(const EditOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ModelDocument before = load_model(opt.model_path);

        Recalibrator edited;
        if (opt.merge_spec == "low") {
            edited = apply_merge(before.model, MergeTarget::Low);
        } else if (opt.merge_spec == "high") {
            edited = apply_merge(before.model, MergeTarget::High);
        } else {
            const double parsed = parse_double(opt.merge_spec, 0, "merge");
            const std::size_t k = static_cast<std::size_t>(parsed);
            if (parsed != static_cast<double>(k))
                throw ParseError("merge target must be 'low', 'high', or a block pair index");
            edited = apply_merge(before.model, k);
        }

        CompensatedSum shift;
        for (const Block& b : edited.fit.blocks) shift.add(b.weight * b.value);
        for (const Block& b : before.model.fit.blocks) shift.add(-b.weight * b.value);

        ModelDocument after;
        after.model = edited;
        after.metadata.created = current_utc_timestamp();
        after.metadata.input_digest = before.metadata.input_digest;
        after.metadata.tool_version = kToolVersion;
        save_model(opt.model_out, after);

        const std::size_t k = edited.edits.back().block_index;
        const std::vector<BlockRow> blocks = block_rows(edited, nullptr);

        std::ostringstream text;
        text << "merged blocks " << k << " and " << k + 1 << " of " << opt.model_path << '\n';
        std::ostringstream editlog;
        for (std::size_t i = 0; i < edited.edits.size(); ++i) {
            if (i) editlog << ", ";
            editlog << edited.edits[i].block_index;
        }
        print_aligned(text, {{"complexity K",
                              std::to_string(before.model.complexity()) + " -> " +
                                  std::to_string(edited.complexity())},
                             {"pooled value", fmt6(edited.fit.blocks[k - 1].value)},
                             {"balance shift", fmt6(shift.value())},
                             {"edit log", editlog.str()}});
        text << '\n';
        block_rows_text(text, blocks);

        json edits = json::array();
        for (const MergeEdit& e : edited.edits) edits.push_back(e.block_index);
        json doc{{"model", opt.model_path},
                 {"merged_pair", k},
                 {"complexity_before", before.model.complexity()},
                 {"complexity_after", edited.complexity()},
                 {"pooled_value", edited.fit.blocks[k - 1].value},
                 {"balance_shift", shift.value()},
                 {"edits", std::move(edits)},
                 {"blocks", block_rows_json(blocks)}};

        emit_report(opt.report_out, text.str(), doc, out);
        out << "wrote edited model with K=" << edited.complexity() << " to " << opt.model_out
            << '\n';
        if (!opt.report_out.empty()) out << "wrote report to " << opt.report_out << '\n';
        return kExitOk;
    });
}

int run_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        SimulationConfig config;
        config.n = opt.n;
        config.mu = build_mu(opt, config.n);
        config.sigmas = opt.sigmas;
        std::sort(config.sigmas.begin(), config.sigmas.end());
        config.noise = parse_noise(opt.noise);
        config.replicates = opt.replicates;
        config.seed = opt.seed;
        config.validate();

        const ComplexityCurve curve = complexity_curve(config, opt.threads);
        const std::size_t violations = count_pointwise_violations(curve);

        CsvTable curve_csv;
        curve_csv.header = {"sigma", "mean_K", "se_K"};
        for (std::size_t s = 0; s < curve.sigmas.size(); ++s) {
            curve_csv.rows.push_back({format_double(curve.sigmas[s]),
                                      format_double(curve.mean_K[s]),
                                      format_double(curve.se_K[s])});
        }
        write_csv_file(opt.output_csv, curve_csv);

        if (!opt.matrix_out.empty()) {
            CsvTable matrix;
            matrix.header = {"replicate", "sigma", "K"};
            for (std::size_t r = 0; r < curve.K.size(); ++r) {
                for (std::size_t s = 0; s < curve.sigmas.size(); ++s) {
                    matrix.rows.push_back({std::to_string(r), format_double(curve.sigmas[s]),
                                           std::to_string(curve.K[r][s])});
                }
            }
            write_csv_file(opt.matrix_out, matrix);
        }

        std::vector<std::vector<std::string>> table{{"sigma", "mean_K", "se_K"}};
        for (std::size_t s = 0; s < curve.sigmas.size(); ++s) {
            table.push_back({fmt6(curve.sigmas[s]), fmt6(curve.mean_K[s]),
                             fmt6(curve.se_K[s])});
        }
        print_aligned(out, table);
        out << "wrote complexity curve to " << opt.output_csv << '\n';
        if (!opt.matrix_out.empty())
            out << "wrote replicate matrix to " << opt.matrix_out << '\n';
        out << "pointwise violations: " << violations << '\n';
        if (violations > 0) {
            err << "error: complexity increased with sigma under coupled noise; this "
                   "contradicts the scale monotonicity guarantee\n";
            return kExitMonotonicityViolation;
        }
        return kExitOk;
    });
}

int run_diagnose(const DiagnoseOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const CsvTable csv = read_csv(opt.input_csv);
        const std::size_t pc = csv.column(opt.prediction_column);
        const std::size_t oc = csv.column(opt.outcome_column);
        const bool has_w = csv.has_column(opt.weight_column);
        const std::size_t wc = has_w ? csv.column(opt.weight_column) : 0;

        std::vector<double> predictions, outcomes, weights;
        for (std::size_t r = 0; r < csv.rows.size(); ++r) {
            predictions.push_back(parse_finite(csv.rows[r][pc], r + 1, opt.prediction_column));
            outcomes.push_back(parse_finite(csv.rows[r][oc], r + 1, opt.outcome_column));
            const double w =
                has_w ? parse_finite(csv.rows[r][wc], r + 1, opt.weight_column) : 1.0;
            if (!(w > 0.0))
                throw ParseError("row " + std::to_string(r + 1) + ", column '" +
                                 opt.weight_column + "': weight must be positive");
            weights.push_back(w);
        }
        if (predictions.empty()) throw ParseError("input has a header but no data rows");

        const std::vector<ReliabilityPoint> points =
            reliability_points(predictions, outcomes, weights);
        double max_diag_gap = 0.0;
        for (const auto& p : points)
            max_diag_gap = std::max(max_diag_gap, std::abs(p.prediction - p.conditional_mean));

        if (!opt.reliability_out.empty()) {
            CsvTable rel;
            rel.header = {"prediction", "conditional_mean"};
            for (const auto& p : points)
                rel.rows.push_back(
                    {format_double(p.prediction), format_double(p.conditional_mean)});
            write_csv_file(opt.reliability_out, rel);
        }

        const LossTable losses =
            build_loss_table(outcomes, weights, predictions, predictions);
        // the two columns coincide here; report a single value per metric
        std::ostringstream text;
        text << "diagnosis of " << opt.input_csv << '\n';
        print_aligned(text, {{"rows", std::to_string(predictions.size())},
                             {"reliability points", std::to_string(points.size())},
                             {"max diagonal gap", fmt6(max_diag_gap)}});
        text << '\n';
        text << "loss of the supplied predictions (weighted; outcome average "
             << fmt6(losses.response_average) << ")\n";
        std::vector<std::vector<std::string>> rows{{"metric", "value"}};
        for (const auto& r : losses.rows) rows.push_back({r.metric, fmt6(r.scores)});
        print_aligned(text, rows);

        json loss_rows = json::array();
        for (const auto& r : losses.rows)
            loss_rows.push_back(json{{"metric", r.metric}, {"value", r.scores}});
        json rel_points = json::array();
        for (const auto& p : points)
            rel_points.push_back(json{{"prediction", p.prediction},
                                      {"conditional_mean", p.conditional_mean}});
        json doc{{"input", opt.input_csv},
                 {"rows", predictions.size()},
                 {"reliability_points", std::move(rel_points)},
                 {"max_diagonal_gap", max_diag_gap},
                 {"loss", json{{"outcome_average", losses.response_average},
                               {"rows", std::move(loss_rows)}}}};

        emit_report(opt.report_out, text.str(), doc, out);
        if (!opt.reliability_out.empty())
            out << "wrote reliability points to " << opt.reliability_out << '\n';
        if (!opt.report_out.empty()) out << "wrote report to " << opt.report_out << '\n';
        return kExitOk;
    });
}

}  // namespace isorec
