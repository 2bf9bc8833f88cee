#include <iostream>

#include "CLI11.hpp"

#include "isorec/commands.hpp"
#include "isorec/model_io.hpp"

int main(int argc, char** argv) {
    CLI::App app{"isotonic recalibration of model scores"};
    app.set_version_flag("--version", isorec::kToolVersion);
    app.require_subcommand(1);

    isorec::RecalibrateOptions recal;
    auto* recal_cmd = app.add_subcommand(
        "recalibrate", "fit an isotonic model binding scores to responses");
    recal_cmd->add_option("--input", recal.input_csv, "training CSV")->required();
    recal_cmd->add_option("--response", recal.columns.response, "response column (default y)");
    recal_cmd->add_option("--weight", recal.columns.weight,
                          "weight column (default w; rows default to 1 when absent)");
    recal_cmd->add_option("--score", recal.columns.score, "score column (default score)");
    recal_cmd->add_option("--model", recal.model_out, "output model JSON path")->required();
    recal_cmd->add_option("--report", recal.report_out,
                          "report path (.json for JSON, otherwise text; default: stdout)");

    isorec::PredictOptions pred;
    auto* pred_cmd = app.add_subcommand("predict", "apply a saved model to new scores");
    pred_cmd->add_option("--model", pred.model_path, "model JSON path")->required();
    pred_cmd->add_option("--input", pred.input_csv, "CSV of query scores")->required();
    pred_cmd->add_option("--score", pred.score_column, "score column (default score)");
    pred_cmd->add_option("--out", pred.output_csv, "output CSV path")->required();
    pred_cmd->add_flag("--step", pred.step_mode,
                       "step-function prediction with block labels (default: midpoint)");

    isorec::PartitionOptions part;
    auto* part_cmd = app.add_subcommand(
        "partition", "label rows with their block and summarize covariates");
    part_cmd->add_option("--model", part.model_path, "model JSON path")->required();
    part_cmd->add_option("--input", part.input_csv, "dataset CSV with covariates")->required();
    part_cmd->add_option("--response", part.columns.response,
                         "response column to exclude from covariates (default y)");
    part_cmd->add_option("--weight", part.columns.weight, "weight column (default w)");
    part_cmd->add_option("--score", part.columns.score, "score column (default score)");
    part_cmd->add_option("--covariates", part.covariates,
                         "covariate columns to summarize (default: all non-role columns)");
    part_cmd->add_option("--out", part.partition_out, "labeled rows CSV path")->required();
    part_cmd->add_option("--marginal", part.marginal_out, "marginal shares CSV path")
        ->required();

    isorec::EditOptions edit;
    auto* edit_cmd = app.add_subcommand(
        "edit", "merge two adjacent blocks of a saved model");
    edit_cmd->add_option("--model", edit.model_path, "model JSON path")->required();
    edit_cmd->add_option("--merge", edit.merge_spec,
                         "'low', 'high', or the 1-based index k of the pair (k, k+1)")
        ->required();
    edit_cmd->add_option("--out", edit.model_out, "edited model JSON path")->required();
    edit_cmd->add_option("--report", edit.report_out,
                         "report path (.json for JSON, otherwise text; default: stdout)");

    isorec::SimulateOptions sim;
    auto* sim_cmd = app.add_subcommand(
        "simulate", "complexity curve of a location-scale experiment over a sigma grid");
    sim_cmd->add_option("-n,--n", sim.n, "sample size");
    sim_cmd->add_option("--mu", sim.mu_spec, "location profile: linear or linear:<lo>:<hi>");
    sim_cmd->add_option("--mu-csv", sim.mu_csv, "CSV with a custom location profile");
    sim_cmd->add_option("--mu-column", sim.mu_column, "profile column name (default mu)");
    sim_cmd->add_option("--sigmas", sim.sigmas, "scale grid (sorted ascending before use)")
        ->required()
        ->expected(-1);
    sim_cmd->add_option("--noise", sim.noise,
                        "standard-gaussian, student-t:<df>, or uniform");
    sim_cmd->add_option("--replicates", sim.replicates, "number of replicates (default 1)");
    sim_cmd->add_option("--seed", sim.seed, "RNG seed; always explicit, never implied")
        ->required();
    sim_cmd->add_option("--out", sim.output_csv, "complexity curve CSV path")->required();
    sim_cmd->add_option("--matrix", sim.matrix_out, "optional per-replicate K matrix CSV");
    sim_cmd->add_option("--threads", sim.threads, "worker threads (default 1)");

    isorec::DiagnoseOptions diag;
    auto* diag_cmd = app.add_subcommand(
        "diagnose", "reliability points and loss report for prediction/outcome pairs");
    diag_cmd->add_option("--input", diag.input_csv, "CSV of predictions and outcomes")
        ->required();
    diag_cmd->add_option("--prediction", diag.prediction_column,
                         "prediction column (default prediction)");
    diag_cmd->add_option("--outcome", diag.outcome_column, "outcome column (default y)");
    diag_cmd->add_option("--weight", diag.weight_column, "weight column (default w)");
    diag_cmd->add_option("--out", diag.reliability_out, "reliability points CSV path")
        ->required();
    diag_cmd->add_option("--report", diag.report_out,
                         "report path (.json for JSON, otherwise text; default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : isorec::kExitBadInput;
    }

    if (recal_cmd->parsed()) return isorec::run_recalibrate(recal, std::cout, std::cerr);
    if (pred_cmd->parsed()) return isorec::run_predict(pred, std::cout, std::cerr);
    if (part_cmd->parsed()) return isorec::run_partition(part, std::cout, std::cerr);
    if (edit_cmd->parsed()) return isorec::run_edit(edit, std::cout, std::cerr);
    if (sim_cmd->parsed()) return isorec::run_simulate(sim, std::cout, std::cerr);
    if (diag_cmd->parsed()) return isorec::run_diagnose(diag, std::cout, std::cerr);
    return isorec::kExitBadInput;
}
