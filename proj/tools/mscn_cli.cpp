// Command-line front end: simulate | fit | classify | density-grid | eval.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "mscn/datasets.hpp"
#include "mscn/estimation.hpp"
#include "mscn/evaluation.hpp"
#include "mscn/mixtures.hpp"
#include "mscn/model_io.hpp"

namespace {

struct CommonDataOpts {
    std::string path;
    bool has_header = false;
    std::string label_col;
    std::vector<std::string> drop_cols;
    bool standardize_data = false;
};

void add_data_options(CLI::App* cmd, CommonDataOpts& opts) {
    cmd->add_option("--data", opts.path, "input CSV path")->required();
    cmd->add_flag("--has-header", opts.has_header, "first CSV row holds column names");
    cmd->add_option("--label-col", opts.label_col,
                    "column holding true labels (name or 0-based index); excluded from features");
    cmd->add_option("--drop-cols", opts.drop_cols,
                    "further columns to exclude (comma separated names or indices)")
        ->delimiter(',');
    cmd->add_flag("--standardize", opts.standardize_data,
                  "scale each column to mean 0, sample sd 1 before use");
}

mscn::Dataset load_data(const CommonDataOpts& opts) {
    mscn::CsvOptions csv;
    csv.has_header = opts.has_header;
    if (!opts.label_col.empty()) csv.label_column = opts.label_col;
    csv.drop_columns = opts.drop_cols;
    mscn::Dataset ds = mscn::load_csv(opts.path, csv);
    if (opts.standardize_data) ds = mscn::standardize(ds);
    return ds;
}

void set_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

int run_simulate(const std::string& out, std::string labels_out, std::string bad_out,
                 std::uint64_t seed, bool header) {
    if (labels_out.empty()) labels_out = out + ".labels";
    if (bad_out.empty()) bad_out = out + ".bad";
    const mscn::Dataset ds = mscn::generate_synthetic(seed);
    mscn::save_csv(ds, out, header);
    mscn::save_labels(ds.true_labels, labels_out);
    mscn::save_mask(ds.true_bad, bad_out);

    std::size_t bad_cells = 0;
    for (std::uint8_t b : ds.true_bad.a) bad_cells += b;
    std::vector<std::size_t> sizes;
    for (int lab : ds.true_labels) {
        if (static_cast<std::size_t>(lab) >= sizes.size()) sizes.resize(lab + 1, 0);
        ++sizes[lab];
    }
    std::cout << "wrote " << ds.x.rows() << " x " << ds.x.cols() << " dataset to " << out << "\n";
    std::cout << "cluster sizes:";
    for (std::size_t s : sizes) std::cout << ' ' << s;
    std::cout << "\nbad cells: " << bad_cells << " (labels: " << labels_out
              << ", bad mask: " << bad_out << ")\n";
    return 0;
}

int run_fit(const CommonDataOpts& data_opts, const std::string& out, const std::string& family,
            mscn::FitConfig cfg, bool verbose) {
    const mscn::Dataset ds = load_data(data_opts);
    if (verbose) cfg.diagnostics = &std::cerr;

    auto [model, state] = family == "mnm" ? mscn::fit_gaussian_baseline(ds.x, cfg)
                                          : mscn::fit(ds.x, cfg);
    mscn::write_text_atomic(out, mscn::model_to_json(model));

    std::printf("family: %s  k: %zu  d: %zu\n", mscn::to_string(model.family), model.k(),
                model.d());
    std::printf("final log-likelihood: %.10g\n", state.loglik_trace.back());
    std::printf("iterations: %zu  converged: %s (%s)\n", state.iterations,
                state.convergence.converged ? "yes" : "no", state.convergence.reason.c_str());
    std::printf("model written to %s\n", out.c_str());
    return 0;
}

int run_classify(const CommonDataOpts& data_opts, const std::string& model_path,
                 const std::string& out, const std::string& true_labels_path,
                 const std::string& true_bad_path) {
    const mscn::Dataset ds = load_data(data_opts);
    const mscn::MixtureModel model = mscn::load_model(model_path);
    if (model.d() != ds.x.cols())
        throw std::runtime_error("classify: model dimension " + std::to_string(model.d())
                                 + " does not match data dimension "
                                 + std::to_string(ds.x.cols()));

    const mscn::ClassificationReport rep = mscn::classify(ds.x, model);

    std::vector<int> truth = ds.true_labels;
    if (!true_labels_path.empty()) {
        if (!truth.empty())
            throw std::runtime_error("classify: both --label-col and --true-labels given");
        truth = mscn::load_labels(true_labels_path);
    }

    mscn::ReportScores scores;
    const bool have_scores = !truth.empty();
    if (have_scores) {
        if (truth.size() != rep.labels.size())
            throw std::runtime_error("classify: label length mismatch");
        scores.agreement = mscn::agreement(truth, rep.labels);
        if (!true_bad_path.empty()) {
            const mscn::Mask true_bad = mscn::load_mask(true_bad_path);
            mscn::Mask flagged(rep.good_flags.rows, rep.good_flags.cols);
            for (std::size_t i = 0; i < flagged.a.size(); ++i)
                flagged.a[i] = rep.good_flags.a[i] ? 0 : 1;
            scores.confusion = mscn::outlier_confusion(true_bad, flagged);
            scores.has_confusion = true;
        }
    }
    mscn::write_text_atomic(out, mscn::report_to_json(rep, have_scores ? &scores : nullptr));

    std::size_t flagged_cells = 0;
    for (std::size_t h = 0; h < rep.outliers_per_dimension.size(); ++h)
        flagged_cells += rep.outliers_per_dimension[h];
    std::printf("classified %zu rows into %zu clusters; %zu cells flagged bad\n",
                rep.labels.size(), model.k(), flagged_cells);
    if (have_scores) std::printf("ER: %.6g  ARI: %.6g\n", scores.agreement.er,
                                 scores.agreement.ari);
    std::printf("report written to %s\n", out.c_str());
    return 0;
}

int run_density_grid(const std::string& model_path, std::size_t component, double theta,
                     std::vector<double> mu, std::vector<double> lambda,
                     std::vector<double> alpha, std::vector<double> eta, const std::string& out,
                     double xmin, double xmax, double ymin, double ymax, std::size_t resolution) {
    mscn::MscnParams p;
    if (!model_path.empty()) {
        const mscn::MixtureModel model = mscn::load_model(model_path);
        if (component >= model.k())
            throw std::runtime_error("density-grid: component index out of range");
        p = model.components[component];
    } else {
        if (lambda.size() != 2 || alpha.size() != 2 || eta.size() != 2)
            throw std::runtime_error(
                "density-grid: --lambda, --alpha, --eta each need two values");
        if (mu.empty()) mu = {0.0, 0.0};
        if (mu.size() != 2) throw std::runtime_error("density-grid: --mu needs two values");
        p.mu = {mu[0], mu[1]};
        p.gamma = mscn::rotation_matrix(theta);
        p.lambda = {lambda[0], lambda[1]};
        p.alpha = {alpha[0], alpha[1]};
        p.eta = {eta[0], eta[1]};
        p.validate();
    }
    const mscn::DensityGrid grid = mscn::mscn_density_grid(p, xmin, xmax, ymin, ymax, resolution);
    mscn::write_text_atomic(out, mscn::density_grid_to_csv(grid));
    std::printf("wrote %zu x %zu density grid to %s\n", resolution, resolution, out.c_str());
    return 0;
}

int run_eval(const std::string& truth_path, const std::string& pred_path,
             const std::string& true_bad_path, const std::string& pred_bad_path,
             const std::string& out) {
    const std::vector<int> truth = mscn::load_labels(truth_path);
    const std::vector<int> pred = mscn::load_labels(pred_path);
    if (truth.size() != pred.size()) throw std::runtime_error("eval: label length mismatch");
    const mscn::AgreementScores scores = mscn::agreement(truth, pred);

    mscn::OutlierConfusion confusion;
    bool have_confusion = false;
    if (!true_bad_path.empty() || !pred_bad_path.empty()) {
        if (true_bad_path.empty() || pred_bad_path.empty())
            throw std::runtime_error("eval: need both --true-bad and --pred-bad");
        confusion = mscn::outlier_confusion(mscn::load_mask(true_bad_path),
                                            mscn::load_mask(pred_bad_path));
        have_confusion = true;
    }
    mscn::write_text_atomic(out, mscn::scores_to_json(scores,
                                                      have_confusion ? &confusion : nullptr));
    std::printf("ER: %.6g  ARI: %.6g\n", scores.er, scores.ari);
    std::printf("scores written to %s\n", out.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiple scaled contaminated normal mixtures"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "cap OpenMP threads (default: runtime choice)");

    // simulate
    auto* sim = app.add_subcommand("simulate", "generate the three-cluster benchmark dataset");
    std::string sim_out, sim_labels, sim_bad;
    std::uint64_t sim_seed = 0;
    bool sim_header = false;
    sim->add_option("--out", sim_out, "output CSV path")->required();
    sim->add_option("--labels-out", sim_labels, "labels sidecar (default: <out>.labels)");
    sim->add_option("--bad-out", sim_bad, "bad-cell sidecar (default: <out>.bad)");
    sim->add_option("--seed", sim_seed, "generator seed");
    sim->add_flag("--header", sim_header, "write a header row");

    // fit
    auto* fit = app.add_subcommand("fit", "fit a mixture model to CSV data");
    CommonDataOpts fit_data;
    add_data_options(fit, fit_data);
    std::string fit_out, fit_family = "mscnm";
    mscn::FitConfig cfg;
    bool fit_verbose = false;
    fit->add_option("--out", fit_out, "output model JSON path")->required();
    fit->add_option("--family", fit_family, "model family: mscnm or mnm")
        ->check(CLI::IsMember({"mscnm", "mnm"}));
    fit->add_option("--k", cfg.k, "number of components")->required();
    fit->add_option("--seed", cfg.seed, "seed (reserved; the default initializer is deterministic)");
    fit->add_option("--epsilon", cfg.epsilon, "Aitken tolerance");
    fit->add_option("--max-iter", cfg.max_iter, "iteration cap");
    fit->add_option("--eta-floor", cfg.eta_floor, "smallest admissible eta");
    fit->add_option("--alpha-floor", cfg.alpha_floor, "smallest admissible alpha");
    fit->add_option("--alpha-cap", cfg.alpha_cap, "largest admissible alpha");
    fit->add_option("--v-init", cfg.v_init, "initial good-posterior");
    fit->add_option("--cm2-max-evals", cfg.cm2_opts.max_evals,
                    "optimizer budget per component per iteration");
    fit->add_option("--cm2-grad-tol", cfg.cm2_opts.grad_tol, "optimizer gradient tolerance");
    fit->add_flag("-v,--verbose", fit_verbose, "stream per-iteration diagnostics to stderr");

    // classify
    auto* cls = app.add_subcommand("classify", "MAP clustering and directional outlier flags");
    CommonDataOpts cls_data;
    add_data_options(cls, cls_data);
    std::string cls_model, cls_out, cls_truth, cls_bad;
    cls->add_option("--model", cls_model, "model JSON path")->required();
    cls->add_option("--out", cls_out, "output report JSON path")->required();
    cls->add_option("--true-labels", cls_truth, "true labels file (one integer per line)");
    cls->add_option("--true-bad", cls_bad, "true bad-cell mask CSV (0/1 cells)");

    // density-grid
    auto* grid = app.add_subcommand("density-grid", "bivariate log-density grid as CSV");
    std::string grid_model, grid_out;
    std::size_t grid_component = 0, grid_res = 200;
    double grid_theta = 0.0;
    std::vector<double> grid_mu, grid_lambda, grid_alpha, grid_eta;
    double grid_xmin = -5.0, grid_xmax = 5.0, grid_ymin = -5.0, grid_ymax = 5.0;
    grid->add_option("--model", grid_model, "take parameters from this model JSON");
    grid->add_option("--component", grid_component, "component index within --model");
    grid->add_option("--theta", grid_theta, "rotation angle for the orientation matrix");
    grid->add_option("--mu", grid_mu, "mean (two values)")->delimiter(',');
    grid->add_option("--lambda", grid_lambda, "scales (two values)")->delimiter(',');
    grid->add_option("--alpha", grid_alpha, "proportions of good points (two values)")
        ->delimiter(',');
    grid->add_option("--eta", grid_eta, "degrees of contamination (two values)")->delimiter(',');
    grid->add_option("--out", grid_out, "output CSV path")->required();
    grid->add_option("--xmin", grid_xmin);
    grid->add_option("--xmax", grid_xmax);
    grid->add_option("--ymin", grid_ymin);
    grid->add_option("--ymax", grid_ymax);
    grid->add_option("--resolution", grid_res, "points per axis");

    // eval
    auto* ev = app.add_subcommand("eval", "agreement scores between two label files");
    std::string ev_truth, ev_pred, ev_tbad, ev_pbad, ev_out;
    ev->add_option("--truth", ev_truth, "true labels file")->required();
    ev->add_option("--pred", ev_pred, "predicted labels file")->required();
    ev->add_option("--true-bad", ev_tbad, "true bad-cell mask CSV");
    ev->add_option("--pred-bad", ev_pbad, "flagged bad-cell mask CSV");
    ev->add_option("--out", ev_out, "output scores JSON path")->required();

    CLI11_PARSE(app, argc, argv);
    set_threads(threads);

    try {
        if (sim->parsed()) return run_simulate(sim_out, sim_labels, sim_bad, sim_seed, sim_header);
        if (fit->parsed()) return run_fit(fit_data, fit_out, fit_family, cfg, fit_verbose);
        if (cls->parsed()) return run_classify(cls_data, cls_model, cls_out, cls_truth, cls_bad);
        if (grid->parsed())
            return run_density_grid(grid_model, grid_component, grid_theta, grid_mu, grid_lambda,
                                    grid_alpha, grid_eta, grid_out, grid_xmin, grid_xmax,
                                    grid_ymin, grid_ymax, grid_res);
        if (ev->parsed()) return run_eval(ev_truth, ev_pred, ev_tbad, ev_pbad, ev_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
