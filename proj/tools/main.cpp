#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "orthog/benchmark.hpp"
#include "orthog/csv.hpp"
#include "orthog/errors.hpp"
#include "orthog/group.hpp"
#include "orthog/kernels.hpp"
#include "orthog/metrics.hpp"
#include "orthog/og.hpp"
#include "orthog/predict.hpp"
#include "orthog/simulate.hpp"
#include "orthog/sog.hpp"
#include "orthog/svd.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace orthog;

namespace {

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec && !fs::is_directory(dir))
        throw IoError("cannot create directory " + dir + ": " + ec.message());
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed for " + path);
}

struct SimulateOpts {
    ScenarioSpec spec;
    std::string out = ".";
};

int run_simulate(const SimulateOpts& opts) {
    const ScenarioSpec spec = resolve(opts.spec);
    GeneratedData data = generate(spec);
    ensure_dir(opts.out);
    write_matrix_csv(opts.out + "/X.csv", data.X);
    write_vector_csv(opts.out + "/Y.csv", data.Y, "y");
    write_vector_csv(opts.out + "/Z.csv", data.Z, "z");
    json manifest;
    manifest["schema_version"] = 1;
    manifest["command"] = "simulate";
    manifest["scenario"] = spec.scenario;
    manifest["n"] = spec.n;
    manifest["p"] = spec.p;
    manifest["k"] = spec.k;
    manifest["seed"] = spec.seed;
    manifest["split_ratio"] = spec.split_ratio;
    manifest["n_splits"] = spec.n_splits;
    write_json(opts.out + "/manifest.json", manifest);
    std::printf("wrote scenario %d dataset (%d x %d) to %s\n", spec.scenario,
                spec.n, spec.p, opts.out.c_str());
    return 0;
}

struct AdjustOpts {
    std::string x_path;
    std::string z_path;
    std::string z_scheme = "auto";
    std::string method = "og";
    int k = 0;
    double t = 0.0;
    double tol = 1e-7;
    int max_iter = 500;
    std::string init = "svd";
    std::uint64_t init_seed = 0;
    bool strict = false;
    std::string out = ".";
};

GroupDesign load_group(const std::string& path, const std::string& scheme,
                       int n_rows) {
    if (path.empty()) return GroupDesign::none(n_rows);
    CsvTable table = read_csv(path);
    if (table.rows() != n_rows)
        throw ShapeError("group file has " + std::to_string(table.rows()) +
                         " rows, data has " + std::to_string(n_rows));
    bool numeric;
    if (scheme == "numeric")
        numeric = true;
    else if (scheme == "categorical")
        numeric = false;
    else
        numeric = table_is_numeric(table);
    if (numeric) {
        Matrix raw(table.rows(), table.cols());
        for (int j = 0; j < table.cols(); ++j) {
            Vector col = numeric_column(table, j);
            raw.set_col(j, col);
        }
        return encode_group(raw, GroupScheme::numeric);
    }
    if (table.cols() != 1)
        throw InputError("categorical group file must have exactly one column");
    std::vector<std::string> labels;
    labels.reserve(table.rows());
    for (const auto& row : table.cells) labels.push_back(row[0]);
    return encode_group(labels);
}

json group_moments(const GroupDesign& zd, const Matrix& x_tilde,
                   double* max_out) {
    json per = json::array();
    *max_out = 0.0;
    if (zd.empty()) return per;
    Matrix cross = matmul_at_b(zd.augmented(), x_tilde);
    for (int i = 0; i < cross.rows(); ++i) {
        double m = 0.0;
        for (int j = 0; j < cross.cols(); ++j)
            m = std::max(m, std::fabs(cross(i, j)));
        per.push_back(m);
        *max_out = std::max(*max_out, m);
    }
    return per;
}

int run_adjust(const AdjustOpts& opts) {
    Matrix x = read_matrix_csv(opts.x_path);
    validate_data_matrix(x, "adjust");
    GroupDesign zd = load_group(opts.z_path, opts.z_scheme, x.rows());
    ensure_dir(opts.out);

    json report;
    report["schema_version"] = 1;
    report["command"] = "adjust";
    report["method"] = opts.method;
    report["n"] = x.rows();
    report["p"] = x.cols();
    const double x_fro = frobenius(x);
    report["x_fro"] = x_fro;

    Matrix x_tilde;
    if (opts.method == "og") {
        OgModel model = fit_og(x, zd, opts.k);
        x_tilde = model.x_tilde;
        report["k"] = model.rank();
        report["err_og"] = model.err_og;
        report["err_svd"] = model.err_svd;
        report["gap"] = model.gap;
        report["lemma_identity_ok"] =
            std::fabs(model.err_og - (model.err_svd + model.gap)) <=
            1e-8 * std::max(1.0, model.err_og);
    } else {
        const int kmax = std::min(x.rows(), x.cols()) - zd.rank();
        const int k = opts.k > 0 ? opts.k : std::min(kmax, 30);
        if (opts.t < 0.0)
            throw ParameterError("t must be positive (0 selects the default)");
        const double t = opts.t > 0.0 ? opts.t : default_l1_bound(x.cols());
        const SogInit init =
            opts.init == "random" ? SogInit::random : SogInit::svd;
        SogModel model = fit_sog(x, zd, k, t, opts.tol, opts.max_iter, init,
                                 opts.init_seed);
        x_tilde = model.x_tilde;
        bool all_converged = true;
        for (char c : model.converged) all_converged = all_converged && c;
        if (opts.strict && (!all_converged || model.truncated))
            throw Error("sog did not reach a converged rank-" +
                        std::to_string(model.requested_k) + " fit");
        const double err = frobenius_sq_diff(x, x_tilde);
        double err_svd = frobenius_sq(x);
        if (model.rank() >= 1) {
            SvdFactors f = truncated_svd(x, model.rank());
            err_svd = frobenius_sq_diff(x, reconstruct(f));
        }
        report["k"] = model.rank();
        report["requested_k"] = model.requested_k;
        report["t"] = model.t;
        report["err_og"] = err;
        report["err_svd"] = err_svd;
        report["gap"] = err - err_svd;
        report["converged"] = all_converged;
        report["truncated"] = model.truncated;
        report["iterations"] = model.iterations;
    }

    double moment_max = 0.0;
    report["group_moment_per_column"] = group_moments(zd, x_tilde, &moment_max);
    report["group_moment_max"] = moment_max;
    report["group_moment_ok"] = moment_max <= 1e-9 * std::max(1.0, x_fro);

    write_matrix_csv(opts.out + "/X_tilde.csv", x_tilde);
    write_json(opts.out + "/report.json", report);
    std::printf("adjusted %d x %d with %s (k=%d) into %s\n", x.rows(), x.cols(),
                opts.method.c_str(), report["k"].get<int>(), opts.out.c_str());
    return 0;
}

struct EvaluateOpts {
    std::string pred_path;
    std::string truth_path;
    std::string z_path;
    bool classify = false;
    double threshold = 0.5;
    std::string out = "metrics.json";
};

int run_evaluate(const EvaluateOpts& opts) {
    Vector pred = read_vector_csv(opts.pred_path);
    Vector truth = read_vector_csv(opts.truth_path);

    json j;
    j["schema_version"] = 1;
    j["command"] = "evaluate";
    j["n"] = pred.size();
    RegressionMetrics reg = regression_metrics(pred, truth);
    j["rmse"] = reg.rmse;
    j["mae"] = reg.mae;
    j["mdae"] = reg.mdae;

    if (opts.classify) {
        ClassificationMetrics cm =
            classification_metrics(pred, truth, opts.threshold);
        json c;
        c["acc"] = cm.acc;
        c["single_class"] = cm.single_class;
        if (cm.auc) c["auc"] = *cm.auc;
        if (cm.tpr) c["tpr"] = *cm.tpr;
        if (cm.tnr) c["tnr"] = *cm.tnr;
        if (cm.ppv) c["ppv"] = *cm.ppv;
        if (cm.npv) c["npv"] = *cm.npv;
        j["classification"] = c;
    }

    if (!opts.z_path.empty()) {
        Vector z = read_vector_csv(opts.z_path);
        GroupDependence g = group_dependence(pred, z);
        j["group_correlation"] = g.correlation;
        j["group_degenerate"] = g.degenerate;
    }

    write_json(opts.out, j);
    std::printf("wrote %s\n", opts.out.c_str());
    return 0;
}

struct BenchmarkOpts {
    BenchmarkConfig config;
    std::string out = ".";
};

int run_benchmark_cmd(const BenchmarkOpts& opts) {
    BenchmarkResult result = run_benchmark(opts.config);
    ensure_dir(opts.out);
    write_benchmark_outputs(result, opts.out);
    for (const Table1Row& r : result.table1)
        if (r.metric == "rmse")
            std::printf("%-4s rmse %.4f (sd %.4f, %d splits)\n",
                        r.method.c_str(), r.mean, r.sd, r.n_splits);
    std::printf("wrote table1.csv, table2.csv, fig1.csv, benchmark.json to %s\n",
                opts.out.c_str());
    return 0;
}

template <typename F>
int run_guarded(F&& fn) {
    try {
        return fn();
    } catch (const ParameterError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const InputError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const SingularDesignError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const DegenerateGroupError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const DegenerateLabelError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    }
}

void add_scenario_flags(CLI::App* cmd, ScenarioSpec* spec) {
    cmd->add_option("--scenario", spec->scenario, "Scenario id (1-4)")
        ->required();
    cmd->add_option("--seed", spec->seed, "PRNG seed");
    cmd->add_option("--n", spec->n, "Rows (0: scenario default)");
    cmd->add_option("--p", spec->p, "Columns (0: scenario default)");
    cmd->add_option("--k", spec->k, "Factor rank (0: scenario default)");
    cmd->add_option("--split-ratio", spec->split_ratio,
                    "Training fraction per split");
    cmd->add_option("--splits", spec->n_splits, "Number of train/test splits");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Low-rank preprocessing whose output is uncorrelated with a group "
        "variable"};
    app.require_subcommand(1);

    SimulateOpts sim;
    CLI::App* c_sim = app.add_subcommand(
        "simulate", "Generate a seeded scenario dataset as CSV files");
    add_scenario_flags(c_sim, &sim.spec);
    c_sim->add_option("--out", sim.out, "Output directory");

    AdjustOpts adj;
    CLI::App* c_adj = app.add_subcommand(
        "adjust", "Fit an adjustment and write the adjusted matrix");
    c_adj->add_option("--x", adj.x_path, "Data matrix CSV")->required();
    c_adj->add_option("--z", adj.z_path, "Group variable CSV (omit for none)");
    c_adj->add_option("--z-scheme", adj.z_scheme, "Group encoding")
        ->check(CLI::IsMember({"auto", "numeric", "categorical"}));
    c_adj->add_option("--method", adj.method, "Adjustment method")
        ->check(CLI::IsMember({"og", "sog"}));
    c_adj->add_option("--k", adj.k, "Rank (0: default)");
    c_adj->add_option("--t", adj.t, "Sparsity budget for sog (0: default)");
    c_adj->add_option("--tol", adj.tol, "Convergence tolerance (sog)");
    c_adj->add_option("--max-iter", adj.max_iter, "Iteration cap (sog)");
    c_adj->add_option("--init", adj.init, "Component init (sog)")
        ->check(CLI::IsMember({"svd", "random"}));
    c_adj->add_option("--init-seed", adj.init_seed, "Random init seed (sog)");
    c_adj->add_flag("--strict", adj.strict,
                    "Exit nonzero if the fit does not converge");
    c_adj->add_option("--out", adj.out, "Output directory");

    EvaluateOpts ev;
    CLI::App* c_ev = app.add_subcommand(
        "evaluate", "Score predictions against a held-out truth column");
    c_ev->add_option("--pred", ev.pred_path, "Predictions CSV")->required();
    c_ev->add_option("--truth", ev.truth_path, "Ground truth CSV")->required();
    c_ev->add_option("--z", ev.z_path, "Group CSV for dependence check");
    c_ev->add_flag("--classify", ev.classify,
                   "Also report classification metrics (0/1 truth)");
    c_ev->add_option("--threshold", ev.threshold, "Decision threshold");
    c_ev->add_option("--out", ev.out, "Output JSON path");

    BenchmarkOpts bench;
    CLI::App* c_bench = app.add_subcommand(
        "benchmark", "Split-loop comparison of svd, og, and sog pipelines");
    add_scenario_flags(c_bench, &bench.config.spec);
    c_bench->add_option("--t", bench.config.t,
                        "Sparsity budget for sog (0: default)");
    c_bench->add_option("--k-grid", bench.config.k_grid,
                        "Ranks for the reconstruction table");
    c_bench->add_option("--out", bench.out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (app.got_subcommand(c_sim)) return run_guarded([&] { return run_simulate(sim); });
    if (app.got_subcommand(c_adj)) return run_guarded([&] { return run_adjust(adj); });
    if (app.got_subcommand(c_ev)) return run_guarded([&] { return run_evaluate(ev); });
    return run_guarded([&] { return run_benchmark_cmd(bench); });
}
