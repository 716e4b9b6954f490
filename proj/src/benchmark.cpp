#include "orthog/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <tuple>
#include <utility>

#include "orthog/csv.hpp"
#include "orthog/errors.hpp"
#include "orthog/group.hpp"
#include "orthog/kernels.hpp"
#include "orthog/metrics.hpp"
#include "orthog/og.hpp"
#include "orthog/predict.hpp"
#include "orthog/sog.hpp"
#include "orthog/svd.hpp"

#include <json.hpp>

namespace orthog {

namespace {

constexpr const char* kMethods[] = {"svd", "og", "sog"};

struct MethodOutcome {
    RegressionMetrics reg;
    double correlation = 0.0;
};

struct SplitOutcome {
    MethodOutcome method[3];
    // Train-block reconstruction errors per grid rank (Frobenius norms).
    std::vector<double> svd_err, og_err, gap;
};

Vector score_predict(const Matrix& scores_train, const Vector& y_train,
                     const Matrix& scores_test) {
    LinearModel lm = fit_linear(scores_train, y_train);
    return predict(lm, scores_test);
}

MethodOutcome evaluate_prediction(const Vector& yhat, const Vector& y_test,
                                  const Vector& z_test) {
    MethodOutcome out;
    out.reg = regression_metrics(yhat, y_test);
    out.correlation = group_dependence(yhat, z_test).correlation;
    return out;
}

SplitOutcome run_split(const GeneratedData& data, const ScenarioSpec& spec,
                       int split_index, double t,
                       const std::vector<int>& k_grid) {
    SplitData sd = split(data, spec, split_index);
    GroupDesign zd_train = encode_group(sd.z_train, GroupScheme::numeric);
    GroupDesign zd_test = encode_group(sd.z_test, GroupScheme::numeric);

    const int p = sd.x_train.cols();
    const int k_svd = std::min({spec.k, sd.x_train.rows(), sd.x_test.rows(), p});
    const int k_sog =
        std::min(k_svd, std::min(std::min(sd.x_train.rows(), p) - zd_train.rank(),
                                 std::min(sd.x_test.rows(), p) - zd_test.rank()));
    if (k_sog < 1)
        throw RankError("benchmark: split too small for any sparse component");

    SplitOutcome out;

    // Unadjusted baseline: regression on the unit-norm left singular vectors,
    // with the test block decomposed on its own.
    {
        SvdFactors f_train = truncated_svd(sd.x_train, k_svd);
        SvdFactors f_test = truncated_svd(sd.x_test, k_svd);
        Vector yhat = score_predict(f_train.V, sd.y_train, f_test.V);
        out.method[0] = evaluate_prediction(yhat, sd.y_test, sd.z_test);
    }

    // Closed-form group-orthogonal adjustment: regression on the adjusted
    // train block, evaluated on the test block's own adjustment.
    {
        OgModel m_train = fit_og(sd.x_train, zd_train, k_svd);
        OgModel m_test = fit_og(sd.x_test, zd_test, k_svd);
        Vector yhat = score_predict(m_train.x_tilde, sd.y_train, m_test.x_tilde);
        out.method[1] = evaluate_prediction(yhat, sd.y_test, sd.z_test);
    }

    // Sparse group-orthogonal adjustment, same protocol.
    {
        SogModel m_train = fit_sog(sd.x_train, zd_train, k_sog, t);
        SogModel m_test = fit_sog(sd.x_test, zd_test, k_sog, t);
        if (m_train.rank() < k_sog || m_test.rank() < k_sog)
            throw Error("benchmark: sparse fit truncated before rank " +
                        std::to_string(k_sog));
        Vector yhat = score_predict(m_train.x_tilde, sd.y_train, m_test.x_tilde);
        out.method[2] = evaluate_prediction(yhat, sd.y_test, sd.z_test);
    }

    // Reconstruction-error grid on the train block.
    out.svd_err.reserve(k_grid.size());
    for (int k : k_grid) {
        OgModel m = fit_og(sd.x_train, zd_train, k);
        out.svd_err.push_back(std::sqrt(m.err_svd));
        out.og_err.push_back(std::sqrt(m.err_og));
        out.gap.push_back(std::sqrt(m.gap));
    }
    return out;
}

MetricReport report_across(const std::vector<SplitOutcome>& outcomes,
                           const std::string& name, int method,
                           double RegressionMetrics::*field) {
    std::vector<double> values;
    values.reserve(outcomes.size());
    for (const SplitOutcome& o : outcomes)
        values.push_back(o.method[method].reg.*field);
    return make_report(name, values);
}

std::pair<double, double> mean_sd(const std::vector<double>& values) {
    MetricReport r = make_report("x", values);
    return {r.value, r.std_dev};
}

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

double default_l1_bound(int p) {
    return std::max(1.0, 0.5 * std::sqrt(static_cast<double>(p)));
}

BenchmarkResult run_benchmark(const BenchmarkConfig& config) {
    const ScenarioSpec spec = resolve(config.spec);
    if (config.t < 0.0)
        throw ParameterError("benchmark: t must be positive (0 selects the default)");
    const double t = config.t > 0.0 ? config.t : default_l1_bound(spec.p);
    if (t < 1.0) throw ParameterError("benchmark: l1 bound t must be at least 1");

    const int n_train = static_cast<int>(spec.n * spec.split_ratio);
    const int k_cap = std::min(n_train, spec.p);
    std::vector<int> k_grid = config.k_grid;
    if (k_grid.empty()) {
        k_grid = {1, 2, 5, 10, 15, 20};
        k_grid.push_back(spec.k);
    }
    for (int k : k_grid)
        if (k < 1) throw ParameterError("benchmark: grid ranks must be positive");
    std::sort(k_grid.begin(), k_grid.end());
    k_grid.erase(std::unique(k_grid.begin(), k_grid.end()), k_grid.end());
    k_grid.erase(std::remove_if(k_grid.begin(), k_grid.end(),
                                [&](int k) { return k > k_cap; }),
                 k_grid.end());

    GeneratedData data = generate(spec);

    std::vector<SplitOutcome> outcomes(spec.n_splits);
    std::exception_ptr first_error;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < spec.n_splits; ++i) {
        try {
            outcomes[i] = run_split(data, spec, i, t, k_grid);
        } catch (...) {
#pragma omp critical
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);

    BenchmarkResult result;
    result.spec = spec;
    result.t = t;

    for (int m = 0; m < 3; ++m) {
        const std::pair<const char*, double RegressionMetrics::*> fields[] = {
            {"rmse", &RegressionMetrics::rmse},
            {"mae", &RegressionMetrics::mae},
            {"mdae", &RegressionMetrics::mdae},
        };
        for (const auto& [metric, field] : fields) {
            MetricReport r = report_across(outcomes, metric, m, field);
            result.table1.push_back(
                {kMethods[m], metric, r.value, r.std_dev, r.n_splits});
        }
    }

    for (int i = 0; i < spec.n_splits; ++i)
        for (int m = 0; m < 3; ++m)
            result.fig1.push_back({i, kMethods[m], outcomes[i].method[m].correlation});

    for (std::size_t g = 0; g < k_grid.size(); ++g) {
        std::vector<double> svd_v, og_v, gap_v;
        for (const SplitOutcome& o : outcomes) {
            svd_v.push_back(o.svd_err[g]);
            og_v.push_back(o.og_err[g]);
            gap_v.push_back(o.gap[g]);
        }
        Table2Row row;
        row.k = k_grid[g];
        std::tie(row.svd_mean, row.svd_sd) = mean_sd(svd_v);
        std::tie(row.og_mean, row.og_sd) = mean_sd(og_v);
        std::tie(row.gap_mean, row.gap_sd) = mean_sd(gap_v);
        result.table2.push_back(row);
    }
    return result;
}

void write_benchmark_outputs(const BenchmarkResult& result,
                             const std::string& dir) {
    const std::string base = dir.empty() ? std::string(".") : dir;

    {
        std::ostringstream body;
        body << "method,metric,mean,sd,n_splits\n";
        for (const Table1Row& r : result.table1)
            body << r.method << ',' << r.metric << ',' << format_value(r.mean)
                 << ',' << format_value(r.sd) << ',' << r.n_splits << '\n';
        std::ofstream out(base + "/table1.csv", std::ios::binary);
        if (!out) throw IoError("cannot write " + base + "/table1.csv");
        out << body.str();
    }
    {
        std::ostringstream body;
        body << "k,svd_mean,svd_sd,og_mean,og_sd,gap_mean,gap_sd\n";
        for (const Table2Row& r : result.table2)
            body << r.k << ',' << format_value(r.svd_mean) << ','
                 << format_value(r.svd_sd) << ',' << format_value(r.og_mean)
                 << ',' << format_value(r.og_sd) << ',' << format_value(r.gap_mean)
                 << ',' << format_value(r.gap_sd) << '\n';
        std::ofstream out(base + "/table2.csv", std::ios::binary);
        if (!out) throw IoError("cannot write " + base + "/table2.csv");
        out << body.str();
    }
    {
        std::ostringstream body;
        body << "split,method,correlation\n";
        for (const Fig1Row& r : result.fig1)
            body << r.split << ',' << r.method << ','
                 << format_value(r.correlation) << '\n';
        std::ofstream out(base + "/fig1.csv", std::ios::binary);
        if (!out) throw IoError("cannot write " + base + "/fig1.csv");
        out << body.str();
    }
    {
        nlohmann::json j;
        j["schema_version"] = 1;
        j["command"] = "benchmark";
        j["scenario"] = result.spec.scenario;
        j["n"] = result.spec.n;
        j["p"] = result.spec.p;
        j["k"] = result.spec.k;
        j["seed"] = result.spec.seed;
        j["split_ratio"] = result.spec.split_ratio;
        j["n_splits"] = result.spec.n_splits;
        j["t"] = result.t;
        nlohmann::json summary = nlohmann::json::object();
        for (const Table1Row& r : result.table1) {
            summary[r.method][r.metric + "_mean"] = r.mean;
            summary[r.method][r.metric + "_sd"] = r.sd;
        }
        j["table1"] = summary;
        std::ofstream out(base + "/benchmark.json", std::ios::binary);
        if (!out) throw IoError("cannot write " + base + "/benchmark.json");
        out << j.dump(2) << '\n';
    }
}

} // namespace orthog
