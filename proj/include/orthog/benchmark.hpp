#ifndef ORTHOG_BENCHMARK_HPP
#define ORTHOG_BENCHMARK_HPP

#include <string>
#include <vector>

#include "orthog/simulate.hpp"

namespace orthog {

/// Split-loop experiment: three competing pipelines per train/test split.
///   svd  regression on the plain truncated-svd scores of the train block,
///        evaluated on the test block's own refit scores
///   og   same protocol on the group-orthogonal scores
///   sog  same protocol on the sparse group-orthogonal scores
/// Each test block is adjusted by refitting on it with its own group labels.
struct BenchmarkConfig {
    ScenarioSpec spec;
    double t = 0.0;          // sog l1 bound; 0 picks default_l1_bound(p)
    std::vector<int> k_grid; // reconstruction grid; empty picks a default
};

/// Default sparsity budget: half of the loosest useful bound, floored at 1.
double default_l1_bound(int p);

struct Table1Row {
    std::string method;
    std::string metric;
    double mean = 0.0;
    double sd = 0.0;
    int n_splits = 0;
};

struct Fig1Row {
    int split = 0;
    std::string method;
    double correlation = 0.0;
};

/// Frobenius reconstruction errors on the train block, mean and sd across
/// splits, per rank; gap is the Frobenius norm of the removed component.
struct Table2Row {
    int k = 0;
    double svd_mean = 0.0, svd_sd = 0.0;
    double og_mean = 0.0, og_sd = 0.0;
    double gap_mean = 0.0, gap_sd = 0.0;
};

struct BenchmarkResult {
    ScenarioSpec spec;
    double t = 0.0;
    std::vector<Table1Row> table1;
    std::vector<Fig1Row> fig1;
    std::vector<Table2Row> table2;
};

BenchmarkResult run_benchmark(const BenchmarkConfig& config);

/// Writes table1.csv, fig1.csv, table2.csv, and benchmark.json into dir.
void write_benchmark_outputs(const BenchmarkResult& result,
                             const std::string& dir);

} // namespace orthog

#endif
