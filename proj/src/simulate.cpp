#include "orthog/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "orthog/errors.hpp"
#include "orthog/rng.hpp"

namespace orthog {

ScenarioSpec resolve(ScenarioSpec spec) {
    if (spec.scenario < 1 || spec.scenario > 4)
        throw ParameterError("scenario must be 1, 2, 3, or 4");
    if (spec.n == 0) spec.n = spec.scenario == 3 ? 200 : 1000;
    if (spec.p == 0) spec.p = spec.scenario == 3 ? 1000 : 200;
    if (spec.k == 0) spec.k = spec.scenario == 4 ? spec.p : 10;
    if (spec.n < 2) throw ParameterError("n must be at least 2");
    if (spec.p < 1) throw ParameterError("p must be positive");
    if (spec.k < 1) throw ParameterError("k must be positive");
    if (!(spec.split_ratio > 0.0 && spec.split_ratio < 1.0))
        throw ParameterError("split_ratio must lie in (0, 1)");
    const int train = static_cast<int>(spec.n * spec.split_ratio);
    if (train < 1 || train >= spec.n)
        throw ParameterError("split_ratio leaves an empty train or test part");
    if (spec.n_splits < 1) throw ParameterError("n_splits must be positive");
    return spec;
}

GeneratedData generate(const ScenarioSpec& raw_spec) {
    const ScenarioSpec spec = resolve(raw_spec);
    const int n = spec.n, p = spec.p, k = spec.k;
    Xoshiro256pp rng(spec.seed);

    GeneratedData out;
    out.truth.S = Matrix(n, k);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) out.truth.S(i, j) = rng.normal();

    out.truth.U = Matrix(k, p);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < p; ++j) out.truth.U(i, j) = rng.normal();

    out.Z.resize(n);
    for (int i = 0; i < n; ++i) out.Z[i] = rng.bernoulli(0.5) ? 1.0 : 0.0;

    out.truth.lambda.resize(k);
    for (int j = 0; j < k; ++j) out.truth.lambda[j] = rng.normal();

    out.X = Matrix(n, p);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < p; ++j) {
            double mean = 0.0;
            for (int l = 0; l < k; ++l)
                mean += (out.truth.S(i, l) - out.truth.lambda[l] * out.Z[i]) *
                        out.truth.U(l, j);
            out.X(i, j) = mean + rng.normal();
        }
    }

    out.truth.beta.resize(k);
    for (int j = 0; j < k; ++j) out.truth.beta[j] = rng.uniform_range(-5.0, 5.0);

    out.Y.resize(n);
    for (int i = 0; i < n; ++i) {
        double mean = 0.0;
        for (int l = 0; l < k; ++l) {
            const double shift =
                spec.scenario == 2 ? 0.0 : out.truth.lambda[l] * out.Z[i];
            mean += (out.truth.S(i, l) - shift) * out.truth.beta[l];
        }
        out.Y[i] = mean + rng.normal();
    }
    return out;
}

Matrix noiseless_mean(const GeneratedData& data) {
    const int n = data.X.rows(), p = data.X.cols();
    const int k = data.truth.S.cols();
    Matrix mean(n, p);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < p; ++j) {
            double m = 0.0;
            for (int l = 0; l < k; ++l)
                m += (data.truth.S(i, l) - data.truth.lambda[l] * data.Z[i]) *
                     data.truth.U(l, j);
            mean(i, j) = m;
        }
    return mean;
}

SplitData split(const GeneratedData& data, const ScenarioSpec& raw_spec,
                int split_index) {
    const ScenarioSpec spec = resolve(raw_spec);
    const int n = data.X.rows();
    if (n != spec.n) throw ShapeError("split: data does not match the spec");
    if (split_index < 0 || split_index >= spec.n_splits)
        throw ParameterError("split index " + std::to_string(split_index) +
                             " out of range [0, " +
                             std::to_string(spec.n_splits) + ")");

    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    Xoshiro256pp rng = Xoshiro256pp::derived(spec.seed, split_index);
    for (int i = n - 1; i > 0; --i)
        std::swap(idx[i], idx[rng.index(i + 1)]);

    const int n_train = static_cast<int>(n * spec.split_ratio);
    SplitData out;
    out.train_idx.assign(idx.begin(), idx.begin() + n_train);
    out.test_idx.assign(idx.begin() + n_train, idx.end());
    std::sort(out.train_idx.begin(), out.train_idx.end());
    std::sort(out.test_idx.begin(), out.test_idx.end());

    auto pick = [](const Vector& v, const std::vector<int>& rows) {
        Vector r(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) r[i] = v[rows[i]];
        return r;
    };
    out.x_train = data.X.select_rows(out.train_idx);
    out.x_test = data.X.select_rows(out.test_idx);
    out.y_train = pick(data.Y, out.train_idx);
    out.y_test = pick(data.Y, out.test_idx);
    out.z_train = pick(data.Z, out.train_idx);
    out.z_test = pick(data.Z, out.test_idx);
    return out;
}

} // namespace orthog
