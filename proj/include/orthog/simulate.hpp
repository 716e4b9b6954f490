#ifndef ORTHOG_SIMULATE_HPP
#define ORTHOG_SIMULATE_HPP

#include <cstdint>
#include <vector>

#include "orthog/matrix.hpp"

namespace orthog {

/// Scenario description. Zeroed dimensions resolve to per-scenario defaults:
///  1, 2: n=1000, p=200, k=10   (2 differs only in how Y is generated)
///  3:    n=200, p=1000, k=10   (more columns than rows)
///  4:    n=1000, p=200, k=p    (no low-rank structure)
struct ScenarioSpec {
    int scenario = 1;
    int n = 0;
    int p = 0;
    int k = 0;
    std::uint64_t seed = 1;
    double split_ratio = 0.75;
    int n_splits = 50;
};

/// Fills defaults and validates; throws ParameterError on nonsense.
ScenarioSpec resolve(ScenarioSpec spec);

/// Latent quantities behind a generated dataset.
struct SimTruth {
    Matrix S;      // n×k latent scores
    Matrix U;      // k×p latent basis
    Vector lambda; // k-vector group shift, one draw shared by all rows
    Vector beta;   // k-vector outcome coefficients
};

struct GeneratedData {
    Matrix X;  // n×p observations
    Vector Y;  // continuous outcome
    Vector Z;  // binary group labels, entries in {0,1}
    SimTruth truth;
};

/// Draws a dataset. Row i has mean (s_i − λ·z_i)·U plus unit Gaussian noise;
/// Y is (s_i − λ·z_i)·β + N(0,1) except scenario 2, which uses s_i·β + N(0,1)
/// so the outcome never depends on the group.
///
/// Draw order (fixed; identical seeds give identical bytes): S row-major,
/// U row-major, Z, λ, X noise row-major, β, Y noise.
GeneratedData generate(const ScenarioSpec& spec);

/// The noise-free mean matrix (s_i − λ·z_i)·U; rank ≤ k+1.
Matrix noiseless_mean(const GeneratedData& data);

struct SplitData {
    Matrix x_train, x_test;
    Vector y_train, y_test;
    Vector z_train, z_test;
    std::vector<int> train_idx, test_idx; // ascending
};

/// Deterministic train/test partition keyed by (spec.seed, split_index):
/// Fisher-Yates shuffle, first floor(n·split_ratio) rows train, rest test,
/// both index sets sorted ascending.
SplitData split(const GeneratedData& data, const ScenarioSpec& spec,
                int split_index);

} // namespace orthog

#endif
