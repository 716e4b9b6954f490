#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "orthog/errors.hpp"
#include "orthog/kernels.hpp"
#include "orthog/predict.hpp"
#include "oracles.hpp"

using namespace orthog;

namespace {

// Penalized log-likelihood maximizer by iterated grid refinement over
// (intercept, w1, w2). Independent of the IRLS code path.
std::vector<double> grid_refine_logistic(const Matrix& x, const Vector& y,
                                         double ridge) {
    std::vector<double> center{0.0, 0.0, 0.0};
    double radius = 5.0;
    for (int round = 0; round < 8; ++round) {
        double best = -1e300;
        std::vector<double> best_pt = center;
        const int steps = 10;
        for (int a = -steps; a <= steps; ++a)
            for (int b = -steps; b <= steps; ++b)
                for (int c = -steps; c <= steps; ++c) {
                    std::vector<double> pt{center[0] + radius * a / steps,
                                           center[1] + radius * b / steps,
                                           center[2] + radius * c / steps};
                    Vector w{pt[1], pt[2]};
                    const double ll =
                        oracle::logistic_penalized_loglik(x, y, pt[0], w, ridge);
                    if (ll > best) {
                        best = ll;
                        best_pt = pt;
                    }
                }
        center = best_pt;
        radius *= 0.15;
    }
    return center;
}

} // namespace

TEST_CASE("exact linear signal is recovered to machine precision") {
    std::mt19937_64 rng(113);
    Matrix x = oracle::random_matrix(rng, 20, 3, -2.0, 2.0);
    Vector y(20);
    for (int i = 0; i < 20; ++i) y[i] = 3.0 * x(i, 0) - 2.0;
    LinearModel m = fit_linear(x, y);
    CHECK(std::fabs(m.weights[0] - 3.0) < 1e-8);
    CHECK(std::fabs(m.weights[1]) < 1e-8);
    CHECK(std::fabs(m.weights[2]) < 1e-8);
    CHECK(std::fabs(m.intercept + 2.0) < 1e-8);
    Vector pred = predict(m, x);
    for (int i = 0; i < 20; ++i) CHECK(std::fabs(pred[i] - y[i]) < 1e-8);
}

TEST_CASE("constant response fits zero weights and the mean intercept") {
    std::mt19937_64 rng(127);
    Matrix x = oracle::random_matrix(rng, 10, 4);
    Vector y(10, 5.5);
    LinearModel m = fit_linear(x, y);
    for (double w : m.weights) CHECK(std::fabs(w) < 1e-10);
    CHECK(m.intercept == doctest::Approx(5.5));
}

TEST_CASE("full-rank fit matches the normal equations") {
    std::mt19937_64 rng(131);
    Matrix x = oracle::random_matrix(rng, 20, 3, -2.0, 2.0);
    Vector y = oracle::random_matrix(rng, 20, 1, -3.0, 3.0).col(0);
    LinearModel m = fit_linear(x, y);
    CHECK(m.fitted_on_rank == 3);

    // Augment with an intercept column and solve (A'A) c = A'y directly.
    Matrix a(20, 4);
    for (int i = 0; i < 20; ++i) {
        a(i, 0) = 1.0;
        for (int j = 0; j < 3; ++j) a(i, j + 1) = x(i, j);
    }
    Vector coef = oracle::normal_equation_solve(a, y);
    CHECK(std::fabs(m.intercept - coef[0]) < 1e-8);
    for (int j = 0; j < 3; ++j) CHECK(std::fabs(m.weights[j] - coef[j + 1]) < 1e-8);
}

TEST_CASE("residuals are orthogonal to the fitted design") {
    std::mt19937_64 rng(137);
    Matrix x = oracle::random_matrix(rng, 25, 5, -2.0, 2.0);
    Vector y = oracle::random_matrix(rng, 25, 1, -3.0, 3.0).col(0);
    LinearModel m = fit_linear(x, y);
    Vector pred = predict(m, x);
    Vector r(25);
    double rsum = 0.0;
    for (int i = 0; i < 25; ++i) {
        r[i] = y[i] - pred[i];
        rsum += r[i];
    }
    const double scale = 1e-8 * std::max(1.0, norm2(y));
    CHECK(std::fabs(rsum) < scale);
    for (int j = 0; j < 5; ++j) CHECK(std::fabs(dot(r, x.col(j))) < scale * 10);
}

TEST_CASE("duplicated columns get the symmetric minimum-norm solution") {
    std::mt19937_64 rng(139);
    Matrix x(12, 2);
    for (int i = 0; i < 12; ++i) {
        x(i, 0) = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
        x(i, 1) = x(i, 0);
    }
    Vector y(12);
    for (int i = 0; i < 12; ++i) y[i] = 4.0 * x(i, 0) + 1.0;
    LinearModel m = fit_linear(x, y);
    CHECK(m.fitted_on_rank == 1);
    CHECK(std::fabs(m.weights[0] - m.weights[1]) < 1e-10);
    CHECK(std::fabs(m.weights[0] - 2.0) < 1e-8);
    Vector pred = predict(m, x);
    for (int i = 0; i < 12; ++i) CHECK(std::fabs(pred[i] - y[i]) < 1e-8);
}

TEST_CASE("linear fit validates its inputs") {
    std::mt19937_64 rng(149);
    Matrix x = oracle::random_matrix(rng, 8, 2);
    Vector y(7, 0.0);
    CHECK_THROWS_AS(fit_linear(x, y), ShapeError);
    Vector bad(8, 0.0);
    bad[3] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(fit_linear(x, bad), InputError);
    LinearModel m = fit_linear(x, Vector(8, 1.0));
    Matrix wrong = oracle::random_matrix(rng, 5, 3);
    CHECK_THROWS_AS(predict(m, wrong), ShapeError);
}

TEST_CASE("separable classes are classified perfectly in sample") {
    std::mt19937_64 rng(151);
    const int n = 30;
    Matrix x(n, 1);
    Vector y(n);
    for (int i = 0; i < n; ++i) {
        const double v = (i < n / 2 ? -1.0 : 1.0) *
                         std::uniform_real_distribution<double>(0.5, 2.0)(rng);
        x(i, 0) = v;
        y[i] = v > 0.0 ? 1.0 : 0.0;
    }
    LogisticModel m = fit_logistic(x, y, 1e-4 * n);
    CHECK(m.converged);
    LogisticPrediction pred = predict(m, x);
    for (int i = 0; i < n; ++i) CHECK(pred.label[i] == y[i]);
    CHECK(m.weights[0] > 0.0);
}

TEST_CASE("logistic probabilities are monotone in a positive-weight feature") {
    LogisticModel m;
    m.weights = {2.0};
    m.intercept = -0.5;
    m.threshold = 0.5;
    Matrix x(5, 1);
    for (int i = 0; i < 5; ++i) x(i, 0) = i - 2.0;
    LogisticPrediction pred = predict(m, x);
    for (int i = 1; i < 5; ++i) CHECK(pred.prob[i] > pred.prob[i - 1]);
    for (double p : pred.prob) {
        CHECK(p > 0.0);
        CHECK(p < 1.0);
    }
}

TEST_CASE("coefficients maximize the penalized likelihood") {
    std::mt19937_64 rng(157);
    const int n = 40;
    Matrix x = oracle::random_matrix(rng, n, 2, -2.0, 2.0);
    Vector y(n);
    for (int i = 0; i < n; ++i) {
        const double eta = 1.2 * x(i, 0) - 0.8 * x(i, 1) + 0.3;
        const double pr = 1.0 / (1.0 + std::exp(-eta));
        y[i] = std::uniform_real_distribution<double>(0.0, 1.0)(rng) < pr ? 1.0 : 0.0;
    }
    const double ridge = 0.5;
    LogisticModel m = fit_logistic(x, y, ridge);
    REQUIRE(m.converged);

    std::vector<double> best = grid_refine_logistic(x, y, ridge);
    CHECK(std::fabs(m.intercept - best[0]) < 1e-3);
    CHECK(std::fabs(m.weights[0] - best[1]) < 1e-3);
    CHECK(std::fabs(m.weights[1] - best[2]) < 1e-3);

    // And no small perturbation improves the penalized likelihood.
    const double at = oracle::logistic_penalized_loglik(x, y, m.intercept,
                                                        m.weights, ridge);
    for (int d = 0; d < 3; ++d)
        for (double eps : {-1e-4, 1e-4}) {
            double b0 = m.intercept;
            Vector w = m.weights;
            if (d == 0)
                b0 += eps;
            else
                w[d - 1] += eps;
            CHECK(oracle::logistic_penalized_loglik(x, y, b0, w, ridge) <= at + 1e-12);
        }
}

TEST_CASE("label-score independence yields a null AUC") {
    // Pure-noise labels: the fitted in-sample AUC stays near one half.
    for (unsigned long seed = 501; seed <= 520; ++seed) {
        std::mt19937_64 rng(seed);
        const int n = 500;
        Matrix x = oracle::random_matrix(rng, n, 3, -1.0, 1.0);
        Vector y(n);
        bool saw0 = false, saw1 = false;
        for (int i = 0; i < n; ++i) {
            y[i] = std::uniform_real_distribution<double>(0.0, 1.0)(rng) < 0.5;
            (y[i] == 0.0 ? saw0 : saw1) = true;
        }
        if (!saw0) y[0] = 0.0;
        if (!saw1) y[1] = 1.0;
        LogisticModel m = fit_logistic(x, y);
        LogisticPrediction pred = predict(m, x);
        const double auc = oracle::all_pairs_auc(pred.prob, y);
        CHECK(std::fabs(auc - 0.5) < 0.07);
    }
}

TEST_CASE("decision threshold follows the training prevalence") {
    std::mt19937_64 rng(163);
    const int n = 40;
    Matrix x = oracle::random_matrix(rng, n, 2);
    Vector y(n, 0.0);
    for (int i = 0; i < 10; ++i) y[i] = 1.0; // 25% positive
    LogisticModel m = fit_logistic(x, y);
    CHECK(m.threshold == doctest::Approx(0.25));
}

TEST_CASE("logistic fit validates labels") {
    std::mt19937_64 rng(167);
    Matrix x = oracle::random_matrix(rng, 10, 2);
    Vector y(10, 1.0);
    CHECK_THROWS_AS(fit_logistic(x, y), DegenerateLabelError);
    y[0] = 0.5;
    CHECK_THROWS_AS(fit_logistic(x, y), InputError);
}
