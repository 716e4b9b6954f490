#ifndef ORTHOG_PREDICT_HPP
#define ORTHOG_PREDICT_HPP

#include "orthog/matrix.hpp"

namespace orthog {

/// Least-squares fit with intercept. Adjusted matrices are exactly
/// rank-deficient (rank ≤ k < p), so the solver is rank-revealing and
/// returns the minimum-norm coefficient vector.
struct LinearModel {
    Vector weights;
    double intercept = 0.0;
    int fitted_on_rank = 0;
};

LinearModel fit_linear(const Matrix& x, const Vector& y);

Vector predict(const LinearModel& model, const Matrix& x_new);

/// Ridge-stabilized logistic regression fitted by IRLS. The intercept is not
/// penalized. The stored decision threshold is the training prevalence.
struct LogisticModel {
    Vector weights;
    double intercept = 0.0;
    bool converged = false;
    double threshold = 0.5;
};

/// ridge < 0 picks the default 1e-6·n.
LogisticModel fit_logistic(const Matrix& x, const Vector& y, double ridge = -1.0);

struct LogisticPrediction {
    Vector prob;   // sigmoid scores
    Vector label;  // 1 where prob ≥ threshold
};

LogisticPrediction predict(const LogisticModel& model, const Matrix& x_new);

} // namespace orthog

#endif
