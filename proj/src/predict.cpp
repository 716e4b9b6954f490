#include "orthog/predict.hpp"

#include <algorithm>
#include <cmath>

#include "orthog/errors.hpp"
#include "orthog/kernels.hpp"
#include "orthog/svd.hpp"

namespace orthog {

namespace {

constexpr double kPinvCutoff = 1e-10; // relative to the top singular value

void validate_xy(const Matrix& x, const Vector& y, const char* what) {
    validate_data_matrix(x, what);
    if (static_cast<int>(y.size()) != x.rows())
        throw ShapeError(std::string(what) + ": outcome length differs");
    for (double v : y)
        if (!std::isfinite(v))
            throw InputError(std::string(what) + ": non-finite outcome");
}

Vector col_means(const Matrix& x) {
    Vector m(x.cols(), 0.0);
    for (int i = 0; i < x.rows(); ++i) {
        const double* row = x.row_ptr(i);
        for (int j = 0; j < x.cols(); ++j) m[j] += row[j];
    }
    for (double& v : m) v /= x.rows();
    return m;
}

double sigmoid(double v) { return 1.0 / (1.0 + std::exp(-v)); }

// In-place Cholesky solve of the SPD system h·x = g.
Vector cholesky_solve(Matrix h, Vector g) {
    const int m = h.rows();
    for (int j = 0; j < m; ++j) {
        double diag = h(j, j);
        for (int l = 0; l < j; ++l) diag -= h(j, l) * h(j, l);
        if (diag <= 0.0) throw Error("logistic solve: system not positive definite");
        diag = std::sqrt(diag);
        h(j, j) = diag;
        for (int i = j + 1; i < m; ++i) {
            double v = h(i, j);
            for (int l = 0; l < j; ++l) v -= h(i, l) * h(j, l);
            h(i, j) = v / diag;
        }
    }
    for (int i = 0; i < m; ++i) {
        double v = g[i];
        for (int l = 0; l < i; ++l) v -= h(i, l) * g[l];
        g[i] = v / h(i, i);
    }
    for (int i = m - 1; i >= 0; --i) {
        double v = g[i];
        for (int l = i + 1; l < m; ++l) v -= h(l, i) * g[l];
        g[i] = v / h(i, i);
    }
    return g;
}

} // namespace

LinearModel fit_linear(const Matrix& x, const Vector& y) {
    validate_xy(x, y, "fit_linear");
    const int n = x.rows(), p = x.cols();

    Vector xm = col_means(x);
    double ym = 0.0;
    for (double v : y) ym += v;
    ym /= n;

    Matrix xc(n, p);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < p; ++j) xc(i, j) = x(i, j) - xm[j];
    Vector yc(n);
    for (int i = 0; i < n; ++i) yc[i] = y[i] - ym;

    // Minimum-norm solution through the pseudo-inverse of the centered
    // matrix: w = Σ_j (v_jᵀy / σ_j)·u_j over the retained spectrum.
    SvdFactors f = truncated_svd(xc, std::min(n, p));
    LinearModel model;
    model.weights.assign(p, 0.0);
    const double cutoff = kPinvCutoff * f.D[0];
    Vector vty = matvec_t(f.V, yc);
    for (int j = 0; j < f.rank(); ++j) {
        if (f.D[j] <= cutoff) break;
        ++model.fitted_on_rank;
        const double c = vty[j] / f.D[j];
        for (int i = 0; i < p; ++i) model.weights[i] += c * f.U(i, j);
    }
    model.intercept = ym - dot(xm, model.weights);
    return model;
}

Vector predict(const LinearModel& model, const Matrix& x_new) {
    if (x_new.cols() != static_cast<int>(model.weights.size()))
        throw ShapeError("predict: column count differs from the fitted model");
    Vector out = matvec(x_new, model.weights);
    for (double& v : out) v += model.intercept;
    return out;
}

LogisticModel fit_logistic(const Matrix& x, const Vector& y, double ridge) {
    validate_xy(x, y, "fit_logistic");
    const int n = x.rows(), p = x.cols();
    int pos = 0;
    for (double v : y) {
        if (v != 0.0 && v != 1.0)
            throw InputError("fit_logistic: labels must be 0 or 1");
        if (v == 1.0) ++pos;
    }
    if (pos == 0 || pos == n)
        throw DegenerateLabelError("fit_logistic: both classes must be present");
    if (ridge < 0.0) ridge = 1e-6 * n;

    LogisticModel model;
    model.threshold = static_cast<double>(pos) / n;
    model.weights.assign(p, 0.0);

    // IRLS on [intercept | weights]; the ridge penalty skips index 0.
    Vector theta(p + 1, 0.0);
    for (int it = 0; it < 100; ++it) {
        Vector eta = matvec(x, Vector(theta.begin() + 1, theta.end()));
        Vector mu(n), w(n);
        for (int i = 0; i < n; ++i) {
            mu[i] = sigmoid(eta[i] + theta[0]);
            w[i] = mu[i] * (1.0 - mu[i]);
        }
        Vector grad(p + 1, 0.0);
        for (int i = 0; i < n; ++i) {
            const double r = y[i] - mu[i];
            grad[0] += r;
            const double* row = x.row_ptr(i);
            for (int j = 0; j < p; ++j) grad[j + 1] += r * row[j];
        }
        for (int j = 1; j <= p; ++j) grad[j] -= ridge * theta[j];

        // Lower triangle of Aᵀdiag(w)A for A = [1 | x], mirrored afterwards.
        Matrix hess(p + 1, p + 1);
        for (int i = 0; i < n; ++i) {
            const double* row = x.row_ptr(i);
            const double wi = w[i];
            hess(0, 0) += wi;
            for (int j = 0; j < p; ++j) {
                hess(j + 1, 0) += wi * row[j];
                for (int l = 0; l <= j; ++l)
                    hess(j + 1, l + 1) += wi * row[j] * row[l];
            }
        }
        for (int j = 0; j <= p; ++j)
            for (int l = j + 1; l <= p; ++l) hess(j, l) = hess(l, j);
        for (int j = 1; j <= p; ++j) hess(j, j) += ridge;
        hess(0, 0) = std::max(hess(0, 0), 1e-12);

        Vector step = cholesky_solve(std::move(hess), std::move(grad));
        double change = 0.0;
        for (int j = 0; j <= p; ++j) {
            theta[j] += step[j];
            change = std::max(change, std::fabs(step[j]));
        }
        if (change < 1e-8) {
            model.converged = true;
            break;
        }
    }
    model.intercept = theta[0];
    for (int j = 0; j < p; ++j) model.weights[j] = theta[j + 1];
    for (double v : model.weights)
        if (!std::isfinite(v)) throw Error("fit_logistic: diverged");
    if (!std::isfinite(model.intercept)) throw Error("fit_logistic: diverged");
    return model;
}

LogisticPrediction predict(const LogisticModel& model, const Matrix& x_new) {
    if (x_new.cols() != static_cast<int>(model.weights.size()))
        throw ShapeError("predict: column count differs from the fitted model");
    LogisticPrediction out;
    out.prob = matvec(x_new, model.weights);
    out.label.resize(out.prob.size());
    for (std::size_t i = 0; i < out.prob.size(); ++i) {
        out.prob[i] = sigmoid(out.prob[i] + model.intercept);
        out.label[i] = out.prob[i] >= model.threshold ? 1.0 : 0.0;
    }
    return out;
}

} // namespace orthog
