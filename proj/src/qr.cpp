#include "orthog/qr.hpp"

#include <cmath>
#include <utility>

#include "orthog/errors.hpp"

namespace orthog {

namespace {

// Householder reflector for qr(i0..m-1, col), stored in place: the new
// diagonal value is returned, the vector tail (implicit leading 1) stays in
// the column. tau == 0 marks a zero column, where no reflection is needed.
double make_reflector(Matrix& qr, int i0, int col, double* tau) {
    const int m = qr.rows();
    double norm_sq = 0.0;
    for (int i = i0; i < m; ++i) norm_sq += qr(i, col) * qr(i, col);
    const double norm = std::sqrt(norm_sq);
    if (norm == 0.0) {
        *tau = 0.0;
        return 0.0;
    }
    const double x0 = qr(i0, col);
    const double alpha = x0 > 0.0 ? -norm : norm;
    *tau = (alpha - x0) / alpha;
    const double scale = 1.0 / (x0 - alpha);
    for (int i = i0 + 1; i < m; ++i) qr(i, col) *= scale;
    qr(i0, col) = alpha;
    return alpha;
}

// Applies (I − tau·v·vᵀ) to columns [c0, cols) of b, with v packed in
// qr(i0..m-1, col) and v[0] == 1 implicit.
void apply_reflector(const Matrix& qr, int i0, int col, double tau, Matrix& b,
                     int c0) {
    if (tau == 0.0) return;
    const int m = qr.rows();
    for (int c = c0; c < b.cols(); ++c) {
        double s = b(i0, c);
        for (int i = i0 + 1; i < m; ++i) s += qr(i, col) * b(i, c);
        s *= tau;
        b(i0, c) -= s;
        for (int i = i0 + 1; i < m; ++i) b(i, c) -= qr(i, col) * s;
    }
}

} // namespace

PivotedQr::PivotedQr(const Matrix& a, double rank_tol) : qr_(a) {
    if (a.empty()) throw ShapeError("qr: matrix must be non-empty");
    if (!a.all_finite()) throw InputError("qr: matrix has non-finite entries");
    const int m = qr_.rows();
    const int q = qr_.cols();
    const int steps = std::min(m, q);
    tau_.assign(q, 0.0);
    perm_.resize(q);
    for (int j = 0; j < q; ++j) perm_[j] = j;

    for (int j = 0; j < steps; ++j) {
        // Exact re-computation of the remaining column norms; designs are
        // narrow, so the O(m·q) per step is cheaper than downdating safely.
        int pivot = j;
        double best = -1.0;
        for (int c = j; c < q; ++c) {
            double s = 0.0;
            for (int i = j; i < m; ++i) s += qr_(i, c) * qr_(i, c);
            if (s > best) {
                best = s;
                pivot = c;
            }
        }
        if (pivot != j) {
            for (int i = 0; i < m; ++i) std::swap(qr_(i, j), qr_(i, pivot));
            std::swap(perm_[j], perm_[pivot]);
        }
        make_reflector(qr_, j, j, &tau_[j]);
        apply_reflector(qr_, j, j, tau_[j], qr_, j + 1);
    }

    const double r00 = std::fabs(qr_(0, 0));
    rank_ = 0;
    for (int j = 0; j < steps; ++j) {
        if (std::fabs(qr_(j, j)) > rank_tol * r00) {
            ++rank_;
        } else {
            break; // pivoting keeps |R_jj| nonincreasing
        }
    }
}

void PivotedQr::apply_qt(Matrix& b) const {
    const int steps = static_cast<int>(tau_.size());
    const int lim = std::min(steps, qr_.rows());
    for (int j = 0; j < lim; ++j) apply_reflector(qr_, j, j, tau_[j], b, 0);
}

void PivotedQr::apply_q(Matrix& b) const {
    const int lim = std::min(static_cast<int>(tau_.size()), qr_.rows());
    for (int j = lim - 1; j >= 0; --j) apply_reflector(qr_, j, j, tau_[j], b, 0);
}

Matrix PivotedQr::solve(const Matrix& b) const {
    if (b.rows() != qr_.rows())
        throw ShapeError("qr solve: row count mismatch");
    Matrix y(b);
    apply_qt(y);
    // Back-substitution on the leading rank × rank block of R.
    Matrix coef(qr_.cols(), b.cols());
    for (int c = 0; c < b.cols(); ++c) {
        for (int i = rank_ - 1; i >= 0; --i) {
            double s = y(i, c);
            for (int l = i + 1; l < rank_; ++l) s -= qr_(i, l) * coef(perm_[l], c);
            coef(perm_[i], c) = s / qr_(i, i);
        }
    }
    return coef;
}

Vector PivotedQr::solve(const Vector& b) const {
    Matrix coef = solve(Matrix::column(b));
    return coef.col(0);
}

Matrix PivotedQr::residualize(const Matrix& b) const {
    if (b.rows() != qr_.rows())
        throw ShapeError("qr residualize: row count mismatch");
    Matrix y(b);
    apply_qt(y);
    for (int i = 0; i < rank_; ++i)
        for (int c = 0; c < y.cols(); ++c) y(i, c) = 0.0;
    apply_q(y);
    return y;
}

Vector PivotedQr::residualize(const Vector& b) const {
    Matrix r = residualize(Matrix::column(b));
    return r.col(0);
}

} // namespace orthog
