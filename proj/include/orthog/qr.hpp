#ifndef ORTHOG_QR_HPP
#define ORTHOG_QR_HPP

#include <vector>

#include "orthog/matrix.hpp"

namespace orthog {

/// Column-pivoted Householder QR of a design matrix. Rank-revealing; used for
/// least-squares coefficients and for projecting onto the orthogonal
/// complement of the design's column span. The hat matrix is never formed.
class PivotedQr {
public:
    explicit PivotedQr(const Matrix& a, double rank_tol = 1e-10);

    int rows() const { return qr_.rows(); }
    int cols() const { return qr_.cols(); }
    int rank() const { return rank_; }
    bool full_column_rank() const { return rank_ == qr_.cols(); }

    /// Least-squares coefficients argmin ‖A·W − B‖_F, basic solution on the
    /// leading `rank` pivot columns (zeros elsewhere).
    Matrix solve(const Matrix& b) const;
    Vector solve(const Vector& b) const;

    /// (I − P_A)·B via the orthogonal factor: transform by Qᵀ, zero the first
    /// `rank` rows, transform back.
    Matrix residualize(const Matrix& b) const;
    Vector residualize(const Vector& b) const;

private:
    void apply_qt(Matrix& b) const;
    void apply_q(Matrix& b) const;

    Matrix qr_;                 // packed reflectors below the diagonal, R above
    std::vector<double> tau_;
    std::vector<int> perm_;
    int rank_ = 0;
};

} // namespace orthog

#endif
