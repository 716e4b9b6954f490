#ifndef ORTHOG_OG_HPP
#define ORTHOG_OG_HPP

#include "orthog/group.hpp"
#include "orthog/matrix.hpp"
#include "orthog/svd.hpp"

namespace orthog {

/// Closed-form group-orthogonal adjustment of a rank-k reconstruction.
/// The adjusted matrix is (I − P_Z)·V_k·diag(D_k)·U_kᵀ, so every column has
/// zero covariance with every group column, and by construction any linear
/// predictor trained on it inherits that property.
struct OgModel {
    SvdFactors factors;  // rank-k factors of the unadjusted matrix
    Matrix lambda;       // (q+1)×k least-squares coefficients of V·diag(D)
                         // on the augmented design
    Matrix x_tilde;      // adjusted reconstruction, rank ≤ k
    double err_og = 0.0;  // ‖X − x_tilde‖²_F
    double err_svd = 0.0; // ‖X − V·diag(D)·Uᵀ‖²_F
    double gap = 0.0;     // ‖P_Z·V·diag(D)‖²_F = err_og − err_svd
    GroupDesign design;   // kept for error recomputation and transforms

    int rank() const { return factors.rank(); }
};

struct ErrorDecomposition {
    double err_og;
    double err_svd;
    double gap;
};

enum class TransformMode { refit, basis_reuse };

/// Fits the adjustment at rank k. k ≤ 0 picks min(n, p, 30).
OgModel fit_og(const Matrix& x, const GroupDesign& zd, int k = 0);

/// Recomputes the three error terms of the fitted model directly from x.
ErrorDecomposition error_decomposition(const Matrix& x, const OgModel& model);

/// Applies a fitted adjustment to new data.
///  refit:       rerun the full fit on (x_new, z_new) at the model's rank
///  basis_reuse: project x_new on the trained loadings, residualize the
///               scores on z_new, and map back through the loadings
Matrix transform(const OgModel& model, const Matrix& x_new,
                 const GroupDesign& z_new,
                 TransformMode mode = TransformMode::refit);

} // namespace orthog

#endif
