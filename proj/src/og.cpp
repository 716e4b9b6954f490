#include "orthog/og.hpp"

#include <algorithm>

#include "orthog/errors.hpp"
#include "orthog/kernels.hpp"

namespace orthog {

OgModel fit_og(const Matrix& x, const GroupDesign& zd, int k) {
    validate_data_matrix(x, "fit_og");
    if (zd.n() != x.rows()) throw ShapeError("fit_og: design row count differs");
    const int kmax = std::min(x.rows(), x.cols());
    if (k <= 0) k = std::min(kmax, 30);
    if (k > kmax) throw RankError("fit_og: rank k must lie in [1, min(n, p)]");

    OgModel m;
    m.design = zd;
    m.factors = truncated_svd(x, k);
    Matrix vd = scale_cols(m.factors.V, m.factors.D);
    m.lambda = zd.solve(vd);
    Matrix resid = zd.residualize(vd);
    m.x_tilde = matmul_a_bt(resid, m.factors.U);
    m.err_og = frobenius_sq_diff(x, m.x_tilde);
    m.err_svd = frobenius_sq_diff(x, matmul_a_bt(vd, m.factors.U));
    m.gap = frobenius_sq_diff(vd, resid);
    return m;
}

ErrorDecomposition error_decomposition(const Matrix& x, const OgModel& model) {
    if (!x.same_shape(model.x_tilde))
        throw InputError("error_decomposition: x does not match the fitted model");
    Matrix vd = scale_cols(model.factors.V, model.factors.D);
    Matrix resid = model.design.residualize(vd);
    ErrorDecomposition out;
    out.err_og = frobenius_sq_diff(x, model.x_tilde);
    out.err_svd = frobenius_sq_diff(x, matmul_a_bt(vd, model.factors.U));
    out.gap = frobenius_sq_diff(vd, resid);
    return out;
}

Matrix transform(const OgModel& model, const Matrix& x_new,
                 const GroupDesign& z_new, TransformMode mode) {
    validate_data_matrix(x_new, "transform");
    if (x_new.cols() != model.factors.U.rows())
        throw ShapeError("transform: column count differs from the fitted model");
    if (z_new.n() != x_new.rows())
        throw ShapeError("transform: design row count differs");
    if (mode == TransformMode::refit)
        return fit_og(x_new, z_new, model.rank()).x_tilde;
    Matrix scores = matmul(x_new, model.factors.U);
    Matrix resid = z_new.residualize(scores);
    return matmul_a_bt(resid, model.factors.U);
}

} // namespace orthog
