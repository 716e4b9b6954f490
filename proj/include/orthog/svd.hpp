#ifndef ORTHOG_SVD_HPP
#define ORTHOG_SVD_HPP

#include "orthog/matrix.hpp"

namespace orthog {

/// Rank-k factors of X ≈ V·diag(D)·Uᵀ.
///  V : n×k, orthonormal columns (left singular vectors, the sample scores)
///  D : k singular values, nonincreasing, nonnegative
///  U : p×k, orthonormal columns (right singular vectors, the loadings)
struct SvdFactors {
    Matrix V;
    Vector D;
    Matrix U;

    int rank() const { return static_cast<int>(D.size()); }
};

/// Truncated SVD via Golub-Kahan bidiagonalization and implicit-shift QR
/// iteration. Deterministic: identical input bytes give identical factors.
/// Sign convention: the largest-magnitude entry of each column of U is
/// positive (lowest index wins ties).
///
/// Throws RankError for k outside [1, min(n, p)], InputError for non-finite
/// or degenerate input.
SvdFactors truncated_svd(const Matrix& x, int k);

/// V·diag(D)·Uᵀ, the rank-k reconstruction.
Matrix reconstruct(const SvdFactors& f);

} // namespace orthog

#endif
