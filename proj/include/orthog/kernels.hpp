#ifndef ORTHOG_KERNELS_HPP
#define ORTHOG_KERNELS_HPP

#include "orthog/matrix.hpp"

// Dense kernels used by every algorithm in the library. Loops parallelize
// with OpenMP over independent output elements; per-element summation order
// is fixed, so results do not depend on thread count or schedule. Serial
// counterparts live in orthog::reference (reference.hpp) and are compared
// against these in the test suite and the kernel benchmark.

namespace orthog {

/// C = A * B
Matrix matmul(const Matrix& a, const Matrix& b);

/// C = Aᵀ * B
Matrix matmul_at_b(const Matrix& a, const Matrix& b);

/// C = A * Bᵀ
Matrix matmul_a_bt(const Matrix& a, const Matrix& b);

/// y = A * x
Vector matvec(const Matrix& a, const Vector& x);

/// y = Aᵀ * x
Vector matvec_t(const Matrix& a, const Vector& x);

Matrix transpose(const Matrix& a);

Matrix subtract(const Matrix& a, const Matrix& b);

/// A * diag(d); d.size() == a.cols()
Matrix scale_cols(const Matrix& a, const Vector& d);

double dot(const Vector& x, const Vector& y);
double norm2(const Vector& x);
double frobenius_sq(const Matrix& a);
double frobenius(const Matrix& a);

/// Squared Frobenius distance ‖A − B‖²_F without forming the difference.
double frobenius_sq_diff(const Matrix& a, const Matrix& b);

/// Elementwise sign(x)·(|x|−θ)·1{|x|≥θ}. θ must be ≥ 0.
Vector soft_threshold(const Vector& b, double theta);

} // namespace orthog

#endif
