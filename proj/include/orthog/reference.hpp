#ifndef ORTHOG_REFERENCE_HPP
#define ORTHOG_REFERENCE_HPP

#include "orthog/matrix.hpp"

// Plain serial implementations of the kernels in kernels.hpp. These are the
// ground truth the parallel kernels are tested against, and the baseline the
// kernel benchmark compares with. Kept deliberately naive.

namespace orthog::reference {

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix matmul_at_b(const Matrix& a, const Matrix& b);
Matrix matmul_a_bt(const Matrix& a, const Matrix& b);
Vector matvec(const Matrix& a, const Vector& x);
Vector matvec_t(const Matrix& a, const Vector& x);
double dot(const Vector& x, const Vector& y);
double frobenius_sq(const Matrix& a);

} // namespace orthog::reference

#endif
