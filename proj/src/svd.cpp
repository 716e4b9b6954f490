#include "orthog/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "orthog/errors.hpp"
#include "orthog/kernels.hpp"
#include "orthog/parallel.hpp"

namespace orthog {

namespace {

// Relative threshold below which superdiagonal and diagonal entries of the
// bidiagonal factor are treated as zero.
constexpr double kChopTol = 1e-12;

// Plane rotation with c·a + s·b = r and −s·a + c·b = 0.
inline void make_givens(double a, double b, double* c, double* s) {
    if (b == 0.0) {
        *c = 1.0;
        *s = 0.0;
    } else if (std::fabs(b) > std::fabs(a)) {
        const double t = a / b;
        const double u = std::sqrt(1.0 + t * t);
        *s = 1.0 / u;
        *c = t * *s;
    } else {
        const double t = b / a;
        const double u = std::sqrt(1.0 + t * t);
        *c = 1.0 / u;
        *s = t * *c;
    }
}

// col_a ← c·col_a + s·col_b, col_b ← −s·col_a + c·col_b.
inline void rotate_cols(Matrix& m, int a, int b, double c, double s) {
    const int rows = m.rows();
    for (int i = 0; i < rows; ++i) {
        const double va = m(i, a);
        const double vb = m(i, b);
        m(i, a) = c * va + s * vb;
        m(i, b) = -s * va + c * vb;
    }
}

// Wilkinson shift: the eigenvalue of the trailing 2×2 block of BᵀB closest
// to its last entry. Guards against cancellation in the discriminant.
double wilkinson_shift(double da, double db, double fa, double fb) {
    const double ta = da * da + fa * fa;
    const double tb = db * db + fb * fb;
    const double tab = da * fb;
    const double dt = (ta - tb) / 2.0;
    if (tab == 0.0) return tb;
    if (dt >= 0.0) return tb - tab * tab / (dt + std::hypot(dt, tab));
    return tb + tab * tab / (-dt + std::hypot(dt, tab));
}

// One implicit-shift QR sweep on the bidiagonal block [lo, hi], chasing the
// bulge with alternating column and row rotations; u and v accumulate them.
void qr_sweep(std::vector<double>& d, std::vector<double>& e, Matrix& u,
              Matrix& v, int lo, int hi) {
    const double fa = hi - 1 > lo ? e[hi - 2] : 0.0;
    const double mu = wilkinson_shift(d[hi - 1], d[hi], fa, e[hi - 1]);
    double y = d[lo] * d[lo] - mu;
    double z = d[lo] * e[lo];
    for (int k = lo; k < hi; ++k) {
        double c, s;
        make_givens(y, z, &c, &s);
        if (k > lo) e[k - 1] = c * y + s * z;
        const double dk = c * d[k] + s * e[k];
        const double ek = -s * d[k] + c * e[k];
        const double bulge_lo = s * d[k + 1];
        const double dk1 = c * d[k + 1];
        rotate_cols(v, k, k + 1, c, s);

        make_givens(dk, bulge_lo, &c, &s);
        d[k] = c * dk + s * bulge_lo;
        e[k] = c * ek + s * dk1;
        d[k + 1] = -s * ek + c * dk1;
        rotate_cols(u, k, k + 1, c, s);
        if (k < hi - 1) {
            y = e[k];
            z = s * e[k + 1];
            e[k + 1] *= c;
        }
    }
}

// d[i] vanished with e[i] ≠ 0: row rotations against rows below push the
// off-diagonal mass out of row i, splitting the block at i.
void chase_zero_diagonal(std::vector<double>& d, std::vector<double>& e,
                         Matrix& u, int i, int hi) {
    double bulge = e[i];
    e[i] = 0.0;
    for (int l = i + 1; l <= hi; ++l) {
        double c, s;
        make_givens(d[l], bulge, &c, &s);
        d[l] = c * d[l] + s * bulge;
        rotate_cols(u, l, i, c, s);
        if (l < hi) {
            bulge = -s * e[l];
            e[l] *= c;
        }
    }
}

// d[hi] vanished with e[hi−1] ≠ 0: column rotations against columns to the
// left absorb the last column, leaving a clean split at hi.
void chase_zero_tail(std::vector<double>& d, std::vector<double>& e, Matrix& v,
                     int lo, int hi) {
    double bulge = e[hi - 1];
    e[hi - 1] = 0.0;
    for (int l = hi - 1; l >= lo; --l) {
        double c, s;
        make_givens(d[l], bulge, &c, &s);
        d[l] = c * d[l] + s * bulge;
        rotate_cols(v, l, hi, c, s);
        if (l > lo) {
            bulge = -s * e[l - 1];
            e[l - 1] *= c;
        }
    }
}

// Householder reflector over x = a(i0..m-1, col); overwrites the segment with
// the vector tail (leading 1 implicit) and returns the new diagonal value.
double reflect_col(Matrix& a, int i0, int col, double* tau) {
    const int m = a.rows();
    double norm_sq = 0.0;
    for (int i = i0; i < m; ++i) norm_sq += a(i, col) * a(i, col);
    const double norm = std::sqrt(norm_sq);
    if (norm == 0.0) {
        *tau = 0.0;
        return 0.0;
    }
    const double x0 = a(i0, col);
    const double alpha = x0 > 0.0 ? -norm : norm;
    *tau = (alpha - x0) / alpha;
    const double scale = 1.0 / (x0 - alpha);
    for (int i = i0 + 1; i < m; ++i) a(i, col) *= scale;
    a(i0, col) = alpha;
    return alpha;
}

double reflect_row(Matrix& a, int row, int j0, double* tau) {
    const int p = a.cols();
    double norm_sq = 0.0;
    for (int j = j0; j < p; ++j) norm_sq += a(row, j) * a(row, j);
    const double norm = std::sqrt(norm_sq);
    if (norm == 0.0) {
        *tau = 0.0;
        return 0.0;
    }
    const double x0 = a(row, j0);
    const double alpha = x0 > 0.0 ? -norm : norm;
    *tau = (alpha - x0) / alpha;
    const double scale = 1.0 / (x0 - alpha);
    for (int j = j0 + 1; j < p; ++j) a(row, j) *= scale;
    a(row, j0) = alpha;
    return alpha;
}

// Applies the column reflector packed in a(i0..m-1, col) to columns
// [c0, cols) of b. Independent target columns; safe to parallelize.
void apply_col_reflector(const Matrix& a, int i0, int col, double tau,
                         Matrix& b, int c0) {
    if (tau == 0.0) return;
    const int m = a.rows();
    const int cols = b.cols();
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) \
    if (static_cast<long>(cols - c0) * (m - i0) > kParallelCutoff)
#endif
    for (int c = c0; c < cols; ++c) {
        double sum = b(i0, c);
        for (int i = i0 + 1; i < m; ++i) sum += a(i, col) * b(i, c);
        sum *= tau;
        b(i0, c) -= sum;
        for (int i = i0 + 1; i < m; ++i) b(i, c) -= a(i, col) * sum;
    }
}

// Applies the row reflector packed in a(row, j0..p-1) to rows [r0, rows)
// of b, acting on b's columns j0..p-1.
void apply_row_reflector(const Matrix& a, int row, int j0, double tau,
                         Matrix& b, int r0) {
    if (tau == 0.0) return;
    const int p = a.cols();
    const int rows = b.rows();
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) \
    if (static_cast<long>(rows - r0) * (p - j0) > kParallelCutoff)
#endif
    for (int r = r0; r < rows; ++r) {
        double sum = b(r, j0);
        for (int j = j0 + 1; j < p; ++j) sum += a(row, j) * b(r, j);
        sum *= tau;
        b(r, j0) -= sum;
        for (int j = j0 + 1; j < p; ++j) b(r, j) -= a(row, j) * sum;
    }
}

// Thin SVD of a tall matrix (m ≥ p): a = u·diag(d)·vᵀ with u m×p, v p×p.
// Golub-Kahan: Householder bidiagonalization, then implicit-shift QR on the
// bidiagonal band with accumulation into u and v.
void thin_svd_tall(Matrix a, Matrix* u_out, Vector* d_out, Matrix* v_out) {
    const int m = a.rows();
    const int p = a.cols();

    std::vector<double> d(p, 0.0);
    std::vector<double> e(p > 1 ? p - 1 : 0, 0.0);
    std::vector<double> tau_l(p, 0.0);
    std::vector<double> tau_r(p > 1 ? p - 1 : 0, 0.0);

    for (int j = 0; j < p; ++j) {
        d[j] = reflect_col(a, j, j, &tau_l[j]);
        apply_col_reflector(a, j, j, tau_l[j], a, j + 1);
        if (j < p - 1) {
            e[j] = reflect_row(a, j, j + 1, &tau_r[j]);
            apply_row_reflector(a, j, j + 1, tau_r[j], a, j + 1);
        }
    }

    // Accumulate the left factor on the first p identity columns and the
    // right factor on the identity, applying reflectors back to front.
    Matrix u(m, p);
    for (int j = 0; j < p; ++j) u(j, j) = 1.0;
    for (int j = p - 1; j >= 0; --j) apply_col_reflector(a, j, j, tau_l[j], u, j);

    Matrix v = Matrix::identity(p);
    for (int j = p - 2; j >= 0; --j) {
        // Row reflector j acts on index range j+1..p-1, i.e. rows of vᵀ;
        // on v it reflects the same index range across all columns.
        if (tau_r[j] == 0.0) continue;
        for (int c = 0; c < p; ++c) {
            double sum = v(j + 1, c);
            for (int i = j + 2; i < p; ++i) sum += a(j, i) * v(i, c);
            sum *= tau_r[j];
            v(j + 1, c) -= sum;
            for (int i = j + 2; i < p; ++i) v(i, c) -= a(j, i) * sum;
        }
    }

    // Implicit-shift QR on the bidiagonal band.
    double smax = 0.0;
    for (int i = 0; i < p; ++i) smax = std::max(smax, std::fabs(d[i]));
    for (int i = 0; i + 1 < p; ++i) smax = std::max(smax, std::fabs(e[i]));

    if (smax > 0.0) {
        const double eps = std::numeric_limits<double>::epsilon();
        const long max_sweeps = 100L * p;
        long sweeps = 0;
        int hi = p - 1;
        while (hi > 0) {
            for (int i = 0; i < hi; ++i) {
                if (std::fabs(e[i]) <= kChopTol * smax ||
                    std::fabs(e[i]) <= eps * (std::fabs(d[i]) + std::fabs(d[i + 1])))
                    e[i] = 0.0;
            }
            if (e[hi - 1] == 0.0) {
                --hi;
                continue;
            }
            int lo = hi - 1;
            while (lo > 0 && e[lo - 1] != 0.0) --lo;

            int zero_at = -1;
            for (int i = lo; i < hi; ++i) {
                if (std::fabs(d[i]) <= kChopTol * smax) {
                    zero_at = i;
                    break;
                }
            }
            if (zero_at >= 0) {
                d[zero_at] = 0.0;
                chase_zero_diagonal(d, e, u, zero_at, hi);
                continue;
            }
            if (std::fabs(d[hi]) <= kChopTol * smax) {
                d[hi] = 0.0;
                chase_zero_tail(d, e, v, lo, hi);
                continue;
            }
            if (++sweeps > max_sweeps)
                throw Error("svd: QR iteration failed to converge");
            qr_sweep(d, e, u, v, lo, hi);
        }
    }

    for (int i = 0; i < p; ++i) {
        if (d[i] < 0.0) {
            d[i] = -d[i];
            for (int r = 0; r < p; ++r) v(r, i) = -v(r, i);
        }
    }

    // Descending order by selection of the remaining maximum; stable for
    // ties, so equal singular values keep their band order.
    for (int i = 0; i < p; ++i) {
        int best = i;
        for (int j = i + 1; j < p; ++j)
            if (d[j] > d[best]) best = j;
        if (best != i) {
            std::swap(d[i], d[best]);
            for (int r = 0; r < m; ++r) std::swap(u(r, i), u(r, best));
            for (int r = 0; r < p; ++r) std::swap(v(r, i), v(r, best));
        }
    }

    *u_out = std::move(u);
    d_out->assign(d.begin(), d.end());
    *v_out = std::move(v);
}

} // namespace

SvdFactors truncated_svd(const Matrix& x, int k) {
    validate_data_matrix(x, "svd");
    const int n = x.rows();
    const int p = x.cols();
    const int kmax = std::min(n, p);
    if (k < 1 || k > kmax)
        throw RankError("svd: rank k must lie in [1, min(n, p)]");

    Matrix left, right;
    Vector d;
    if (n >= p) {
        thin_svd_tall(x, &left, &d, &right);
    } else {
        // Wide case by the transpose identity: Xᵀ = A·diag(d)·Bᵀ gives
        // X = B·diag(d)·Aᵀ.
        thin_svd_tall(transpose(x), &right, &d, &left);
    }

    SvdFactors f;
    f.V = left.left_cols(k);
    f.D.assign(d.begin(), d.begin() + k);
    f.U = right.left_cols(k);

    // Sign convention: largest-magnitude entry of each loading column is
    // positive; the lowest index wins ties.
    for (int j = 0; j < k; ++j) {
        int arg = 0;
        double best = -1.0;
        for (int i = 0; i < p; ++i) {
            const double a = std::fabs(f.U(i, j));
            if (a > best) {
                best = a;
                arg = i;
            }
        }
        if (f.U(arg, j) < 0.0) {
            for (int i = 0; i < p; ++i) f.U(i, j) = -f.U(i, j);
            for (int i = 0; i < n; ++i) f.V(i, j) = -f.V(i, j);
        }
    }
    return f;
}

Matrix reconstruct(const SvdFactors& f) {
    Matrix vd = scale_cols(f.V, f.D);
    return matmul_a_bt(vd, f.U);
}

} // namespace orthog
