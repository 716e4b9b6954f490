#include "orthog/kernels.hpp"

#include <cmath>

#include "orthog/parallel.hpp"

namespace orthog {

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw ShapeError("matmul: inner dimensions differ");
    const int n = a.rows(), k = a.cols(), m = b.cols();
    Matrix c(n, m);
    const long work = static_cast<long>(n) * k * m;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (work > kParallelCutoff)
#endif
    for (int i = 0; i < n; ++i) {
        double* ci = c.row_ptr(i);
        const double* ai = a.row_ptr(i);
        for (int l = 0; l < k; ++l) {
            const double ail = ai[l];
            const double* bl = b.row_ptr(l);
            for (int j = 0; j < m; ++j) ci[j] += ail * bl[j];
        }
    }
    return c;
}

Matrix matmul_at_b(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw ShapeError("matmul_at_b: row counts differ");
    const int n = a.rows(), k = a.cols(), m = b.cols();
    Matrix c(k, m);
    const long work = static_cast<long>(n) * k * m;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (work > kParallelCutoff)
#endif
    for (int r = 0; r < k; ++r) {
        double* cr = c.row_ptr(r);
        for (int i = 0; i < n; ++i) {
            const double air = a(i, r);
            const double* bi = b.row_ptr(i);
            for (int j = 0; j < m; ++j) cr[j] += air * bi[j];
        }
    }
    return c;
}

Matrix matmul_a_bt(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw ShapeError("matmul_a_bt: column counts differ");
    const int n = a.rows(), k = a.cols(), m = b.rows();
    Matrix c(n, m);
    const long work = static_cast<long>(n) * k * m;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (work > kParallelCutoff)
#endif
    for (int i = 0; i < n; ++i) {
        double* ci = c.row_ptr(i);
        const double* ai = a.row_ptr(i);
        for (int j = 0; j < m; ++j) {
            const double* bj = b.row_ptr(j);
            double s = 0.0;
            for (int l = 0; l < k; ++l) s += ai[l] * bj[l];
            ci[j] = s;
        }
    }
    return c;
}

Vector matvec(const Matrix& a, const Vector& x) {
    if (a.cols() != static_cast<int>(x.size())) throw ShapeError("matvec: dimension mismatch");
    const int n = a.rows(), p = a.cols();
    Vector y(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (static_cast<long>(n) * p > kParallelCutoff)
#endif
    for (int i = 0; i < n; ++i) {
        const double* ai = a.row_ptr(i);
        double s = 0.0;
        for (int j = 0; j < p; ++j) s += ai[j] * x[j];
        y[i] = s;
    }
    return y;
}

Vector matvec_t(const Matrix& a, const Vector& x) {
    if (a.rows() != static_cast<int>(x.size())) throw ShapeError("matvec_t: dimension mismatch");
    const int n = a.rows(), p = a.cols();
    Vector y(p);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (static_cast<long>(n) * p > kParallelCutoff)
#endif
    for (int j = 0; j < p; ++j) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += a(i, j) * x[i];
        y[j] = s;
    }
    return y;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (a.size() > kParallelCutoff)
#endif
    for (int j = 0; j < a.cols(); ++j)
        for (int i = 0; i < a.rows(); ++i) t(j, i) = a(i, j);
    return t;
}

Matrix subtract(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b)) throw ShapeError("subtract: shapes differ");
    Matrix c(a.rows(), a.cols());
    const long n = a.size();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n > kParallelCutoff)
#endif
    for (long i = 0; i < n; ++i) c.data()[i] = a.data()[i] - b.data()[i];
    return c;
}

Matrix scale_cols(const Matrix& a, const Vector& d) {
    if (a.cols() != static_cast<int>(d.size())) throw ShapeError("scale_cols: dimension mismatch");
    Matrix c(a.rows(), a.cols());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (a.size() > kParallelCutoff)
#endif
    for (int i = 0; i < a.rows(); ++i) {
        const double* ai = a.row_ptr(i);
        double* ci = c.row_ptr(i);
        for (int j = 0; j < a.cols(); ++j) ci[j] = ai[j] * d[j];
    }
    return c;
}

double dot(const Vector& x, const Vector& y) {
    if (x.size() != y.size()) throw ShapeError("dot: lengths differ");
    return blocked_sum(static_cast<long>(x.size()), [&](long i) { return x[i] * y[i]; });
}

double norm2(const Vector& x) {
    return std::sqrt(blocked_sum(static_cast<long>(x.size()), [&](long i) { return x[i] * x[i]; }));
}

double frobenius_sq(const Matrix& a) {
    const auto& d = a.data();
    return blocked_sum(a.size(), [&](long i) { return d[i] * d[i]; });
}

double frobenius(const Matrix& a) { return std::sqrt(frobenius_sq(a)); }

double frobenius_sq_diff(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b)) throw ShapeError("frobenius_sq_diff: shapes differ");
    const auto& da = a.data();
    const auto& db = b.data();
    return blocked_sum(a.size(), [&](long i) {
        const double d = da[i] - db[i];
        return d * d;
    });
}

Vector soft_threshold(const Vector& b, double theta) {
    if (theta < 0.0) throw ParameterError("soft_threshold: negative threshold");
    Vector out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        const double mag = std::fabs(b[i]) - theta;
        out[i] = mag > 0.0 ? (b[i] > 0.0 ? mag : -mag) : 0.0;
    }
    return out;
}

} // namespace orthog
