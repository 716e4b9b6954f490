#include "orthog/reference.hpp"

namespace orthog::reference {

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw ShapeError("reference::matmul: inner dimensions differ");
    Matrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int l = 0; l < a.cols(); ++l) {
            const double ail = a(i, l);
            for (int j = 0; j < b.cols(); ++j) c(i, j) += ail * b(l, j);
        }
    return c;
}

Matrix matmul_at_b(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw ShapeError("reference::matmul_at_b: row counts differ");
    Matrix c(a.cols(), b.cols());
    for (int r = 0; r < a.cols(); ++r)
        for (int i = 0; i < a.rows(); ++i) {
            const double air = a(i, r);
            for (int j = 0; j < b.cols(); ++j) c(r, j) += air * b(i, j);
        }
    return c;
}

Matrix matmul_a_bt(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw ShapeError("reference::matmul_a_bt: column counts differ");
    Matrix c(a.rows(), b.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.rows(); ++j) {
            double s = 0.0;
            for (int l = 0; l < a.cols(); ++l) s += a(i, l) * b(j, l);
            c(i, j) = s;
        }
    return c;
}

Vector matvec(const Matrix& a, const Vector& x) {
    if (a.cols() != static_cast<int>(x.size())) throw ShapeError("reference::matvec: dimension mismatch");
    Vector y(a.rows());
    for (int i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (int j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

Vector matvec_t(const Matrix& a, const Vector& x) {
    if (a.rows() != static_cast<int>(x.size())) throw ShapeError("reference::matvec_t: dimension mismatch");
    Vector y(a.cols());
    for (int j = 0; j < a.cols(); ++j) {
        double s = 0.0;
        for (int i = 0; i < a.rows(); ++i) s += a(i, j) * x[i];
        y[j] = s;
    }
    return y;
}

double dot(const Vector& x, const Vector& y) {
    if (x.size() != y.size()) throw ShapeError("reference::dot: lengths differ");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double frobenius_sq(const Matrix& a) {
    double s = 0.0;
    for (double v : a.data()) s += v * v;
    return s;
}

} // namespace orthog::reference
