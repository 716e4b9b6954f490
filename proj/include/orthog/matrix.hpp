#ifndef ORTHOG_MATRIX_HPP
#define ORTHOG_MATRIX_HPP

#include <cassert>
#include <cmath>
#include <string>
#include <vector>

#include "orthog/errors.hpp"

namespace orthog {

using Vector = std::vector<double>;

/// Dense row-major matrix of doubles. The one data container used everywhere:
/// data matrices (rows = subjects), factor matrices, designs.
class Matrix {
public:
    Matrix() = default;

    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(checked_size(rows, cols), 0.0) {}

    Matrix(int rows, int cols, std::vector<double> data) : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (static_cast<std::size_t>(checked_size(rows, cols)) != data_.size())
            throw ShapeError("matrix data size does not match rows*cols");
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    /// Single-column matrix from a vector.
    static Matrix column(const Vector& v) {
        Matrix m(static_cast<int>(v.size()), 1);
        for (int i = 0; i < m.rows(); ++i) m(i, 0) = v[i];
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    long size() const { return static_cast<long>(rows_) * cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(int i, int j) {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }
    double operator()(int i, int j) const {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }

    double* row_ptr(int i) { return data_.data() + static_cast<std::size_t>(i) * cols_; }
    const double* row_ptr(int i) const { return data_.data() + static_cast<std::size_t>(i) * cols_; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    Vector col(int j) const {
        Vector v(rows_);
        for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    Vector row(int i) const {
        const double* p = row_ptr(i);
        return Vector(p, p + cols_);
    }

    void set_col(int j, const Vector& v) {
        assert(static_cast<int>(v.size()) == rows_);
        for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

    /// Copy of the first k columns.
    Matrix left_cols(int k) const {
        assert(k >= 0 && k <= cols_);
        Matrix out(rows_, k);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < k; ++j) out(i, j) = (*this)(i, j);
        return out;
    }

    /// Row subset in the given index order.
    Matrix select_rows(const std::vector<int>& idx) const {
        Matrix out(static_cast<int>(idx.size()), cols_);
        for (int i = 0; i < out.rows(); ++i) {
            const double* src = row_ptr(idx[i]);
            double* dst = out.row_ptr(i);
            for (int j = 0; j < cols_; ++j) dst[j] = src[j];
        }
        return out;
    }

    bool all_finite() const {
        for (double v : data_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    bool same_shape(const Matrix& other) const { return rows_ == other.rows_ && cols_ == other.cols_; }

private:
    static long checked_size(int rows, int cols) {
        if (rows < 0 || cols < 0) throw ShapeError("negative matrix dimension");
        return static_cast<long>(rows) * cols;
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

/// Checks the data-matrix contract: finite entries, at least 2 rows and 1 column.
inline void validate_data_matrix(const Matrix& x, const char* what = "data matrix") {
    if (x.rows() < 2 || x.cols() < 1)
        throw InputError(std::string(what) + ": need at least 2 rows and 1 column");
    if (!x.all_finite()) throw InputError(std::string(what) + ": non-finite entries");
}

inline void require_same_rows(const Matrix& a, const Matrix& b, const char* what) {
    if (a.rows() != b.rows()) throw ShapeError(std::string(what) + ": row counts differ");
}

} // namespace orthog

#endif
