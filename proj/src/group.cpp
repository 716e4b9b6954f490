#include "orthog/group.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "orthog/errors.hpp"

namespace orthog {

// Builds the augmented design [1 | centered cols] and validates rank. The
// centered columns each sum to zero by construction.
GroupDesign GroupDesign::build(GroupDesign d, const Matrix& cols) {
    const int n = cols.rows();
    Matrix aug(n, cols.cols() + 1);
    for (int i = 0; i < n; ++i) aug(i, 0) = 1.0;
    for (int j = 0; j < cols.cols(); ++j) {
        double mean = 0.0;
        for (int i = 0; i < n; ++i) mean += cols(i, j);
        mean /= n;
        double spread = 0.0;
        for (int i = 0; i < n; ++i) {
            aug(i, j + 1) = cols(i, j) - mean;
            spread = std::max(spread, std::fabs(aug(i, j + 1)));
        }
        if (spread <= 1e-12 * std::max(1.0, std::fabs(mean)))
            throw DegenerateGroupError("group column " + std::to_string(j) +
                                       " has no variation");
    }
    d.n_ = n;
    d.augmented_ = aug;
    d.qr_.emplace(aug);
    if (!d.qr_->full_column_rank())
        throw SingularDesignError("group design columns are collinear");
    return d;
}

namespace {

std::string format_level(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

GroupDesign GroupDesign::none(int n) {
    if (n < 2) throw InputError("group design: need at least 2 rows");
    GroupDesign d;
    d.n_ = n;
    d.raw_ = Matrix(n, 0);
    d.augmented_ = Matrix(n, 0);
    return d;
}

Matrix GroupDesign::residualize(const Matrix& b) const {
    if (b.rows() != n_) throw ShapeError("residualize: row counts differ");
    if (empty()) return b;
    return qr_->residualize(b);
}

Vector GroupDesign::residualize(const Vector& b) const {
    if (static_cast<int>(b.size()) != n_)
        throw ShapeError("residualize: row counts differ");
    if (empty()) return b;
    return qr_->residualize(b);
}

Matrix GroupDesign::solve(const Matrix& b) const {
    if (b.rows() != n_) throw ShapeError("group solve: row counts differ");
    if (empty()) return Matrix(0, b.cols());
    return qr_->solve(b);
}

GroupDesign encode_group(const std::vector<std::string>& labels) {
    std::vector<std::string> lv(labels);
    std::sort(lv.begin(), lv.end());
    lv.erase(std::unique(lv.begin(), lv.end()), lv.end());
    if (lv.size() < 2)
        throw DegenerateGroupError("categorical group needs at least 2 levels");
    return encode_group(labels, lv);
}

GroupDesign encode_group(const std::vector<std::string>& labels,
                         const std::vector<std::string>& levels) {
    const int n = static_cast<int>(labels.size());
    if (n < 2) throw InputError("group design: need at least 2 rows");
    std::map<std::string, int> index;
    for (int l = 0; l < static_cast<int>(levels.size()); ++l)
        index[levels[l]] = l;
    if (index.size() != levels.size())
        throw InputError("group levels contain duplicates");

    GroupDesign d;
    d.scheme_ = GroupScheme::categorical;
    d.levels_ = levels;
    d.raw_ = Matrix(n, 1);
    // Indicators for every level but the first (the reference).
    Matrix cols(n, static_cast<int>(levels.size()) - 1);
    for (int i = 0; i < n; ++i) {
        auto it = index.find(labels[i]);
        if (it == index.end())
            throw InputError("group label '" + labels[i] + "' not in level set");
        d.raw_(i, 0) = it->second;
        if (it->second > 0) cols(i, it->second - 1) = 1.0;
    }
    return GroupDesign::build(std::move(d), cols);
}

GroupDesign encode_group(const Matrix& raw, GroupScheme scheme) {
    if (raw.rows() < 2) throw InputError("group design: need at least 2 rows");
    if (raw.cols() < 1) throw InputError("group design: need at least 1 column");
    if (!raw.all_finite()) throw InputError("group values must be finite");
    if (scheme == GroupScheme::categorical) {
        if (raw.cols() != 1)
            throw InputError("categorical group must be a single column");
        std::vector<std::string> labels(raw.rows());
        for (int i = 0; i < raw.rows(); ++i) labels[i] = format_level(raw(i, 0));
        return encode_group(labels);
    }
    GroupDesign d;
    d.scheme_ = GroupScheme::numeric;
    d.raw_ = raw;
    return GroupDesign::build(std::move(d), raw);
}

GroupDesign encode_group(const Vector& z, GroupScheme scheme) {
    return encode_group(Matrix::column(z), scheme);
}

Matrix residualize(const Matrix& a, const GroupDesign& zd) {
    return zd.residualize(a);
}

} // namespace orthog
