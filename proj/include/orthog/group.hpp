#ifndef ORTHOG_GROUP_HPP
#define ORTHOG_GROUP_HPP

#include <optional>
#include <string>
#include <vector>

#include "orthog/matrix.hpp"
#include "orthog/qr.hpp"

namespace orthog {

enum class GroupScheme { categorical, numeric };

/// Encoded nuisance design. The augmented matrix is an intercept column
/// followed by centered indicator or numeric columns, so "orthogonal to the
/// design" means zero empirical covariance with the raw group variable, not
/// just a zero inner product. Full column rank is guaranteed at construction.
class GroupDesign {
public:
    /// Inert empty design; models hold one before a fit assigns theirs.
    GroupDesign() = default;

    /// Design with no group columns at all: residualization is the identity.
    static GroupDesign none(int n);

    int n() const { return n_; }
    /// Encoded group columns, i.e. augmented columns minus the intercept.
    int q() const { return empty() ? 0 : augmented_.cols() - 1; }
    bool empty() const { return augmented_.cols() == 0; }
    int rank() const { return qr_ ? qr_->rank() : 0; }

    GroupScheme scheme() const { return scheme_; }
    const Matrix& augmented() const { return augmented_; }
    /// Raw numeric columns; for categorical input these are the level indices.
    const Matrix& raw() const { return raw_; }
    /// Sorted distinct levels; empty for numeric designs.
    const std::vector<std::string>& levels() const { return levels_; }

    /// (I − P_Z)·B against the augmented design.
    Matrix residualize(const Matrix& b) const;
    Vector residualize(const Vector& b) const;

    /// Least-squares coefficients of B on the augmented design, (q+1)×cols.
    Matrix solve(const Matrix& b) const;

private:
    friend GroupDesign encode_group(const std::vector<std::string>& labels,
                                    const std::vector<std::string>& levels);
    friend GroupDesign encode_group(const Matrix& raw, GroupScheme scheme);

    /// Centers cols, prepends the intercept, and validates rank.
    static GroupDesign build(GroupDesign d, const Matrix& cols);

    int n_ = 0;
    GroupScheme scheme_ = GroupScheme::numeric;
    Matrix raw_;
    Matrix augmented_;
    std::vector<std::string> levels_;
    std::optional<PivotedQr> qr_;
};

/// Categorical encoding: L sorted distinct levels become an intercept plus
/// L−1 centered indicators (the lowest level is the reference).
GroupDesign encode_group(const std::vector<std::string>& labels);

/// Categorical encoding against a fixed level set, for transforming held-out
/// data with the training scheme. Unknown labels are an input error.
GroupDesign encode_group(const std::vector<std::string>& labels,
                         const std::vector<std::string>& levels);

/// Numeric encoding: intercept plus each column centered. With
/// GroupScheme::categorical the values are formatted as labels first.
GroupDesign encode_group(const Matrix& raw, GroupScheme scheme);

/// Single-column convenience overload.
GroupDesign encode_group(const Vector& z, GroupScheme scheme);

/// (I − P_Z)·A for the augmented design of Zd; identity when Zd is empty.
Matrix residualize(const Matrix& a, const GroupDesign& zd);

} // namespace orthog

#endif
