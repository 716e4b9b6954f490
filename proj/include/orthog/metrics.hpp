#ifndef ORTHOG_METRICS_HPP
#define ORTHOG_METRICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "orthog/matrix.hpp"

namespace orthog {

struct RegressionMetrics {
    double rmse = 0.0;
    double mae = 0.0;
    double mdae = 0.0; // even count: midpoint of the two middle values
};

RegressionMetrics regression_metrics(const Vector& yhat, const Vector& y);

/// Metrics that need both classes (or a nonempty predicted class) are left
/// unset instead of reported as garbage.
struct ClassificationMetrics {
    double acc = 0.0;
    std::optional<double> auc; // Mann-Whitney rank statistic, midranks on ties
    std::optional<double> tpr;
    std::optional<double> tnr;
    std::optional<double> ppv;
    std::optional<double> npv;
    bool single_class = false;
};

ClassificationMetrics classification_metrics(const Vector& scores,
                                             const Vector& labels,
                                             double threshold);

struct GroupDependence {
    double correlation = 0.0;
    bool degenerate = false; // either side constant; correlation reported as 0
};

/// Pearson correlation between predictions and the raw group variable.
GroupDependence group_dependence(const Vector& yhat, const Vector& z);

/// ‖X − X̃‖_F (the norm, not its square).
double reconstruction_error(const Matrix& x, const Matrix& x_tilde);

/// Mean and sample standard deviation (n−1 denominator) across splits.
struct MetricReport {
    std::string name;
    double value = 0.0;
    int n_splits = 0;
    double std_dev = 0.0;
};

MetricReport make_report(const std::string& name,
                         const std::vector<double>& values);

} // namespace orthog

#endif
