#include "orthog/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "orthog/errors.hpp"
#include "orthog/kernels.hpp"

namespace orthog {

namespace {

void check_pair(const Vector& a, const Vector& b, const char* what) {
    if (a.empty()) throw InputError(std::string(what) + ": empty input");
    if (a.size() != b.size())
        throw ShapeError(std::string(what) + ": lengths differ");
    for (double v : a)
        if (!std::isfinite(v)) throw InputError(std::string(what) + ": non-finite");
    for (double v : b)
        if (!std::isfinite(v)) throw InputError(std::string(what) + ": non-finite");
}

} // namespace

RegressionMetrics regression_metrics(const Vector& yhat, const Vector& y) {
    check_pair(yhat, y, "regression_metrics");
    const std::size_t n = y.size();
    Vector abs_err(n);
    RegressionMetrics m;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = yhat[i] - y[i];
        m.rmse += e * e;
        abs_err[i] = std::fabs(e);
        m.mae += abs_err[i];
    }
    m.rmse = std::sqrt(m.rmse / n);
    m.mae /= n;
    std::sort(abs_err.begin(), abs_err.end());
    m.mdae = n % 2 == 1 ? abs_err[n / 2]
                        : (abs_err[n / 2 - 1] + abs_err[n / 2]) / 2.0;
    return m;
}

ClassificationMetrics classification_metrics(const Vector& scores,
                                             const Vector& labels,
                                             double threshold) {
    check_pair(scores, labels, "classification_metrics");
    const int n = static_cast<int>(labels.size());
    int pos = 0;
    for (double v : labels) {
        if (v != 0.0 && v != 1.0)
            throw InputError("classification_metrics: labels must be 0 or 1");
        if (v == 1.0) ++pos;
    }
    const int neg = n - pos;

    int tp = 0, tn = 0, fp = 0, fn = 0;
    for (int i = 0; i < n; ++i) {
        const bool hat = scores[i] >= threshold;
        if (labels[i] == 1.0)
            hat ? ++tp : ++fn;
        else
            hat ? ++fp : ++tn;
    }

    ClassificationMetrics m;
    m.acc = static_cast<double>(tp + tn) / n;
    m.single_class = pos == 0 || neg == 0;
    if (pos > 0) m.tpr = static_cast<double>(tp) / pos;
    if (neg > 0) m.tnr = static_cast<double>(tn) / neg;
    if (tp + fp > 0) m.ppv = static_cast<double>(tp) / (tp + fp);
    if (tn + fn > 0) m.npv = static_cast<double>(tn) / (tn + fn);

    if (!m.single_class) {
        // Midrank Mann-Whitney: ties contribute half wins.
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return scores[a] < scores[b];
        });
        Vector rank(n);
        int i = 0;
        while (i < n) {
            int j = i;
            while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
            const double mid = (i + j) / 2.0 + 1.0;
            for (int l = i; l <= j; ++l) rank[order[l]] = mid;
            i = j + 1;
        }
        double rank_sum = 0.0;
        for (int l = 0; l < n; ++l)
            if (labels[l] == 1.0) rank_sum += rank[l];
        const double u = rank_sum - static_cast<double>(pos) * (pos + 1) / 2.0;
        m.auc = u / (static_cast<double>(pos) * neg);
    }
    return m;
}

GroupDependence group_dependence(const Vector& yhat, const Vector& z) {
    check_pair(yhat, z, "group_dependence");
    const int n = static_cast<int>(z.size());
    double my = 0.0, mz = 0.0;
    for (int i = 0; i < n; ++i) {
        my += yhat[i];
        mz += z[i];
    }
    my /= n;
    mz /= n;
    double syy = 0.0, szz = 0.0, syz = 0.0;
    for (int i = 0; i < n; ++i) {
        const double dy = yhat[i] - my;
        const double dz = z[i] - mz;
        syy += dy * dy;
        szz += dz * dz;
        syz += dy * dz;
    }
    GroupDependence out;
    if (syy == 0.0 || szz == 0.0) {
        out.degenerate = true;
        return out;
    }
    out.correlation = syz / std::sqrt(syy * szz);
    return out;
}

double reconstruction_error(const Matrix& x, const Matrix& x_tilde) {
    if (!x.same_shape(x_tilde))
        throw ShapeError("reconstruction_error: shapes differ");
    return std::sqrt(frobenius_sq_diff(x, x_tilde));
}

MetricReport make_report(const std::string& name,
                         const std::vector<double>& values) {
    if (values.empty()) throw InputError("make_report: no values");
    MetricReport r;
    r.name = name;
    r.n_splits = static_cast<int>(values.size());
    for (double v : values) r.value += v;
    r.value /= r.n_splits;
    if (r.n_splits > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - r.value) * (v - r.value);
        r.std_dev = std::sqrt(ss / (r.n_splits - 1));
    }
    return r;
}

} // namespace orthog
