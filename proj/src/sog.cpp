#include "orthog/sog.hpp"

#include <algorithm>
#include <cmath>

#include "orthog/errors.hpp"
#include "orthog/kernels.hpp"
#include "orthog/rng.hpp"
#include "orthog/svd.hpp"

namespace orthog {

namespace {

double norm1(const Vector& v) {
    double s = 0.0;
    for (double x : v) s += std::fabs(x);
    return s;
}

Vector normalized(Vector v, double norm) {
    for (double& x : v) x /= norm;
    return v;
}

// b with every |entry| ≤ θ soft-thresholds to zero; the normalized result is
// undefined there, so bisection must stay strictly inside [0, max|bᵢ|).
double l1_of_normalized_threshold(const Vector& b, double theta, Vector* u) {
    Vector g = soft_threshold(b, theta);
    const double n2 = norm2(g);
    if (n2 == 0.0) return -1.0;
    *u = normalized(std::move(g), n2);
    return norm1(*u);
}

} // namespace

ThetaResult theta_search(const Vector& b, double t) {
    if (t < 1.0)
        throw ParameterError("theta_search: no unit-l2 vector has l1 norm below 1");
    if (b.empty()) throw DegenerateDirectionError("theta_search: empty direction");
    for (double x : b)
        if (!std::isfinite(x))
            throw InputError("theta_search: non-finite direction");
    const double b2 = norm2(b);
    if (b2 == 0.0) throw DegenerateDirectionError("theta_search: zero direction");

    ThetaResult out;
    if (norm1(b) <= t * b2) {
        // The l1 bound is inactive; plain normalization is the maximizer.
        out.theta = 0.0;
        out.u = normalized(b, b2);
        return out;
    }

    double bmax = 0.0;
    int arg = 0;
    for (int i = 0; i < static_cast<int>(b.size()); ++i) {
        if (std::fabs(b[i]) > bmax) {
            bmax = std::fabs(b[i]);
            arg = i;
        }
    }

    if (t == 1.0) {
        // Limit of the soft-threshold path: one spike of magnitude 1.
        out.theta = bmax;
        out.u.assign(b.size(), 0.0);
        out.u[arg] = b[arg] > 0.0 ? 1.0 : -1.0;
        return out;
    }

    // ‖u(θ)‖₁ is continuous and nonincreasing on [0, max|bᵢ|), from
    // ‖b‖₁/‖b‖₂ > t down toward 1; bisect to the crossing.
    double lo = 0.0, hi = bmax;
    Vector u;
    for (int it = 0; it < 100; ++it) {
        const double mid = (lo + hi) / 2.0;
        const double l1 = l1_of_normalized_threshold(b, mid, &u);
        if (l1 < 0.0) { // everything vanished: θ too high
            hi = mid;
            continue;
        }
        if (std::fabs(l1 - t) <= 1e-13 * t) {
            out.theta = mid;
            out.u = std::move(u);
            return out;
        }
        if (l1 > t)
            lo = mid;
        else
            hi = mid;
    }
    out.theta = lo;
    const double l1 = l1_of_normalized_threshold(b, lo, &u);
    (void)l1;
    out.u = std::move(u);
    return out;
}

Vector update_s(const Vector& a, const GroupDesign& zd,
                const std::vector<Vector>& prev_s) {
    if (static_cast<int>(a.size()) != zd.n())
        throw ShapeError("update_s: vector length differs from the design");
    for (double x : a)
        if (!std::isfinite(x)) throw InputError("update_s: non-finite input");
    const double a2 = norm2(a);

    Vector r = a;
    // Two passes kill the rounding leakage classical projection leaves, so
    // the orthogonality invariants hold to 1e-10 even after many components.
    for (int pass = 0; pass < 2; ++pass) {
        for (const Vector& s : prev_s) {
            const double c = dot(s, r);
            for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * s[i];
        }
        r = zd.residualize(r);
    }
    const double r2 = norm2(r);
    if (r2 <= 1e-12 * a2)
        throw SpanCollapseError(
            "update_s: direction lies in the span of the design and previous scores");
    return normalized(std::move(r), r2);
}

SogModel fit_sog(const Matrix& x, const GroupDesign& zd, int k, double t,
                 double tol, int max_iter, SogInit init,
                 std::uint64_t init_seed) {
    validate_data_matrix(x, "fit_sog");
    if (zd.n() != x.rows()) throw ShapeError("fit_sog: design row count differs");
    const int n = x.rows(), p = x.cols();
    const int kmax = std::min(n, p) - zd.rank();
    if (k < 1 || k > kmax)
        throw RankError("fit_sog: k must lie in [1, min(n, p) - rank(design)]");
    if (t < 1.0) throw ParameterError("fit_sog: l1 bound t must be at least 1");
    if (!(tol > 0.0)) throw ParameterError("fit_sog: tol must be positive");
    if (max_iter < 1) throw ParameterError("fit_sog: max_iter must be positive");

    SogModel m;
    m.t = t;
    m.design = zd;
    m.requested_k = k;

    std::vector<Vector> scores;  // unit s_j
    std::vector<Vector> loadings;
    Vector d;

    // Residualized matrix, deflated in place as components accumulate; only
    // used to seed each component with its leading right singular vector.
    Matrix rwork = zd.residualize(x);

    for (int j = 0; j < k; ++j) {
        Vector u(p);
        if (init == SogInit::svd) {
            u = truncated_svd(rwork, 1).U.col(0);
        } else {
            Xoshiro256pp rng = Xoshiro256pp::derived(init_seed, j);
            for (int i = 0; i < p; ++i) u[i] = rng.normal();
            u = normalized(std::move(u), norm2(u));
        }

        Vector s(n, 0.0);
        std::vector<double> history;
        bool converged = false;
        int iters = 0;
        bool collapsed = false;
        for (int it = 0; it < max_iter; ++it) {
            Vector s_new;
            ThetaResult th;
            try {
                s_new = update_s(matvec(x, u), zd, scores);
                th = theta_search(matvec_t(x, s_new), t);
            } catch (const SpanCollapseError&) {
                collapsed = true;
                break;
            } catch (const DegenerateDirectionError&) {
                collapsed = true;
                break;
            }
            iters = it + 1;
            history.push_back(dot(s_new, matvec(x, th.u)));

            double change = 0.0;
            for (int i = 0; i < n; ++i)
                change = std::max(change, std::fabs(s_new[i] - s[i]));
            for (int i = 0; i < p; ++i)
                change = std::max(change, std::fabs(th.u[i] - u[i]));
            s = std::move(s_new);
            u = std::move(th.u);
            if (change < tol) {
                converged = true;
                break;
            }
        }
        if (collapsed) {
            m.truncated = true;
            break;
        }

        double dj = dot(s, matvec(x, u));
        if (dj < 0.0) {
            // Unreachable from the SVD init; a random start can settle on the
            // mirrored pair, which the sign flip maps back.
            for (double& v : u) v = -v;
            dj = -dj;
        }
        if (dj == 0.0) {
            m.truncated = true;
            break;
        }

        scores.push_back(s);
        loadings.push_back(u);
        d.push_back(dj);
        m.iterations.push_back(iters);
        m.converged.push_back(converged ? 1 : 0);
        m.objective_history.push_back(std::move(history));

        if (j + 1 < k) {
            // Deflate the seed matrix: rwork ← (I − s·sᵀ)·rwork.
            Vector str = matvec_t(rwork, s);
            for (int r = 0; r < n; ++r) {
                const double si = s[r];
                double* row = rwork.row_ptr(r);
                for (int c = 0; c < p; ++c) row[c] -= si * str[c];
            }
        }
    }

    const int got = static_cast<int>(d.size());
    m.d = d;
    m.S = Matrix(n, got);
    m.s_vectors = Matrix(n, got);
    m.U = Matrix(p, got);
    for (int j = 0; j < got; ++j) {
        for (int i = 0; i < n; ++i) {
            m.s_vectors(i, j) = scores[j][i];
            m.S(i, j) = d[j] * scores[j][i];
        }
        for (int i = 0; i < p; ++i) m.U(i, j) = loadings[j][i];
    }
    m.x_tilde = got > 0 ? matmul_a_bt(m.S, m.U) : Matrix(n, p);
    return m;
}

} // namespace orthog
