#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "orthog/errors.hpp"
#include "orthog/group.hpp"
#include "orthog/kernels.hpp"
#include "orthog/og.hpp"
#include "orthog/svd.hpp"
#include "oracles.hpp"

using namespace orthog;

namespace {

Vector bernoulli_vec(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Vector z(n);
    bool saw0 = false, saw1 = false;
    for (int i = 0; i < n; ++i) {
        z[i] = u(rng) < 0.5 ? 0.0 : 1.0;
        (z[i] == 0.0 ? saw0 : saw1) = true;
    }
    if (!saw0) z[0] = 0.0;
    if (!saw1) z[n - 1] = 1.0;
    return z;
}

// Data whose row space is orthogonal to the augmented design: scores are
// built by residualizing random vectors, so the group carries no signal.
Matrix design_orthogonal_data(std::mt19937_64& rng, const GroupDesign& zd,
                              int p, int rank) {
    const int n = zd.n();
    Matrix scores(n, rank);
    for (int j = 0; j < rank; ++j) {
        Vector v = oracle::random_matrix(rng, n, 1).col(0);
        v = zd.residualize(v);
        const double nv = norm2(v);
        for (double& x : v) x /= nv;
        scores.set_col(j, v);
    }
    Matrix load = oracle::random_matrix(rng, rank, p, -2.0, 2.0);
    return matmul(scores, load);
}

} // namespace

TEST_CASE("two-level group encodes to intercept plus centered indicator") {
    GroupDesign zd = encode_group(Vector{0.0, 1.0, 0.0, 1.0}, GroupScheme::numeric);
    REQUIRE(zd.augmented().rows() == 4);
    REQUIRE(zd.augmented().cols() == 2);
    for (int i = 0; i < 4; ++i) {
        CHECK(zd.augmented()(i, 0) == 1.0);
        CHECK(zd.augmented()(i, 1) == doctest::Approx(i % 2 == 0 ? -0.5 : 0.5));
    }
    CHECK(zd.q() == 1);
    CHECK(zd.rank() == 2);
}

TEST_CASE("constant group is degenerate") {
    CHECK_THROWS_AS(encode_group(Vector{2.0, 2.0, 2.0, 2.0}, GroupScheme::numeric),
                    DegenerateGroupError);
    CHECK_THROWS_AS(encode_group(std::vector<std::string>{"a", "a", "a"}),
                    DegenerateGroupError);
}

TEST_CASE("three-level categorical matches the hand-built indicator design") {
    std::vector<std::string> labels{"a", "b", "c", "a", "b", "c"};
    GroupDesign zd = encode_group(labels);
    REQUIRE(zd.augmented().rows() == 6);
    REQUIRE(zd.augmented().cols() == 3);
    CHECK(zd.levels() == std::vector<std::string>{"a", "b", "c"});

    // Indicators for b and c, centered at their 1/3 frequency.
    Matrix want(6, 3);
    for (int i = 0; i < 6; ++i) {
        want(i, 0) = 1.0;
        want(i, 1) = (labels[i] == "b" ? 1.0 : 0.0) - 1.0 / 3.0;
        want(i, 2) = (labels[i] == "c" ? 1.0 : 0.0) - 1.0 / 3.0;
    }
    CHECK(oracle::max_abs_diff(zd.augmented(), want) < 1e-12);

    for (int j = 1; j < 3; ++j) {
        double sum = 0.0;
        for (int i = 0; i < 6; ++i) sum += zd.augmented()(i, j);
        CHECK(std::fabs(sum) < 1e-10 * 6);
    }
}

TEST_CASE("collinear numeric group columns are rejected") {
    std::mt19937_64 rng(3);
    Matrix raw(10, 2);
    for (int i = 0; i < 10; ++i) {
        raw(i, 0) = static_cast<double>(i);
        raw(i, 1) = 2.0 * i + 7.0; // affine copy: collinear after centering
    }
    CHECK_THROWS_AS(encode_group(raw, GroupScheme::numeric), SingularDesignError);
}

TEST_CASE("unknown label against a fixed level set is an input error") {
    std::vector<std::string> levels{"a", "b"};
    CHECK_THROWS_AS(encode_group({"a", "b", "x"}, levels), InputError);
}

TEST_CASE("residualize free function honors the empty design") {
    std::mt19937_64 rng(5);
    Matrix a = oracle::random_matrix(rng, 6, 3);
    GroupDesign none = GroupDesign::none(6);
    CHECK(residualize(a, none).data() == a.data());
    CHECK(none.empty());
    CHECK(none.rank() == 0);
}

TEST_CASE("group-orthogonal data passes through the fit unchanged") {
    std::mt19937_64 rng(7);
    GroupDesign zd = encode_group(bernoulli_vec(rng, 12), GroupScheme::numeric);
    Matrix x = design_orthogonal_data(rng, zd, 6, 2);
    OgModel m = fit_og(x, zd, 2);
    CHECK(m.gap < 1e-16 * std::max(1.0, frobenius_sq(x)));
    CHECK(oracle::max_abs_diff(m.x_tilde, reconstruct(m.factors)) <
          1e-10 * frobenius(x));
    CHECK(oracle::max_abs_diff(m.x_tilde, x) < 1e-8 * frobenius(x));
}

TEST_CASE("fit matches the dense projector composition step by step") {
    std::mt19937_64 rng(11);
    Matrix x = oracle::random_matrix(rng, 6, 4, -2.0, 2.0);
    GroupDesign zd = encode_group(bernoulli_vec(rng, 6), GroupScheme::numeric);
    OgModel m = fit_og(x, zd, 2);

    SvdFactors f = truncated_svd(x, 2);
    Matrix vd = scale_cols(f.V, f.D);
    Matrix p = oracle::dense_projection(zd.augmented());
    Matrix resid = subtract(vd, matmul(p, vd));
    Matrix want = matmul_a_bt(resid, f.U);
    CHECK(oracle::max_abs_diff(m.x_tilde, want) < 1e-10);

    // Λ solves the augmented least squares for V·diag(D).
    Matrix reproj = matmul(zd.augmented(), m.lambda);
    CHECK(oracle::max_abs_diff(reproj, matmul(p, vd)) < 1e-9);
}

TEST_CASE("adjusted output is orthogonal to every design column") {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 8 + rep, p = 3 + rep % 5, k = 1 + rep % 3;
        Matrix x = oracle::random_matrix(rng, n, p, -3.0, 3.0);
        GroupDesign zd = encode_group(bernoulli_vec(rng, n), GroupScheme::numeric);
        OgModel m = fit_og(x, zd, k);
        Matrix cross = matmul_at_b(zd.augmented(), m.x_tilde);
        CHECK(oracle::max_abs(cross) < 1e-9 * frobenius(x));
        // Lemma 3 identity per fit.
        CHECK(std::fabs(m.err_og - m.err_svd - m.gap) <=
              1e-8 * std::max(1.0, m.err_og));
        CHECK(m.err_og >= m.err_svd - 1e-12);
    }
}

TEST_CASE("error terms match brute-force dense algebra") {
    std::mt19937_64 rng(17);
    Matrix x = oracle::random_matrix(rng, 10, 6, -2.0, 2.0);
    GroupDesign zd = encode_group(bernoulli_vec(rng, 10), GroupScheme::numeric);
    OgModel m = fit_og(x, zd, 3);
    ErrorDecomposition e = error_decomposition(x, m);

    SvdFactors f = truncated_svd(x, 3);
    Matrix vd = scale_cols(f.V, f.D);
    Matrix p = oracle::dense_projection(zd.augmented());
    Matrix pvd = matmul(p, vd);
    const double gap_want = frobenius_sq(pvd);
    const double err_svd_want = frobenius_sq_diff(x, matmul_a_bt(vd, f.U));
    Matrix xt_want = matmul_a_bt(subtract(vd, pvd), f.U);
    const double err_og_want = frobenius_sq_diff(x, xt_want);

    CHECK(std::fabs(e.gap - gap_want) < 1e-8 * std::max(1.0, gap_want));
    CHECK(std::fabs(e.err_svd - err_svd_want) < 1e-8 * std::max(1.0, err_svd_want));
    CHECK(std::fabs(e.err_og - err_og_want) < 1e-8 * std::max(1.0, err_og_want));
    CHECK(e.err_og == doctest::Approx(m.err_og));
}

TEST_CASE("full-rank fit on group-aligned data puts all error in the gap") {
    std::mt19937_64 rng(19);
    const int n = 8, p = 5;
    Matrix x = oracle::random_matrix(rng, n, p, -2.0, 2.0);
    SvdFactors f = truncated_svd(x, p);
    // Group variable aligned with the leading score direction.
    GroupDesign zd = encode_group(f.V.col(0), GroupScheme::numeric);
    OgModel m = fit_og(x, zd, p);
    CHECK(m.err_svd < 1e-10);
    CHECK(m.gap > 0.1); // leading component is fully explained by the design
    CHECK(std::fabs(m.err_og - m.gap) <= 1e-8 * std::max(1.0, m.err_og));
}

TEST_CASE("no rank-k group-orthogonal matrix beats the fit") {
    std::mt19937_64 rng(23);
    const int n = 10, p = 6, k = 2;
    Matrix x = oracle::random_matrix(rng, n, p, -2.0, 2.0);
    GroupDesign zd = encode_group(bernoulli_vec(rng, n), GroupScheme::numeric);
    OgModel m = fit_og(x, zd, k);
    const double best = std::sqrt(m.err_og);
    for (int rep = 0; rep < 200; ++rep) {
        Matrix left = oracle::random_matrix(rng, n, k, -2.0, 2.0);
        Matrix right = oracle::random_matrix(rng, k, p, -2.0, 2.0);
        Matrix cand = zd.residualize(matmul(left, right));
        CHECK(std::sqrt(frobenius_sq_diff(x, cand)) >= best - 1e-8);
    }
}

TEST_CASE("adjustment error is nonincreasing in the rank") {
    std::mt19937_64 rng(29);
    Matrix x = oracle::random_matrix(rng, 12, 7, -2.0, 2.0);
    GroupDesign zd = encode_group(bernoulli_vec(rng, 12), GroupScheme::numeric);
    double prev = -1.0;
    for (int k = 1; k <= 7; ++k) {
        OgModel m = fit_og(x, zd, k);
        if (prev >= 0.0) CHECK(m.err_og <= prev + 1e-10);
        prev = m.err_og;
    }
}

TEST_CASE("linear functions of the adjusted data are uncorrelated with z") {
    std::mt19937_64 rng(31);
    const int n = 20, p = 8;
    Matrix x = oracle::random_matrix(rng, n, p, -2.0, 2.0);
    Vector z = bernoulli_vec(rng, n);
    GroupDesign zd = encode_group(z, GroupScheme::numeric);
    OgModel m = fit_og(x, zd, 3);
    double zm = 0.0;
    for (double v : z) zm += v;
    zm /= n;
    for (int rep = 0; rep < 20; ++rep) {
        Vector w = oracle::random_matrix(rng, p, 1, -5.0, 5.0).col(0);
        Vector yhat = matvec(m.x_tilde, w);
        double ym = 0.0;
        for (double v : yhat) ym += v;
        ym /= n;
        double syz = 0.0, syy = 0.0, szz = 0.0;
        for (int i = 0; i < n; ++i) {
            syz += (yhat[i] - ym) * (z[i] - zm);
            syy += (yhat[i] - ym) * (yhat[i] - ym);
            szz += (z[i] - zm) * (z[i] - zm);
        }
        if (syy == 0.0) continue;
        CHECK(std::fabs(syz / std::sqrt(syy * szz)) <= 1e-8);
    }
}

TEST_CASE("empty design reduces the fit to the plain truncated svd") {
    std::mt19937_64 rng(37);
    Matrix x = oracle::random_matrix(rng, 9, 5);
    OgModel m = fit_og(x, GroupDesign::none(9), 3);
    CHECK(m.gap == 0.0);
    CHECK(m.lambda.rows() == 0);
    CHECK(m.x_tilde.data() == reconstruct(m.factors).data());
}

TEST_CASE("rank defaults to min(n, p, 30)") {
    std::mt19937_64 rng(41);
    Matrix x = oracle::random_matrix(rng, 40, 35);
    GroupDesign zd = encode_group(bernoulli_vec(rng, 40), GroupScheme::numeric);
    OgModel m = fit_og(x, zd);
    CHECK(m.rank() == 30);

    Matrix small = oracle::random_matrix(rng, 6, 4);
    GroupDesign zs = encode_group(bernoulli_vec(rng, 6), GroupScheme::numeric);
    CHECK(fit_og(small, zs).rank() == 4);
}

TEST_CASE("fit rejects bad shapes and ranks") {
    std::mt19937_64 rng(43);
    Matrix x = oracle::random_matrix(rng, 8, 4);
    GroupDesign zd = encode_group(bernoulli_vec(rng, 8), GroupScheme::numeric);
    CHECK_THROWS_AS(fit_og(x, zd, 5), RankError);
    GroupDesign wrong = encode_group(bernoulli_vec(rng, 9), GroupScheme::numeric);
    CHECK_THROWS_AS(fit_og(x, wrong, 2), ShapeError);
    Matrix y = oracle::random_matrix(rng, 8, 3);
    OgModel m = fit_og(x, zd, 2);
    CHECK_THROWS_AS(error_decomposition(y, m), InputError);
}

TEST_CASE("refit transform on the training data reproduces the model") {
    std::mt19937_64 rng(47);
    Matrix x = oracle::random_matrix(rng, 10, 5);
    GroupDesign zd = encode_group(bernoulli_vec(rng, 10), GroupScheme::numeric);
    OgModel m = fit_og(x, zd, 2);
    Matrix again = transform(m, x, zd, TransformMode::refit);
    CHECK(again.data() == m.x_tilde.data());
}

TEST_CASE("basis reuse projects through the trained loadings") {
    std::mt19937_64 rng(53);
    Matrix x = oracle::random_matrix(rng, 12, 6);
    GroupDesign zd = encode_group(bernoulli_vec(rng, 12), GroupScheme::numeric);
    OgModel m = fit_og(x, zd, 2);

    std::mt19937_64 rng2(54);
    GroupDesign z_new = encode_group(bernoulli_vec(rng2, 8), GroupScheme::numeric);
    Matrix x_new = oracle::random_matrix(rng2, 8, 6);
    // Residualize the projected scores in the trained basis, nothing else.
    Matrix scores = matmul(x_new, m.factors.U);
    Matrix want = matmul_a_bt(z_new.residualize(scores), m.factors.U);
    CHECK(oracle::max_abs_diff(transform(m, x_new, z_new, TransformMode::basis_reuse),
                               want) < 1e-12);
}

TEST_CASE("held-out transforms keep zero group covariance in both modes") {
    std::mt19937_64 rng(59);
    Matrix x = oracle::random_matrix(rng, 14, 6);
    GroupDesign zd = encode_group(bernoulli_vec(rng, 14), GroupScheme::numeric);
    OgModel m = fit_og(x, zd, 2);

    Matrix x_new = oracle::random_matrix(rng, 5, 6);
    GroupDesign z_new = encode_group(bernoulli_vec(rng, 5), GroupScheme::numeric);
    for (TransformMode mode : {TransformMode::refit, TransformMode::basis_reuse}) {
        Matrix out = transform(m, x_new, z_new, mode);
        Matrix cross = matmul_at_b(z_new.augmented(), out);
        CHECK(oracle::max_abs(cross) < 1e-9 * std::max(1.0, frobenius(x_new)));
    }

    Matrix bad = oracle::random_matrix(rng, 5, 7);
    CHECK_THROWS_AS(transform(m, bad, z_new), ShapeError);
}
