#ifndef ORTHOG_SOG_HPP
#define ORTHOG_SOG_HPP

#include <cstdint>
#include <vector>

#include "orthog/group.hpp"
#include "orthog/matrix.hpp"

namespace orthog {

/// Sparse group-orthogonal decomposition, fitted greedily one component at a
/// time. Score vectors are unit norm, mutually orthogonal, and orthogonal to
/// the augmented group design; loadings obey ‖u‖₂ ≤ 1 and ‖u‖₁ ≤ t.
struct SogModel {
    Matrix S;          // n×k, column j = d_j·s_j
    Matrix s_vectors;  // n×k unit score vectors
    Matrix U;          // p×k sparse loadings
    Vector d;          // positive scales d_j = s_jᵀ·X·u_j
    double t = 0.0;    // l1 bound the fit ran with
    Matrix x_tilde;    // S·Uᵀ
    GroupDesign design;

    // Per-component diagnostics, sized to the achieved rank.
    std::vector<int> iterations;
    std::vector<char> converged;
    std::vector<std::vector<double>> objective_history;
    bool truncated = false; // span collapse stopped the fit short of k
    int requested_k = 0;

    int rank() const { return static_cast<int>(d.size()); }
};

enum class SogInit { svd, random };

struct ThetaResult {
    double theta = 0.0;
    Vector u;
};

/// Sparse unit direction maximizing bᵀu under ‖u‖₂ ≤ 1, ‖u‖₁ ≤ t.
/// If b/‖b‖₂ already satisfies the l1 bound, θ = 0 and u is just the
/// normalization. t == 1 returns the single-spike limit (lowest max-|bᵢ|
/// index wins ties). Otherwise θ is found by bisection on [0, max|bᵢ|]
/// so that ‖u‖₁ = t within 1e-8·t.
ThetaResult theta_search(const Vector& b, double t);

/// Score update: deflates a against the previous unit scores, residualizes
/// on the augmented design, normalizes. Throws SpanCollapseError when the
/// result has norm ≤ 1e-12·‖a‖₂.
Vector update_s(const Vector& a, const GroupDesign& zd,
                const std::vector<Vector>& prev_s);

/// Greedy alternating fit of k components. Each component alternates
/// update_s(X·u) and theta_search(Xᵀ·s, t) until the largest elementwise
/// change in (u, s) drops below tol or max_iter is hit. Span collapse at
/// component j returns the j−1 finished components with truncated set.
///
/// init picks the starting u: the leading right singular vector of the
/// deflated residualized matrix (deterministic default), or a seeded random
/// unit vector for robustness testing.
SogModel fit_sog(const Matrix& x, const GroupDesign& zd, int k, double t,
                 double tol = 1e-7, int max_iter = 500,
                 SogInit init = SogInit::svd, std::uint64_t init_seed = 0);

} // namespace orthog

#endif
