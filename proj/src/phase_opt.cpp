// SPDX-License-Identifier: Apache-2.0

#include "risim/phase_opt.hpp"

#include <cmath>
#include <stdexcept>

namespace risim {

namespace {

double secular_lhs(const rvec& eigvals, const rvec& weights, double gamma) {
    double s = 0.0;
    for (Eigen::Index d = 0; d < eigvals.size(); ++d) {
        if (weights(d) <= 0.0) continue;
        const double diff = gamma - eigvals(d);
        s += weights(d) / (diff * diff);
    }
    return s;
}

}  // namespace

double secular_root(const rvec& eigvals, const rvec& weights, double n) {
    if (eigvals.size() != weights.size())
        throw std::invalid_argument("secular_root: size mismatch");
    if (weights.maxCoeff() <= 0.0)
        throw std::invalid_argument("secular_root: all weights zero (use the h = 0 branch)");
    const double lam_max = eigvals.maxCoeff();
    const double delta = 1e-12 * (1.0 + lam_max);

    // The left side decreases monotonically from +inf (at lam_max+) to 0, so
    // a sign change brackets the unique root. Grow the bracket geometrically.
    double lo = lam_max + delta;
    while (secular_lhs(eigvals, weights, lo) <= n) lo = lam_max + (lo - lam_max) / 2.0;
    double span = std::max(delta, std::sqrt(weights.sum() / n));
    double hi = lo + span;
    while (secular_lhs(eigvals, weights, hi) > n) {
        span *= 2.0;
        hi = lo + span;
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (secular_lhs(eigvals, weights, mid) > n)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

RelaxedSolution solve_relaxed(const cvec& h_hat, const cmat& cascaded_hat) {
    if (!h_hat.allFinite() || !cascaded_hat.allFinite())
        throw std::invalid_argument("solve_relaxed: non-finite input");
    const Eigen::Index n = cascaded_hat.cols();
    if (n < 1) throw std::invalid_argument("solve_relaxed: empty cascaded matrix");

    RelaxedSolution sol;
    Eigen::SelfAdjointEigenSolver<cmat> eig(cascaded_hat.adjoint() * cascaded_hat);
    sol.eigvals = eig.eigenvalues().cwiseMax(0.0);
    const cvec rhs = cascaded_hat.adjoint() * h_hat;
    sol.projections = eig.eigenvectors().adjoint() * rhs;

    const double scale = cascaded_hat.norm();
    if (h_hat.norm() <= 1e-14 * scale) {
        // Degenerate branch: scaled dominant eigenvector.
        sol.dominant_branch = true;
        Eigen::Index d_max = 0;
        sol.eigvals.maxCoeff(&d_max);
        sol.phi_star = std::sqrt(static_cast<double>(n)) * eig.eigenvectors().col(d_max);
        return sol;
    }

    const rvec weights = sol.projections.cwiseAbs2();
    sol.gamma_star = secular_root(sol.eigvals, weights, static_cast<double>(n));
    cvec coeff(n);
    for (Eigen::Index d = 0; d < n; ++d) {
        // Zero-weight directions contribute identically zero terms.
        coeff(d) = weights(d) > 0.0 ? sol.projections(d) / (sol.gamma_star - sol.eigvals(d))
                                    : cplx{0.0, 0.0};
    }
    sol.phi_star = eig.eigenvectors() * coeff;
    return sol;
}

cvec project_unit_modulus(const cvec& phi_star) {
    if (!phi_star.allFinite()) throw std::invalid_argument("project_unit_modulus: non-finite");
    cvec phi(phi_star.size());
    for (Eigen::Index i = 0; i < phi_star.size(); ++i) {
        const double mag = std::abs(phi_star(i));
        phi(i) = mag > 0.0 ? phi_star(i) / mag : cplx{1.0, 0.0};
    }
    return phi;
}

}  // namespace risim
