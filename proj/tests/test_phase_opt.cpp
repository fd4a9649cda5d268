// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <vector>

#include "risim/phase_opt.hpp"
#include "risim/rng.hpp"

using namespace risim;

namespace {

// Exhaustive unit-modulus search for N = 2 on a uniform phase grid. The
// objective expands into scalar terms, so each grid point is O(1).
double grid_optimum_n2(const cvec& h, const cmat& cascaded, double step) {
    const cvec c1 = cascaded.col(0), c2 = cascaded.col(1);
    const double t0 = h.squaredNorm() + c1.squaredNorm() + c2.squaredNorm();
    const cplx a = h.dot(c1);  // conj(h) . c1
    const cplx b = h.dot(c2);
    const cplx c = c1.dot(c2);

    const int steps = static_cast<int>(std::ceil(2.0 * kPi / step));
    std::vector<cplx> ph(steps);
    for (int i = 0; i < steps; ++i) ph[i] = std::polar(1.0, i * step);

    double best = -1.0;
    for (int i = 0; i < steps; ++i) {
        const cplx ea = ph[i];
        const double base = t0 + 2.0 * std::real(a * ea);
        const cplx cea = c * std::conj(ea);
        for (int j = 0; j < steps; ++j) {
            const double val =
                base + 2.0 * std::real(b * ph[j]) + 2.0 * std::real(cea * ph[j]);
            if (val > best) best = val;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("single-direction secular equation has the textbook root") {
    const rvec lam = (rvec(1) << 2.0).finished();
    const rvec w = (rvec(1) << 4.0).finished();
    // 4 / (g - 2)^2 = 1  ->  g = 4
    CHECK(secular_root(lam, w, 1.0) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("secular root sits above the spectrum with a tiny residual") {
    RngStream rng(83, 0, 0, StreamTag::Scenario);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 1 + static_cast<int>(rng.uniform(0.0, 6.0));
        rvec lam(n), w(n);
        for (int d = 0; d < n; ++d) {
            lam(d) = rng.uniform(0.0, 5.0);
            w(d) = rng.uniform(0.0, 3.0);
        }
        w(0) = std::max(w(0), 0.1);  // at least one positive weight
        const double target = static_cast<double>(n);
        const double g = secular_root(lam, w, target);
        CHECK(g > lam.maxCoeff());
        double lhs = 0.0;
        for (int d = 0; d < n; ++d) lhs += w(d) / std::pow(g - lam(d), 2.0);
        CHECK(std::abs(lhs - target) <= 1e-9 * target);
    }
    CHECK_THROWS(secular_root(rvec::Ones(2), rvec::Zero(2), 2.0));
}

TEST_CASE("zero direct estimate falls back to the scaled dominant eigenvector") {
    RngStream rng(89, 0, 0, StreamTag::Scenario);
    const int m = 4, n = 3;
    const cmat cascaded = rng.cnormal_matrix(m, n);
    const RelaxedSolution sol = solve_relaxed(cvec::Zero(m), cascaded);
    CHECK(sol.dominant_branch);
    CHECK(sol.phi_star.squaredNorm() == doctest::Approx(static_cast<double>(n)).epsilon(1e-10));

    Eigen::SelfAdjointEigenSolver<cmat> eig(cascaded.adjoint() * cascaded);
    const double lam_max = eig.eigenvalues().maxCoeff();
    CHECK(channel_strength(cvec::Zero(m), cascaded, sol.phi_star) ==
          doctest::Approx(n * lam_max).epsilon(1e-10));
}

TEST_CASE("single-element RIS aligns its phase with the matched filter") {
    RngStream rng(97, 0, 0, StreamTag::Scenario);
    const int m = 3;
    const cvec h = rng.cnormal_vector(m);
    const cmat g = rng.cnormal_matrix(m, 1);
    const RelaxedSolution sol = solve_relaxed(h, g);

    const cplx matched = g.col(0).dot(h);  // g^H h
    // relaxed solution is a positive real multiple of g^H h
    const cplx ratio = sol.phi_star(0) / matched;
    CHECK(std::abs(std::imag(ratio)) <= 1e-10 * std::abs(ratio));
    CHECK(std::real(ratio) > 0.0);

    const cvec phi = project_unit_modulus(sol.phi_star);
    CHECK(std::arg(phi(0)) == doctest::Approx(std::arg(matched)).epsilon(1e-10));
}

TEST_CASE("relaxed solution saturates the norm constraint") {
    RngStream rng(101, 0, 0, StreamTag::Scenario);
    for (int rep = 0; rep < 20; ++rep) {
        const int m = 2 + (rep % 3), n = 1 + (rep % 4);
        const cvec h = rng.cnormal_vector(m);
        const cmat cascaded = rng.cnormal_matrix(m, n);
        const RelaxedSolution sol = solve_relaxed(h, cascaded);
        CHECK(sol.phi_star.squaredNorm() ==
              doctest::Approx(static_cast<double>(n)).epsilon(1e-8));
    }
}

TEST_CASE("relaxed objective dominates a fine unit-modulus grid search") {
    RngStream rng(103, 0, 0, StreamTag::Scenario);
    for (int rep = 0; rep < 5; ++rep) {
        const int m = 3;
        const cvec h = rng.cnormal_vector(m);
        const cmat cascaded = rng.cnormal_matrix(m, 2);
        const RelaxedSolution sol = solve_relaxed(h, cascaded);
        const double relaxed = channel_strength(h, cascaded, sol.phi_star);
        const double grid = grid_optimum_n2(h, cascaded, 2e-3);
        CHECK(relaxed >= grid - 1e-6);
    }
}

TEST_CASE("common phase rotations do not change the solution") {
    RngStream rng(107, 0, 0, StreamTag::Scenario);
    const cvec h = rng.cnormal_vector(3);
    const cmat cascaded = rng.cnormal_matrix(3, 2);
    const cplx rot = std::polar(1.0, 1.234);
    const RelaxedSolution a = solve_relaxed(h, cascaded);
    const RelaxedSolution b = solve_relaxed(rot * h, rot * cascaded);
    CHECK((a.phi_star - b.phi_star).norm() <= 1e-8 * a.phi_star.norm());
    CHECK(a.gamma_star == doctest::Approx(b.gamma_star).epsilon(1e-10));
}

TEST_CASE("unit-modulus projection keeps phases and maps zeros to one") {
    cvec v(3);
    v << cplx(0.0, -2.0), cplx(0.0, 0.0), cplx(3.0, 4.0);
    const cvec p = project_unit_modulus(v);
    CHECK(std::abs(p(0) - cplx(0.0, -1.0)) <= 1e-15);
    CHECK(std::abs(p(1) - cplx(1.0, 0.0)) <= 1e-15);
    CHECK(std::abs(p(2) - cplx(0.6, 0.8)) <= 1e-15);
    CHECK_THROWS(solve_relaxed(cvec::Constant(2, cplx(std::nan(""), 0.0)), cmat::Ones(2, 2)));
}
