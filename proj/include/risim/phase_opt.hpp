// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "risim/types.hpp"

namespace risim {

/// Solution of the norm-relaxed channel-strength maximization
/// max ||h + H phi||^2 s.t. ||phi||^2 <= N.
struct RelaxedSolution {
    cvec phi_star;                // length N
    double gamma_star = 0.0;      // Lagrange root; 0 in the h = 0 branch
    rvec eigvals;                 // eigenvalues of H^H H
    cvec projections;             // u_d^H H^H h per eigendirection
    bool dominant_branch = false; // true when the h = 0 branch was taken
};

/// Root gamma* > max(eigvals) of sum_d w_d / (gamma - lambda_d)^2 = n, found
/// by bracketed bisection. Requires at least one strictly positive weight.
double secular_root(const rvec& eigvals, const rvec& weights, double n);

RelaxedSolution solve_relaxed(const cvec& h_hat, const cmat& cascaded_hat);

/// Entrywise phase extraction; zero entries map to 1.
cvec project_unit_modulus(const cvec& phi_star);

/// ||h + H phi||^2, shared by implementation and tests.
inline double channel_strength(const cvec& h, const cmat& cascaded, const cvec& phi) {
    return (h + cascaded * phi).squaredNorm();
}

}  // namespace risim
