// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "risim/pilots.hpp"
#include "risim/scenario.hpp"
#include "risim/types.hpp"

namespace risim {

/// Solver for (q R + sigma2 I) x = z with R Hermitian PSD. For sigma2 > 0 the
/// matrix is positive definite and an LDLT factorization is used; for the
/// degenerate sigma2 = 0 case an eigendecomposition-based pseudo-solve keeps
/// noiseless tests exact.
class HermitianSolver {
  public:
    HermitianSolver() = default;
    HermitianSolver(const cmat& r, double q, double sigma2);

    cvec solve(const cvec& z) const;

  private:
    bool pseudo_ = false;
    Eigen::LDLT<cmat> ldlt_;
    cmat eigvecs_;
    rvec inv_eigvals_;
};

/// LMMSE estimate of the direct channel:
/// h_hat = sqrt(q) R (q R + sigma2 I)^{-1} z with q = K (LR+1) eta.
cvec lmmse_direct(const cvec& z, const cmat& mean_corr, double q, double sigma2);

/// Estimation statistics for the cascaded channels of one (UE, RIS) pair.
/// Holds the per-column correlation structure implied by the specular BS-RIS
/// components, the Kronecker factors, and the mean RIS-UE correlation, plus
/// the per-sub-surface solver reused across coherence blocks.
class CascadedStatistics {
  public:
    CascadedStatistics(const BsRisStatistics& bs_ris, const cmat& f_mean_corr,
                       const std::vector<std::vector<int>>& subsurfaces, double q, double sigma2);

    /// Dense per-column statistic R_{kl,n} (M x M); intended for tests and
    /// small instances.
    cmat column_stat(int n) const;

    /// Sum of column_stat over the sub-surface containing the columns of
    /// group r.
    const cmat& group_stat(int r) const { return group_stats_[r]; }

    /// LMMSE estimates of all N cascaded columns from the R sub-surface
    /// statistics z[r].
    cmat estimate_columns(const std::vector<cvec>& z) const;

    /// LS baseline: each sub-surface column sum z[r] / sqrt(q), split evenly
    /// across the sub-surface's elements.
    cmat ls_columns(const std::vector<cvec>& z) const;

    int n_elements() const { return static_cast<int>(group_of_.size()); }

  private:
    const BsRisStatistics* bs_ris_;
    cmat f_mean_corr_;
    std::vector<std::vector<int>> subsurfaces_;
    std::vector<int> group_of_;  // element index -> sub-surface index
    double q_;
    std::vector<cmat> group_stats_;
    std::vector<HermitianSolver> solvers_;
};

/// Kernel form of Lemma-style cascaded LMMSE: columns from an explicit list
/// of per-column statistics and their sum.
std::vector<cvec> lmmse_cascaded(const cvec& z, const std::vector<cmat>& column_stats,
                                 const cmat& group_stat, double q, double sigma2);

/// b_hat_k = h_hat_k + sum_j Hhat'_{kj} phi_j.
cvec assemble_overall_estimate(const cvec& h_hat, const std::vector<cmat>& cascaded_hat,
                               const std::vector<cvec>& phases);

}  // namespace risim
