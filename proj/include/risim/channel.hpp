// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "risim/rng.hpp"
#include "risim/scenario.hpp"
#include "risim/types.hpp"

namespace risim {

/// Hermitian square root with negative eigenvalues clipped to zero.
/// Factorized once per scenario; sampling reuses it.
class CorrelationSqrt {
  public:
    CorrelationSqrt() = default;
    explicit CorrelationSqrt(const cmat& corr);

    const cmat& matrix() const { return sqrt_; }
    Eigen::Index dim() const { return sqrt_.rows(); }

    /// sqrt(R) * w
    cvec apply(const cvec& w) const { return sqrt_ * w; }

  private:
    cmat sqrt_;
};

/// One coherence block's sampled channels.
struct ChannelRealization {
    std::vector<cvec> h;               // per UE, M
    std::vector<std::vector<cvec>> f;  // [ue][ris], N
    std::vector<cmat> G;               // per RIS, M x N
    std::vector<std::vector<cmat>> H;  // [ue][ris], M x N cascaded
};

/// Precomputed per-drop sampling state (correlation square roots).
struct ChannelSampler {
    explicit ChannelSampler(const Scenario& scenario);

    cvec sample_direct(int ue, RngStream& rng) const;
    cvec sample_ris_ue(int ue, int ris, RngStream& rng) const;
    cmat sample_bs_ris(int ris, RngStream& rng) const;

    /// Samples every link and forms the cascaded matrices.
    ChannelRealization sample_block(RngStream& direct_rng, RngStream& ris_ue_rng,
                                    RngStream& bs_ris_rng) const;

    const Scenario& scenario() const { return *scenario_; }

  private:
    const Scenario* scenario_;
    std::vector<CorrelationSqrt> direct_sqrt_;
    std::vector<std::vector<CorrelationSqrt>> ris_ue_sqrt_;
    std::vector<CorrelationSqrt> bs_sqrt_;
    std::vector<CorrelationSqrt> ris_sqrt_;
};

/// Stand-alone sampling kernels (the sampler wraps these with cached roots).
cvec sample_link(const LinkStatistics& stats, const CorrelationSqrt& corr_sqrt, RngStream& rng);
cmat sample_bs_ris_link(const BsRisStatistics& stats, const CorrelationSqrt& bs_sqrt,
                        const CorrelationSqrt& ris_sqrt, RngStream& rng);

/// H = G * diag(f): column n of G scaled by f(n).
cmat cascade(const cmat& g, const cvec& f);

/// b = h + sum_j H'_j phi_j. Throws if any phase entry is not unit modulus.
cvec effective_channel(const cvec& h, const std::vector<cmat>& cascaded,
                       const std::vector<cvec>& phases);

}  // namespace risim
