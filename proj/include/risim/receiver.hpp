// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "risim/types.hpp"

namespace risim {

/// Running per-UE sums of the SINR-bound expectations over coherence blocks:
/// E{v^H b_k}, E{|v^H b_i|^2} for all i, and E{||v||^2}.
struct MomentAccumulator {
    cplx signal_sum{0.0, 0.0};
    rvec cross_sums;  // K entries
    double norm_sum = 0.0;
    long blocks = 0;

    explicit MomentAccumulator(int k_count = 0) : cross_sums(rvec::Zero(k_count)) {}

    void add_block(const cvec& combiner, const std::vector<cvec>& true_channels, int ue);
    void merge(const MomentAccumulator& other);

    cplx mean_signal() const { return signal_sum / static_cast<double>(blocks); }
    rvec mean_cross() const { return cross_sums / static_cast<double>(blocks); }
    double mean_norm() const { return norm_sum / static_cast<double>(blocks); }
};

/// Finalized per-UE moments fed to the SINR bound and to power control.
struct UeMoments {
    double signal = 0.0;   // |E{v^H b_k}|^2
    rvec cross;            // E{|v^H b_i|^2} per i
    double combiner_norm = 0.0;  // E{||v||^2}
};

UeMoments finalize_moments(const MomentAccumulator& acc, int ue);

struct SEResult {
    rvec sinr;    // per UE
    rvec se;      // bits/s/Hz per UE
    double prelog = 0.0;
    rvec powers;  // allocation used
};

/// MR combining: v = b_hat.
cvec mr_combiner(const cvec& b_hat);

/// RZF combining for all UEs; one factorization shared across the K solves.
std::vector<cvec> rzf_combiner(const std::vector<cvec>& b_hat, const rvec& powers, double sigma2);

double sinr_from_moments(const UeMoments& m, int ue, const rvec& powers, double sigma2);

/// SE_k = (tau_c - tau_p)/tau_c * log2(1 + SINR_k). Throws on zero blocks or
/// a non-positive Monte Carlo denominator.
SEResult finalize_se(const std::vector<UeMoments>& moments, const rvec& powers, double sigma2,
                     int tau_c, int tau_p);

/// True when every UE's interference-plus-noise denominator is positive;
/// callers reject and re-run the trial otherwise.
bool moments_well_posed(const std::vector<UeMoments>& moments, const rvec& powers, double sigma2);

}  // namespace risim
