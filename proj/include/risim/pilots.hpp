// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "risim/channel.hpp"
#include "risim/rng.hpp"
#include "risim/scenario.hpp"
#include "risim/types.hpp"

namespace risim {

/// Structured pilot schedule: orthonormal per-UE pilots (scaled DFT columns)
/// and the LR unit-modulus RIS phase patterns (DFT columns 2..LR+1), each
/// orthogonal to each other and to the all-ones vector.
struct PilotSchedule {
    std::vector<cvec> ue_pilots;   // K vectors of length K, unit norm
    std::vector<cvec> ris_phases;  // L*R vectors of length L*R+1, unit-modulus entries
    int K = 0, L = 0, R = 0;

    int intervals() const { return L * R + 1; }
    int tau_p() const { return intervals() * K; }
    /// Pattern of sub-surface r of RIS l, flattened as l * R + r.
    const cvec& psi(int l, int r) const { return ris_phases[l * R + r]; }
};

PilotSchedule build_pilot_schedule(int K, int L, int R);

/// Per-UE sufficient statistics extracted from one block's pilot signals.
struct SufficientStatistics {
    std::vector<cvec> z_direct;                          // per UE, M
    std::vector<std::vector<std::vector<cvec>>> z_casc;  // [ue][ris][r], M
};

/// Received pilot signal in every interval: Y_t in C^{M x K} per
/// Y_t = sum_i sqrt(K eta) (h_i + sum_{l,r} psi_{lr,t} c_{i,lr}) phi_i^T + N_t
/// where c_{i,lr} is the column sum of H_{il} over sub-surface (l, r).
std::vector<cmat> simulate_pilot_reception(const ChannelRealization& channels,
                                           const PilotSchedule& schedule,
                                           const std::vector<std::vector<int>>& subsurfaces,
                                           double eta, double sigma2, RngStream& rng);

/// z_{k,t} = Y_t * conj(phi_k) for every interval t.
std::vector<cvec> despread(const std::vector<cmat>& received, const cvec& pilot);

/// z^{p,h}_k = sum_t z_{k,t} / sqrt(LR+1); the RIS patterns sum to zero, so
/// only the direct channel survives in the noiseless case.
cvec direct_statistic(const std::vector<cvec>& z_intervals);

/// z^{p,H}_{k,lr} = sum_t conj(psi_{lr,t}) z_{k,t} / sqrt(LR+1).
cvec cascaded_statistic(const std::vector<cvec>& z_intervals, const cvec& psi);

/// Full despread + statistic pipeline for all UEs.
SufficientStatistics compute_sufficient_statistics(const std::vector<cmat>& received,
                                                   const PilotSchedule& schedule);

}  // namespace risim
