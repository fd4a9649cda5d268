// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "risim/config.hpp"
#include "risim/geometry.hpp"
#include "risim/rng.hpp"
#include "risim/types.hpp"

namespace risim {

/// Long-term state of one vector link (BS-UE or RIS-UE): the specular
/// steering components (scaled by the square root of their link gains) and
/// the diffuse-part correlation matrix.
struct LinkStatistics {
    std::vector<cvec> specular;
    std::vector<bool> fixed_los_flag;  // true = no random phase on that component
    cmat nonspecular_corr;

    Eigen::Index dim() const { return nonspecular_corr.rows(); }

    /// E{x x^H} = sum_s specular_s specular_s^H + nonspecular_corr.
    cmat mean_corr() const;

    static LinkStatistics zero(Eigen::Index dim);
};

/// Long-term state of one BS-RIS link under the Kronecker model. The first
/// specular matrix is the LOS component and carries no random phase.
struct BsRisStatistics {
    std::vector<cmat> specular;  // each M x N; specular[0] is LOS
    cmat corr_bs;                // M x M receive correlation
    cmat corr_ris;               // N x N transmit correlation (carries the diffuse link gain)
};

/// Which RIS elements (global indices in [0, L*N)) serve each UE.
struct RisAssignment {
    std::vector<std::vector<int>> elements;  // per UE, sorted
    std::vector<int> ris_of_ue;              // RIS index serving each UE, -1 if none

    int count(int ue) const { return static_cast<int>(elements[ue].size()); }
};

struct Position {
    double x = 0.0, y = 0.0;
};

/// Everything fixed for one UE drop: positions, large-scale gains, link
/// statistics, RIS element assignment, and the sub-surface partition.
struct Scenario {
    ScenarioConfig config;
    ArrayGeometry bs_array;
    ArrayGeometry ris_array;
    std::vector<Position> ue_positions;

    std::vector<LinkStatistics> direct;               // per UE, dimension M
    std::vector<std::vector<LinkStatistics>> ris_ue;  // [ue][ris], dimension N
    std::vector<BsRisStatistics> bs_ris;              // per RIS
    std::vector<double> direct_gain;                  // linear mean BS-UE gain per UE

    RisAssignment assignment;
    std::vector<std::vector<int>> subsurfaces;  // [r] -> local element indices, shared by all RISs
};

std::vector<Position> drop_users(const ScenarioConfig& config, RngStream& rng);

/// Partition an Nh x Nv surface into R groups of N/R elements, as square
/// tiles when the counts divide evenly, otherwise contiguous index blocks.
std::vector<std::vector<int>> subsurface_indices(int n_horizontal, int n_vertical, int r);

RisAssignment assign_ris_elements(const std::vector<double>& bs_ue_gains,
                                  const std::vector<Position>& ue_positions,
                                  const ScenarioConfig& config);

/// Builds one complete drop: UE positions, LOS/shadowing draws, specular
/// components, correlation matrices, and the RIS assignment.
Scenario build_scenario(const ScenarioConfig& config, RngStream& rng);

}  // namespace risim
