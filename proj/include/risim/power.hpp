// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "risim/receiver.hpp"
#include "risim/types.hpp"

namespace risim {

struct PowerAllocation {
    rvec p;               // per-UE transmit power in [0, p_max]
    int iterations = 0;
    double sinr_spread = 0.0;  // max - min SINR at exit
};

/// Max-min fairness power control by fixed-point iteration: each UE's power
/// is set to its interference-plus-noise over signal ratio, then all powers
/// are scaled so the largest equals p_max, until the SINRs agree within
/// epsilon. Throws on a zero signal moment or when the iteration cap is hit.
PowerAllocation maxmin_fixed_point(const std::vector<UeMoments>& moments, double sigma2,
                                   double p_max, double epsilon, int max_iterations = 10000);

}  // namespace risim
