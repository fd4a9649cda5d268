// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "risim/config.hpp"
#include "risim/types.hpp"

namespace risim {

/// Linear channel gain from the configured pathloss coefficients plus a
/// shadow fading draw in dB. Throws on non-positive distance.
double path_gain(double distance_m, bool los, double shadow_db, const PropagationParams& params);

/// Probability of LOS existence at the given distance, in [0, 1] and
/// non-increasing in distance.
double los_probability(double distance_m, const PropagationParams& params);

/// Rician kappa factor (linear) at the given distance.
double rician_kfactor(double distance_m, const PropagationParams& params);

}  // namespace risim
