// SPDX-License-Identifier: Apache-2.0

#include "risim/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace risim {

double path_gain(double distance_m, bool los, double shadow_db, const PropagationParams& params) {
    if (!(distance_m > 0.0)) throw std::invalid_argument("path_gain: distance must be positive");
    const PathlossCoefficients& c = los ? params.los : params.nlos;
    const double pl_db = c.intercept_db + c.slope_db * std::log10(distance_m);
    return std::pow(10.0, (-pl_db + shadow_db) / 10.0);
}

double los_probability(double distance_m, const PropagationParams& params) {
    if (!(distance_m > 0.0))
        throw std::invalid_argument("los_probability: distance must be positive");
    const double base = std::min(params.los_prob_d0_m / distance_m, 1.0) *
                            (1.0 - std::exp(-distance_m / params.los_prob_d1_m)) +
                        std::exp(-distance_m / params.los_prob_d1_m);
    return params.los_prob_floor + (1.0 - params.los_prob_floor) * base;
}

double rician_kfactor(double distance_m, const PropagationParams& params) {
    return std::pow(10.0, params.kfactor_a + params.kfactor_b * distance_m);
}

}  // namespace risim
