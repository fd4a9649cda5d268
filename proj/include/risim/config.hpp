// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "risim/types.hpp"

namespace risim {

enum class FadingVariant {
    AlwaysLosS1,       // LOS guaranteed on every RIS-UE link, single specular component
    AlwaysLosS3,       // LOS guaranteed, three specular components on RIS-UE and BS-RIS links
    ProbabilisticLos,  // LOS existence drawn from the distance-based probability model
    ConventionalNoRis, // massive MIMO baseline without any RIS
};

enum class EstimatorKind { Lmmse, Ls };
enum class CorrelationModel { Quadrature, SmallAngleApprox };

std::string to_string(FadingVariant v);
FadingVariant fading_variant_from_string(const std::string& s);

/// Linear-log pathloss: PL(d) [dB] = intercept + slope * log10(d [m]),
/// with lognormal shadowing of the given standard deviation.
struct PathlossCoefficients {
    double intercept_db = 0.0;
    double slope_db = 0.0;
    double shadow_std_db = 0.0;
};

/// Distance-based propagation model. Defaults follow a standard urban
/// microcell parameterization; all coefficients are configuration, not
/// ground truth.
struct PropagationParams {
    PathlossCoefficients los{30.18, 26.0, 4.0};
    PathlossCoefficients nlos{34.53, 38.0, 10.0};
    // P_los(d) = floor + (1-floor) * (min(d0/d,1)(1-e^{-d/d1}) + e^{-d/d1})
    double los_prob_d0_m = 18.0;
    double los_prob_d1_m = 36.0;
    double los_prob_floor = 0.0;
    // Rician factor kappa = 10^(k_a + k_b * d), d in meters
    double kfactor_a = 1.3;
    double kfactor_b = -0.003;
};

struct Rectangle {
    double x0 = 200.0, y0 = -25.0;
    double x1 = 300.0, y1 = 25.0;
};

struct GeometryConfig {
    std::array<double, 2> bs_position{0.0, 0.0};
    std::vector<std::array<double, 2>> ris_positions{{10.0, 30.0}, {10.0, -30.0}};
    Rectangle ue_area{};
    double height_offset_m = 10.0;  // BS and RISs mounted this far above the UEs
};

struct TrialConfig {
    int drops = 50;
    int blocks_per_drop = 500;
    int min_blocks = 500;
    int max_rerun_attempts = 3;  // on a negative Monte Carlo SINR denominator
};

struct ScenarioConfig {
    int M = 32;   // BS antennas
    int N = 64;   // elements per RIS
    int L = 2;    // RIS count
    int K = 4;    // UE count
    int R = 4;    // sub-surfaces per RIS during pilot training

    int tau_c = 10000;
    double eta = 0.1;      // pilot power [W]
    double p_max = 0.1;    // max uplink data power [W]
    double sigma2 = thermal_noise_power(1e6, 7.0);  // noise power [W]
    double carrier_freq_hz = 1.9e9;
    double angular_std_deg = 15.0;
    double los_power_ratio = 0.5;  // LOS share of specular power in the S=3 variant
    int conv_pilot_factor = 20;    // tau_p = factor * K for the no-RIS baseline

    FadingVariant fading_variant = FadingVariant::AlwaysLosS1;
    EstimatorKind estimator = EstimatorKind::Lmmse;
    CorrelationModel correlation_model = CorrelationModel::Quadrature;
    bool perfect_csi = false;

    double bs_spacing = 0.5;   // wavelengths
    double ris_spacing = 0.25; // wavelengths

    GeometryConfig geometry{};
    PropagationParams pathloss_params{};
    TrialConfig trials{};
    std::uint64_t seed = 1;

    int tau_p() const {
        return fading_variant == FadingVariant::ConventionalNoRis ? conv_pilot_factor * K
                                                                  : (L * R + 1) * K;
    }

    /// Throws std::invalid_argument on any violated invariant.
    void validate() const;

    /// Paper-scale knobs: M=100, N=256 (16x16), K=10, R=16.
    static ScenarioConfig paper_scale();
};

ScenarioConfig load_config(const std::string& path);
void apply_override(ScenarioConfig& cfg, const std::string& key, const std::string& value);
std::string config_to_text(const ScenarioConfig& cfg);

}  // namespace risim
