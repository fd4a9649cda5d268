// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "risim/config.hpp"
#include "risim/power.hpp"
#include "risim/receiver.hpp"
#include "risim/types.hpp"

namespace risim {

enum class Combiner { Mr, Rzf };
std::string to_string(Combiner c);

/// One UE drop's outcome for both combiners.
struct TrialResult {
    SEResult mr;
    SEResult rzf;
    int blocks_used = 0;
    int rerun_attempts = 0;
};

struct SeSample {
    int drop = 0;
    int ue = 0;
    Combiner combiner = Combiner::Mr;
    double se = 0.0;
};

struct CdfPoint {
    Combiner combiner = Combiner::Mr;
    double quantile = 0.0;
    double se = 0.0;
};

struct ExperimentResult {
    ScenarioConfig config;
    std::vector<SeSample> samples;  // ordered by (drop, combiner, ue)
    std::vector<CdfPoint> cdf;
    double wall_seconds = 0.0;

    /// Pooled SE samples for one combiner, unsorted.
    std::vector<double> pool(Combiner c) const;
};

/// Empirical quantile with linear interpolation between order statistics.
double empirical_quantile(std::vector<double> values, double quantile);

/// Runs one UE drop end to end: scenario, per-block estimate/phase/combine
/// pipeline, max-min power control, SE finalization.
TrialResult run_trial(const ScenarioConfig& config, int drop_index);

ExperimentResult run_experiment(const ScenarioConfig& config, int workers = 1);

/// Writes se_samples.csv, cdf.csv, and a config_echo sidecar into out_dir.
/// The optional combiner filter restricts the emitted rows.
void emit_results(const ExperimentResult& result, const std::string& out_dir,
                  std::optional<Combiner> only = std::nullopt);

}  // namespace risim
