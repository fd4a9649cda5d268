// SPDX-License-Identifier: Apache-2.0

#include "risim/config.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace risim {

using nlohmann::json;

std::string to_string(FadingVariant v) {
    switch (v) {
        case FadingVariant::AlwaysLosS1: return "always_los_s1";
        case FadingVariant::AlwaysLosS3: return "always_los_s3";
        case FadingVariant::ProbabilisticLos: return "probabilistic_los";
        case FadingVariant::ConventionalNoRis: return "conventional";
    }
    return "unknown";
}

FadingVariant fading_variant_from_string(const std::string& s) {
    if (s == "always_los_s1") return FadingVariant::AlwaysLosS1;
    if (s == "always_los_s3") return FadingVariant::AlwaysLosS3;
    if (s == "probabilistic_los") return FadingVariant::ProbabilisticLos;
    if (s == "conventional") return FadingVariant::ConventionalNoRis;
    throw std::invalid_argument("unknown fading variant: " + s);
}

namespace {

json to_json(const ScenarioConfig& c) {
    json j;
    j["system"] = {{"M", c.M},           {"N", c.N},
                   {"L", c.L},           {"K", c.K},
                   {"R", c.R},           {"tau_c", c.tau_c},
                   {"conv_pilot_factor", c.conv_pilot_factor}};
    j["power"] = {{"eta", c.eta}, {"p_max", c.p_max}, {"sigma2", c.sigma2}};
    j["radio"] = {{"carrier_freq_hz", c.carrier_freq_hz},
                  {"angular_std_deg", c.angular_std_deg},
                  {"bs_spacing", c.bs_spacing},
                  {"ris_spacing", c.ris_spacing}};
    j["variant"] = {{"fading", to_string(c.fading_variant)},
                    {"estimator", c.estimator == EstimatorKind::Lmmse ? "lmmse" : "ls"},
                    {"correlation_model",
                     c.correlation_model == CorrelationModel::Quadrature ? "quadrature"
                                                                         : "approx"},
                    {"perfect_csi", c.perfect_csi},
                    {"los_power_ratio", c.los_power_ratio}};
    j["geometry"] = {{"bs", c.geometry.bs_position},
                     {"ris", c.geometry.ris_positions},
                     {"ue_area", {c.geometry.ue_area.x0, c.geometry.ue_area.y0,
                                  c.geometry.ue_area.x1, c.geometry.ue_area.y1}},
                     {"height_offset_m", c.geometry.height_offset_m}};
    const PropagationParams& p = c.pathloss_params;
    j["pathloss"] = {
        {"los",
         {{"intercept_db", p.los.intercept_db},
          {"slope_db", p.los.slope_db},
          {"shadow_std_db", p.los.shadow_std_db}}},
        {"nlos",
         {{"intercept_db", p.nlos.intercept_db},
          {"slope_db", p.nlos.slope_db},
          {"shadow_std_db", p.nlos.shadow_std_db}}},
        {"los_prob_d0_m", p.los_prob_d0_m},
        {"los_prob_d1_m", p.los_prob_d1_m},
        {"los_prob_floor", p.los_prob_floor},
        {"kfactor_a", p.kfactor_a},
        {"kfactor_b", p.kfactor_b}};
    j["trials"] = {{"drops", c.trials.drops},
                   {"blocks_per_drop", c.trials.blocks_per_drop},
                   {"min_blocks", c.trials.min_blocks},
                   {"max_rerun_attempts", c.trials.max_rerun_attempts}};
    j["seed"] = c.seed;
    return j;
}

template <typename T>
void maybe(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

void from_json(const json& j, ScenarioConfig& c) {
    if (j.contains("system")) {
        const json& s = j["system"];
        maybe(s, "M", c.M);
        maybe(s, "N", c.N);
        maybe(s, "L", c.L);
        maybe(s, "K", c.K);
        maybe(s, "R", c.R);
        maybe(s, "tau_c", c.tau_c);
        maybe(s, "conv_pilot_factor", c.conv_pilot_factor);
    }
    if (j.contains("power")) {
        const json& s = j["power"];
        maybe(s, "eta", c.eta);
        maybe(s, "p_max", c.p_max);
        if (s.contains("sigma2"))
            c.sigma2 = s["sigma2"].get<double>();
        else if (s.contains("bandwidth_hz") || s.contains("noise_figure_db")) {
            double bw = 1e6, nf = 7.0;
            maybe(s, "bandwidth_hz", bw);
            maybe(s, "noise_figure_db", nf);
            c.sigma2 = thermal_noise_power(bw, nf);
        }
    }
    if (j.contains("radio")) {
        const json& s = j["radio"];
        maybe(s, "carrier_freq_hz", c.carrier_freq_hz);
        maybe(s, "angular_std_deg", c.angular_std_deg);
        maybe(s, "bs_spacing", c.bs_spacing);
        maybe(s, "ris_spacing", c.ris_spacing);
    }
    if (j.contains("variant")) {
        const json& s = j["variant"];
        if (s.contains("fading"))
            c.fading_variant = fading_variant_from_string(s["fading"].get<std::string>());
        if (s.contains("estimator")) {
            const std::string e = s["estimator"].get<std::string>();
            if (e == "lmmse")
                c.estimator = EstimatorKind::Lmmse;
            else if (e == "ls")
                c.estimator = EstimatorKind::Ls;
            else
                throw std::invalid_argument("unknown estimator: " + e);
        }
        if (s.contains("correlation_model")) {
            const std::string m = s["correlation_model"].get<std::string>();
            if (m == "quadrature")
                c.correlation_model = CorrelationModel::Quadrature;
            else if (m == "approx")
                c.correlation_model = CorrelationModel::SmallAngleApprox;
            else
                throw std::invalid_argument("unknown correlation model: " + m);
        }
        maybe(s, "perfect_csi", c.perfect_csi);
        maybe(s, "los_power_ratio", c.los_power_ratio);
    }
    if (j.contains("geometry")) {
        const json& s = j["geometry"];
        maybe(s, "bs", c.geometry.bs_position);
        maybe(s, "ris", c.geometry.ris_positions);
        if (s.contains("ue_area")) {
            const auto a = s["ue_area"].get<std::array<double, 4>>();
            c.geometry.ue_area = {a[0], a[1], a[2], a[3]};
        }
        maybe(s, "height_offset_m", c.geometry.height_offset_m);
    }
    if (j.contains("pathloss")) {
        const json& s = j["pathloss"];
        PropagationParams& p = c.pathloss_params;
        for (auto [key, coeff] : {std::pair{"los", &p.los}, {"nlos", &p.nlos}}) {
            if (!s.contains(key)) continue;
            maybe(s[key], "intercept_db", coeff->intercept_db);
            maybe(s[key], "slope_db", coeff->slope_db);
            maybe(s[key], "shadow_std_db", coeff->shadow_std_db);
        }
        maybe(s, "los_prob_d0_m", p.los_prob_d0_m);
        maybe(s, "los_prob_d1_m", p.los_prob_d1_m);
        maybe(s, "los_prob_floor", p.los_prob_floor);
        maybe(s, "kfactor_a", p.kfactor_a);
        maybe(s, "kfactor_b", p.kfactor_b);
    }
    if (j.contains("trials")) {
        const json& s = j["trials"];
        maybe(s, "drops", c.trials.drops);
        maybe(s, "blocks_per_drop", c.trials.blocks_per_drop);
        maybe(s, "min_blocks", c.trials.min_blocks);
        maybe(s, "max_rerun_attempts", c.trials.max_rerun_attempts);
    }
    maybe(j, "seed", c.seed);
}

}  // namespace

void ScenarioConfig::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };
    if (M < 1 || K < 1) fail("M and K must be at least 1");
    if (fading_variant != FadingVariant::ConventionalNoRis) {
        if (N < 1 || L < 1) fail("N and L must be at least 1 in RIS mode");
        if (R < 1 || R > N || N % R != 0) fail("R must divide N with 1 <= R <= N");
        if (static_cast<int>(geometry.ris_positions.size()) < L)
            fail("need a position for every RIS");
    }
    if (tau_p() >= tau_c) fail("tau_p must be smaller than tau_c");
    if (!(eta > 0.0) || !(p_max > 0.0) || !(sigma2 > 0.0) || !(carrier_freq_hz > 0.0))
        fail("powers, sigma2, and carrier_freq must be strictly positive");
    if (!(angular_std_deg > 0.0)) fail("angular_std must be positive");
    if (los_power_ratio < 0.0 || los_power_ratio > 1.0) fail("los_power_ratio outside [0,1]");
    if (trials.drops < 1 || trials.blocks_per_drop < 1) fail("trial counts must be positive");
}

ScenarioConfig ScenarioConfig::paper_scale() {
    ScenarioConfig c;
    c.M = 100;
    c.N = 256;
    c.K = 10;
    c.R = 16;
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    json j = json::parse(in);
    ScenarioConfig c;
    from_json(j, c);
    return c;
}

void apply_override(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
    json j = to_json(cfg);
    std::string pointer = "/" + key;
    for (char& ch : pointer)
        if (ch == '.') ch = '/';
    json parsed;
    try {
        parsed = json::parse(value);
    } catch (const json::parse_error&) {
        parsed = value;  // bare strings are valid values
    }
    j[json::json_pointer(pointer)] = parsed;
    ScenarioConfig fresh;
    from_json(j, fresh);
    cfg = fresh;
}

std::string config_to_text(const ScenarioConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

}  // namespace risim
