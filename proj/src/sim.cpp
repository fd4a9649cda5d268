// SPDX-License-Identifier: Apache-2.0

#include "risim/sim.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "risim/channel.hpp"
#include "risim/estimation.hpp"
#include "risim/phase_opt.hpp"
#include "risim/pilots.hpp"
#include "risim/scenario.hpp"

namespace risim {

namespace {

constexpr std::uint64_t kScenarioBlock = ~0ULL;
constexpr std::uint64_t kAttemptStride = 1ULL << 24;

/// Per-drop immutable state shared by all blocks of a trial.
struct TrialContext {
    Scenario scenario;
    ChannelSampler sampler;
    PilotSchedule schedule;
    double q = 0.0;  // pilot processing gain K(LR+1)eta, or tau_p*eta for conv
    std::vector<cmat> direct_corr;
    std::vector<HermitianSolver> direct_solver;
    std::vector<std::vector<CascadedStatistics>> cascaded_stats;  // [ue][ris]
    bool ris_mode = false;

    explicit TrialContext(Scenario sc)
        : scenario(std::move(sc)), sampler(scenario) {
        const ScenarioConfig& cfg = scenario.config;
        ris_mode = cfg.fading_variant != FadingVariant::ConventionalNoRis;
        q = ris_mode ? static_cast<double>(cfg.K * (cfg.L * cfg.R + 1)) * cfg.eta
                     : static_cast<double>(cfg.tau_p()) * cfg.eta;
        if (ris_mode) schedule = build_pilot_schedule(cfg.K, cfg.L, cfg.R);
        for (int k = 0; k < cfg.K; ++k) {
            direct_corr.push_back(scenario.direct[k].mean_corr());
            direct_solver.emplace_back(direct_corr.back(), q, cfg.sigma2);
        }
        if (ris_mode) {
            cascaded_stats.resize(cfg.K);
            for (int k = 0; k < cfg.K; ++k)
                for (int l = 0; l < cfg.L; ++l)
                    cascaded_stats[k].emplace_back(scenario.bs_ris[l],
                                                   scenario.ris_ue[k][l].mean_corr(),
                                                   scenario.subsurfaces, q, cfg.sigma2);
        }
    }

    cvec estimate_direct(const cvec& z, int ue) const {
        return std::sqrt(q) * (direct_corr[ue] * direct_solver[ue].solve(z));
    }
};

/// Gather the columns of the full M x N per-RIS matrices belonging to UE j's
/// assigned element set.
cmat gather_columns(const std::vector<cmat>& per_ris, const std::vector<int>& global_indices,
                    int n_per_ris) {
    const Eigen::Index m = per_ris.empty() ? 0 : per_ris[0].rows();
    cmat out(m, static_cast<Eigen::Index>(global_indices.size()));
    for (std::size_t i = 0; i < global_indices.size(); ++i) {
        const int l = global_indices[i] / n_per_ris;
        const int n = global_indices[i] % n_per_ris;
        out.col(static_cast<Eigen::Index>(i)) = per_ris[l].col(n);
    }
    return out;
}

struct BlockAccumulators {
    std::vector<MomentAccumulator> mr;
    std::vector<MomentAccumulator> rzf;

    explicit BlockAccumulators(int k_count)
        : mr(k_count, MomentAccumulator(k_count)), rzf(k_count, MomentAccumulator(k_count)) {}
};

void run_block(const TrialContext& ctx, std::uint64_t drop, std::uint64_t block,
               BlockAccumulators& acc) {
    const ScenarioConfig& cfg = ctx.scenario.config;
    RngStream direct_rng(cfg.seed, drop, block, StreamTag::DirectChannel);
    RngStream ris_ue_rng(cfg.seed, drop, block, StreamTag::RisUeChannel);
    RngStream bs_ris_rng(cfg.seed, drop, block, StreamTag::BsRisChannel);
    RngStream noise_rng(cfg.seed, drop, block, StreamTag::PilotNoise);

    const ChannelRealization ch = ctx.sampler.sample_block(direct_rng, ris_ue_rng, bs_ris_rng);

    std::vector<cvec> h_hat(cfg.K);
    std::vector<std::vector<cmat>> casc_hat;  // [ue][ris], M x N column estimates
    if (ctx.ris_mode) {
        if (cfg.perfect_csi) {
            for (int k = 0; k < cfg.K; ++k) h_hat[k] = ch.h[k];
            casc_hat.assign(ch.H.begin(), ch.H.end());
        } else {
            const std::vector<cmat> received = simulate_pilot_reception(
                ch, ctx.schedule, ctx.scenario.subsurfaces, cfg.eta, cfg.sigma2, noise_rng);
            const SufficientStatistics stats =
                compute_sufficient_statistics(received, ctx.schedule);
            casc_hat.resize(cfg.K);
            for (int k = 0; k < cfg.K; ++k) {
                h_hat[k] = ctx.estimate_direct(stats.z_direct[k], k);
                for (int l = 0; l < cfg.L; ++l)
                    casc_hat[k].push_back(
                        cfg.estimator == EstimatorKind::Lmmse
                            ? ctx.cascaded_stats[k][l].estimate_columns(stats.z_casc[k][l])
                            : ctx.cascaded_stats[k][l].ls_columns(stats.z_casc[k][l]));
            }
        }
    } else {
        // Conventional baseline: orthogonal pilots of length tau_p, no RIS.
        for (int k = 0; k < cfg.K; ++k) {
            if (cfg.perfect_csi) {
                h_hat[k] = ch.h[k];
            } else {
                const cvec z = std::sqrt(ctx.q) * ch.h[k] +
                               std::sqrt(cfg.sigma2) * noise_rng.cnormal_vector(cfg.M);
                h_hat[k] = ctx.estimate_direct(z, k);
            }
        }
    }

    // Phase selection per assigned UE, then overall channels.
    std::vector<cvec> phases(cfg.K);
    std::vector<cvec> b_true(cfg.K), b_hat(cfg.K);
    if (ctx.ris_mode) {
        const RisAssignment& asg = ctx.scenario.assignment;
        for (int j = 0; j < cfg.K; ++j) {
            if (asg.count(j) == 0) {
                phases[j] = cvec(0);
                continue;
            }
            const cmat own = gather_columns(casc_hat[j], asg.elements[j], cfg.N);
            phases[j] = project_unit_modulus(solve_relaxed(h_hat[j], own).phi_star);
        }
        for (int k = 0; k < cfg.K; ++k) {
            std::vector<cmat> true_cols, hat_cols;
            for (int j = 0; j < cfg.K; ++j) {
                if (asg.count(j) == 0) {
                    true_cols.emplace_back(cfg.M, 0);
                    hat_cols.emplace_back(cfg.M, 0);
                } else {
                    true_cols.push_back(gather_columns(ch.H[k], asg.elements[j], cfg.N));
                    hat_cols.push_back(gather_columns(casc_hat[k], asg.elements[j], cfg.N));
                }
            }
            b_true[k] = effective_channel(ch.h[k], true_cols, phases);
            b_hat[k] = assemble_overall_estimate(h_hat[k], hat_cols, phases);
        }
    } else {
        for (int k = 0; k < cfg.K; ++k) {
            b_true[k] = ch.h[k];
            b_hat[k] = h_hat[k];
        }
    }

    const rvec uniform = rvec::Constant(cfg.K, cfg.p_max);
    const std::vector<cvec> v_rzf = rzf_combiner(b_hat, uniform, cfg.sigma2);
    for (int k = 0; k < cfg.K; ++k) {
        acc.mr[k].add_block(mr_combiner(b_hat[k]), b_true, k);
        acc.rzf[k].add_block(v_rzf[k], b_true, k);
    }
}

SEResult finalize_combiner(const std::vector<MomentAccumulator>& accs, const ScenarioConfig& cfg) {
    const int k_count = static_cast<int>(accs.size());
    std::vector<UeMoments> moments;
    moments.reserve(accs.size());
    for (int k = 0; k < k_count; ++k) moments.push_back(finalize_moments(accs[k], k));

    // UEs with a vanished signal moment are undecodable: they transmit with
    // zero power and report SE 0; power control runs over the rest.
    std::vector<int> decodable;
    for (int k = 0; k < k_count; ++k)
        if (moments[k].signal > 0.0) decodable.push_back(k);
    if (decodable.empty()) throw std::runtime_error("finalize: no decodable UE");

    rvec powers = rvec::Zero(k_count);
    if (static_cast<int>(decodable.size()) == k_count) {
        powers = maxmin_fixed_point(moments, cfg.sigma2, cfg.p_max, 1e-6).p;
    } else {
        std::vector<UeMoments> sub;
        for (int k : decodable) {
            UeMoments m = moments[k];
            rvec cross(decodable.size());
            for (std::size_t i = 0; i < decodable.size(); ++i) cross(i) = m.cross(decodable[i]);
            m.cross = cross;
            sub.push_back(std::move(m));
        }
        const rvec sub_p = maxmin_fixed_point(sub, cfg.sigma2, cfg.p_max, 1e-6).p;
        for (std::size_t i = 0; i < decodable.size(); ++i) powers(decodable[i]) = sub_p(i);
    }

    SEResult res;
    res.sinr = rvec::Zero(k_count);
    res.se = rvec::Zero(k_count);
    res.prelog = static_cast<double>(cfg.tau_c - cfg.tau_p()) / cfg.tau_c;
    res.powers = powers;
    for (int k : decodable) {
        res.sinr(k) = sinr_from_moments(moments[k], k, powers, cfg.sigma2);
        res.se(k) = res.prelog * std::log2(1.0 + res.sinr(k));
    }
    return res;
}

}  // namespace

std::string to_string(Combiner c) { return c == Combiner::Mr ? "mr" : "rzf"; }

double empirical_quantile(std::vector<double> values, double quantile) {
    if (values.empty()) throw std::invalid_argument("empirical_quantile: no samples");
    if (quantile < 0.0 || quantile > 1.0)
        throw std::invalid_argument("empirical_quantile: quantile outside [0,1]");
    std::sort(values.begin(), values.end());
    const double pos = quantile * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[hi] * frac;
}

TrialResult run_trial(const ScenarioConfig& config, int drop_index) {
    config.validate();
    const std::uint64_t drop = static_cast<std::uint64_t>(drop_index);
    RngStream scenario_rng(config.seed, drop, kScenarioBlock, StreamTag::Scenario);
    TrialContext ctx(build_scenario(config, scenario_rng));

    // A negative Monte Carlo SINR denominator means too few blocks; re-run
    // the whole trial with twice as many, on fresh block indices.
    for (int attempt = 0;; ++attempt) {
        const int blocks =
            std::max(config.trials.min_blocks, config.trials.blocks_per_drop) << attempt;
        BlockAccumulators acc(config.K);
        const std::uint64_t base = attempt * kAttemptStride;
        for (int b = 0; b < blocks; ++b) run_block(ctx, drop, base + b, acc);
        try {
            TrialResult res;
            res.mr = finalize_combiner(acc.mr, config);
            res.rzf = finalize_combiner(acc.rzf, config);
            res.blocks_used = blocks;
            res.rerun_attempts = attempt;
            return res;
        } catch (const std::runtime_error&) {
            if (attempt >= config.trials.max_rerun_attempts) throw;
        }
    }
}

ExperimentResult run_experiment(const ScenarioConfig& config, int workers) {
    config.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const int drops = config.trials.drops;
    std::vector<TrialResult> trials(drops);
    std::vector<std::exception_ptr> errors(drops);

    std::atomic<int> next{0};
    auto worker = [&] {
        for (int d = next.fetch_add(1); d < drops; d = next.fetch_add(1)) {
            try {
                trials[d] = run_trial(config, d);
            } catch (...) {
                errors[d] = std::current_exception();
            }
        }
    };
    const int n_threads = std::max(1, std::min(workers, drops));
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    ExperimentResult res;
    res.config = config;
    for (int d = 0; d < drops; ++d) {
        for (Combiner c : {Combiner::Mr, Combiner::Rzf}) {
            const SEResult& se = c == Combiner::Mr ? trials[d].mr : trials[d].rzf;
            for (int k = 0; k < config.K; ++k)
                res.samples.push_back({d, k, c, se.se(k)});
        }
    }
    for (Combiner c : {Combiner::Mr, Combiner::Rzf}) {
        const std::vector<double> pool_c = res.pool(c);
        for (int pct = 1; pct <= 99; ++pct) {
            const double quant = pct / 100.0;
            res.cdf.push_back({c, quant, empirical_quantile(pool_c, quant)});
        }
    }
    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

std::vector<double> ExperimentResult::pool(Combiner c) const {
    std::vector<double> out;
    for (const SeSample& s : samples)
        if (s.combiner == c) out.push_back(s.se);
    return out;
}

void emit_results(const ExperimentResult& result, const std::string& out_dir,
                  std::optional<Combiner> only) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    const std::string variant = to_string(result.config.fading_variant);

    auto open = [&](const std::string& name) {
        std::ofstream f(fs::path(out_dir) / name);
        if (!f) throw std::runtime_error("cannot write " + (fs::path(out_dir) / name).string());
        return f;
    };

    char buf[64];
    {
        std::ofstream f = open("se_samples.csv");
        f << "drop,ue,combiner,variant,se\n";
        for (const SeSample& s : result.samples) {
            if (only && s.combiner != *only) continue;
            std::snprintf(buf, sizeof buf, "%.17g", s.se);
            f << s.drop << ',' << s.ue << ',' << to_string(s.combiner) << ',' << variant << ','
              << buf << '\n';
        }
    }
    {
        std::ofstream f = open("cdf.csv");
        f << "combiner,variant,quantile,se\n";
        for (const CdfPoint& p : result.cdf) {
            if (only && p.combiner != *only) continue;
            std::snprintf(buf, sizeof buf, "%.17g", p.se);
            f << to_string(p.combiner) << ',' << variant << ',' << p.quantile << ',' << buf
              << '\n';
        }
    }
    {
        std::ofstream f = open("config_echo");
        f << config_to_text(result.config);
    }
}

}  // namespace risim
