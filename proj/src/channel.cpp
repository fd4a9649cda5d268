// SPDX-License-Identifier: Apache-2.0

#include "risim/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace risim {

CorrelationSqrt::CorrelationSqrt(const cmat& corr) {
    Eigen::SelfAdjointEigenSolver<cmat> eig(corr);
    rvec vals = eig.eigenvalues().cwiseMax(0.0);
    sqrt_ = eig.eigenvectors() * vals.cwiseSqrt().asDiagonal() * eig.eigenvectors().adjoint();
}

cvec sample_link(const LinkStatistics& stats, const CorrelationSqrt& corr_sqrt, RngStream& rng) {
    cvec x = corr_sqrt.apply(rng.cnormal_vector(stats.dim()));
    for (std::size_t s = 0; s < stats.specular.size(); ++s) {
        const cplx phase =
            stats.fixed_los_flag[s] ? cplx{1.0, 0.0} : std::polar(1.0, rng.uniform_phase());
        x += phase * stats.specular[s];
    }
    return x;
}

cmat sample_bs_ris_link(const BsRisStatistics& stats, const CorrelationSqrt& bs_sqrt,
                        const CorrelationSqrt& ris_sqrt, RngStream& rng) {
    const Eigen::Index m = stats.corr_bs.rows(), n = stats.corr_ris.rows();
    cmat g = bs_sqrt.matrix() * rng.cnormal_matrix(m, n) * ris_sqrt.matrix();
    for (std::size_t s = 0; s < stats.specular.size(); ++s) {
        // The LOS component (s = 0) carries no random phase.
        const cplx phase = s == 0 ? cplx{1.0, 0.0} : std::polar(1.0, rng.uniform_phase());
        g += phase * stats.specular[s];
    }
    return g;
}

cmat cascade(const cmat& g, const cvec& f) {
    if (g.cols() != f.size()) throw std::invalid_argument("cascade: dimension mismatch");
    return g * f.asDiagonal();
}

cvec effective_channel(const cvec& h, const std::vector<cmat>& cascaded,
                       const std::vector<cvec>& phases) {
    if (cascaded.size() != phases.size())
        throw std::invalid_argument("effective_channel: cascaded/phase count mismatch");
    cvec b = h;
    for (std::size_t j = 0; j < cascaded.size(); ++j) {
        for (Eigen::Index n = 0; n < phases[j].size(); ++n)
            if (std::abs(std::abs(phases[j](n)) - 1.0) > 1e-9)
                throw std::invalid_argument("effective_channel: phase entry not unit modulus");
        if (phases[j].size() > 0) b += cascaded[j] * phases[j];
    }
    return b;
}

ChannelSampler::ChannelSampler(const Scenario& scenario) : scenario_(&scenario) {
    direct_sqrt_.reserve(scenario.direct.size());
    for (const auto& s : scenario.direct) direct_sqrt_.emplace_back(s.nonspecular_corr);
    ris_ue_sqrt_.resize(scenario.ris_ue.size());
    for (std::size_t k = 0; k < scenario.ris_ue.size(); ++k)
        for (const auto& s : scenario.ris_ue[k]) ris_ue_sqrt_[k].emplace_back(s.nonspecular_corr);
    for (const auto& s : scenario.bs_ris) {
        bs_sqrt_.emplace_back(s.corr_bs);
        ris_sqrt_.emplace_back(s.corr_ris);
    }
}

cvec ChannelSampler::sample_direct(int ue, RngStream& rng) const {
    return sample_link(scenario_->direct[ue], direct_sqrt_[ue], rng);
}

cvec ChannelSampler::sample_ris_ue(int ue, int ris, RngStream& rng) const {
    return sample_link(scenario_->ris_ue[ue][ris], ris_ue_sqrt_[ue][ris], rng);
}

cmat ChannelSampler::sample_bs_ris(int ris, RngStream& rng) const {
    return sample_bs_ris_link(scenario_->bs_ris[ris], bs_sqrt_[ris], ris_sqrt_[ris], rng);
}

ChannelRealization ChannelSampler::sample_block(RngStream& direct_rng, RngStream& ris_ue_rng,
                                                RngStream& bs_ris_rng) const {
    const Scenario& sc = *scenario_;
    const int k_count = sc.config.K;
    const int l_count = static_cast<int>(sc.bs_ris.size());
    ChannelRealization ch;
    ch.h.reserve(k_count);
    for (int k = 0; k < k_count; ++k) ch.h.push_back(sample_direct(k, direct_rng));
    ch.G.reserve(l_count);
    for (int l = 0; l < l_count; ++l) ch.G.push_back(sample_bs_ris(l, bs_ris_rng));
    ch.f.resize(k_count);
    ch.H.resize(k_count);
    for (int k = 0; k < k_count; ++k) {
        for (int l = 0; l < l_count; ++l) {
            ch.f[k].push_back(sample_ris_ue(k, l, ris_ue_rng));
            ch.H[k].push_back(cascade(ch.G[l], ch.f[k][l]));
        }
    }
    return ch;
}

}  // namespace risim
