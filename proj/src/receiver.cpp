// SPDX-License-Identifier: Apache-2.0

#include "risim/receiver.hpp"

#include <cmath>
#include <stdexcept>

namespace risim {

void MomentAccumulator::add_block(const cvec& combiner, const std::vector<cvec>& true_channels,
                                  int ue) {
    if (static_cast<Eigen::Index>(true_channels.size()) != cross_sums.size())
        throw std::invalid_argument("MomentAccumulator: UE count mismatch");
    signal_sum += combiner.dot(true_channels[ue]);
    for (std::size_t i = 0; i < true_channels.size(); ++i)
        cross_sums(static_cast<Eigen::Index>(i)) += std::norm(combiner.dot(true_channels[i]));
    norm_sum += combiner.squaredNorm();
    ++blocks;
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
    if (other.cross_sums.size() != cross_sums.size())
        throw std::invalid_argument("MomentAccumulator: merge size mismatch");
    signal_sum += other.signal_sum;
    cross_sums += other.cross_sums;
    norm_sum += other.norm_sum;
    blocks += other.blocks;
}

UeMoments finalize_moments(const MomentAccumulator& acc, int /*ue*/) {
    if (acc.blocks < 1) throw std::invalid_argument("finalize_moments: zero blocks");
    UeMoments m;
    m.signal = std::norm(acc.mean_signal());
    m.cross = acc.mean_cross();
    m.combiner_norm = acc.mean_norm();
    return m;
}

cvec mr_combiner(const cvec& b_hat) { return b_hat; }

std::vector<cvec> rzf_combiner(const std::vector<cvec>& b_hat, const rvec& powers, double sigma2) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("rzf_combiner: sigma2 must be positive");
    if (static_cast<Eigen::Index>(b_hat.size()) != powers.size())
        throw std::invalid_argument("rzf_combiner: power count mismatch");
    const Eigen::Index m = b_hat.empty() ? 0 : b_hat[0].size();
    cmat gram = sigma2 * cmat::Identity(m, m);
    for (std::size_t i = 0; i < b_hat.size(); ++i) {
        if (powers(static_cast<Eigen::Index>(i)) < 0.0)
            throw std::invalid_argument("rzf_combiner: negative power");
        gram += powers(static_cast<Eigen::Index>(i)) * b_hat[i] * b_hat[i].adjoint();
    }
    Eigen::LDLT<cmat> ldlt(gram);
    std::vector<cvec> v;
    v.reserve(b_hat.size());
    for (const cvec& b : b_hat) v.push_back(ldlt.solve(b));
    return v;
}

double sinr_from_moments(const UeMoments& m, int ue, const rvec& powers, double sigma2) {
    const double pk = powers(ue);
    const double denom =
        powers.dot(m.cross) - pk * m.signal + sigma2 * m.combiner_norm;
    if (!(denom > 0.0))
        throw std::runtime_error("sinr_from_moments: non-positive Monte Carlo denominator");
    return pk * m.signal / denom;
}

bool moments_well_posed(const std::vector<UeMoments>& moments, const rvec& powers, double sigma2) {
    for (std::size_t k = 0; k < moments.size(); ++k) {
        const double denom = powers.dot(moments[k].cross) -
                             powers(static_cast<Eigen::Index>(k)) * moments[k].signal +
                             sigma2 * moments[k].combiner_norm;
        if (!(denom > 0.0)) return false;
    }
    return true;
}

SEResult finalize_se(const std::vector<UeMoments>& moments, const rvec& powers, double sigma2,
                     int tau_c, int tau_p) {
    if (tau_p > tau_c) throw std::invalid_argument("finalize_se: tau_p exceeds tau_c");
    SEResult res;
    const int k_count = static_cast<int>(moments.size());
    res.sinr = rvec::Zero(k_count);
    res.se = rvec::Zero(k_count);
    res.prelog = static_cast<double>(tau_c - tau_p) / tau_c;
    res.powers = powers;
    for (int k = 0; k < k_count; ++k) {
        res.sinr(k) = sinr_from_moments(moments[k], k, powers, sigma2);
        res.se(k) = res.prelog * std::log2(1.0 + res.sinr(k));
    }
    return res;
}

}  // namespace risim
