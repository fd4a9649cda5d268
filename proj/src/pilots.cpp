// SPDX-License-Identifier: Apache-2.0

#include "risim/pilots.hpp"

#include <cmath>
#include <stdexcept>

namespace risim {

namespace {

cvec dft_column(int size, int col) {
    cvec v(size);
    for (int t = 0; t < size; ++t)
        v(t) = std::polar(1.0, -2.0 * kPi * t * col / size);
    return v;
}

}  // namespace

PilotSchedule build_pilot_schedule(int K, int L, int R) {
    if (K < 1 || L < 0 || R < 1) throw std::invalid_argument("build_pilot_schedule: bad sizes");
    PilotSchedule s;
    s.K = K;
    s.L = L;
    s.R = R;
    s.ue_pilots.reserve(K);
    const double scale = 1.0 / std::sqrt(static_cast<double>(K));
    for (int k = 0; k < K; ++k) s.ue_pilots.push_back(scale * dft_column(K, k));
    const int n = L * R + 1;
    s.ris_phases.reserve(L * R);
    for (int q = 1; q < n; ++q) s.ris_phases.push_back(dft_column(n, q));
    return s;
}

std::vector<cmat> simulate_pilot_reception(const ChannelRealization& channels,
                                           const PilotSchedule& schedule,
                                           const std::vector<std::vector<int>>& subsurfaces,
                                           double eta, double sigma2, RngStream& rng) {
    const int k_count = static_cast<int>(channels.h.size());
    if (k_count != schedule.K)
        throw std::invalid_argument("simulate_pilot_reception: UE count mismatch");
    const int l_count = static_cast<int>(channels.G.size());
    const Eigen::Index m = channels.h.empty() ? 0 : channels.h[0].size();
    const double amp = std::sqrt(schedule.K * eta);
    const double noise_std = std::sqrt(sigma2);

    // Column sums of the cascaded channels per (ue, sub-surface).
    std::vector<std::vector<cvec>> colsum(k_count);
    for (int k = 0; k < k_count; ++k) {
        for (int l = 0; l < l_count; ++l) {
            for (const auto& group : subsurfaces) {
                cvec c = cvec::Zero(m);
                for (int n : group) c += channels.H[k][l].col(n);
                colsum[k].push_back(std::move(c));
            }
        }
    }

    std::vector<cmat> received;
    received.reserve(schedule.intervals());
    for (int t = 0; t < schedule.intervals(); ++t) {
        cmat y(m, schedule.K);
        for (Eigen::Index col = 0; col < y.cols(); ++col)
            for (Eigen::Index row = 0; row < m; ++row)
                y(row, col) = noise_std * rng.cnormal();
        for (int i = 0; i < k_count; ++i) {
            cvec eff = channels.h[i];
            for (int l = 0; l < l_count; ++l)
                for (int r = 0; r < schedule.R; ++r)
                    eff += schedule.psi(l, r)(t) * colsum[i][l * schedule.R + r];
            y += amp * eff * schedule.ue_pilots[i].transpose();
        }
        received.push_back(std::move(y));
    }
    return received;
}

std::vector<cvec> despread(const std::vector<cmat>& received, const cvec& pilot) {
    std::vector<cvec> z;
    z.reserve(received.size());
    for (const cmat& y : received) {
        if (y.cols() != pilot.size()) throw std::invalid_argument("despread: dimension mismatch");
        z.push_back(y * pilot.conjugate());
    }
    return z;
}

cvec direct_statistic(const std::vector<cvec>& z_intervals) {
    if (z_intervals.empty()) throw std::invalid_argument("direct_statistic: no intervals");
    cvec z = cvec::Zero(z_intervals[0].size());
    for (const cvec& zt : z_intervals) z += zt;
    return z / std::sqrt(static_cast<double>(z_intervals.size()));
}

cvec cascaded_statistic(const std::vector<cvec>& z_intervals, const cvec& psi) {
    if (static_cast<Eigen::Index>(z_intervals.size()) != psi.size())
        throw std::invalid_argument("cascaded_statistic: interval count mismatch");
    cvec z = cvec::Zero(z_intervals[0].size());
    for (std::size_t t = 0; t < z_intervals.size(); ++t)
        z += std::conj(psi(static_cast<Eigen::Index>(t))) * z_intervals[t];
    return z / std::sqrt(static_cast<double>(z_intervals.size()));
}

SufficientStatistics compute_sufficient_statistics(const std::vector<cmat>& received,
                                                   const PilotSchedule& schedule) {
    SufficientStatistics out;
    out.z_direct.reserve(schedule.K);
    out.z_casc.resize(schedule.K);
    for (int k = 0; k < schedule.K; ++k) {
        const std::vector<cvec> z = despread(received, schedule.ue_pilots[k]);
        out.z_direct.push_back(direct_statistic(z));
        out.z_casc[k].resize(schedule.L);
        for (int l = 0; l < schedule.L; ++l) {
            out.z_casc[k][l].reserve(schedule.R);
            for (int r = 0; r < schedule.R; ++r)
                out.z_casc[k][l].push_back(cascaded_statistic(z, schedule.psi(l, r)));
        }
    }
    return out;
}

}  // namespace risim
