// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

#include "risim/types.hpp"

namespace risim {

// Purpose tags so that different consumers of the same (seed, drop, block)
// coordinate get independent streams.
enum class StreamTag : std::uint64_t {
    Scenario = 1,
    DirectChannel = 2,
    RisUeChannel = 3,
    BsRisChannel = 4,
    PilotNoise = 5,
};

/// Counter-derived deterministic random stream. Every (seed, drop, block, tag)
/// tuple maps to an independent generator, so results do not depend on worker
/// count or scheduling.
class RngStream {
  public:
    RngStream(std::uint64_t root_seed, std::uint64_t drop, std::uint64_t block, StreamTag tag)
        : engine_(mix(mix(mix(mix(0x9e3779b97f4a7c15ULL ^ root_seed, drop), block),
                          static_cast<std::uint64_t>(tag)),
                      0xd1b54a32d192ed03ULL)) {}

    explicit RngStream(std::uint64_t seed) : engine_(mix(seed, 0x2545f4914f6cdd1dULL)) {}

    std::mt19937_64& engine() { return engine_; }

    double uniform() { return unif_(engine_); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unif_(engine_); }
    double normal() { return normal_(engine_); }

    /// One draw from CN(0, 1): real and imaginary parts N(0, 1/2).
    cplx cnormal() {
        constexpr double inv_sqrt2 = 0.70710678118654752440;
        return {normal_(engine_) * inv_sqrt2, normal_(engine_) * inv_sqrt2};
    }

    cvec cnormal_vector(Eigen::Index n) {
        cvec v(n);
        for (Eigen::Index i = 0; i < n; ++i) v(i) = cnormal();
        return v;
    }

    cmat cnormal_matrix(Eigen::Index rows, Eigen::Index cols) {
        cmat w(rows, cols);
        for (Eigen::Index j = 0; j < cols; ++j)
            for (Eigen::Index i = 0; i < rows; ++i) w(i, j) = cnormal();
        return w;
    }

    double uniform_phase() { return uniform(0.0, 2.0 * kPi); }

  private:
    // splitmix64 finalizer; decorrelates nearby counter values.
    static std::uint64_t mix(std::uint64_t x, std::uint64_t salt) {
        x += 0x9e3779b97f4a7c15ULL + salt;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 engine_;
    std::uniform_real_distribution<double> unif_{0.0, 1.0};
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace risim
