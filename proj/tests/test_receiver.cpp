// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <vector>

#include "risim/receiver.hpp"
#include "risim/rng.hpp"

using namespace risim;

namespace {

cvec e1(int m) {
    cvec v = cvec::Zero(m);
    v(0) = 1.0;
    return v;
}

}  // namespace

TEST_CASE("MR combining is the estimate itself") {
    const cvec b = e1(4);
    CHECK((mr_combiner(b) - b).norm() == 0.0);
    CHECK((mr_combiner(2.5 * b) - 2.5 * b).norm() == 0.0);
}

TEST_CASE("single-UE RZF halves the unit estimate") {
    const std::vector<cvec> b{e1(3)};
    const rvec p = rvec::Ones(1);
    const auto v = rzf_combiner(b, p, 1.0);
    CHECK((v[0] - 0.5 * e1(3)).norm() <= 1e-12);
    CHECK_THROWS(rzf_combiner(b, p, 0.0));
    CHECK_THROWS(rzf_combiner(b, -p, 1.0));
}

TEST_CASE("large noise turns RZF into scaled MR") {
    RngStream rng(109, 0, 0, StreamTag::Scenario);
    const std::vector<cvec> b{rng.cnormal_vector(4), rng.cnormal_vector(4)};
    const rvec p = (rvec(2) << 0.7, 0.4).finished();
    const double sigma2 = 1e9;
    const auto v = rzf_combiner(b, p, sigma2);
    for (int k = 0; k < 2; ++k)
        CHECK((sigma2 * v[k] - b[k]).norm() <= 1e-6 * b[k].norm());
}

TEST_CASE("RZF nulls orthogonal co-scheduled estimates") {
    const int m = 4;
    std::vector<cvec> b{e1(m), cvec::Zero(m)};
    b[1](1) = cplx(0.0, 2.0);
    const rvec p = (rvec(2) << 1.0, 0.5).finished();
    const auto v = rzf_combiner(b, p, 0.3);
    CHECK(std::abs(v[0].dot(b[1])) <= 1e-12);
    CHECK(std::abs(v[1].dot(b[0])) <= 1e-12);
}

TEST_CASE("one perfect block gives unit moments") {
    MomentAccumulator acc(1);
    const cvec b = e1(2);
    acc.add_block(b, {b}, 0);
    const UeMoments m = finalize_moments(acc, 0);
    CHECK(m.signal == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(m.cross(0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(m.combiner_norm == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("identical blocks double the sums but not the moments") {
    RngStream rng(113, 0, 0, StreamTag::Scenario);
    const cvec v = rng.cnormal_vector(3);
    const std::vector<cvec> truth{rng.cnormal_vector(3), rng.cnormal_vector(3)};
    MomentAccumulator once(2), twice(2);
    once.add_block(v, truth, 0);
    twice.add_block(v, truth, 0);
    twice.add_block(v, truth, 0);
    CHECK(twice.blocks == 2);
    CHECK(std::abs(twice.signal_sum - 2.0 * once.signal_sum) <= 1e-12);
    const UeMoments a = finalize_moments(once, 0), b = finalize_moments(twice, 0);
    CHECK(a.signal == doctest::Approx(b.signal).epsilon(1e-12));
    CHECK(a.combiner_norm == doctest::Approx(b.combiner_norm).epsilon(1e-12));
    CHECK_THROWS(finalize_moments(MomentAccumulator(2), 0));
}

TEST_CASE("merged accumulators equal sequential accumulation") {
    RngStream rng(127, 0, 0, StreamTag::Scenario);
    MomentAccumulator whole(2), part1(2), part2(2);
    for (int blockno = 0; blockno < 10; ++blockno) {
        const cvec v = rng.cnormal_vector(3);
        const std::vector<cvec> truth{rng.cnormal_vector(3), rng.cnormal_vector(3)};
        whole.add_block(v, truth, 1);
        (blockno < 4 ? part1 : part2).add_block(v, truth, 1);
    }
    part1.merge(part2);
    CHECK(part1.blocks == whole.blocks);
    CHECK(std::abs(part1.signal_sum - whole.signal_sum) <= 1e-12);
    CHECK((part1.cross_sums - whole.cross_sums).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(part1.norm_sum == doctest::Approx(whole.norm_sum).epsilon(1e-14));
}

TEST_CASE("deterministic channel reaches the matched-filter SINR") {
    RngStream rng(131, 0, 0, StreamTag::Scenario);
    const cvec b = rng.cnormal_vector(4);
    const double sigma2 = 0.7;
    MomentAccumulator acc(1);
    for (int blockno = 0; blockno < 5; ++blockno) acc.add_block(b, {b}, 0);
    const auto res =
        finalize_se({finalize_moments(acc, 0)}, rvec::Ones(1), sigma2, 100, 10);
    CHECK(res.sinr(0) == doctest::Approx(b.squaredNorm() / sigma2).epsilon(1e-12));
    CHECK(res.se(0) ==
          doctest::Approx(0.9 * std::log2(1.0 + res.sinr(0))).epsilon(1e-12));

    // zero prelog wipes the SE regardless of the SINR
    const auto zero = finalize_se({finalize_moments(acc, 0)}, rvec::Ones(1), sigma2, 100, 100);
    CHECK(zero.se(0) == 0.0);
}

TEST_CASE("a phase-only random channel earns no coherent SINR") {
    const int blocks = 20000;
    RngStream rng(137, 0, 0, StreamTag::Scenario);
    const cvec v = e1(2);
    MomentAccumulator acc(1);
    for (int blockno = 0; blockno < blocks; ++blockno) {
        const cvec b = std::polar(1.0, rng.uniform_phase()) * e1(2);
        acc.add_block(v, {b}, 0);
    }
    const UeMoments m = finalize_moments(acc, 0);
    const double sinr = sinr_from_moments(m, 0, rvec::Ones(1), 0.5);
    CHECK(m.signal < 1e-3);   // |mean of random phases|^2
    CHECK(sinr < 1e-3);
}

TEST_CASE("SINR grows with own power and the denominator guard trips") {
    UeMoments m;
    m.signal = 2.0;
    m.cross = (rvec(2) << 2.5, 1.0).finished();
    m.combiner_norm = 1.0;

    double prev = 0.0;
    for (double pk : {0.1, 0.5, 1.0, 2.0}) {
        const rvec p = (rvec(2) << pk, 0.3).finished();
        const double s = sinr_from_moments(m, 0, p, 0.4);
        CHECK(s > prev);
        prev = s;
    }

    UeMoments bad = m;
    bad.cross(0) = 1.0;  // cross < signal: impossible in exact arithmetic
    const rvec p = rvec::Ones(2);
    CHECK_FALSE(moments_well_posed({bad, m}, p, 0.0));
    CHECK(moments_well_posed({m, m}, p, 0.4));
    CHECK_THROWS_AS(sinr_from_moments(bad, 0, p, 0.0), std::runtime_error);
}
