// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "risim/channel.hpp"

using namespace risim;

namespace {

LinkStatistics diffuse_only(const cmat& corr) {
    LinkStatistics s;
    s.nonspecular_corr = corr;
    return s;
}

// random Hermitian PSD matrix with unit average diagonal
cmat random_psd(int n, RngStream& rng) {
    const cmat a = rng.cnormal_matrix(n, 2 * n);
    cmat r = a * a.adjoint();
    r *= static_cast<double>(n) / r.real().trace();
    return r;
}

}  // namespace

TEST_CASE("diffuse-only sampling reproduces the identity covariance") {
    const int m = 4, draws = 100000;
    const LinkStatistics stats = diffuse_only(cmat::Identity(m, m));
    const CorrelationSqrt root(stats.nonspecular_corr);
    RngStream rng(3, 0, 0, StreamTag::DirectChannel);

    cvec mean = cvec::Zero(m);
    cmat cov = cmat::Zero(m, m);
    for (int d = 0; d < draws; ++d) {
        const cvec h = sample_link(stats, root, rng);
        mean += h;
        cov += h * h.adjoint();
    }
    mean /= draws;
    cov /= draws;
    CHECK(mean.norm() <= 0.02 * std::sqrt(static_cast<double>(m)));
    CHECK((cov - cmat::Identity(m, m)).cwiseAbs().maxCoeff() < 0.05);
}

TEST_CASE("pure specular draws only rotate the phase") {
    LinkStatistics stats = LinkStatistics::zero(3);
    stats.specular.push_back((cvec(3) << cplx(1.0, 0.0), cplx(0.0, 2.0), cplx(-0.5, 0.5)).finished());
    stats.fixed_los_flag.push_back(false);
    const CorrelationSqrt root(stats.nonspecular_corr);
    RngStream rng(5, 0, 0, StreamTag::DirectChannel);
    for (int d = 0; d < 50; ++d) {
        const cvec h = sample_link(stats, root, rng);
        for (int i = 0; i < 3; ++i)
            CHECK(std::abs(h(i)) == doctest::Approx(std::abs(stats.specular[0](i))).epsilon(1e-12));
    }
}

TEST_CASE("zero statistics sample to the zero vector") {
    const LinkStatistics stats = LinkStatistics::zero(4);
    const CorrelationSqrt root(stats.nonspecular_corr);
    RngStream rng(7, 0, 0, StreamTag::DirectChannel);
    CHECK(sample_link(stats, root, rng).norm() == 0.0);
}

TEST_CASE("LOS-only BS-RIS link is deterministic across draws") {
    const int m = 3, n = 4;
    BsRisStatistics stats;
    RngStream init(9, 0, 0, StreamTag::Scenario);
    stats.specular.push_back(init.cnormal_matrix(m, n));
    stats.corr_bs = cmat::Zero(m, m);
    stats.corr_ris = cmat::Zero(n, n);
    const CorrelationSqrt bs_root(stats.corr_bs), ris_root(stats.corr_ris);
    RngStream rng(9, 0, 1, StreamTag::BsRisChannel);
    for (int d = 0; d < 20; ++d) {
        const cmat g = sample_bs_ris_link(stats, bs_root, ris_root, rng);
        CHECK((g - stats.specular[0]).cwiseAbs().maxCoeff() <= 1e-15);
    }
}

TEST_CASE("Kronecker sampling matches the transpose(R_ris) x R_bs covariance") {
    const int m = 2, n = 3, draws = 100000;
    RngStream init(11, 0, 0, StreamTag::Scenario);
    BsRisStatistics stats;
    stats.corr_bs = random_psd(m, init);
    stats.corr_ris = random_psd(n, init);
    const CorrelationSqrt bs_root(stats.corr_bs), ris_root(stats.corr_ris);

    RngStream rng(11, 0, 2, StreamTag::BsRisChannel);
    cmat cov = cmat::Zero(m * n, m * n);
    for (int d = 0; d < draws; ++d) {
        const cmat g = sample_bs_ris_link(stats, bs_root, ris_root, rng);
        const Eigen::Map<const cvec> v(g.data(), m * n);
        cov += v * v.adjoint();
    }
    cov /= draws;

    cmat expected(m * n, m * n);
    for (int j2 = 0; j2 < n; ++j2)
        for (int i2 = 0; i2 < m; ++i2)
            for (int j1 = 0; j1 < n; ++j1)
                for (int i1 = 0; i1 < m; ++i1)
                    expected(j1 * m + i1, j2 * m + i2) =
                        stats.corr_ris(j2, j1) * stats.corr_bs(i1, i2);
    const double scale = expected.cwiseAbs().maxCoeff();
    CHECK((cov - expected).cwiseAbs().maxCoeff() < 0.05 * scale);
}

TEST_CASE("cascade scales columns and matches the diagonal product") {
    RngStream rng(13, 0, 0, StreamTag::Scenario);
    const cmat g = rng.cnormal_matrix(2, 2);
    const cvec f = rng.cnormal_vector(2);
    const cmat h = cascade(g, f);
    CHECK((h - g * f.asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff() <= 1e-15);

    CHECK((cascade(g, cvec::Ones(2)) - g).cwiseAbs().maxCoeff() == 0.0);
    CHECK(cascade(g, cvec::Zero(2)).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS(cascade(g, cvec::Ones(3)));
}

TEST_CASE("effective channel matches the phase-matrix formulation") {
    const int m = 4, n = 4;
    RngStream rng(17, 0, 0, StreamTag::Scenario);
    const cvec h = rng.cnormal_vector(m);
    const cmat g = rng.cnormal_matrix(m, n);
    const cvec f = rng.cnormal_vector(n);
    cvec phi(n);
    for (int i = 0; i < n; ++i) phi(i) = std::polar(1.0, rng.uniform_phase());

    const cvec b = effective_channel(h, {cascade(g, f)}, {phi});
    const cvec b_ref = h + g * phi.asDiagonal() * f;
    CHECK((b - b_ref).norm() <= 1e-12 * b_ref.norm());

    // no RIS terms and single-element expansions
    CHECK((effective_channel(h, {}, {}) - h).norm() == 0.0);
    const cmat col = g.col(0) * f(0);
    const cvec phi1 = (cvec(1) << std::polar(1.0, 0.8)).finished();
    const cvec b1 = effective_channel(h, {cmat(col)}, {phi1});
    CHECK((b1 - (h + std::polar(1.0, 0.8) * g.col(0) * f(0))).norm() <= 1e-12);

    cvec bad = phi;
    bad(1) *= 1.5;
    CHECK_THROWS(effective_channel(h, {cascade(g, f)}, {bad}));
}

TEST_CASE("sampled channel power matches the mean correlation trace") {
    ScenarioConfig cfg;
    cfg.M = 8;
    cfg.N = 16;
    cfg.L = 2;
    cfg.K = 2;
    cfg.R = 4;
    RngStream srng(19, 0, ~0ULL, StreamTag::Scenario);
    const Scenario sc = build_scenario(cfg, srng);
    const ChannelSampler sampler(sc);

    const int draws = 100000;
    double power = 0.0;
    RngStream rng(19, 0, 0, StreamTag::DirectChannel);
    for (int d = 0; d < draws; ++d) power += sampler.sample_direct(0, rng).squaredNorm();
    power /= draws;
    const double expected = sc.direct[0].mean_corr().real().trace();
    CHECK(power == doctest::Approx(expected).epsilon(0.02));
}

TEST_CASE("BS-RIS LOS term is common to all draws while the rest decorrelates") {
    ScenarioConfig cfg;
    cfg.M = 4;
    cfg.N = 16;
    cfg.L = 2;
    cfg.K = 2;
    cfg.R = 4;
    cfg.fading_variant = FadingVariant::AlwaysLosS3;
    RngStream srng(23, 0, ~0ULL, StreamTag::Scenario);
    const Scenario sc = build_scenario(cfg, srng);
    const ChannelSampler sampler(sc);

    const int draws = 4000;
    const cmat los = sc.bs_ris[0].specular[0];
    cmat mean = cmat::Zero(cfg.M, cfg.N);
    cplx lag_corr = 0.0;
    double var_acc = 0.0;
    cplx prev = 0.0;
    std::vector<cmat> all(draws);
    RngStream rng(23, 0, 0, StreamTag::BsRisChannel);
    for (int d = 0; d < draws; ++d) {
        all[d] = sampler.sample_bs_ris(0, rng);
        mean += all[d];
    }
    mean /= draws;
    // the sample mean converges to the fixed LOS component
    CHECK((mean - los).cwiseAbs().maxCoeff() < 0.15 * los.cwiseAbs().maxCoeff());
    // lag-1 autocorrelation of one fluctuating entry is negligible
    for (int d = 0; d < draws; ++d) {
        const cplx x = all[d](0, 0) - mean(0, 0);
        var_acc += std::norm(x);
        if (d > 0) lag_corr += x * std::conj(prev);
        prev = x;
    }
    CHECK(std::abs(lag_corr) / var_acc < 0.05);
}
