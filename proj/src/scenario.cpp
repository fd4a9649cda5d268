// SPDX-License-Identifier: Apache-2.0

#include "risim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "risim/propagation.hpp"

namespace risim {

cmat LinkStatistics::mean_corr() const {
    cmat r = nonspecular_corr;
    for (const cvec& s : specular) r += s * s.adjoint();
    return r;
}

LinkStatistics LinkStatistics::zero(Eigen::Index dim) {
    LinkStatistics s;
    s.nonspecular_corr = cmat::Zero(dim, dim);
    return s;
}

std::vector<Position> drop_users(const ScenarioConfig& config, RngStream& rng) {
    const Rectangle& a = config.geometry.ue_area;
    if (a.x1 < a.x0 || a.y1 < a.y0)
        throw std::invalid_argument("drop_users: malformed UE area rectangle");
    std::vector<Position> pos(config.K);
    for (Position& p : pos) {
        p.x = rng.uniform(a.x0, a.x1);
        p.y = rng.uniform(a.y0, a.y1);
    }
    return pos;
}

std::vector<std::vector<int>> subsurface_indices(int n_horizontal, int n_vertical, int r) {
    const int n = n_horizontal * n_vertical;
    if (r < 1 || r > n || n % r != 0)
        throw std::invalid_argument("subsurface_indices: R must divide N");

    // Prefer a gh x gv grid of tiles with near-square tiles.
    int best_gh = -1;
    double best_aspect = 1e300;
    for (int gh = 1; gh <= r; ++gh) {
        if (r % gh != 0) continue;
        const int gv = r / gh;
        if (n_horizontal % gh != 0 || n_vertical % gv != 0) continue;
        const double th = static_cast<double>(n_horizontal) / gh;
        const double tv = static_cast<double>(n_vertical) / gv;
        const double aspect = std::max(th / tv, tv / th);
        if (aspect < best_aspect) {
            best_aspect = aspect;
            best_gh = gh;
        }
    }

    std::vector<std::vector<int>> groups(r);
    if (best_gh > 0) {
        const int gh = best_gh, gv = r / best_gh;
        const int th = n_horizontal / gh, tv = n_vertical / gv;
        for (int g = 0; g < r; ++g) {
            const int gx = g % gh, gy = g / gh;
            for (int v = gy * tv; v < (gy + 1) * tv; ++v)
                for (int h = gx * th; h < (gx + 1) * th; ++h)
                    groups[g].push_back(v * n_horizontal + h);
        }
    } else {
        const int per = n / r;
        for (int g = 0; g < r; ++g) {
            groups[g].resize(per);
            std::iota(groups[g].begin(), groups[g].end(), g * per);
        }
    }
    return groups;
}

RisAssignment assign_ris_elements(const std::vector<double>& bs_ue_gains,
                                  const std::vector<Position>& ue_positions,
                                  const ScenarioConfig& config) {
    const int k_count = static_cast<int>(bs_ue_gains.size());
    const int l_count = config.L;

    RisAssignment out;
    out.elements.resize(k_count);
    out.ris_of_ue.assign(k_count, -1);
    if (config.fading_variant == FadingVariant::ConventionalNoRis || l_count == 0) return out;
    if (k_count < l_count)
        throw std::invalid_argument("assign_ris_elements: fewer UEs than RISs");

    // The L UEs with the smallest BS-UE gains each get one whole RIS,
    // weakest UE first, each picking its nearest unassigned RIS.
    // Ties break toward the lower UE / RIS index.
    std::vector<int> order(k_count);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return bs_ue_gains[a] < bs_ue_gains[b]; });

    std::vector<bool> ris_taken(l_count, false);
    for (int rank = 0; rank < l_count; ++rank) {
        const int ue = order[rank];
        int best_ris = -1;
        double best_d2 = 1e300;
        for (int l = 0; l < l_count; ++l) {
            if (ris_taken[l]) continue;
            const auto& rp = config.geometry.ris_positions[l];
            const double dx = ue_positions[ue].x - rp[0];
            const double dy = ue_positions[ue].y - rp[1];
            const double d2 = dx * dx + dy * dy;
            if (d2 < best_d2) {
                best_d2 = d2;
                best_ris = l;
            }
        }
        ris_taken[best_ris] = true;
        out.ris_of_ue[ue] = best_ris;
        out.elements[ue].resize(config.N);
        std::iota(out.elements[ue].begin(), out.elements[ue].end(), best_ris * config.N);
    }
    return out;
}

namespace {

struct Angles {
    double azimuth = 0.0;
    double elevation = 0.0;
    double distance = 0.0;
};

// All arrays face broadside along +x; azimuth measured in the horizontal
// plane relative to that normal, elevation from the source height down/up.
Angles angles_to(double from_x, double from_y, double to_x, double to_y, double dz) {
    Angles a;
    const double dx = to_x - from_x, dy = to_y - from_y;
    const double dxy = std::hypot(dx, dy);
    a.azimuth = std::atan2(dy, dx);
    a.elevation = std::atan2(dz, dxy);
    a.distance = std::hypot(dxy, dz);
    return a;
}

// Split the specular link power over the components of an S=3 link: the LOS
// keeps los_power_ratio, the rest goes randomly to two extra components.
std::vector<double> split_specular_power(double total, double los_ratio, RngStream& rng) {
    const double u = rng.uniform();
    const double rest = total * (1.0 - los_ratio);
    return {total * los_ratio, rest * u, rest * (1.0 - u)};
}

cmat scattering(const ArrayGeometry& array, double az, double el, double std_deg, double gain,
                CorrelationModel model) {
    return model == CorrelationModel::Quadrature
               ? local_scattering_correlation(array, az, el, std_deg, gain)
               : local_scattering_correlation_approx(array, az, el, std_deg, gain);
}

}  // namespace

Scenario build_scenario(const ScenarioConfig& config, RngStream& rng) {
    config.validate();
    Scenario sc;
    sc.config = config;
    sc.bs_array = ArrayGeometry::ula(config.M, config.bs_spacing);
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(config.N))));
    if (side * side == config.N)
        sc.ris_array = ArrayGeometry::upa(side, side, config.ris_spacing);
    else
        sc.ris_array = ArrayGeometry::ula(config.N, config.ris_spacing);

    sc.ue_positions = drop_users(config, rng);
    sc.subsurfaces = subsurface_indices(sc.ris_array.horizontal, sc.ris_array.vertical, config.R);

    const PropagationParams& prop = config.pathloss_params;
    const double h_off = config.geometry.height_offset_m;
    const double std_deg = config.angular_std_deg;
    const bool ris_mode = config.fading_variant != FadingVariant::ConventionalNoRis;
    const int specular_count =
        config.fading_variant == FadingVariant::AlwaysLosS3 ? 3 : 1;

    sc.direct.reserve(config.K);
    sc.direct_gain.reserve(config.K);
    sc.ris_ue.resize(config.K);

    const auto& bs_pos = config.geometry.bs_position;
    for (int k = 0; k < config.K; ++k) {
        const Position& ue = sc.ue_positions[k];
        const Angles a = angles_to(bs_pos[0], bs_pos[1], ue.x, ue.y, -h_off);

        // Direct BS-UE link: LOS existence is always probabilistic.
        const bool los = rng.uniform() < los_probability(a.distance, prop);
        const PathlossCoefficients& pc = los ? prop.los : prop.nlos;
        const double shadow_db = rng.normal() * pc.shadow_std_db;
        const double beta = path_gain(a.distance, los, shadow_db, prop);

        LinkStatistics stats;
        double diffuse_gain = beta;
        if (los) {
            const double kappa = rician_kfactor(a.distance, prop);
            const double spec_total = beta * kappa / (1.0 + kappa);
            diffuse_gain = beta / (1.0 + kappa);
            stats.specular.push_back(std::sqrt(spec_total) *
                                     steering_vector(sc.bs_array, a.azimuth, a.elevation));
            stats.fixed_los_flag.push_back(false);
        }
        stats.nonspecular_corr = scattering(sc.bs_array, a.azimuth, a.elevation, std_deg,
                                            diffuse_gain, config.correlation_model);
        sc.direct_gain.push_back(stats.mean_corr().real().trace() / config.M);
        sc.direct.push_back(std::move(stats));

        // RIS-UE links.
        if (ris_mode) {
            sc.ris_ue[k].reserve(config.L);
            for (int l = 0; l < config.L; ++l) {
                const auto& rp = config.geometry.ris_positions[l];
                const Angles ra = angles_to(rp[0], rp[1], ue.x, ue.y, -h_off);
                const bool ris_los =
                    config.fading_variant == FadingVariant::ProbabilisticLos
                        ? rng.uniform() < los_probability(ra.distance, prop)
                        : true;
                const PathlossCoefficients& rpc = ris_los ? prop.los : prop.nlos;
                const double rshadow_db = rng.normal() * rpc.shadow_std_db;
                const double rbeta = path_gain(ra.distance, ris_los, rshadow_db, prop);

                LinkStatistics fs;
                double rdiffuse = rbeta;
                if (ris_los) {
                    const double kappa = rician_kfactor(ra.distance, prop);
                    const double spec_total = rbeta * kappa / (1.0 + kappa);
                    rdiffuse = rbeta / (1.0 + kappa);
                    std::vector<double> powers =
                        specular_count == 3
                            ? split_specular_power(spec_total, config.los_power_ratio, rng)
                            : std::vector<double>{spec_total};
                    const double std_rad = std_deg * kPi / 180.0;
                    for (std::size_t s = 0; s < powers.size(); ++s) {
                        const double az =
                            s == 0 ? ra.azimuth : ra.azimuth + rng.normal() * std_rad;
                        const double el =
                            s == 0 ? ra.elevation : ra.elevation + rng.normal() * std_rad;
                        fs.specular.push_back(std::sqrt(powers[s]) *
                                              steering_vector(sc.ris_array, az, el));
                        fs.fixed_los_flag.push_back(false);
                    }
                }
                fs.nonspecular_corr = scattering(sc.ris_array, ra.azimuth, ra.elevation, std_deg,
                                                 rdiffuse, config.correlation_model);
                sc.ris_ue[k].push_back(std::move(fs));
            }
        }
    }

    // BS-RIS links: always LOS, fixed-phase LOS component.
    if (ris_mode) {
        sc.bs_ris.reserve(config.L);
        for (int l = 0; l < config.L; ++l) {
            const auto& rp = config.geometry.ris_positions[l];
            const Angles from_bs = angles_to(bs_pos[0], bs_pos[1], rp[0], rp[1], 0.0);
            const Angles from_ris = angles_to(rp[0], rp[1], bs_pos[0], bs_pos[1], 0.0);
            const double shadow_db = rng.normal() * prop.los.shadow_std_db;
            const double beta = path_gain(from_bs.distance, true, shadow_db, prop);
            const double kappa = rician_kfactor(from_bs.distance, prop);
            const double spec_total = beta * kappa / (1.0 + kappa);
            const double diffuse = beta / (1.0 + kappa);

            BsRisStatistics gs;
            std::vector<double> powers =
                specular_count == 3
                    ? split_specular_power(spec_total, config.los_power_ratio, rng)
                    : std::vector<double>{spec_total};
            const double std_rad = std_deg * kPi / 180.0;
            for (std::size_t s = 0; s < powers.size(); ++s) {
                const double az_b = s == 0 ? from_bs.azimuth
                                           : from_bs.azimuth + rng.normal() * std_rad;
                const double el_b = s == 0 ? from_bs.elevation
                                           : from_bs.elevation + rng.normal() * std_rad;
                const double az_r = s == 0 ? from_ris.azimuth
                                           : from_ris.azimuth + rng.normal() * std_rad;
                const double el_r = s == 0 ? from_ris.elevation
                                           : from_ris.elevation + rng.normal() * std_rad;
                gs.specular.push_back(std::sqrt(powers[s]) *
                                      steering_vector(sc.bs_array, az_b, el_b) *
                                      steering_vector(sc.ris_array, az_r, el_r).adjoint());
            }
            gs.corr_bs = scattering(sc.bs_array, from_bs.azimuth, from_bs.elevation, std_deg,
                                    1.0, config.correlation_model);
            gs.corr_ris = scattering(sc.ris_array, from_ris.azimuth, from_ris.elevation, std_deg,
                                     diffuse, config.correlation_model);
            sc.bs_ris.push_back(std::move(gs));
        }
    }

    sc.assignment = assign_ris_elements(sc.direct_gain, sc.ue_positions, config);
    return sc;
}

}  // namespace risim
