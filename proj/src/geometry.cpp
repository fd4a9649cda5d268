// SPDX-License-Identifier: Apache-2.0

#include "risim/geometry.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace risim {

namespace {

// 20-point Gauss-Hermite rule (weight e^{-x^2}), symmetric; stored for x >= 0.
// With the substitution angle = nominal + sqrt(2)*std*x this integrates the
// Gaussian angular density exactly for polynomials up to degree 39.
constexpr int kGhHalf = 10;
constexpr std::array<double, kGhHalf> kGhNodes = {
    0.2453407083009012, 0.7374737285453944, 1.2340762153953230, 1.7385377121165861,
    2.2549740020892757, 2.7888060584281305, 3.3478545673832163, 3.9447640401156252,
    4.6036824495507442, 5.3874808900112328};
constexpr std::array<double, kGhHalf> kGhWeights = {
    4.6224366960061009e-01, 2.8667550536283409e-01, 1.0901720602002325e-01,
    2.4810520887463607e-02, 3.2437733422378567e-03, 2.2833863601635774e-04,
    7.8025564785320787e-06, 1.0860693707692819e-07, 4.3993409922731805e-10,
    2.2293936455341510e-13};

struct GhRule {
    std::array<double, 2 * kGhHalf> nodes;
    std::array<double, 2 * kGhHalf> weights;
    GhRule() {
        constexpr double inv_sqrt_pi = 0.5641895835477563;
        for (int i = 0; i < kGhHalf; ++i) {
            nodes[2 * i] = kGhNodes[i];
            nodes[2 * i + 1] = -kGhNodes[i];
            // normalize so the weights sum to 1 (probability measure)
            weights[2 * i] = weights[2 * i + 1] = kGhWeights[i] * inv_sqrt_pi;
        }
    }
};

double element_h(const ArrayGeometry& a, int n) { return (n % a.horizontal) * a.spacing; }
double element_v(const ArrayGeometry& a, int n) { return (n / a.horizontal) * a.spacing; }

// J_n(x) for integer n and real x of either sign.
double bessel_jn(int n, double x) {
    double sign = 1.0;
    if (x < 0.0) {
        x = -x;
        if (n % 2 != 0) sign = -sign;
    }
    if (n < 0) {
        n = -n;
        if (n % 2 != 0) sign = -sign;
    }
    return sign * std::cyl_bessel_j(static_cast<double>(n), x);
}

// orders beyond |x| + O(x^{1/3}) contribute below ~1e-14
int bessel_order_span(double x) {
    const double ax = std::abs(x);
    return static_cast<int>(ax + 12.0 * std::cbrt(ax + 1.0) + 12.0);
}

}  // namespace

cvec steering_vector(const ArrayGeometry& array, double azimuth, double elevation) {
    if (!std::isfinite(azimuth) || !std::isfinite(elevation))
        throw std::invalid_argument("steering_vector: non-finite angle");
    const int n_el = array.size();
    const double sa = std::sin(azimuth), ce = std::cos(elevation), se = std::sin(elevation);
    cvec a(n_el);
    for (int n = 0; n < n_el; ++n) {
        const double phase = 2.0 * kPi * (element_h(array, n) * sa * ce + element_v(array, n) * se);
        a(n) = std::polar(1.0, phase);
    }
    return a;
}

cmat local_scattering_correlation(const ArrayGeometry& array, double nominal_azimuth,
                                  double nominal_elevation, double angular_std_deg,
                                  double gain) {
    if (angular_std_deg <= 0.0) throw std::invalid_argument("angular_std must be positive");
    if (gain < 0.0) throw std::invalid_argument("gain must be non-negative");
    static const GhRule gh;
    const double std_rad = angular_std_deg * kPi / 180.0;
    const double scale = std::sqrt(2.0) * std_rad;
    const int n_el = array.size();

    // E{a(az, el) a(az, el)^H} entry (m, n) depends on the element offset
    // (dh, dv) only; evaluate once per distinct offset.
    const int nh = array.horizontal, nv = array.vertical;
    cmat by_offset(2 * nh - 1, 2 * nv - 1);
    for (int dv = -(nv - 1); dv <= nv - 1; ++dv) {
        for (int dh = -(nh - 1); dh <= nh - 1; ++dh) {
            cplx acc = 0.0;
            for (int q = 0; q < 2 * kGhHalf; ++q) {
                const double az = nominal_azimuth + scale * gh.nodes[q];
                const double sa = std::sin(az);
                cplx inner = 0.0;
                for (int p = 0; p < 2 * kGhHalf; ++p) {
                    const double el = nominal_elevation + scale * gh.nodes[p];
                    const double phase = 2.0 * kPi * array.spacing *
                                         (dh * sa * std::cos(el) + dv * std::sin(el));
                    inner += gh.weights[p] * std::polar(1.0, phase);
                }
                acc += gh.weights[q] * inner;
            }
            by_offset(dh + nh - 1, dv + nv - 1) = acc;
        }
    }

    cmat corr(n_el, n_el);
    for (int m = 0; m < n_el; ++m) {
        for (int n = 0; n < n_el; ++n) {
            const int dh = (m % nh) - (n % nh);
            const int dv = (m / nh) - (n / nh);
            corr(m, n) = gain * by_offset(dh + nh - 1, dv + nv - 1);
        }
    }
    // Quadrature is a positive mixture of rank-1 terms, so corr is PSD up to
    // roundoff; symmetrize to kill the asymmetric part of that roundoff.
    corr = 0.5 * (corr + corr.adjoint()).eval();
    return corr;
}

cmat local_scattering_correlation_approx(const ArrayGeometry& array, double nominal_azimuth,
                                         double nominal_elevation, double angular_std_deg,
                                         double gain) {
    if (angular_std_deg <= 0.0) throw std::invalid_argument("angular_std must be positive");
    if (gain < 0.0) throw std::invalid_argument("gain must be non-negative");
    const double sd = angular_std_deg * kPi / 180.0;
    const double var = sd * sd;
    const int n_el = array.size();
    const int nh = array.horizontal, nv = array.vertical;

    // The pairwise phase is 2*pi*(dh*sin(az)cos(el) + dv*sin(el)) with dh, dv
    // in wavelengths. Since sin(az)cos(el) = (sin(az+el) + sin(az-el))/2 the
    // phase is a sum of three sinusoids in Gaussian arguments, so the
    // expectation expands into a Bessel series whose terms carry the Gaussian
    // characteristic factor exp(-q^2 var / 2). Truncating where that factor
    // dies is the small-angular-deviation approximation; the series itself is
    // closed form in J_n and exponentials.
    const int gauss_span = static_cast<int>(std::ceil(std::sqrt(2.0 * std::log(1e14)) / sd)) + 1;
    const int kmax = 2 * bessel_order_span(kPi * (nh - 1) * array.spacing);

    cmat by_offset(2 * nh - 1, 2 * nv - 1);
    std::vector<cplx> t_table(2 * kmax + 1);
    for (int dv = -(nv - 1); dv <= nv - 1; ++dv) {
        const double a2 = 2.0 * kPi * dv * array.spacing;
        const int pmax = bessel_order_span(a2);
        const int rmax = std::min(gauss_span, kmax + pmax);
        // T(k) = sum_r J_{r-k}(a2) exp(i r el0 - r^2 var / 2)
        for (int k = -kmax; k <= kmax; ++k) {
            cplx acc = 0.0;
            const int rlo = std::max(-rmax, k - pmax), rhi = std::min(rmax, k + pmax);
            for (int r = rlo; r <= rhi; ++r)
                acc += bessel_jn(r - k, a2) *
                       std::polar(std::exp(-0.5 * r * r * var), r * nominal_elevation);
            t_table[k + kmax] = acc;
        }
        for (int dh = -(nh - 1); dh <= nh - 1; ++dh) {
            const double c = kPi * dh * array.spacing;  // half the azimuth coefficient
            const int nmax = bessel_order_span(c);
            std::vector<double> jh(2 * nmax + 1);
            for (int n = -nmax; n <= nmax; ++n) jh[n + nmax] = bessel_jn(n, c);
            cplx acc = 0.0;
            for (int n = -nmax; n <= nmax; ++n) {
                if (std::abs(jh[n + nmax]) < 1e-18) continue;
                for (int m = -nmax; m <= nmax; ++m) {
                    const double w = jh[n + nmax] * jh[m + nmax];
                    if (std::abs(w) < 1e-18) continue;
                    const int s = n + m;
                    const double damp = std::exp(-0.5 * s * s * var);
                    if (damp < 1e-16) continue;
                    acc += w * damp * std::polar(1.0, s * nominal_azimuth) *
                           t_table[(n - m) + kmax];
                }
            }
            by_offset(dh + nh - 1, dv + nv - 1) = acc;
        }
    }

    cmat corr(n_el, n_el);
    for (int m = 0; m < n_el; ++m) {
        for (int n = 0; n < n_el; ++n) {
            const int dh = (m % nh) - (n % nh);
            const int dv = (m / nh) - (n / nh);
            corr(m, n) = gain * by_offset(dh + nh - 1, dv + nv - 1);
        }
    }
    corr = 0.5 * (corr + corr.adjoint()).eval();
    return corr;
}

}  // namespace risim
