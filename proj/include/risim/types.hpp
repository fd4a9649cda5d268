// SPDX-License-Identifier: Apache-2.0
//
// risim: uplink RIS-assisted massive MIMO Monte Carlo simulator

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace risim {

using cplx = std::complex<double>;
using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;
using rvec = Eigen::VectorXd;
using rmat = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

/// Thermal noise power in W for a given bandwidth (Hz) and noise figure (dB).
inline double thermal_noise_power(double bandwidth_hz, double noise_figure_db) {
    constexpr double kBoltzmann = 1.380649e-23;
    constexpr double kT0 = 290.0;
    return kBoltzmann * kT0 * bandwidth_hz * std::pow(10.0, noise_figure_db / 10.0);
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

}  // namespace risim
