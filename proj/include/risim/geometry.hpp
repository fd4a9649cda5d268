// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "risim/types.hpp"

namespace risim {

/// Half-wavelength-normalized antenna array. ULA lies along the local
/// horizontal axis; UPA spans horizontal x vertical. Element (h, v) sits at
/// (h * spacing, v * spacing) in wavelengths.
struct ArrayGeometry {
    enum class Kind { ULA, UPA };
    Kind kind = Kind::ULA;
    int horizontal = 1;
    int vertical = 1;
    double spacing = 0.5;  // wavelengths

    int size() const { return horizontal * vertical; }

    static ArrayGeometry ula(int elements, double spacing) {
        return {Kind::ULA, elements, 1, spacing};
    }
    static ArrayGeometry upa(int horizontal, int vertical, double spacing) {
        return {Kind::UPA, horizontal, vertical, spacing};
    }
};

/// Plane-wave steering vector. Azimuth is measured from array broadside,
/// elevation from the horizontal plane; entry (h, v) has phase
/// 2*pi*spacing*(h sin(az) cos(el) + v sin(el)). Elements are ordered
/// v-major (n = v * horizontal + h).
cvec steering_vector(const ArrayGeometry& array, double azimuth, double elevation);

/// Spatial correlation matrix of the diffuse channel component under a
/// Gaussian local scattering model: azimuth and elevation deviate
/// independently from the nominal angles with the given standard deviation
/// (degrees). Computed by Gauss-Hermite quadrature; trace = gain * size.
cmat local_scattering_correlation(const ArrayGeometry& array, double nominal_azimuth,
                                  double nominal_elevation, double angular_std_deg,
                                  double gain);

/// Closed-form small-angular-deviation approximation of the same matrix
/// (first-order phase expansion around the nominal angles).
cmat local_scattering_correlation_approx(const ArrayGeometry& array, double nominal_azimuth,
                                         double nominal_elevation, double angular_std_deg,
                                         double gain);

}  // namespace risim
