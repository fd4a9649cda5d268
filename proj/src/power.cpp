// SPDX-License-Identifier: Apache-2.0

#include "risim/power.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace risim {

PowerAllocation maxmin_fixed_point(const std::vector<UeMoments>& moments, double sigma2,
                                   double p_max, double epsilon, int max_iterations) {
    const int k_count = static_cast<int>(moments.size());
    if (k_count < 1) throw std::invalid_argument("maxmin_fixed_point: no UEs");
    if (!(epsilon > 0.0)) throw std::invalid_argument("maxmin_fixed_point: epsilon must be > 0");
    for (int k = 0; k < k_count; ++k)
        if (!(moments[k].signal > 0.0))
            throw std::invalid_argument("maxmin_fixed_point: zero signal moment for UE " +
                                        std::to_string(k));

    PowerAllocation out;
    out.p = rvec::Constant(k_count, p_max);

    auto sinrs = [&](const rvec& p) {
        rvec s(k_count);
        for (int k = 0; k < k_count; ++k) s(k) = sinr_from_moments(moments[k], k, p, sigma2);
        return s;
    };

    rvec s = sinrs(out.p);
    out.sinr_spread = s.maxCoeff() - s.minCoeff();
    while (out.sinr_spread > epsilon) {
        if (++out.iterations > max_iterations)
            throw std::runtime_error("maxmin_fixed_point: no convergence after " +
                                     std::to_string(max_iterations) + " iterations (spread " +
                                     std::to_string(out.sinr_spread) + ")");
        rvec next(k_count);
        for (int k = 0; k < k_count; ++k) {
            const double interference = out.p.dot(moments[k].cross) -
                                        out.p(k) * moments[k].signal +
                                        sigma2 * moments[k].combiner_norm;
            next(k) = interference / moments[k].signal;
        }
        out.p = (p_max / next.maxCoeff()) * next;
        s = sinrs(out.p);
        out.sinr_spread = s.maxCoeff() - s.minCoeff();
    }
    return out;
}

}  // namespace risim
