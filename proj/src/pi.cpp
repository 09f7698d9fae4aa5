#include "emckit/pi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace emckit {

void PiParams::validate() const {
    if (k_p_pi < 0.0 || k_i_pi < 0.0) throw std::invalid_argument("pi: gains must be >= 0");
    if (!(v_max > 0.0)) throw std::invalid_argument("pi: v_max must be positive");
}

PiOutput pi_step(const PiState& s, const PiParams& p, double r_bar, double y_meas, double ts) {
    if (ts <= 0.0) throw std::invalid_argument("pi_step: ts must be positive");
    const double e = r_bar - y_meas;
    const double candidate = s.integral + e * ts;
    const double u_raw = p.k_p_pi * e + p.k_i_pi * candidate;
    PiOutput o{};
    o.e = e;
    o.u = std::clamp(u_raw, -p.v_max, p.v_max);
    o.state.integral = (std::abs(u_raw) <= p.v_max) ? candidate : s.integral;
    return o;
}

} // namespace emckit
