#pragma once

namespace emckit {

struct PiParams {
    double k_p_pi = 1.35;   // V per rad/s
    double k_i_pi = 11.25;  // V per rad
    double v_max = 12.0;

    void validate() const;
};

struct PiState {
    double integral = 0.0;  // rad, held while the clamp is engaged
};

struct PiOutput {
    PiState state;
    double u;
    double e;
};

// Forward-Euler integral accumulation with per-step ts weighting and
// conditional-integration anti-windup.
PiOutput pi_step(const PiState& s, const PiParams& p, double r_bar, double y_meas, double ts);

} // namespace emckit
