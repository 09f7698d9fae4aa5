#pragma once

#include <cstdint>

#include "emckit/numerics.hpp"

namespace emckit {

struct PlantParams {
    // Defaults reproduce the catalogued 10 ms discrete coefficients
    // beta0 = 0.1313, alpha0 = -0.1471, alpha1 = -0.4835 to print precision.
    double tau_m = 0.036053059014618305;
    double tau_a = 0.0025086349301696956;
    double k_v = 1.4067022086824064;
    double v_max = 12.0;
    int encoder_cpr = 720;

    void validate() const;
    double encoder_step_rad() const;
};

struct TfCoefficients {
    double beta0;
    double alpha0;
    double alpha1;
};

// Discrete transfer-function coefficients of the two-pole motor at period t:
//   W(z) = beta0 (z + 1) / (z^2 + alpha1 z + alpha0)
TfCoefficients tf_coefficients(const PlantParams& p, double t);

// Poles of the tf_coefficients denominator, sorted by real part.
std::vector<Complex> tf_poles(const PlantParams& p, double t);

enum class DisturbanceKind { none, step, ramp, sinusoid };

struct DisturbanceProfile {
    DisturbanceKind kind = DisturbanceKind::none;
    double magnitude = 0.0;    // rad/s equivalent
    double start_time = 0.0;   // seconds
    double frequency = 0.0;    // Hz, sinusoid only

    double value_at(double t) const;
};

struct PlantState {
    double omega = 0.0;          // true speed, rad/s
    double omega_dot_aux = 0.0;  // drive-side state of the two-state realization
    double theta = 0.0;          // accumulated true angle, rad
    double d_load = 0.0;         // disturbance value applied over the last step

    std::int64_t theta_counts(const PlantParams& p) const;
};

// Advances the continuous two-state motor
//   omega/V = (1/k_v) / ((tau_m s + 1)(tau_a s + 1))
// by an exact zero-order-hold map over dt. v_applied is clamped to +-v_max;
// the disturbance value at t_now is held constant over the interval and
// enters the speed derivative channel with unit DC gain to omega.
PlantState plant_step(const PlantState& s, const PlantParams& p, double v_applied,
                      const DisturbanceProfile& profile, double t_now, double dt);

// Finite-difference speed from quantized encoder counts over dt.
double measure_speed(const PlantState& s_prev, const PlantState& s_now,
                     const PlantParams& p, double dt);

} // namespace emckit
