#include "emckit/plant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace emckit {

void PlantParams::validate() const {
    if (!(tau_m > tau_a && tau_a > 0.0)) throw std::invalid_argument("plant: requires tau_m > tau_a > 0");
    if (!(k_v > 0.0)) throw std::invalid_argument("plant: k_v must be positive");
    if (!(v_max > 0.0)) throw std::invalid_argument("plant: v_max must be positive");
    if (encoder_cpr <= 0) throw std::invalid_argument("plant: encoder_cpr must be a positive integer");
}

double PlantParams::encoder_step_rad() const {
    return 2.0 * M_PI / static_cast<double>(encoder_cpr);
}

TfCoefficients tf_coefficients(const PlantParams& p, double t) {
    if (t <= 0.0) throw std::invalid_argument("tf_coefficients: t must be positive");
    const double den = p.tau_m * t + 2.0 * p.tau_m * p.tau_a;
    return {
        t * t / (p.k_v * den),
        (t * t - p.tau_m * t + 2.0 * p.tau_m * p.tau_a) / den,
        (t * t - 4.0 * p.tau_m * p.tau_a) / den,
    };
}

std::vector<Complex> tf_poles(const PlantParams& p, double t) {
    const TfCoefficients c = tf_coefficients(p, t);
    return poly_roots({c.alpha0, c.alpha1, 1.0});
}

double DisturbanceProfile::value_at(double t) const {
    if (t < start_time) return 0.0;
    switch (kind) {
        case DisturbanceKind::none:
            return 0.0;
        case DisturbanceKind::step:
            return magnitude;
        case DisturbanceKind::ramp:
            return magnitude * (t - start_time);
        case DisturbanceKind::sinusoid:
            return magnitude * std::sin(2.0 * M_PI * frequency * (t - start_time));
    }
    return 0.0;
}

std::int64_t PlantState::theta_counts(const PlantParams& p) const {
    return std::llround(theta / p.encoder_step_rad());
}

PlantState plant_step(const PlantState& s, const PlantParams& p, double v_applied,
                      const DisturbanceProfile& profile, double t_now, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("plant_step: dt must be positive");
    const double v = std::clamp(v_applied, -p.v_max, p.v_max);
    const double d = profile.value_at(t_now);

    // States [omega, drive, theta]:
    //   omega' = (drive + d - omega)/tau_m
    //   drive' = (v/k_v - drive)/tau_a
    //   theta' = omega
    Mat a(3, 3);
    a(0, 0) = -1.0 / p.tau_m;
    a(0, 1) = 1.0 / p.tau_m;
    a(1, 1) = -1.0 / p.tau_a;
    a(2, 0) = 1.0;

    const Vec b_volt = {0.0, 1.0 / (p.k_v * p.tau_a), 0.0};
    const Vec b_dist = {1.0 / p.tau_m, 0.0, 0.0};

    const Discretization dz_v = zoh_discretize(a, b_volt, dt);
    const Discretization dz_d = zoh_discretize(a, b_dist, dt);

    const Vec x = {s.omega, s.omega_dot_aux, s.theta};
    const Vec ax = mat_vec(dz_v.a_d, x);

    PlantState out;
    out.omega = ax[0] + dz_v.b_d[0] * v + dz_d.b_d[0] * d;
    out.omega_dot_aux = ax[1] + dz_v.b_d[1] * v + dz_d.b_d[1] * d;
    out.theta = ax[2] + dz_v.b_d[2] * v + dz_d.b_d[2] * d;
    out.d_load = d;
    return out;
}

double measure_speed(const PlantState& s_prev, const PlantState& s_now,
                     const PlantParams& p, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("measure_speed: dt must be positive");
    const auto delta = s_now.theta_counts(p) - s_prev.theta_counts(p);
    return static_cast<double>(delta) * p.encoder_step_rad() / dt;
}

} // namespace emckit
