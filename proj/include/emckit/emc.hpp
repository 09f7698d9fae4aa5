#pragma once

#include <array>

#include "emckit/plant.hpp"

namespace emckit {

struct ContinuousEigenSpec {
    double mu_R = -2.5647;
    std::array<double, 2> mu_K = {-2.5647, -2.5647};
    std::array<double, 3> mu_N = {-14.3842, -14.3842, -14.3839};

    void validate() const;  // every value strictly negative
};

// Sign convention of the tracking-loop matrix used for k_p, and the pole of
// the disturbance drift states.
enum class ControllerMatrix { conventional, as_printed };
enum class DisturbancePole { as_printed, neutral };  // 1 + Ts vs. 1

struct EmcOptions {
    ControllerMatrix controller_matrix = ControllerMatrix::conventional;
    DisturbancePole disturbance_pole = DisturbancePole::as_printed;
};

struct EmcState {
    double x_c = 0.0;    // internal-model speed state
    double x_d1 = 0.0;   // disturbance state
    double x_d2 = 0.0;   // disturbance drift state
    double x_ref = 0.0;  // reference dynamics state
    double x_2 = 0.0;    // controller integrator state
};

struct InternalModelMatrices {
    double a_c, b_c, c_c;       // scalar speed-state model
    std::array<double, 2> h_c;  // disturbance coupling into the speed state
    double p;                   // drift-state pole
    double ts;
};

struct GainSet {
    double a_r, k_r, n_r;       // reference dynamics and its feedback/feedforward
    double k_p, k_i;            // tracking gains
    std::array<double, 3> l;    // observer injection gains
    std::array<double, 2> m;    // disturbance rejection gains
    std::array<double, 2> q;    // tracking-error correction (zero here)
};

InternalModelMatrices build_matrices(const PlantParams& p, double ts,
                                     const EmcOptions& opt = {});

// Per-step pole placement from the continuous eigenvalues: lambda = e^{mu ts}
// targets for the reference, tracking, and observer loops, solved in closed
// form (observer via a 3x3 linear solve).
GainSet schedule_gains(const ContinuousEigenSpec& spec, const InternalModelMatrices& m,
                       const EmcOptions& opt = {});

struct ObserverCorrection {
    std::array<double, 3> w_bar;
    double e_m;
};

ObserverCorrection observer_correct(const EmcState& s, const GainSet& g, double y_meas);

EmcState model_predict(const EmcState& s, const InternalModelMatrices& m, double u,
                       const std::array<double, 3>& w_bar);

struct ReferenceStep {
    double x_ref_next;
    double u_ff;
    double y_ref;
};

ReferenceStep reference_step(const EmcState& s, const InternalModelMatrices& m,
                             const GainSet& g, double r_bar);

struct ControlOutput {
    double u;      // clamped command
    double u_trk;  // tracking component
    double u_d;    // disturbance rejection component
    double e_bar;  // tracking error
    double x_2_next;
};

ControlOutput control_law(const EmcState& s, const GainSet& g, double u_ff, double v_max);

struct EmcTelemetry {
    double y_ref, y_m, e_m, e_bar;
    double u, u_trk, u_d, u_ff;
    double x_d1, x_d2;
};

// One controller invocation for the coming interval ts: rebuild the model,
// schedule gains, correct with the current measurement, advance the
// reference, form the command, then predict the model to the next sample.
EmcState emc_step(const EmcState& s, const PlantParams& p, const ContinuousEigenSpec& spec,
                  double ts, double r_bar, double y_meas, EmcTelemetry& out,
                  const EmcOptions& opt = {});

// Observer system matrix [[a_c, ts, 0], [0, p, ts], [0, 0, p]] minus the
// injection term G*L*C; its eigenvalues are the placed observer poles.
Mat observer_closed_loop(const InternalModelMatrices& m, const GainSet& g);

// Tracking closed loop in the scheduled sign convention; its eigenvalues are
// the placed tracking poles.
Mat controller_closed_loop(const InternalModelMatrices& m, const GainSet& g,
                           const EmcOptions& opt = {});

} // namespace emckit
