#include "emckit/emc.hpp"

#include <cmath>
#include <stdexcept>

namespace emckit {

void ContinuousEigenSpec::validate() const {
    auto check = [](double mu) {
        if (!(mu < 0.0)) throw std::invalid_argument("eigenvalue spec: every mu must be strictly negative");
    };
    check(mu_R);
    for (double mu : mu_K) check(mu);
    for (double mu : mu_N) check(mu);
}

InternalModelMatrices build_matrices(const PlantParams& p, double ts, const EmcOptions& opt) {
    if (ts <= 0.0) throw std::invalid_argument("build_matrices: ts must be positive");
    InternalModelMatrices m{};
    m.a_c = 1.0 - ts / p.tau_m;
    m.b_c = ts / (p.tau_m * p.k_v);
    m.c_c = 1.0;
    m.h_c = {ts, 0.0};
    m.p = opt.disturbance_pole == DisturbancePole::as_printed ? 1.0 + ts : 1.0;
    m.ts = ts;
    return m;
}

GainSet schedule_gains(const ContinuousEigenSpec& spec, const InternalModelMatrices& m,
                       const EmcOptions& opt) {
    const double ts = m.ts;
    if (ts <= 0.0 || m.b_c == 0.0) throw std::invalid_argument("schedule_gains: degenerate placement");

    GainSet g{};
    g.a_r = std::exp(spec.mu_R * ts);
    g.k_r = (m.a_c - g.a_r) / m.b_c;
    g.n_r = (1.0 - g.a_r) / m.b_c;

    const double lk1 = std::exp(spec.mu_K[0] * ts);
    const double lk2 = std::exp(spec.mu_K[1] * ts);
    if (opt.controller_matrix == ControllerMatrix::conventional)
        g.k_p = (1.0 + m.a_c - lk1 - lk2) / m.b_c;
    else
        g.k_p = (1.0 - lk1 - lk2 - m.a_c) / m.b_c;
    g.k_i = (1.0 - lk1) * (1.0 - lk2) / m.b_c;

    // Observer: match det(zI - (A - G L C)) =
    //   (z - a_c + ts*l1)(z - p)^2 + ts^2 l2 (z - p) + ts^3 l3
    // to the monic polynomial with roots e^{mu_N ts}; affine in l.
    const std::vector<Complex> ln = {
        Complex(std::exp(spec.mu_N[0] * ts), 0.0),
        Complex(std::exp(spec.mu_N[1] * ts), 0.0),
        Complex(std::exp(spec.mu_N[2] * ts), 0.0),
    };
    const std::vector<double> c = poly_from_roots(ln);  // [c0, c1, c2, 1]
    const double p = m.p;
    Mat a(3, 3);
    a(0, 0) = ts;
    a(1, 0) = -2.0 * p * ts;
    a(1, 1) = ts * ts;
    a(2, 0) = p * p * ts;
    a(2, 1) = -p * ts * ts;
    a(2, 2) = ts * ts * ts;
    const Vec rhs = {
        c[2] + 2.0 * p + m.a_c,
        c[1] - p * p - 2.0 * p * m.a_c,
        c[0] + p * p * m.a_c,
    };
    const Vec l = solve_linear(a, rhs);
    g.l = {l[0], l[1], l[2]};

    // Rejection gains from the input-matching condition b_c * M = h_c.
    g.m = {m.h_c[0] / m.b_c, m.h_c[1] / m.b_c};
    g.q = {0.0, 0.0};
    return g;
}

ObserverCorrection observer_correct(const EmcState& s, const GainSet& g, double y_meas) {
    const double e_m = y_meas - s.x_c;
    return {{g.l[0] * e_m, g.l[1] * e_m, g.l[2] * e_m}, e_m};
}

EmcState model_predict(const EmcState& s, const InternalModelMatrices& m, double u,
                       const std::array<double, 3>& w_bar) {
    EmcState n = s;
    n.x_c = m.a_c * s.x_c + m.b_c * u + m.ts * (w_bar[0] + s.x_d1);
    n.x_d1 = m.p * s.x_d1 + m.ts * (s.x_d2 + w_bar[1]);
    n.x_d2 = m.p * s.x_d2 + m.ts * w_bar[2];
    return n;
}

ReferenceStep reference_step(const EmcState& s, const InternalModelMatrices& m,
                             const GainSet& g, double r_bar) {
    ReferenceStep r{};
    r.x_ref_next = g.a_r * s.x_ref + m.b_c * g.n_r * r_bar;
    r.u_ff = -g.k_r * s.x_ref + g.n_r * r_bar;
    r.y_ref = s.x_ref;
    return r;
}

ControlOutput control_law(const EmcState& s, const GainSet& g, double u_ff, double v_max) {
    ControlOutput o{};
    o.e_bar = (s.x_ref - g.q[0] * s.x_d1 - g.q[1] * s.x_d2) - s.x_c;
    o.u_trk = g.k_p * o.e_bar + g.k_i * s.x_2;
    o.u_d = g.m[0] * s.x_d1 + g.m[1] * s.x_d2;
    const double u_raw = u_ff + o.u_trk - o.u_d;
    o.u = std::clamp(u_raw, -v_max, v_max);
    // Integrator frozen while the clamp is engaged.
    o.x_2_next = (std::abs(u_raw) <= v_max) ? s.x_2 + o.e_bar : s.x_2;
    return o;
}

EmcState emc_step(const EmcState& s, const PlantParams& p, const ContinuousEigenSpec& spec,
                  double ts, double r_bar, double y_meas, EmcTelemetry& out,
                  const EmcOptions& opt) {
    const InternalModelMatrices m = build_matrices(p, ts, opt);
    const GainSet g = schedule_gains(spec, m, opt);
    const ObserverCorrection c = observer_correct(s, g, y_meas);
    const ReferenceStep r = reference_step(s, m, g, r_bar);
    const ControlOutput u = control_law(s, g, r.u_ff, p.v_max);

    out.y_ref = r.y_ref;
    out.y_m = s.x_c;
    out.e_m = c.e_m;
    out.e_bar = u.e_bar;
    out.u = u.u;
    out.u_trk = u.u_trk;
    out.u_d = u.u_d;
    out.u_ff = r.u_ff;
    out.x_d1 = s.x_d1;
    out.x_d2 = s.x_d2;

    EmcState n = model_predict(s, m, u.u, c.w_bar);
    n.x_ref = r.x_ref_next;
    n.x_2 = u.x_2_next;
    return n;
}

Mat observer_closed_loop(const InternalModelMatrices& m, const GainSet& g) {
    Mat a(3, 3);
    a(0, 0) = m.a_c - m.ts * g.l[0];
    a(0, 1) = m.ts;
    a(1, 0) = -m.ts * g.l[1];
    a(1, 1) = m.p;
    a(1, 2) = m.ts;
    a(2, 0) = -m.ts * g.l[2];
    a(2, 2) = m.p;
    return a;
}

Mat controller_closed_loop(const InternalModelMatrices& m, const GainSet& g,
                           const EmcOptions& opt) {
    Mat a(2, 2);
    a(0, 0) = opt.controller_matrix == ControllerMatrix::conventional ? m.a_c - g.k_p * m.b_c
                                                                      : -m.a_c - g.k_p * m.b_c;
    a(0, 1) = g.k_i * m.b_c;
    a(1, 0) = -1.0;
    a(1, 1) = 1.0;
    return a;
}

} // namespace emckit
