#include "emckit/harness.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "emckit/csvio.hpp"

namespace emckit {

RunResult run_scenario(const Scenario& sc) {
    return run_scenario(sc, sc.controller);
}

RunResult run_scenario(const Scenario& sc, ControllerKind kind) {
    sc.validate();
    const TimingTrace trace = generate_trace(sc.timing, sc.duration);

    PlantState plant_now{};
    PlantState plant_prev{};
    EmcState emc{};
    PiState pi{};
    double shaper = 0.0;  // first-order reference filter for the PI loop

    RunResult res;
    res.records.reserve(trace.intervals.size());

    double t = 0.0;
    double prev_ts = 0.0;
    double y_meas = 0.0;
    double applied = 0.0;

    for (size_t k = 0; k < trace.intervals.size(); ++k) {
        const double ts = trace.intervals[k];
        const bool lost = trace.loss_flags[k];
        const double r_bar = sc.reference_at(t);

        // Measurement covers the interval that just elapsed; a lost step
        // reuses the held value.
        if (k > 0 && !lost) y_meas = measure_speed(plant_prev, plant_now, sc.plant, prev_ts);

        SampleRecord rec;
        rec.k = static_cast<int>(k);
        rec.t = t;
        rec.ts = ts;
        rec.r_bar = r_bar;
        rec.y_true = plant_now.omega;
        rec.y_meas = y_meas;
        rec.lost = lost;

        double u_cmd = 0.0;
        if (kind == ControllerKind::emc) {
            EmcTelemetry tel{};
            emc = emc_step(emc, sc.plant, sc.eigen, ts, r_bar, y_meas, tel, sc.emc_options);
            u_cmd = tel.u;
            rec.y_ref = tel.y_ref;
            rec.y_m = tel.y_m;
            rec.e_m = tel.e_m;
            rec.e_bar = tel.e_bar;
            rec.u_trk = tel.u_trk;
            rec.u_d = tel.u_d;
            rec.u_ff = tel.u_ff;
            rec.x_d1 = tel.x_d1;
            rec.x_d2 = tel.x_d2;
        } else {
            const double a_r = std::exp(sc.eigen.mu_R * ts);
            rec.y_ref = shaper;
            const PiOutput out = pi_step(pi, sc.pi, shaper, y_meas, ts);
            pi = out.state;
            u_cmd = out.u;
            rec.e_bar = out.e;
            rec.u_trk = out.u;
            shaper = a_r * shaper + (1.0 - a_r) * r_bar;
        }
        rec.u = u_cmd;
        res.records.push_back(rec);

        if (!lost) applied = u_cmd;
        plant_prev = plant_now;
        plant_now = plant_step(plant_now, sc.plant, applied, sc.disturbance, t, ts);
        t += ts;
        prev_ts = ts;
    }

    const double settle_threshold = sc.plant.encoder_step_rad() / sc.timing.ts_min;
    res.metrics = compute_metrics(res.records, sc.reference, sc.window_start, settle_threshold);
    return res;
}

Metrics compute_metrics(const std::vector<SampleRecord>& records,
                        const std::vector<std::pair<double, double>>& reference,
                        double window_start, double settle_threshold) {
    if (records.empty()) throw std::invalid_argument("compute_metrics: no records");

    Metrics m;
    m.window_start = window_start;
    m.window_end = records.back().t;
    if (window_start > m.window_end)
        throw std::invalid_argument("compute_metrics: window_start beyond the record span");

    double sum_sq = 0.0, sum_sq_em = 0.0;
    size_t n = 0;
    for (const auto& r : records) {
        if (r.t < window_start) continue;
        const double e = r.y_ref - r.y_meas;
        sum_sq += e * e;
        sum_sq_em += r.e_m * r.e_m;
        m.max_abs_model_error = std::max(m.max_abs_model_error, std::abs(r.e_m));
        ++n;
    }
    if (n == 0) throw std::invalid_argument("compute_metrics: empty metrics window");
    m.rmse_tracking = std::sqrt(sum_sq / static_cast<double>(n));
    m.rms_model_error = std::sqrt(sum_sq_em / static_cast<double>(n));

    constexpr double kHold = 0.5;
    double worst = 0.0;
    for (size_t c = 0; c < reference.size(); ++c) {
        const double t_change = reference[c].first;
        const double t_next = (c + 1 < reference.size()) ? reference[c + 1].first
                                                         : std::numeric_limits<double>::infinity();
        double run_start = std::numeric_limits<double>::quiet_NaN();
        double settled = std::numeric_limits<double>::infinity();
        for (const auto& r : records) {
            if (r.t < t_change) continue;
            if (r.t >= t_next) break;
            if (std::abs(r.y_ref - r.y_meas) < settle_threshold) {
                if (std::isnan(run_start)) run_start = r.t;
                if (r.t - run_start >= kHold) {
                    settled = run_start - t_change;
                    break;
                }
            } else {
                run_start = std::numeric_limits<double>::quiet_NaN();
            }
        }
        worst = std::max(worst, settled);
    }
    m.settling_time = worst;
    return m;
}

void write_records_csv(const std::vector<SampleRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    CsvWriter w(out);
    w.row("k", "t", "ts", "r_bar", "y_ref", "y_true", "y_meas", "y_m", "e_m", "e_bar",
          "u", "u_trk", "u_d", "u_ff", "x_d1", "x_d2", "lost");
    for (const auto& r : records)
        w.row(r.k, r.t, r.ts, r.r_bar, r.y_ref, r.y_true, r.y_meas, r.y_m, r.e_m, r.e_bar,
              r.u, r.u_trk, r.u_d, r.u_ff, r.x_d1, r.x_d2, r.lost);
    if (!out.good()) throw std::runtime_error("write failed: " + path);
}

void write_metrics_csv(const std::vector<std::pair<std::string, Metrics>>& rows,
                       const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    CsvWriter w(out);
    w.row("label", "rmse_tracking", "rms_model_error", "max_abs_model_error", "settling_time",
          "window_start", "window_end");
    for (const auto& [label, m] : rows)
        w.row(label, m.rmse_tracking, m.rms_model_error, m.max_abs_model_error, m.settling_time,
              m.window_start, m.window_end);
    if (!out.good()) throw std::runtime_error("write failed: " + path);
}

void write_trace_csv(const TimingTrace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    CsvWriter w(out);
    w.row("k", "t", "ts", "lost");
    double t = 0.0;
    for (size_t k = 0; k < trace.intervals.size(); ++k) {
        w.row(k, t, trace.intervals[k], static_cast<bool>(trace.loss_flags[k]));
        t += trace.intervals[k];
    }
    if (!out.good()) throw std::runtime_error("write failed: " + path);
}

} // namespace emckit
