#pragma once

#include "emckit/config.hpp"

namespace emckit {

struct SampleRecord {
    int k = 0;
    double t = 0.0, ts = 0.0;
    double r_bar = 0.0, y_ref = 0.0, y_true = 0.0, y_meas = 0.0, y_m = 0.0;
    double e_m = 0.0, e_bar = 0.0;
    double u = 0.0, u_trk = 0.0, u_d = 0.0, u_ff = 0.0;
    double x_d1 = 0.0, x_d2 = 0.0;
    bool lost = false;
};

struct Metrics {
    double rmse_tracking = 0.0;
    double rms_model_error = 0.0;
    double max_abs_model_error = 0.0;
    double settling_time = 0.0;
    double window_start = 0.0;
    double window_end = 0.0;
};

struct RunResult {
    std::vector<SampleRecord> records;
    Metrics metrics;
};

// Lockstep loop: for each interval from the timing trace, measure over the
// previous interval, run the controller for the coming one, apply the command
// (loss holds the previous voltage and measurement), then advance the plant.
// Each record's u is the command computed from that record's y_meas.
RunResult run_scenario(const Scenario& sc);
RunResult run_scenario(const Scenario& sc, ControllerKind kind);

// RMSE and model-error statistics over samples with t >= window_start,
// weighted uniformly per sample. Settling time is measured per reference
// change: the first instant from which |y_ref - y_meas| stays below
// settle_threshold for at least 0.5 s, reported as the maximum over changes
// (infinity when a change never settles).
Metrics compute_metrics(const std::vector<SampleRecord>& records,
                        const std::vector<std::pair<double, double>>& reference,
                        double window_start, double settle_threshold);

void write_records_csv(const std::vector<SampleRecord>& records, const std::string& path);
void write_metrics_csv(const std::vector<std::pair<std::string, Metrics>>& rows,
                       const std::string& path);
void write_trace_csv(const TimingTrace& trace, const std::string& path);

} // namespace emckit
