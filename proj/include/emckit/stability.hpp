#pragma once

#include <string>

#include "emckit/emc.hpp"

namespace emckit {

struct StabilityReport {
    std::vector<double> ts_grid;
    // Per grid point: 1 reference eigenvalue, 2 tracking, 3 observer, 2 plant poles.
    std::vector<std::array<Complex, 1>> lambda_R;
    std::vector<std::array<Complex, 2>> lambda_K;
    std::vector<std::array<Complex, 3>> lambda_N;
    std::vector<std::array<Complex, 2>> plant_poles;
    bool all_stable = false;
    double max_modulus = 0.0;
};

// Uniform grid over [ts_min, ts_max]; at each point maps the continuous
// eigenvalues through e^{mu ts}, schedules the gains, verifies the assembled
// closed-loop matrices reproduce the targets to 1e-9, and evaluates the
// discrete plant poles.
StabilityReport sweep(const ContinuousEigenSpec& spec, const PlantParams& p,
                      double ts_min, double ts_max, int n_points,
                      const EmcOptions& opt = {});

// CSV rows: ts, group (R|K|N|plant), index, re, im, modulus, argument.
void write_stability_csv(const StabilityReport& r, const std::string& path);

} // namespace emckit
