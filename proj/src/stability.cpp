#include "emckit/stability.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "emckit/csvio.hpp"

namespace emckit {

namespace {

// Monic characteristic polynomial, coefficients ascending.
std::vector<double> char_poly(const Mat& m) {
    switch (m.rows()) {
        case 1:
            return {-m(0, 0), 1.0};
        case 2:
            return {m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0), -(m(0, 0) + m(1, 1)), 1.0};
        default: {
            const double tr = m(0, 0) + m(1, 1) + m(2, 2);
            const double m00 = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
            const double m11 = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
            const double m22 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
            const double det = m(0, 0) * m00 - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                               m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
            return {-det, m00 + m11 + m22, -tr, 1.0};
        }
    }
}

// Placement is checked where it is well conditioned: the characteristic
// polynomial of the assembled matrix must equal the target polynomial to
// 1e-9 (it holds to ~1e-14). A tight root-space bound is not attainable in
// double precision because the stock targets repeat: a root of multiplicity
// m extracted from a rounded matrix carries an intrinsic ulp^(1/m) error
// (~1e-5 for the near-triple observer spectrum), so the extracted
// eigenvalues get an envelope check only.
void verify_match(const Mat& placed, std::vector<Complex> targets, double ts, const char* which) {
    const std::vector<double> want = poly_from_roots(targets);
    const std::vector<double> got = char_poly(placed);
    for (size_t i = 0; i < want.size(); ++i) {
        if (std::abs(got[i] - want[i]) > 1e-9)
            throw std::runtime_error(std::string("stability sweep: ") + which +
                                     " placement drifted from target at ts = " + std::to_string(ts));
    }
    std::sort(targets.begin(), targets.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    const std::vector<Complex> ev = eigenvalues(placed);
    for (size_t i = 0; i < targets.size(); ++i) {
        if (std::abs(ev[i] - targets[i]) > 1e-4)
            throw std::runtime_error(std::string("stability sweep: ") + which +
                                     " eigenvalue extraction drifted at ts = " + std::to_string(ts));
    }
}

} // namespace

StabilityReport sweep(const ContinuousEigenSpec& spec, const PlantParams& p,
                      double ts_min, double ts_max, int n_points, const EmcOptions& opt) {
    if (!(ts_min > 0.0 && ts_min < ts_max)) throw std::invalid_argument("sweep: requires 0 < ts_min < ts_max");
    if (n_points < 2) throw std::invalid_argument("sweep: n_points must be >= 2");

    StabilityReport rep;
    rep.all_stable = true;
    rep.max_modulus = 0.0;
    auto note = [&rep](const Complex& z) {
        const double m = std::abs(z);
        rep.max_modulus = std::max(rep.max_modulus, m);
        if (m >= 1.0) rep.all_stable = false;
    };

    for (int i = 0; i < n_points; ++i) {
        const double ts = ts_min + (ts_max - ts_min) * static_cast<double>(i) / (n_points - 1);
        rep.ts_grid.push_back(ts);

        const InternalModelMatrices m = build_matrices(p, ts, opt);
        const GainSet g = schedule_gains(spec, m, opt);

        const Complex lr(std::exp(spec.mu_R * ts), 0.0);
        Mat ref_cl(1, 1);
        ref_cl(0, 0) = m.a_c - m.b_c * g.k_r;
        verify_match(ref_cl, {lr}, ts, "reference");
        rep.lambda_R.push_back({lr});
        note(lr);

        std::vector<Complex> lk = {Complex(std::exp(spec.mu_K[0] * ts), 0.0),
                                   Complex(std::exp(spec.mu_K[1] * ts), 0.0)};
        verify_match(controller_closed_loop(m, g, opt), lk, ts, "tracking");
        rep.lambda_K.push_back({lk[0], lk[1]});
        note(lk[0]);
        note(lk[1]);

        std::vector<Complex> ln = {Complex(std::exp(spec.mu_N[0] * ts), 0.0),
                                   Complex(std::exp(spec.mu_N[1] * ts), 0.0),
                                   Complex(std::exp(spec.mu_N[2] * ts), 0.0)};
        verify_match(observer_closed_loop(m, g), ln, ts, "observer");
        rep.lambda_N.push_back({ln[0], ln[1], ln[2]});
        for (const auto& z : ln) note(z);

        const std::vector<Complex> pp = tf_poles(p, ts);
        rep.plant_poles.push_back({pp[0], pp[1]});
        for (const auto& z : pp) note(z);
    }
    return rep;
}

void write_stability_csv(const StabilityReport& r, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    CsvWriter w(out);
    w.row("ts", "group", "index", "re", "im", "modulus", "argument");
    auto emit = [&w](double ts, const char* group, int index, const Complex& z) {
        w.row(ts, group, index, z.real(), z.imag(), std::abs(z), std::arg(z));
    };
    for (size_t i = 0; i < r.ts_grid.size(); ++i) {
        const double ts = r.ts_grid[i];
        emit(ts, "R", 0, r.lambda_R[i][0]);
        for (int j = 0; j < 2; ++j) emit(ts, "K", j, r.lambda_K[i][static_cast<size_t>(j)]);
        for (int j = 0; j < 3; ++j) emit(ts, "N", j, r.lambda_N[i][static_cast<size_t>(j)]);
        for (int j = 0; j < 2; ++j) emit(ts, "plant", j, r.plant_poles[i][static_cast<size_t>(j)]);
    }
    if (!out.good()) throw std::runtime_error("write failed: " + path);
}

} // namespace emckit
