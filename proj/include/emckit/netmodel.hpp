#pragma once

#include <cstdint>
#include <vector>

namespace emckit {

struct TimingSpec {
    double ts_min = 0.01;
    double ts_max = 0.03;
    std::uint64_t seed = 0;
    double loss_probability = 0.0;  // [0, 1)

    void validate() const;
};

struct TimingTrace {
    std::vector<double> intervals;
    std::vector<bool> loss_flags;
};

// Intervals drawn i.i.d. uniform on [ts_min, ts_max] until the cumulative
// time reaches duration; loss flags drawn Bernoulli(loss_probability).
// Deterministic for a fixed seed: one mt19937_64 stream, two draws per step
// in a fixed order, each mapped to [0, 1) through the top 53 bits.
TimingTrace generate_trace(const TimingSpec& spec, double duration);

} // namespace emckit
