#include "emckit/netmodel.hpp"

#include <random>
#include <stdexcept>

namespace emckit {

void TimingSpec::validate() const {
    if (!(ts_min > 0.0)) throw std::invalid_argument("timing: ts_min must be positive");
    if (!(ts_min <= ts_max)) throw std::invalid_argument("timing: requires ts_min <= ts_max");
    if (!(loss_probability >= 0.0 && loss_probability < 1.0))
        throw std::invalid_argument("timing: loss_probability must be in [0, 1)");
}

namespace {

double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

TimingTrace generate_trace(const TimingSpec& spec, double duration) {
    spec.validate();
    if (!(duration > 0.0)) throw std::invalid_argument("generate_trace: duration must be positive");
    std::mt19937_64 rng(spec.seed);
    TimingTrace trace;
    double t = 0.0;
    while (t < duration) {
        const double u = unit_uniform(rng);
        const double v = unit_uniform(rng);
        const double ts = spec.ts_min + u * (spec.ts_max - spec.ts_min);
        trace.intervals.push_back(ts);
        trace.loss_flags.push_back(v < spec.loss_probability);
        t += ts;
    }
    return trace;
}

} // namespace emckit
