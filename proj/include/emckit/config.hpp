#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "emckit/emc.hpp"
#include "emckit/netmodel.hpp"
#include "emckit/pi.hpp"

namespace emckit {

// Flat key = value text with [section] headers; '#' starts a comment.
// Raised on any parse or validation problem, message names section and key.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class ConfigFile {
public:
    static ConfigFile parse_file(const std::string& path);
    static ConfigFile parse_text(const std::string& text, const std::string& origin = "<text>");

    bool has(const std::string& section, const std::string& key) const;
    const std::map<std::string, std::string>& section(const std::string& name) const;

    std::string get_string(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    long long get_int(const std::string& section, const std::string& key, long long fallback) const;

    std::vector<double> get_double_list(const std::string& section, const std::string& key) const;

    // Sections/keys never read back; used to reject typos after loading.
    void require_consumed() const;

private:
    std::string origin_;
    std::map<std::string, std::map<std::string, std::string>> sections_;
    mutable std::map<std::string, std::map<std::string, bool>> consumed_;

    const std::string* find(const std::string& section, const std::string& key) const;
};

enum class ControllerKind { emc, pi };

struct Scenario {
    std::string name;
    double duration = 10.0;
    double window_start = 1.0;
    ControllerKind controller = ControllerKind::emc;
    TimingSpec timing;
    PlantParams plant;
    DisturbanceProfile disturbance;
    std::vector<std::pair<double, double>> reference;  // (time, rad/s), times increasing from 0
    ContinuousEigenSpec eigen;
    EmcOptions emc_options;
    PiParams pi;
    int stability_points = 21;

    double reference_at(double t) const;
    void validate() const;
};

Scenario load_scenario(const ConfigFile& cfg);
Scenario load_scenario_file(const std::string& path);

} // namespace emckit
