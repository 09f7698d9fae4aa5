#include "emckit/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace emckit {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& section, const std::string& key, const std::string& raw) {
    const std::string v = trim(raw);
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        throw ConfigError("[" + section + "] " + key + ": expected a number, got '" + v + "'");
    return out;
}

} // namespace

ConfigFile ConfigFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open configuration file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), path);
}

ConfigFile ConfigFile::parse_text(const std::string& text, const std::string& origin) {
    ConfigFile cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    std::string current;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section header '" + line + "'");
            current = trim(line.substr(1, line.size() - 2));
            if (current.empty())
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty section name");
            cfg.sections_[current];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value', got '" + line + "'");
        if (current.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": key outside any [section]");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (cfg.sections_[current].count(key))
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key [" + current + "] " + key);
        cfg.sections_[current][key] = value;
    }
    return cfg;
}

const std::string* ConfigFile::find(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    const auto k = s->second.find(key);
    if (k == s->second.end()) return nullptr;
    consumed_[section][key] = true;
    return &k->second;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
    return find(section, key) != nullptr;
}

const std::map<std::string, std::string>& ConfigFile::section(const std::string& name) const {
    static const std::map<std::string, std::string> empty;
    const auto s = sections_.find(name);
    return s == sections_.end() ? empty : s->second;
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key) const {
    const std::string* v = find(section, key);
    if (!v) throw ConfigError("missing required key [" + section + "] " + key);
    return *v;
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key,
                                   const std::string& fallback) const {
    const std::string* v = find(section, key);
    return v ? *v : fallback;
}

double ConfigFile::get_double(const std::string& section, const std::string& key) const {
    return parse_double(section, key, get_string(section, key));
}

double ConfigFile::get_double(const std::string& section, const std::string& key, double fallback) const {
    const std::string* v = find(section, key);
    return v ? parse_double(section, key, *v) : fallback;
}

long long ConfigFile::get_int(const std::string& section, const std::string& key, long long fallback) const {
    const std::string* v = find(section, key);
    if (!v) return fallback;
    const std::string t = trim(*v);
    long long out = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), out);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size())
        throw ConfigError("[" + section + "] " + key + ": expected an integer, got '" + t + "'");
    return out;
}

std::vector<double> ConfigFile::get_double_list(const std::string& section, const std::string& key) const {
    const std::string raw = get_string(section, key);
    std::vector<double> out;
    std::istringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(section, key, item));
    if (out.empty()) throw ConfigError("[" + section + "] " + key + ": expected a comma-separated list");
    return out;
}

void ConfigFile::require_consumed() const {
    for (const auto& [sec, keys] : sections_)
        for (const auto& [key, value] : keys) {
            (void)value;
            if (!consumed_[sec][key])
                throw ConfigError("unknown key [" + sec + "] " + key + " in " + origin_);
        }
}

double Scenario::reference_at(double t) const {
    double v = 0.0;
    for (const auto& [time, value] : reference) {
        if (t + 1e-12 < time) break;
        v = value;
    }
    return v;
}

void Scenario::validate() const {
    if (!(duration > 0.0)) throw ConfigError("[scenario] duration: must be positive");
    if (window_start < 0.0 || window_start >= duration)
        throw ConfigError("[scenario] window_start: must lie in [0, duration)");
    timing.validate();
    plant.validate();
    eigen.validate();
    pi.validate();
    if (reference.empty()) throw ConfigError("[reference] schedule: must not be empty");
    if (reference.front().first != 0.0)
        throw ConfigError("[reference] schedule: first entry must start at time 0");
    for (size_t i = 1; i < reference.size(); ++i)
        if (!(reference[i].first > reference[i - 1].first))
            throw ConfigError("[reference] schedule: times must be strictly increasing");
    if (disturbance.magnitude < 0.0) throw ConfigError("[disturbance] magnitude: must be >= 0");
    if (disturbance.start_time < 0.0) throw ConfigError("[disturbance] start_time: must be >= 0");
    if (stability_points < 2) throw ConfigError("[stability] n_points: must be >= 2");
}

namespace {

std::vector<std::pair<double, double>> parse_schedule(const std::string& raw) {
    std::vector<std::pair<double, double>> out;
    std::istringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string entry = trim(item);
        const auto colon = entry.find(':');
        if (colon == std::string::npos)
            throw ConfigError("[reference] schedule: expected 'time:value' entries, got '" + entry + "'");
        out.emplace_back(parse_double("reference", "schedule", entry.substr(0, colon)),
                         parse_double("reference", "schedule", entry.substr(colon + 1)));
    }
    return out;
}

} // namespace

Scenario load_scenario(const ConfigFile& cfg) {
    Scenario sc;
    sc.name = cfg.get_string("scenario", "name");
    sc.duration = cfg.get_double("scenario", "duration");
    sc.window_start = cfg.get_double("scenario", "window_start", 1.0);

    const std::string ctrl = cfg.get_string("scenario", "controller", "emc");
    if (ctrl == "emc") sc.controller = ControllerKind::emc;
    else if (ctrl == "pi") sc.controller = ControllerKind::pi;
    else throw ConfigError("[scenario] controller: must be 'emc' or 'pi', got '" + ctrl + "'");

    sc.timing.ts_min = cfg.get_double("timing", "ts_min");
    sc.timing.ts_max = cfg.get_double("timing", "ts_max");
    const std::string dist = cfg.get_string("timing", "distribution", "uniform");
    if (dist != "uniform")
        throw ConfigError("[timing] distribution: only 'uniform' is supported, got '" + dist + "'");
    sc.timing.seed = static_cast<std::uint64_t>(cfg.get_int("timing", "seed", 0));
    sc.timing.loss_probability = cfg.get_double("timing", "loss_probability", 0.0);

    sc.plant.tau_m = cfg.get_double("plant", "tau_m", sc.plant.tau_m);
    sc.plant.tau_a = cfg.get_double("plant", "tau_a", sc.plant.tau_a);
    sc.plant.k_v = cfg.get_double("plant", "k_v", sc.plant.k_v);
    sc.plant.v_max = cfg.get_double("plant", "v_max", sc.plant.v_max);
    sc.plant.encoder_cpr = static_cast<int>(cfg.get_int("plant", "encoder_cpr", sc.plant.encoder_cpr));

    const std::string kind = cfg.get_string("disturbance", "kind", "none");
    if (kind == "none") sc.disturbance.kind = DisturbanceKind::none;
    else if (kind == "step") sc.disturbance.kind = DisturbanceKind::step;
    else if (kind == "ramp") sc.disturbance.kind = DisturbanceKind::ramp;
    else if (kind == "sinusoid") sc.disturbance.kind = DisturbanceKind::sinusoid;
    else throw ConfigError("[disturbance] kind: must be none|step|ramp|sinusoid, got '" + kind + "'");
    sc.disturbance.magnitude = cfg.get_double("disturbance", "magnitude", 0.0);
    sc.disturbance.start_time = cfg.get_double("disturbance", "start_time", 0.0);
    sc.disturbance.frequency = cfg.get_double("disturbance", "frequency", 0.0);

    sc.reference = parse_schedule(cfg.get_string("reference", "schedule"));

    sc.eigen.mu_R = cfg.get_double("emc", "mu_r", sc.eigen.mu_R);
    if (cfg.has("emc", "mu_k")) {
        const auto v = cfg.get_double_list("emc", "mu_k");
        if (v.size() != 2) throw ConfigError("[emc] mu_k: expected exactly 2 values");
        sc.eigen.mu_K = {v[0], v[1]};
    }
    if (cfg.has("emc", "mu_n")) {
        const auto v = cfg.get_double_list("emc", "mu_n");
        if (v.size() != 3) throw ConfigError("[emc] mu_n: expected exactly 3 values");
        sc.eigen.mu_N = {v[0], v[1], v[2]};
    }
    const std::string cm = cfg.get_string("emc", "controller_matrix", "conventional");
    if (cm == "conventional") sc.emc_options.controller_matrix = ControllerMatrix::conventional;
    else if (cm == "as_printed") sc.emc_options.controller_matrix = ControllerMatrix::as_printed;
    else throw ConfigError("[emc] controller_matrix: must be 'conventional' or 'as_printed', got '" + cm + "'");
    const std::string dp = cfg.get_string("emc", "disturbance_pole", "as_printed");
    if (dp == "as_printed") sc.emc_options.disturbance_pole = DisturbancePole::as_printed;
    else if (dp == "neutral") sc.emc_options.disturbance_pole = DisturbancePole::neutral;
    else throw ConfigError("[emc] disturbance_pole: must be 'as_printed' or 'neutral', got '" + dp + "'");

    sc.pi.k_p_pi = cfg.get_double("pi", "k_p", sc.pi.k_p_pi);
    sc.pi.k_i_pi = cfg.get_double("pi", "k_i", sc.pi.k_i_pi);
    sc.pi.v_max = sc.plant.v_max;

    sc.stability_points = static_cast<int>(cfg.get_int("stability", "n_points", 21));

    cfg.require_consumed();
    sc.validate();
    return sc;
}

Scenario load_scenario_file(const std::string& path) {
    return load_scenario(ConfigFile::parse_file(path));
}

} // namespace emckit
