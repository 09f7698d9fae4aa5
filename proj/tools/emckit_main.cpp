#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "emckit/harness.hpp"
#include "emckit/stability.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    std::string format = "csv";
    long long seed = -1;  // negative = keep the configured seed
    bool emit_trace = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("config", args.config_path, "scenario configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--seed", args.seed, "override the configured timing seed");
    cmd->add_option("--out-dir", args.out_dir, "directory for output files");
    cmd->add_option("--format", args.format, "output format")->check(CLI::IsMember({"csv"}));
}

emckit::Scenario load(const CommonArgs& args) {
    emckit::Scenario sc = emckit::load_scenario_file(args.config_path);
    if (args.seed >= 0) sc.timing.seed = static_cast<std::uint64_t>(args.seed);
    fs::create_directories(args.out_dir);
    return sc;
}

std::string out_path(const CommonArgs& args, const std::string& stem) {
    return (fs::path(args.out_dir) / (stem + ".csv")).string();
}

void print_metrics(const std::string& label, const emckit::Metrics& m) {
    std::cout << label << ": rmse_tracking=" << m.rmse_tracking
              << " rms_model_error=" << m.rms_model_error
              << " max_abs_model_error=" << m.max_abs_model_error
              << " settling_time=" << m.settling_time
              << " window=[" << m.window_start << "," << m.window_end << "]\n";
}

int cmd_simulate(const CommonArgs& args) {
    const emckit::Scenario sc = load(args);
    const emckit::RunResult res = emckit::run_scenario(sc);
    emckit::write_records_csv(res.records, out_path(args, sc.name));
    if (args.emit_trace)
        emckit::write_trace_csv(emckit::generate_trace(sc.timing, sc.duration),
                                out_path(args, sc.name + "_trace"));
    print_metrics(sc.name, res.metrics);
    return 0;
}

int cmd_benchmark(const CommonArgs& args) {
    const emckit::Scenario sc = load(args);
    const emckit::RunResult emc = emckit::run_scenario(sc, emckit::ControllerKind::emc);
    const emckit::RunResult pi = emckit::run_scenario(sc, emckit::ControllerKind::pi);
    emckit::write_records_csv(emc.records, out_path(args, sc.name + "_emc"));
    emckit::write_records_csv(pi.records, out_path(args, sc.name + "_pi"));
    emckit::write_metrics_csv({{"emc", emc.metrics}, {"pi", pi.metrics}},
                              out_path(args, sc.name + "_metrics"));
    print_metrics(sc.name + "/emc", emc.metrics);
    print_metrics(sc.name + "/pi", pi.metrics);
    return 0;
}

int cmd_stability(const CommonArgs& args) {
    const emckit::Scenario sc = load(args);
    const emckit::StabilityReport rep = emckit::sweep(sc.eigen, sc.plant, sc.timing.ts_min,
                                                      sc.timing.ts_max, sc.stability_points,
                                                      sc.emc_options);
    emckit::write_stability_csv(rep, out_path(args, sc.name + "_stability"));
    std::cout << sc.name << ": all_stable=" << (rep.all_stable ? "true" : "false")
              << " max_modulus=" << rep.max_modulus << "\n";
    return 0;
}

int cmd_sweep(const CommonArgs& args, const std::vector<double>& ts_max_list) {
    emckit::Scenario sc = load(args);
    std::vector<std::pair<std::string, emckit::Metrics>> summary;
    for (const double ts_max : ts_max_list) {
        emckit::Scenario variant = sc;
        variant.timing.ts_max = ts_max;
        const emckit::RunResult res = emckit::run_scenario(variant);
        const std::string label = sc.name + "_tsmax_" + std::to_string(ts_max);
        emckit::write_records_csv(res.records, out_path(args, label));
        summary.emplace_back(label, res.metrics);
        print_metrics(label, res.metrics);
    }
    emckit::write_metrics_csv(summary, out_path(args, sc.name + "_sweep_metrics"));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Asynchronous DC-motor speed-loop simulator: internal-model controller, "
                 "PI baseline, stability sweeps, scenario harness"};
    app.require_subcommand(1);

    CommonArgs sim_args, bench_args, stab_args, sweep_args;
    std::vector<double> ts_max_list;

    CLI::App* sim = app.add_subcommand("simulate", "run one scenario and write its telemetry CSV");
    add_common(sim, sim_args);
    sim->add_flag("--emit-trace", sim_args.emit_trace, "also write the timing trace CSV");

    CLI::App* bench = app.add_subcommand(
        "benchmark", "run the scenario with both controllers; write both CSVs plus a metrics summary");
    add_common(bench, bench_args);

    CLI::App* stab = app.add_subcommand(
        "stability", "sweep the configured sampling-time range and write the eigenvalue CSV");
    add_common(stab, stab_args);

    CLI::App* swp = app.add_subcommand(
        "sweep", "run the scenario once per ts-max value; write per-run CSVs plus a summary");
    add_common(swp, sweep_args);
    swp->add_option("--ts-max", ts_max_list, "list of ts_max values (seconds)")
        ->required()
        ->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(sim_args);
        if (bench->parsed()) return cmd_benchmark(bench_args);
        if (stab->parsed()) return cmd_stability(stab_args);
        if (swp->parsed()) return cmd_sweep(sweep_args, ts_max_list);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
