// qjump: simulate, synthesize and analyze switching-current telegraphs.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data, numerical
// or I/O error.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "qjump/commands.hpp"
#include "qjump/errors.hpp"

namespace {

qjump::SimulationMode parse_mode(const std::string& s) {
  if (s == "full") return qjump::SimulationMode::full;
  if (s == "fast-rate") return qjump::SimulationMode::fast_rate;
  throw qjump::ConfigError("--mode must be full or fast-rate");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-jump simulator for a phase qubit coupled to a two-level defect"};
  app.require_subcommand(1);

  qjump::SimulateOptions sim;
  std::uint64_t sim_seed = 0;
  std::size_t sim_sweeps = 0;
  std::string sim_mode;
  auto* simulate = app.add_subcommand("simulate", "Run the sweep simulator and write a trajectory");
  simulate->add_option("config", sim.config_path, "Configuration file")->required()->check(CLI::ExistingFile);
  auto* seed_opt = simulate->add_option("--seed", sim_seed, "Master seed (overrides the config)");
  auto* sweeps_opt = simulate->add_option("--sweeps", sim_sweeps, "Number of sweeps (overrides the config)")
                         ->check(CLI::PositiveNumber);
  auto* mode_opt = simulate->add_option("--mode", sim_mode, "full or fast-rate (overrides the config)")
                       ->check(CLI::IsMember({"full", "fast-rate"}));
  simulate->add_option("--workers", sim.workers, "Worker threads (default: QJUMP_WORKERS or 1)");
  simulate->add_option("-o,--out", sim.out, "Trajectory output file")->required();

  qjump::AnalyzeOptions an;
  auto* analyze = app.add_subcommand("analyze", "Classify bands and fit the telegraph statistics");
  analyze->add_option("trajectory", an.trajectory_path, "Trajectory file")->required()->check(CLI::ExistingFile);
  analyze->add_option("--bands", an.bands, "Number of bands (2 or 3)")->check(CLI::IsMember({2, 3}));
  analyze->add_option("--window", an.window, "Poisson counting window in seconds")->check(CLI::PositiveNumber);
  analyze->add_option("-o,--out", an.out_dir, "Directory for report.txt and CSV tables");

  qjump::SynthOptions syn;
  auto* synth = app.add_subcommand("synth", "Write a synthetic three-band telegraph trajectory");
  synth->add_option("--ron", syn.r_on, "Rate of leaving 'on' (1/s)")->check(CLI::PositiveNumber);
  synth->add_option("--roff", syn.r_off, "Rate of leaving 'off' (1/s)")->check(CLI::PositiveNumber);
  synth->add_option("--rate", syn.rate, "Sweep rate (Hz)")->check(CLI::PositiveNumber);
  synth->add_option("--duration", syn.duration, "Record length (s)")->check(CLI::PositiveNumber);
  synth->add_option("--seed", syn.seed, "Seed");
  synth->add_option("--noise", syn.bands.noise, "Gaussian noise on I_sw (A)")->check(CLI::NonNegativeNumber);
  synth->add_option("-o,--out", syn.out, "Trajectory output file")->required();

  qjump::SpectroscopyOptions sp;
  double sp_from = 0.0, sp_to = 0.0;
  auto* spec = app.add_subcommand("spectroscopy", "Dressed qubit-TLS spectrum over a bias grid");
  spec->add_option("config", sp.config_path, "Configuration file")->required()->check(CLI::ExistingFile);
  spec->add_option("--grid", sp.grid, "Grid points")->check(CLI::Range(2, 100000000));
  auto* from_opt = spec->add_option("--from", sp_from, "First bias (A)");
  auto* to_opt = spec->add_option("--to", sp_to, "Last bias (A)");
  spec->add_option("-o,--out", sp.out, "CSV output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*simulate) {
      if (*seed_opt) sim.seed = sim_seed;
      if (*sweeps_opt) sim.sweeps = sim_sweeps;
      if (*mode_opt) sim.mode = parse_mode(sim_mode);
      qjump::cmd_simulate(sim, std::cout);
    } else if (*analyze) {
      const auto report = qjump::cmd_analyze(an, std::cout);
      if (!report.failed.empty()) return 2;
    } else if (*synth) {
      qjump::cmd_synth(syn, std::cout);
    } else if (*spec) {
      if (*from_opt) sp.from = sp_from;
      if (*to_opt) sp.to = sp_to;
      qjump::cmd_spectroscopy(sp, std::cout);
    }
  } catch (const qjump::ConfigError& e) {
    std::cerr << "qjump: " << e.what() << "\n";
    return 1;
  } catch (const qjump::DomainError& e) {
    std::cerr << "qjump: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "qjump: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
