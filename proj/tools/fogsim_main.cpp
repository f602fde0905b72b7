// fogsim command line: offline placement optimization, scenario simulation
// and plot generation.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fogsim/alloc/density.hpp"
#include "fogsim/alloc/kmeans.hpp"
#include "fogsim/alloc/sizing.hpp"
#include "fogsim/errors.hpp"
#include "fogsim/scenario/config.hpp"
#include "fogsim/scenario/gps.hpp"
#include "fogsim/scenario/plot.hpp"
#include "fogsim/scenario/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitSimulationFault = 2;

struct AllocateArgs {
  std::string traces;
  std::string out;
  double cell_size_m = 40.0;
  double window_s = 1.0;
  double target_rate = 0.1;
  int aps = 0;  // 0: derive from peak density
  int target_ues_per_ap = 10;
  int replication = 3;
  int sessions_per_pu = 5;
  int services_per_ue = 1;
  double tolerance = 0.10;
  std::uint64_t seed = 1;
};

int run_allocate(const AllocateArgs& args) {
  using namespace fogsim;
  auto ingest = scenario::ingest_gps(args.traces, args.target_rate);
  for (const auto& diag : ingest.rejected) std::cerr << diag << "\n";
  std::cout << "ingested " << ingest.traces.size() << " traces ("
            << ingest.rejected.size() << " rows rejected)\n";

  auto density =
      alloc::build_density_map(ingest.traces, args.cell_size_m, args.window_s);
  std::cout << "density map " << density.nx << "x" << density.ny << " cells, "
            << density.nonzero().size() << " occupied, peak "
            << density.peak_concurrent_ues << " concurrent devices\n";

  const int k = args.aps > 0
                    ? args.aps
                    : alloc::suggest_ap_count(density.peak_concurrent_ues,
                                              args.target_ues_per_ap);
  auto clusters = alloc::balanced_kmeans(density, k, args.tolerance, 200,
                                         args.seed);
  if (!clusters.converged) {
    std::cerr << "warning: balance tolerance not reached (imbalance "
              << clusters.imbalance << "); best-effort placement emitted\n";
  }

  auto edc_sites = alloc::place_edcs(clusters.centroids, args.replication,
                                     args.seed);
  const int peak_sessions =
      density.peak_concurrent_ues * args.services_per_ue;
  const auto size = alloc::size_federation(peak_sessions, args.sessions_per_pu,
                                           args.replication);

  nlohmann::json out;
  out["aps"] = nlohmann::json::array();
  for (std::size_t i = 0; i < clusters.centroids.size(); ++i) {
    out["aps"].push_back({{"id", "ap_" + std::to_string(i)},
                          {"x_m", clusters.centroids[i].x},
                          {"y_m", clusters.centroids[i].y}});
  }
  out["edcs"] = nlohmann::json::array();
  for (std::size_t i = 0; i < edc_sites.size(); ++i) {
    out["edcs"].push_back({{"id", "edc_" + std::to_string(i)},
                           {"x_m", edc_sites[i].x},
                           {"y_m", edc_sites[i].y},
                           {"pu_count", size.pus_per_edc}});
  }
  out["stats"] = {{"peak_concurrent_ues", density.peak_concurrent_ues},
                  {"ap_count", k},
                  {"edc_count", size.edc_count},
                  {"pus_per_edc", size.pus_per_edc},
                  {"imbalance", clusters.imbalance},
                  {"balanced", clusters.converged}};

  std::ofstream file(args.out);
  if (!file) {
    std::cerr << "cannot write " << args.out << "\n";
    return kExitValidation;
  }
  file << out.dump(2) << "\n";
  std::cout << "placement: " << k << " APs, " << size.edc_count << " EDCs x "
            << size.pus_per_edc << " PUs -> " << args.out << "\n";
  return kExitOk;
}

int run_simulate(const std::string& scenario_path, const std::string& out_dir,
                 std::optional<std::uint64_t> seed,
                 std::optional<double> duration) {
  using namespace fogsim;
  auto loaded = scenario::load_scenario(scenario_path);
  if (!loaded.ok()) {
    std::cerr << loaded.violations.size() << " validation error(s):\n";
    for (const auto& v : loaded.violations) std::cerr << "  - " << v << "\n";
    return kExitValidation;
  }
  auto cfg = *loaded.config;
  if (seed) cfg.seed = *seed;
  if (duration) {
    if (!(*duration > 0.0)) {
      std::cerr << "  - duration must be positive\n";
      return kExitValidation;
    }
    cfg.duration_s = *duration;
  }
  auto result = scenario::run(cfg, out_dir);
  const auto& s = result.summary;
  std::cout << "simulated " << cfg.duration_s << " s -> " << out_dir << "\n"
            << "  delay samples:       " << s.delay_samples << "\n"
            << "  mean delay:          " << s.mean_delay_ms << " ms\n"
            << "  peak delay:          " << s.peak_delay_ms << " ms\n"
            << "  mean power:          " << s.mean_power_w << " W\n"
            << "  peak power:          " << s.peak_power_w << " W\n"
            << "  energy:              " << s.energy_wh << " Wh\n";
  return kExitOk;
}

int run_plot(const std::string& in_dir, const std::string& out_dir) {
  auto outcome = fogsim::scenario::plot_all(in_dir, out_dir);
  for (const auto& w : outcome.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& f : outcome.written) std::cout << out_dir << "/" << f << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fog-computing scenario simulator and placement optimizer"};
  app.require_subcommand(1);

  AllocateArgs alloc_args;
  auto* allocate = app.add_subcommand(
      "allocate", "derive AP/EDC placement from a mobility trace file");
  allocate->add_option("--traces", alloc_args.traces, "trace CSV")->required();
  allocate->add_option("--cell-size", alloc_args.cell_size_m, "cell size [m]");
  allocate->add_option("--window", alloc_args.window_s, "time window [s]");
  allocate->add_option("--target-rate", alloc_args.target_rate,
                       "resampling rate [samples/s]");
  allocate->add_option("--aps", alloc_args.aps,
                       "AP count (0 = derive from peak density)");
  allocate->add_option("--target-ues-per-ap", alloc_args.target_ues_per_ap,
                       "devices per AP used when deriving the AP count");
  allocate->add_option("--replication", alloc_args.replication,
                       "EDC replication factor");
  allocate->add_option("--sessions-per-pu", alloc_args.sessions_per_pu,
                       "sessions one processing unit can host");
  allocate->add_option("--services-per-ue", alloc_args.services_per_ue,
                       "services each device runs");
  allocate->add_option("--tolerance", alloc_args.tolerance,
                       "cluster weight imbalance tolerance");
  allocate->add_option("--seed", alloc_args.seed, "clustering seed");
  allocate->add_option("--out", alloc_args.out, "placement JSON")->required();

  std::string scenario_path, sim_out;
  auto* simulate =
      app.add_subcommand("simulate", "run a scenario and write CSV streams");
  simulate->add_option("--scenario", scenario_path, "scenario JSON")->required();
  simulate->add_option("--out", sim_out, "output directory")->required();
  std::uint64_t seed_value = 0;
  double duration_value = 0.0;
  auto* seed_opt = simulate->add_option("--seed", seed_value, "override seed");
  auto* duration_opt =
      simulate->add_option("--duration", duration_value, "override duration [s]");

  std::string plot_in, plot_out;
  auto* plot = app.add_subcommand("plot", "render SVG plots from CSV streams");
  plot->add_option("--in", plot_in, "directory with CSV streams")->required();
  plot->add_option("--out", plot_out, "directory for SVG files")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (allocate->parsed()) return run_allocate(alloc_args);
    if (simulate->parsed()) {
      std::optional<std::uint64_t> seed;
      std::optional<double> duration;
      if (seed_opt->count() > 0) seed = seed_value;
      if (duration_opt->count() > 0) duration = duration_value;
      return run_simulate(scenario_path, sim_out, seed, duration);
    }
    if (plot->parsed()) return run_plot(plot_in, plot_out);
  } catch (const fogsim::SimulationFault& f) {
    std::cerr << "simulation fault at t=" << f.time() << " in "
              << f.model_path() << ": " << f.detail() << "\n";
    return kExitSimulationFault;
  } catch (const fogsim::ConfigError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSimulationFault;
  }
  return kExitOk;
}
