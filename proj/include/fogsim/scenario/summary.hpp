#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>

#include <json.hpp>

#include "fogsim/scenario/csv.hpp"
#include "fogsim/telemetry/transducers.hpp"

namespace fogsim::scenario {

// Run-level metrics in the shape of the reference results table: mean and
// peak perceived delay, mean and peak federation power. Power means are
// time-weighted over the full run, since samples are event-driven.
struct Summary {
  double duration_s = 0.0;
  long delay_samples = 0;
  double mean_delay_ms = 0.0;
  double peak_delay_ms = 0.0;
  double mean_power_w = 0.0;
  double peak_power_w = 0.0;
  double energy_wh = 0.0;
};

inline Summary compute_summary(const std::filesystem::path& dir,
                               double duration_s) {
  Summary s;
  s.duration_s = duration_s;

  const auto delay_path = dir / "delay.csv";
  if (std::filesystem::exists(delay_path)) {
    auto delay = read_csv(delay_path);
    if (!delay.empty()) {
      const int col = delay.column("delay_s");
      double sum = 0.0, peak = 0.0;
      for (const auto& row : delay.rows) {
        const double d = std::stod(row[col]);
        sum += d;
        peak = std::max(peak, d);
      }
      s.delay_samples = static_cast<long>(delay.rows.size());
      s.mean_delay_ms = 1000.0 * sum / static_cast<double>(s.delay_samples);
      s.peak_delay_ms = 1000.0 * peak;
    }
  }

  const auto power_path = dir / "power.csv";
  if (std::filesystem::exists(power_path)) {
    auto power = read_csv(power_path);
    if (!power.empty()) {
      const int t_col = power.column("time");
      const int edc_col = power.column("edc_id");
      const int total_col = power.column("edc_power_w");
      std::map<std::string, double> edc_w;
      double prev_t = 0.0, federation = 0.0, energy_ws = 0.0, peak = 0.0;
      for (const auto& row : power.rows) {
        const double t = std::stod(row[t_col]);
        energy_ws += federation * (t - prev_t);
        prev_t = t;
        edc_w[row[edc_col]] = std::stod(row[total_col]);
        federation = 0.0;
        for (const auto& [edc, w] : edc_w) federation += w;
        peak = std::max(peak, federation);
      }
      energy_ws += federation * (duration_s - prev_t);
      s.mean_power_w = duration_s > 0.0 ? energy_ws / duration_s : 0.0;
      s.peak_power_w = peak;
      s.energy_wh = energy_ws / 3600.0;
    }
  }
  return s;
}

inline nlohmann::json summary_to_json(const Summary& s) {
  return nlohmann::json{
      {"duration_s", s.duration_s},
      {"delay_samples", s.delay_samples},
      {"mean_perceived_delay_ms", s.mean_delay_ms},
      {"peak_perceived_delay_ms", s.peak_delay_ms},
      {"mean_power_w", s.mean_power_w},
      {"peak_power_w", s.peak_power_w},
      {"energy_wh", s.energy_wh},
  };
}

inline void write_summary(const std::filesystem::path& dir, const Summary& s) {
  std::ofstream out(dir / "summary.json");
  out << summary_to_json(s).dump(2) << "\n";
}

}  // namespace fogsim::scenario
