#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "fogsim/scenario/csv.hpp"
#include "fogsim/telemetry/transducers.hpp"

namespace fogsim::scenario {

enum class PlotStyle { line, step, scatter };

struct PlotSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;
  PlotStyle style = PlotStyle::step;
};

namespace detail {

inline const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                 "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                 "#bcbd22", "#17becf"};

inline std::string nice(double v) { return telemetry::fmt(v); }

}  // namespace detail

// Self-contained deterministic SVG renderer for the output streams: fixed
// canvas, fixed palette, shortest round-trip number formatting. Oversized
// series are thinned evenly so plots of long runs stay tractable.
inline void render_svg(const std::filesystem::path& path,
                       const std::string& title, const std::string& y_label,
                       std::vector<PlotSeries> series) {
  const double width = 860, height = 480;
  const double ml = 70, mr = 20, mt = 40, mb = 45;
  const double pw = width - ml - mr, ph = height - mt - mb;

  for (auto& s : series) {
    const std::size_t cap = 20000;
    if (s.points.size() > cap) {
      std::vector<std::pair<double, double>> thinned;
      const std::size_t stride = s.points.size() / cap + 1;
      for (std::size_t i = 0; i < s.points.size(); i += stride) {
        thinned.push_back(s.points[i]);
      }
      thinned.push_back(s.points.back());
      s.points = std::move(thinned);
    }
  }

  double x_max = 1.0, y_max = 1.0;
  bool any = false;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      x_max = any ? std::max(x_max, x) : x;
      y_max = any ? std::max(y_max, y) : y;
      any = true;
    }
  }
  if (x_max <= 0.0) x_max = 1.0;
  if (y_max <= 0.0) y_max = 1.0;
  y_max *= 1.05;

  auto px = [&](double x) { return ml + x / x_max * pw; };
  auto py = [&](double y) { return mt + ph - y / y_max * ph; };

  std::ofstream out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";

  for (int i = 0; i <= 5; ++i) {
    const double xv = x_max * i / 5.0, yv = y_max * i / 5.0;
    out << "<line x1=\"" << px(xv) << "\" y1=\"" << mt << "\" x2=\"" << px(xv)
        << "\" y2=\"" << mt + ph << "\" stroke=\"#dddddd\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << py(yv) << "\" x2=\"" << ml + pw
        << "\" y2=\"" << py(yv) << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << px(xv) << "\" y=\"" << height - 22
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" << detail::nice(xv) << "</text>\n";
    out << "<text x=\"" << ml - 6 << "\" y=\"" << py(yv) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">" << detail::nice(yv) << "</text>\n";
  }
  out << "<text x=\"" << width / 2 << "\" y=\"" << height - 6
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">time [s]</text>\n";
  out << "<text x=\"16\" y=\"" << mt + ph / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\" transform=\"rotate(-90 16 " << mt + ph / 2
      << ")\">" << y_label << "</text>\n";
  out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
      << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = detail::kPalette[i % 10];
    if (s.style == PlotStyle::scatter) {
      for (const auto& [x, y] : s.points) {
        out << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y)
            << "\" r=\"2\" fill=\"" << color << "\"/>\n";
      }
    } else {
      out << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.4\" points=\"";
      double last_y = 0.0;
      bool first = true;
      for (const auto& [x, y] : s.points) {
        if (s.style == PlotStyle::step && !first) {
          out << px(x) << "," << py(last_y) << " ";
        }
        out << px(x) << "," << py(y) << " ";
        last_y = y;
        first = false;
      }
      out << "\"/>\n";
    }
    if (i < 12) {
      const double lx = ml + 10 + 130.0 * static_cast<double>(i % 6);
      const double ly = mt + 14 + 16.0 * static_cast<double>(i / 6);
      out << "<rect x=\"" << lx << "\" y=\"" << ly - 9
          << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n";
      out << "<text x=\"" << lx + 14 << "\" y=\"" << ly
          << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.name
          << "</text>\n";
    }
  }
  out << "</svg>\n";
}

struct PlotOutcome {
  std::vector<std::string> written;
  std::vector<std::string> warnings;
};

// Renders one image per stream found in csv_dir. Missing streams are
// skipped with a warning; empty streams produce an empty-axes plot.
inline PlotOutcome plot_all(const std::filesystem::path& csv_dir,
                            const std::filesystem::path& out_dir) {
  PlotOutcome outcome;
  std::filesystem::create_directories(out_dir);

  auto emit = [&](const std::string& name) {
    outcome.written.push_back(name);
    return out_dir / name;
  };
  auto missing = [&](const std::string& stream) {
    outcome.warnings.push_back("missing stream " + stream + ".csv; skipped");
  };

  if (std::filesystem::exists(csv_dir / "delay.csv")) {
    auto csv = read_csv(csv_dir / "delay.csv");
    PlotSeries s{"delay", {}, PlotStyle::scatter};
    if (!csv.empty()) {
      const int t = csv.column("time"), d = csv.column("delay_s");
      for (const auto& row : csv.rows) {
        s.points.emplace_back(std::stod(row[t]), 1000.0 * std::stod(row[d]));
      }
    }
    render_svg(emit("delay.svg"), "Perceived delay", "delay [ms]", {s});
  } else {
    missing("delay");
  }

  if (std::filesystem::exists(csv_dir / "power.csv")) {
    auto csv = read_csv(csv_dir / "power.csv");
    std::map<std::string, PlotSeries> per_edc;
    PlotSeries federation{"federation", {}, PlotStyle::step};
    if (!csv.empty()) {
      const int t_col = csv.column("time"), edc_col = csv.column("edc_id");
      const int w_col = csv.column("edc_power_w");
      std::map<std::string, double> last;
      for (const auto& row : csv.rows) {
        const double t = std::stod(row[t_col]);
        const double w = std::stod(row[w_col]);
        auto& s = per_edc[row[edc_col]];
        s.name = row[edc_col];
        s.points.emplace_back(t, w);
        last[row[edc_col]] = w;
        double total = 0.0;
        for (const auto& [edc, v] : last) total += v;
        federation.points.emplace_back(t, total);
      }
    }
    std::vector<PlotSeries> series;
    for (auto& [edc, s] : per_edc) series.push_back(std::move(s));
    series.push_back(std::move(federation));
    render_svg(emit("power.svg"), "EDC power consumption", "power [W]", series);
  } else {
    missing("power");
  }

  bool have_bandwidth = std::filesystem::exists(csv_dir / "bandwidth.csv");
  if (have_bandwidth) {
    auto csv = read_csv(csv_dir / "bandwidth.csv");
    std::map<std::string, PlotSeries> shares, rates;
    if (!csv.empty()) {
      const int t_col = csv.column("time"), ue_col = csv.column("ue_id");
      const int bw_col = csv.column("bandwidth_hz");
      const int eff_col = csv.column("dl_efficiency_bps_hz");
      const int rate_col = csv.column("bit_rate_bps");
      for (const auto& row : csv.rows) {
        const double t = std::stod(row[t_col]);
        const double bw = std::stod(row[bw_col]);
        auto& s = shares[row[ue_col]];
        s.name = row[ue_col];
        s.points.emplace_back(t, bw / 1e6);
        // bit rate recomputed from share x efficiency at plot time; the
        // emitted column is kept as a cross-check
        const double recomputed = bw * std::stod(row[eff_col]);
        const double emitted = std::stod(row[rate_col]);
        if (std::abs(recomputed - emitted) >
            1e-9 * std::max(1.0, std::abs(emitted))) {
          outcome.warnings.push_back("bit-rate mismatch for " + row[ue_col] +
                                     " at t=" + row[t_col]);
        }
        auto& r = rates[row[ue_col]];
        r.name = row[ue_col];
        r.points.emplace_back(t, recomputed / 1e6);
      }
    }
    std::vector<PlotSeries> share_series, rate_series;
    for (auto& [ue, s] : shares) share_series.push_back(std::move(s));
    for (auto& [ue, s] : rates) rate_series.push_back(std::move(s));
    render_svg(emit("bandwidth.svg"), "Downlink bandwidth share",
               "bandwidth [MHz]", share_series);
    render_svg(emit("bandwidth_bitrate.svg"), "Downlink bit rate",
               "bit rate [Mbps]", rate_series);
  } else {
    missing("bandwidth");
  }

  if (std::filesystem::exists(csv_dir / "mcs.csv")) {
    auto csv = read_csv(csv_dir / "mcs.csv");
    std::map<std::string, PlotSeries> per_ue;
    if (!csv.empty()) {
      const int t_col = csv.column("time"), ue_col = csv.column("ue_id");
      const int dir_col = csv.column("direction");
      const int eff_col = csv.column("efficiency_bps_hz");
      for (const auto& row : csv.rows) {
        if (row[dir_col] != "ul") continue;
        auto& s = per_ue[row[ue_col]];
        s.name = row[ue_col];
        s.points.emplace_back(std::stod(row[t_col]), std::stod(row[eff_col]));
      }
    }
    std::vector<PlotSeries> series;
    for (auto& [ue, s] : per_ue) series.push_back(std::move(s));
    render_svg(emit("mcs.svg"), "Uplink spectral efficiency",
               "efficiency [bps/Hz]", series);
  } else {
    missing("mcs");
  }

  return outcome;
}

}  // namespace fogsim::scenario
