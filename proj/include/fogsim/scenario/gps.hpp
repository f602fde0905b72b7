#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fogsim/errors.hpp"
#include "fogsim/trace.hpp"

namespace fogsim::scenario {

inline constexpr double kEarthRadiusM = 6371000.0;

struct GpsIngestResult {
  std::vector<MobilityTrace> traces;
  std::vector<std::string> rejected;  // diagnostics for dropped rows
};

namespace detail {

struct RawRow {
  std::string ue_id;
  double t = 0.0;
  double a = 0.0;  // x or lat
  double b = 0.0;  // y or lon
};

// Equirectangular projection about the dataset centroid. At city scale the
// error against the great-circle distance stays below 10 cm per km.
inline void project(std::vector<RawRow>& rows) {
  if (rows.empty()) return;
  double lat0 = 0.0, lon0 = 0.0;
  for (const auto& r : rows) {
    lat0 += r.a;
    lon0 += r.b;
  }
  lat0 /= static_cast<double>(rows.size());
  lon0 /= static_cast<double>(rows.size());
  const double deg = 3.14159265358979323846 / 180.0;
  const double cos_lat0 = std::cos(lat0 * deg);
  for (auto& r : rows) {
    const double x = kEarthRadiusM * (r.b - lon0) * deg * cos_lat0;
    const double y = kEarthRadiusM * (r.a - lat0) * deg;
    r.a = x;
    r.b = y;
  }
}

inline std::vector<TraceSample> resample(const std::vector<TraceSample>& in,
                                         double target_rate) {
  if (in.size() < 2 || !(target_rate > 0.0)) return in;
  const double step = 1.0 / target_rate;
  std::vector<TraceSample> out;
  MobilityTrace helper("resample", in);
  double t = in.front().t;
  const double end = in.back().t;
  while (t < end) {
    out.push_back(helper.position_at(t));
    t += step;
  }
  out.push_back(in.back());  // keep the exact endpoint
  return out;
}

}  // namespace detail

// Reads a trace CSV with header `ue_id,epoch_s,x_m,y_m` (cartesian) or
// `ue_id,epoch_s,lat,lon` (projected on ingestion). Timestamps are shifted
// so the earliest sample is t=0 and each trace is linearly resampled to
// target_rate samples per second. Out-of-order rows are rejected with a
// diagnostic rather than aborting the ingestion.
inline GpsIngestResult ingest_gps(const std::string& path, double target_rate) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open trace file: " + path);
  std::string header;
  if (!std::getline(in, header)) throw ConfigError("empty trace file: " + path);
  bool geographic;
  if (header == "ue_id,epoch_s,lat,lon") {
    geographic = true;
  } else if (header == "ue_id,epoch_s,x_m,y_m") {
    geographic = false;
  } else {
    throw ConfigError(path + ": unknown trace header '" + header + "'");
  }

  GpsIngestResult result;
  std::vector<detail::RawRow> rows;
  std::map<std::string, double> last_time;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    detail::RawRow row;
    std::string field;
    try {
      if (!std::getline(ss, row.ue_id, ',')) throw std::invalid_argument("id");
      if (!std::getline(ss, field, ',')) throw std::invalid_argument("t");
      row.t = std::stod(field);
      if (!std::getline(ss, field, ',')) throw std::invalid_argument("a");
      row.a = std::stod(field);
      if (!std::getline(ss, field, ',')) throw std::invalid_argument("b");
      row.b = std::stod(field);
    } catch (const std::exception&) {
      result.rejected.push_back(path + ":" + std::to_string(line_no) +
                                ": malformed row '" + line + "'");
      continue;
    }
    auto it = last_time.find(row.ue_id);
    if (it != last_time.end() && row.t <= it->second) {
      result.rejected.push_back(path + ":" + std::to_string(line_no) +
                                ": out-of-order timestamp for " + row.ue_id);
      continue;
    }
    last_time[row.ue_id] = row.t;
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConfigError(path + ": no usable rows");

  if (geographic) detail::project(rows);

  double t0 = rows.front().t;
  for (const auto& r : rows) t0 = std::min(t0, r.t);

  std::map<std::string, std::vector<TraceSample>> per_ue;
  for (const auto& r : rows) {
    per_ue[r.ue_id].push_back({r.t - t0, r.a, r.b});
  }
  for (auto& [ue_id, samples] : per_ue) {
    result.traces.emplace_back(ue_id, detail::resample(samples, target_rate));
  }
  return result;
}

}  // namespace fogsim::scenario
