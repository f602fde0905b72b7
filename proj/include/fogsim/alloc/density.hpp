#pragma once

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fogsim/errors.hpp"
#include "fogsim/trace.hpp"

namespace fogsim::alloc {

struct DensityCell {
  double x_m = 0.0;  // cell center
  double y_m = 0.0;
  int peak_count = 0;
};

// Spatial grid of peak unique-device counts: the location history is split
// into cells and time windows, distinct devices are counted per (cell,
// window), and each cell keeps its busiest window.
struct DensityMap {
  double cell_size_m = 0.0;
  double window_s = 0.0;
  double origin_x = 0.0;
  double origin_y = 0.0;
  int nx = 0;
  int ny = 0;
  std::vector<DensityCell> cells;  // row-major, including zero cells
  int peak_concurrent_ues = 0;     // busiest window across the whole map

  std::vector<DensityCell> nonzero() const {
    std::vector<DensityCell> out;
    for (const auto& c : cells) {
      if (c.peak_count > 0) out.push_back(c);
    }
    return out;
  }

  int total_ues = 0;
};

inline DensityMap build_density_map(const std::vector<MobilityTrace>& traces,
                                    double cell_size_m, double window_s) {
  if (!(cell_size_m > 0.0) || !(window_s > 0.0)) {
    throw ConfigError("density map needs positive cell size and window");
  }
  std::size_t points = 0;
  for (const auto& t : traces) points += t.samples().size();
  if (points == 0) throw ConfigError("density map needs at least one sample");

  double min_x = 0, min_y = 0, max_x = 0, max_y = 0, min_t = 0;
  bool first = true;
  for (const auto& trace : traces) {
    for (const auto& s : trace.samples()) {
      if (first) {
        min_x = max_x = s.x_m;
        min_y = max_y = s.y_m;
        min_t = s.t;
        first = false;
      } else {
        min_x = std::min(min_x, s.x_m);
        max_x = std::max(max_x, s.x_m);
        min_y = std::min(min_y, s.y_m);
        max_y = std::max(max_y, s.y_m);
        min_t = std::min(min_t, s.t);
      }
    }
  }

  DensityMap map;
  map.cell_size_m = cell_size_m;
  map.window_s = window_s;
  map.origin_x = min_x;
  map.origin_y = min_y;
  map.nx = static_cast<int>(std::floor((max_x - min_x) / cell_size_m)) + 1;
  map.ny = static_cast<int>(std::floor((max_y - min_y) / cell_size_m)) + 1;
  map.total_ues = static_cast<int>(traces.size());

  // (window, cell) -> distinct devices seen there in that window
  std::map<std::pair<long, int>, std::set<std::string>> presence;
  std::map<long, std::set<std::string>> global_presence;
  for (const auto& trace : traces) {
    for (const auto& s : trace.samples()) {
      const long w = static_cast<long>(std::floor((s.t - min_t) / window_s));
      const int cx = static_cast<int>(std::floor((s.x_m - min_x) / cell_size_m));
      const int cy = static_cast<int>(std::floor((s.y_m - min_y) / cell_size_m));
      const int cell = cy * map.nx + cx;
      presence[{w, cell}].insert(trace.ue_id());
      global_presence[w].insert(trace.ue_id());
    }
  }

  map.cells.resize(static_cast<std::size_t>(map.nx) * map.ny);
  for (int cy = 0; cy < map.ny; ++cy) {
    for (int cx = 0; cx < map.nx; ++cx) {
      auto& cell = map.cells[static_cast<std::size_t>(cy) * map.nx + cx];
      cell.x_m = min_x + (cx + 0.5) * cell_size_m;
      cell.y_m = min_y + (cy + 0.5) * cell_size_m;
    }
  }
  for (const auto& [key, ids] : presence) {
    auto& cell = map.cells[static_cast<std::size_t>(key.second)];
    cell.peak_count = std::max(cell.peak_count, static_cast<int>(ids.size()));
  }
  for (const auto& [w, ids] : global_presence) {
    map.peak_concurrent_ues =
        std::max(map.peak_concurrent_ues, static_cast<int>(ids.size()));
  }
  return map;
}

}  // namespace fogsim::alloc
