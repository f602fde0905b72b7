#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "fogsim/alloc/density.hpp"
#include "fogsim/errors.hpp"

namespace fogsim::alloc {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct WeightedPoint {
  double x = 0.0;
  double y = 0.0;
  double w = 1.0;
};

struct ClusteringResult {
  std::vector<Point> centroids;
  std::vector<int> assignment;  // per input point
  double wcss = 0.0;            // weighted within-cluster sum of squares
  double imbalance = 0.0;       // (max - min cluster weight) / total weight
  bool converged = false;
  std::vector<double> wcss_history;  // per Lloyd iteration, non-increasing
};

namespace detail {

inline double sq_dist(double ax, double ay, double bx, double by) {
  const double dx = ax - bx, dy = ay - by;
  return dx * dx + dy * dy;
}

// Platform-independent uniform [0, 1).
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// k-means++ seeding over weighted points, deterministic for a given rng.
inline std::vector<Point> kmeans_pp(const std::vector<WeightedPoint>& pts,
                                    int k, std::mt19937_64& rng) {
  std::vector<Point> centroids;
  std::vector<double> d2(pts.size(), std::numeric_limits<double>::infinity());

  double total_w = 0.0;
  for (const auto& p : pts) total_w += p.w;
  double pick = unit_uniform(rng) * total_w;
  std::size_t first = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    pick -= pts[i].w;
    if (pick <= 0.0) {
      first = i;
      break;
    }
  }
  centroids.push_back({pts[first].x, pts[first].y});

  while (static_cast<int>(centroids.size()) < k) {
    double sum = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      d2[i] = std::min(d2[i], sq_dist(pts[i].x, pts[i].y, centroids.back().x,
                                      centroids.back().y));
      sum += d2[i] * pts[i].w;
    }
    std::size_t chosen = 0;
    if (sum > 0.0) {
      double r = unit_uniform(rng) * sum;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        r -= d2[i] * pts[i].w;
        if (r <= 0.0) {
          chosen = i;
          break;
        }
      }
    } else {
      // all remaining mass sits on existing centroids; take the first point
      // not already chosen to keep seeds distinct
      for (std::size_t i = 0; i < pts.size(); ++i) {
        bool used = false;
        for (const auto& c : centroids) {
          if (c.x == pts[i].x && c.y == pts[i].y) used = true;
        }
        if (!used) {
          chosen = i;
          break;
        }
      }
    }
    centroids.push_back({pts[chosen].x, pts[chosen].y});
  }
  return centroids;
}

inline void assign_nearest(const std::vector<WeightedPoint>& pts,
                           const std::vector<Point>& centroids,
                           std::vector<int>& assignment) {
  assignment.resize(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centroids.size(); ++c) {
      double d = sq_dist(pts[i].x, pts[i].y, centroids[c].x, centroids[c].y);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(c);
      }
    }
    assignment[i] = best;
  }
}

inline void recompute_centroids(const std::vector<WeightedPoint>& pts,
                                const std::vector<int>& assignment,
                                std::vector<Point>& centroids) {
  std::vector<double> wx(centroids.size(), 0.0), wy(centroids.size(), 0.0),
      ws(centroids.size(), 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    wx[assignment[i]] += pts[i].w * pts[i].x;
    wy[assignment[i]] += pts[i].w * pts[i].y;
    ws[assignment[i]] += pts[i].w;
  }
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    if (ws[c] > 0.0) centroids[c] = {wx[c] / ws[c], wy[c] / ws[c]};
  }
}

inline double wcss_of(const std::vector<WeightedPoint>& pts,
                      const std::vector<int>& assignment,
                      const std::vector<Point>& centroids) {
  double s = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    s += pts[i].w * sq_dist(pts[i].x, pts[i].y, centroids[assignment[i]].x,
                            centroids[assignment[i]].y);
  }
  return s;
}

inline double imbalance_of(const std::vector<WeightedPoint>& pts,
                           const std::vector<int>& assignment, int k) {
  std::vector<double> ws(k, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    ws[assignment[i]] += pts[i].w;
    total += pts[i].w;
  }
  const auto [mn, mx] = std::minmax_element(ws.begin(), ws.end());
  return total > 0.0 ? (*mx - *mn) / total : 0.0;
}

inline ClusteringResult lloyd(const std::vector<WeightedPoint>& pts,
                              std::vector<Point> centroids, int max_iter) {
  ClusteringResult r;
  r.centroids = std::move(centroids);
  assign_nearest(pts, r.centroids, r.assignment);
  r.wcss_history.push_back(wcss_of(pts, r.assignment, r.centroids));
  for (int iter = 0; iter < max_iter; ++iter) {
    recompute_centroids(pts, r.assignment, r.centroids);
    std::vector<int> next;
    assign_nearest(pts, r.centroids, next);
    r.wcss_history.push_back(wcss_of(pts, next, r.centroids));
    if (next == r.assignment) {
      r.converged = true;
      break;
    }
    r.assignment = std::move(next);
  }
  r.wcss = wcss_of(pts, r.assignment, r.centroids);
  r.imbalance =
      imbalance_of(pts, r.assignment, static_cast<int>(r.centroids.size()));
  return r;
}

}  // namespace detail

// Standard seeded k-means (k-means++ then Lloyd), best of `restarts` runs.
inline ClusteringResult kmeans(const std::vector<WeightedPoint>& pts, int k,
                               std::uint64_t seed, int max_iter = 200,
                               int restarts = 32) {
  if (k < 1) throw ConfigError("kmeans needs k >= 1");
  if (static_cast<std::size_t>(k) > pts.size()) {
    throw ConfigError("kmeans needs k <= point count");
  }
  ClusteringResult best;
  bool have = false;
  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(r) * 0x9e3779b9ull);
    auto result = detail::lloyd(pts, detail::kmeans_pp(pts, k, rng), max_iter);
    if (!have || result.wcss < best.wcss) {
      best = std::move(result);
      have = true;
    }
  }
  return best;
}

// Balance-modified k-means: weighted Lloyd iterations followed by a repair
// pass that moves boundary cells from the heaviest to the lightest cluster
// until the weight spread is within tolerance or no improving move remains.
inline ClusteringResult balanced_kmeans(const DensityMap& map, int k,
                                        double tolerance = 0.10,
                                        int max_iter = 200,
                                        std::uint64_t seed = 1,
                                        int restarts = 16) {
  const auto cells = map.nonzero();
  if (k < 1) throw ConfigError("balanced_kmeans needs k >= 1");
  if (static_cast<std::size_t>(k) > cells.size()) {
    throw ConfigError("balanced_kmeans: k exceeds non-zero cell count");
  }
  std::vector<WeightedPoint> pts;
  pts.reserve(cells.size());
  double total_w = 0.0;
  for (const auto& c : cells) {
    pts.push_back({c.x_m, c.y_m, static_cast<double>(c.peak_count)});
    total_w += c.peak_count;
  }

  auto repair = [&](ClusteringResult& r) {
    std::vector<double> ws(k, 0.0);
    for (std::size_t i = 0; i < pts.size(); ++i) ws[r.assignment[i]] += pts[i].w;
    const int max_moves = 200 * static_cast<int>(pts.size());
    for (int move = 0; move < max_moves; ++move) {
      int heavy = 0, light = 0;
      for (int c = 1; c < k; ++c) {
        if (ws[c] > ws[heavy]) heavy = c;
        if (ws[c] < ws[light]) light = c;
      }
      const double gap = ws[heavy] - ws[light];
      if (gap / total_w <= tolerance) {
        r.converged = true;
        break;
      }
      // cheapest strictly gap-reducing move from heavy to light
      int best_cell = -1;
      double best_cost = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (r.assignment[i] != heavy || !(pts[i].w < gap)) continue;
        const double cost =
            detail::sq_dist(pts[i].x, pts[i].y, r.centroids[light].x,
                            r.centroids[light].y) -
            detail::sq_dist(pts[i].x, pts[i].y, r.centroids[heavy].x,
                            r.centroids[heavy].y);
        if (cost < best_cost) {
          best_cost = cost;
          best_cell = static_cast<int>(i);
        }
      }
      if (best_cell < 0) break;  // no improving move
      r.assignment[best_cell] = light;
      ws[heavy] -= pts[best_cell].w;
      ws[light] += pts[best_cell].w;
      detail::recompute_centroids(pts, r.assignment, r.centroids);
    }
    r.wcss = detail::wcss_of(pts, r.assignment, r.centroids);
    r.imbalance = detail::imbalance_of(pts, r.assignment, k);
  };

  ClusteringResult best;
  bool have = false;
  for (int rs = 0; rs < restarts; ++rs) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(rs) * 0x9e3779b9ull);
    auto r = detail::lloyd(pts, detail::kmeans_pp(pts, k, rng), max_iter);
    r.converged = false;
    repair(r);
    const bool better =
        !have ||
        std::make_pair(!r.converged, r.wcss) <
            std::make_pair(!best.converged, best.wcss);
    if (better) {
      best = std::move(r);
      have = true;
    }
  }
  return best;
}

// Standard K-Means over the access-point locations gives the EDC sites.
inline std::vector<Point> place_edcs(const std::vector<Point>& ap_locations,
                                     int n_edcs, std::uint64_t seed = 1) {
  if (n_edcs < 1 || static_cast<std::size_t>(n_edcs) > ap_locations.size()) {
    throw ConfigError("place_edcs needs 1 <= n_edcs <= AP count");
  }
  std::vector<WeightedPoint> pts;
  pts.reserve(ap_locations.size());
  for (const auto& p : ap_locations) pts.push_back({p.x, p.y, 1.0});
  auto result = kmeans(pts, n_edcs, seed, 200, 64);
  return result.centroids;
}

}  // namespace fogsim::alloc
