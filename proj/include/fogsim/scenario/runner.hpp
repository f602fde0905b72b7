#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "fogsim/devs/coordinator.hpp"
#include "fogsim/scenario/builder.hpp"
#include "fogsim/scenario/config.hpp"
#include "fogsim/scenario/summary.hpp"

namespace fogsim::scenario {

struct RunResult {
  std::filesystem::path out_dir;
  Summary summary;
};

// Builds the model, runs it to the configured duration and leaves the CSV
// streams plus summary.json in out_dir. Simulation faults propagate to the
// caller with model path and time attached.
inline RunResult run(const ScenarioConfig& cfg,
                     const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  auto model = build_model(cfg, out_dir);

  std::unique_ptr<telemetry::EventCsvSink> events;
  if (cfg.events_stream) {
    events = std::make_unique<telemetry::EventCsvSink>(out_dir / "events.csv");
  }
  devs::Coordinator coordinator(model->root, {.sink = events.get()});
  coordinator.run_until(devs::SimTime(cfg.duration_s));
  if (events) events->flush();

  RunResult result;
  result.out_dir = out_dir;
  result.summary = compute_summary(out_dir, cfg.duration_s);
  write_summary(out_dir, result.summary);
  return result;
}

}  // namespace fogsim::scenario
