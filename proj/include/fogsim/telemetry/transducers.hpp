#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>

#include "fogsim/devs/event_log.hpp"
#include "fogsim/devs/timed.hpp"
#include "fogsim/telemetry/records.hpp"

namespace fogsim::telemetry {

// Shortest round-trip decimal form; identical across runs, so CSV outputs
// are byte-reproducible.
inline std::string fmt(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

// Fans every telemetry record into its CSV stream. Rows arrive in the
// deterministic event order of the coordinator and are written as they
// come, so each stream is sorted by time.
class Transducers final : public devs::TimedAtomic {
 public:
  Transducers(std::string name, std::filesystem::path out_dir,
              std::set<std::string> streams)
      : TimedAtomic(std::move(name)),
        in(add_input<Record>("in")),
        out_dir_(std::move(out_dir)),
        streams_(std::move(streams)) {
    std::filesystem::create_directories(out_dir_);
  }

  void output() override {}
  void on_internal() override {}

  void on_external() override {
    const double t = now().seconds();
    for (const auto& record : in.bag()) {
      std::visit([&](const auto& row) { write(t, row); }, record);
    }
  }

  void on_simulation_end(devs::SimTime) override {
    for (auto& [name, file] : files_) file.flush();
  }

  devs::Port<Record>& in;

 private:
  std::ofstream* stream(const std::string& name, const std::string& header) {
    if (streams_.count(name) == 0) return nullptr;
    auto it = files_.find(name);
    if (it == files_.end()) {
      auto [inserted, ok] =
          files_.emplace(name, std::ofstream(out_dir_ / (name + ".csv")));
      it = inserted;
      it->second << header << "\n";
    }
    return &it->second;
  }

  void write(double t, const PuPowerSample& s) {
    auto* out = stream("power",
                       "time,edc_id,pu,status,dvfs_index,utilization,"
                       "pu_power_w,edc_power_w");
    pu_power_[s.edc_id][s.pu] = s.watts;
    double edc_total = 0.0;
    for (const auto& [pu, w] : pu_power_[s.edc_id]) edc_total += w;
    if (out == nullptr) return;
    *out << fmt(t) << "," << s.edc_id << "," << s.pu << "," << s.status << ","
         << s.dvfs_index << "," << fmt(s.utilization) << "," << fmt(s.watts)
         << "," << fmt(edc_total) << "\n";
  }

  void write(double t, const BandwidthSample& s) {
    auto* out = stream(
        "bandwidth", "time,ap_id,ue_id,bandwidth_hz,dl_efficiency_bps_hz,bit_rate_bps");
    if (out == nullptr) return;
    *out << fmt(t) << "," << s.ap_id << "," << s.ue_id << ","
         << fmt(s.bandwidth_hz) << "," << fmt(s.dl_efficiency_bps_hz) << ","
         << fmt(s.bit_rate_bps) << "\n";
  }

  void write(double t, const McsSample& s) {
    auto* out = stream(
        "mcs", "time,ap_id,ue_id,direction,mcs_index,mcs_name,"
               "efficiency_bps_hz,snr_db");
    if (out == nullptr) return;
    *out << fmt(t) << "," << s.ap_id << "," << s.ue_id << "," << s.direction
         << "," << s.index << "," << s.name << "," << fmt(s.efficiency_bps_hz)
         << "," << fmt(s.snr_db) << "\n";
  }

  void write(double t, const DelaySample& s) {
    auto* out = stream("delay", "time,ue_id,service_id,kind,seq,delay_s");
    if (out == nullptr) return;
    *out << fmt(t) << "," << s.ue_id << "," << s.service_id << "," << s.kind
         << "," << s.seq << "," << fmt(s.delay_s) << "\n";
  }

  void write(double t, const SessionEvent& s) {
    auto* out = stream(
        "sessions", "time,kind,ue_id,service_id,edc_id,pu,pu_status_at_dispatch");
    if (out == nullptr) return;
    *out << fmt(t) << "," << s.kind << "," << s.ue_id << "," << s.service_id
         << "," << s.edc_id << "," << s.pu << "," << s.pu_status_at_dispatch
         << "\n";
  }

  void write(double t, const AccessEvent& s) {
    auto* out = stream("access", "time,kind,ue_id,ap_id");
    if (out == nullptr) return;
    *out << fmt(t) << "," << s.kind << "," << s.ue_id << "," << s.ap_id << "\n";
  }

  void write(double t, const Warning& s) {
    auto* out = stream("warnings", "time,source,text");
    if (out == nullptr) return;
    std::string text = s.text;
    for (auto& c : text) {
      if (c == ',') c = ';';
    }
    *out << fmt(t) << "," << s.source << "," << text << "\n";
  }

  std::filesystem::path out_dir_;
  std::set<std::string> streams_;
  std::map<std::string, std::ofstream> files_;
  std::map<std::string, std::map<int, double>> pu_power_;
};

// Kernel-level sink for the raw port-event stream.
class EventCsvSink final : public devs::EventSink {
 public:
  explicit EventCsvSink(const std::filesystem::path& path) : out_(path) {
    out_ << "time,port,value\n";
  }

  void on_event(devs::SimTime t, const devs::PortBase& port,
                std::size_t k) override {
    std::string value = port.value_string(k);
    for (auto& c : value) {
      if (c == ',') c = ';';
      if (c == '\n') c = ' ';
    }
    out_ << fmt(t.seconds()) << "," << port.full_path() << "," << value << "\n";
  }

  void flush() { out_.flush(); }

 private:
  std::ofstream out_;
};

}  // namespace fogsim::telemetry
