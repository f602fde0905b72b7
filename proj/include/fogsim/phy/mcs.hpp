#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fogsim/errors.hpp"

namespace fogsim::phy {

// One modulation-and-coding-scheme option: usable at or above min_snr_db,
// delivering efficiency_bps_hz over the assigned bandwidth.
struct McsEntry {
  int index = 0;
  std::string name;
  double min_snr_db = 0.0;
  double efficiency_bps_hz = 0.0;

  friend bool operator==(const McsEntry&, const McsEntry&) = default;
};

class McsTable {
 public:
  explicit McsTable(std::vector<McsEntry> entries)
      : entries_(std::move(entries)) {
    if (entries_.empty()) throw ConfigError("MCS table must not be empty");
    for (std::size_t i = 1; i < entries_.size(); ++i) {
      if (!(entries_[i].min_snr_db > entries_[i - 1].min_snr_db) ||
          !(entries_[i].efficiency_bps_hz > entries_[i - 1].efficiency_bps_hz)) {
        throw ConfigError(
            "MCS table must be strictly increasing in min_snr and efficiency "
            "(entry " + std::to_string(i) + ")");
      }
    }
  }

  // Highest-efficiency entry whose threshold the SNR meets. Below every
  // threshold the lowest entry is kept: the model has no radio outage, the
  // link just degrades to its worst efficiency.
  const McsEntry& select(double snr_db) const {
    const McsEntry* best = &entries_.front();
    for (const auto& e : entries_) {
      if (e.min_snr_db <= snr_db) best = &e;
    }
    return *best;
  }

  const std::vector<McsEntry>& entries() const { return entries_; }
  const McsEntry& lowest() const { return entries_.front(); }
  const McsEntry& highest() const { return entries_.back(); }

  static McsTable from_csv(const std::string& path);

 private:
  std::vector<McsEntry> entries_;
};

namespace detail {

// SNR threshold at which Shannon capacity reaches the given efficiency;
// monotone mapping used for the embedded tables, since 3GPP publishes
// efficiencies but no SNR cutoffs.
inline double shannon_min_snr_db(double efficiency_bps_hz) {
  return 10.0 * std::log10(std::pow(2.0, efficiency_bps_hz) - 1.0);
}

inline McsTable make_table(const std::vector<std::pair<const char*, double>>& rows) {
  std::vector<McsEntry> entries;
  entries.reserve(rows.size());
  int index = 0;
  for (const auto& [name, eff] : rows) {
    entries.push_back({index++, name, shannon_min_snr_db(eff), eff});
  }
  return McsTable(std::move(entries));
}

}  // namespace detail

// Downlink: 64-QAM cap, topping out at 5.5547 bps/Hz.
inline const McsTable& default_downlink_table() {
  static const McsTable table = detail::make_table({
      {"qpsk_r78", 0.1523},   {"qpsk_r120", 0.2344},  {"qpsk_r193", 0.3770},
      {"qpsk_r308", 0.6016},  {"qpsk_r449", 0.8770},  {"qpsk_r602", 1.1758},
      {"qam16_r378", 1.4766}, {"qam16_r490", 1.9141}, {"qam16_r616", 2.4063},
      {"qam64_r466", 2.7305}, {"qam64_r567", 3.3223}, {"qam64_r666", 3.9023},
      {"qam64_r772", 4.5234}, {"qam64_r873", 5.1152}, {"qam64_r948", 5.5547},
  });
  return table;
}

// Uplink: reaches 256-QAM, so the top entries demand a better SNR than any
// downlink option.
inline const McsTable& default_uplink_table() {
  static const McsTable table = detail::make_table({
      {"qpsk_r78", 0.1523},    {"qpsk_r193", 0.3770},   {"qpsk_r449", 0.8770},
      {"qam16_r378", 1.4766},  {"qam16_r490", 1.9141},  {"qam16_r616", 2.4063},
      {"qam64_r466", 2.7305},  {"qam64_r567", 3.3223},  {"qam64_r666", 3.9023},
      {"qam64_r772", 4.5234},  {"qam64_r873", 5.1152},  {"qam64_r948", 5.5547},
      {"qam256_r797", 6.2266}, {"qam256_r885", 6.9141}, {"qam256_r948", 7.4063},
  });
  return table;
}

// CSV rows: index,name,min_snr_db,efficiency_bps_hz. '#' lines and a header
// row are skipped.
inline McsTable McsTable::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open MCS table: " + path);
  std::vector<McsEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    if (line.rfind("index,", 0) == 0) continue;
    std::istringstream row(line);
    McsEntry e;
    std::string field;
    try {
      if (!std::getline(row, field, ',')) throw std::invalid_argument(field);
      e.index = std::stoi(field);
      if (!std::getline(row, e.name, ',')) throw std::invalid_argument(field);
      if (!std::getline(row, field, ',')) throw std::invalid_argument(field);
      e.min_snr_db = std::stod(field);
      if (!std::getline(row, field, ',')) throw std::invalid_argument(field);
      e.efficiency_bps_hz = std::stod(field);
    } catch (const std::exception&) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": malformed MCS row '" + line + "'");
    }
    entries.push_back(std::move(e));
  }
  return McsTable(std::move(entries));
}

}  // namespace fogsim::phy
