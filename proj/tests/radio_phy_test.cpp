#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "fogsim/phy/bandwidth.hpp"
#include "fogsim/phy/constants.hpp"
#include "fogsim/phy/delay.hpp"
#include "fogsim/phy/link.hpp"
#include "fogsim/phy/mcs.hpp"
#include "test_util.hpp"

using namespace fogsim;
using namespace fogsim::phy;
using fogsim::testing::neumaier_sum;
using fogsim::testing::within_ulps;

namespace {

// Independent brute-force oracle: best entry by exhaustive scan over
// qualifying rows, falling back to the lowest entry.
const McsEntry& oracle_select(double snr, const McsTable& table) {
  const McsEntry* best = nullptr;
  for (const auto& e : table.entries()) {
    if (e.min_snr_db <= snr &&
        (best == nullptr || e.efficiency_bps_hz > best->efficiency_bps_hz)) {
      best = &e;
    }
  }
  return best != nullptr ? *best : table.entries().front();
}

}  // namespace

TEST(PathLoss, ClosedFormReference) {
  // 20*log10(100) + 20*log10(33e9) + 20*log10(4*pi/c) = 102.8178 dB
  EXPECT_NEAR(path_loss_db(100.0, 33e9), 102.8178, 1e-3);
  EXPECT_NEAR(path_loss_db(100.0, 33e9), 102.81, 1e-2);
}

TEST(PathLoss, UnitCancellation) {
  // At d = 1 m and f = c/(4*pi) every term cancels.
  EXPECT_NEAR(path_loss_db(1.0, kSpeedOfLight / (4.0 * kPi)), 0.0, 1e-12);
}

TEST(PathLoss, DoublingDistanceAddsSixDb) {
  const double six = 20.0 * std::log10(2.0);  // 6.0206
  for (double f : {1e9, 33e9, 7.7e10}) {
    for (double d : {1.0, 50.0, 1234.5}) {
      EXPECT_NEAR(path_loss_db(2 * d, f) - path_loss_db(d, f), six, 1e-9);
    }
  }
}

TEST(PathLoss, ZeroDistanceFloor) {
  EXPECT_EQ(path_loss_db(0.0, 33e9), 0.0);
  EXPECT_THROW(path_loss_db(-1.0, 33e9), ConfigError);
  EXPECT_THROW(path_loss_db(10.0, 0.0), ConfigError);
}

TEST(NoisePower, KtbReference) {
  EXPECT_NEAR(noise_power_dbm(300.0, 1e8), -93.8280, 1e-3);
  EXPECT_NEAR(noise_power_dbm(300.0, 1e8), -93.83, 1e-2);
  EXPECT_NEAR(noise_power_dbm(300.0, 1.0), -173.83, 1e-2);
}

TEST(NoisePower, DoublingBandwidthAddsThreeDb) {
  EXPECT_NEAR(noise_power_dbm(300.0, 2e8) - noise_power_dbm(300.0, 1e8),
              10.0 * std::log10(2.0), 1e-9);
}

TEST(Snr, ComposedFromLossAndNoise) {
  LinkBudget b{.tx_power_dbm = 50.0,
               .tx_gain_db = 0.0,
               .rx_gain_db = 0.0,
               .noise_temperature_k = 300.0,
               .carrier_hz = 33e9,
               .distance_m = 100.0,
               .bandwidth_hz = 1e8};
  // 50 - 102.8178 - (-93.8280) = 41.0101 dB; the rounded components in the
  // reference arithmetic give 41.02.
  EXPECT_NEAR(snr_db(b), 41.0101, 1e-3);
  EXPECT_NEAR(snr_db(b), 41.02, 1e-2);
  EXPECT_DOUBLE_EQ(
      snr_db(b), 50.0 - path_loss_db(100.0, 33e9) - noise_power_dbm(300, 1e8));
}

TEST(Snr, ZeroDistanceUsesLossFloor) {
  LinkBudget b{.tx_power_dbm = 30.0,
               .tx_gain_db = 1.0,
               .rx_gain_db = 2.0,
               .noise_temperature_k = 300.0,
               .carrier_hz = 33e9,
               .distance_m = 0.0,
               .bandwidth_hz = 1e8};
  EXPECT_DOUBLE_EQ(snr_db(b), 33.0 - noise_power_dbm(300.0, 1e8));
}

TEST(Snr, UplinkExactlyTwentyDbBelowDownlink) {
  for (double d : {10.0, 100.0, 997.0, 4321.0}) {
    LinkBudget down{50.0, 0.0, 0.0, 300.0, 33e9, d, 1e7};
    LinkBudget up{30.0, 0.0, 0.0, 300.0, 33e9, d, 1e7};
    EXPECT_DOUBLE_EQ(snr_db(down) - snr_db(up), 20.0);
  }
}

TEST(Snr, AntiMonotoneInDistance) {
  double prev = std::numeric_limits<double>::infinity();
  for (double d = 1.0; d <= 5000.0; d += 7.3) {
    LinkBudget b{50.0, 0.0, 0.0, 300.0, 33e9, d, 1e7};
    double s = snr_db(b);
    EXPECT_LE(s, prev);
    prev = s;
  }
}

TEST(SelectMcs, InfiniteSnrPicksTopDownlinkEntry) {
  const auto& e =
      default_downlink_table().select(std::numeric_limits<double>::infinity());
  EXPECT_DOUBLE_EQ(e.efficiency_bps_hz, 5.5547);
  EXPECT_EQ(e.index, 14);
}

TEST(SelectMcs, BelowAllThresholdsKeepsLowestEntry) {
  const auto& table = default_uplink_table();
  const auto& e = table.select(-1000.0);
  EXPECT_EQ(e.index, 0);
  EXPECT_DOUBLE_EQ(e.efficiency_bps_hz, 0.1523);
}

TEST(SelectMcs, ThresholdIsInclusive) {
  const auto& table = default_downlink_table();
  for (const auto& e : table.entries()) {
    EXPECT_EQ(table.select(e.min_snr_db).index, e.index);
    EXPECT_EQ(oracle_select(e.min_snr_db, table).index, e.index);
  }
}

TEST(SelectMcs, MatchesBruteForceOracleOnRandomSnrs) {
  std::mt19937_64 rng(20260808);
  std::uniform_real_distribution<double> snr(-30.0, 60.0);
  for (const McsTable* table :
       {&default_downlink_table(), &default_uplink_table()}) {
    for (int i = 0; i < 1000; ++i) {
      double s = snr(rng);
      EXPECT_EQ(table->select(s).index, oracle_select(s, *table).index);
    }
  }
}

TEST(SelectMcs, MatchesOracleOnRandomTables) {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> snr(-40.0, 70.0);
  std::uniform_real_distribution<double> step(0.1, 6.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 12);
    std::vector<McsEntry> entries;
    double thr = -20.0 + snr(rng) / 10.0, eff = 0.05;
    for (int i = 0; i < rows; ++i) {
      thr += step(rng);
      eff += step(rng) / 4.0;
      entries.push_back({i, "m" + std::to_string(i), thr, eff});
    }
    McsTable table(std::move(entries));
    for (int i = 0; i < 10; ++i) {
      const double s = snr(rng);
      EXPECT_EQ(table.select(s).index, oracle_select(s, table).index);
    }
  }
}

TEST(SelectMcs, MonotoneInSnr) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> snr(-30.0, 60.0);
  const auto& table = default_uplink_table();
  for (int i = 0; i < 1000; ++i) {
    double a = snr(rng), b = snr(rng);
    if (a > b) std::swap(a, b);
    EXPECT_LE(table.select(a).efficiency_bps_hz,
              table.select(b).efficiency_bps_hz);
  }
}

TEST(SelectMcs, TableValidation) {
  EXPECT_THROW(McsTable({}), ConfigError);
  EXPECT_THROW(McsTable({{0, "a", 0.0, 1.0}, {1, "b", 0.0, 2.0}}), ConfigError);
  EXPECT_THROW(McsTable({{0, "a", 0.0, 2.0}, {1, "b", 3.0, 1.0}}), ConfigError);
}

TEST(SelectMcs, CsvRoundTrip) {
  auto dir = fogsim::testing::fresh_temp_dir("mcs");
  auto path = dir / "table.csv";
  {
    std::ofstream out(path);
    out << "index,name,min_snr_db,efficiency_bps_hz\n";
    out << "# comment\n";
    out << "0,qpsk,-5.0,0.5\n";
    out << "1,qam16,5.0,2.0\n";
  }
  auto table = McsTable::from_csv(path.string());
  ASSERT_EQ(table.entries().size(), 2u);
  EXPECT_EQ(table.entries()[1].name, "qam16");
  EXPECT_DOUBLE_EQ(table.select(4.9).efficiency_bps_hz, 0.5);
  EXPECT_DOUBLE_EQ(table.select(5.0).efficiency_bps_hz, 2.0);

  std::ofstream bad(dir / "bad.csv");
  bad << "0,qpsk,notanumber,0.5\n";
  bad.close();
  EXPECT_THROW(McsTable::from_csv((dir / "bad.csv").string()), ConfigError);
  EXPECT_THROW(McsTable::from_csv((dir / "missing.csv").string()), ConfigError);
}

TEST(ShareBandwidth, TenDevicesGetTenMhzEach) {
  std::set<std::string> ues;
  for (int i = 0; i < 10; ++i) ues.insert("ue_" + std::to_string(i));
  auto shares = share_bandwidth(1e8, ues);
  ASSERT_EQ(shares.size(), 10u);
  for (const auto& [id, hz] : shares) EXPECT_DOUBLE_EQ(hz, 1e7);
}

TEST(ShareBandwidth, SingleDeviceGetsEverything) {
  auto shares = share_bandwidth(42.5e6, {"ue_0"});
  EXPECT_DOUBLE_EQ(shares.at("ue_0"), 42.5e6);
}

TEST(ShareBandwidth, SixDevicesConserveTotal) {
  std::set<std::string> ues{"a", "b", "c", "d", "e", "f"};
  auto shares = share_bandwidth(1e8, ues);
  std::vector<double> vals;
  for (const auto& [id, hz] : shares) {
    EXPECT_NEAR(hz, 16.667e6, 1e3);
    vals.push_back(hz);
  }
  EXPECT_TRUE(within_ulps(neumaier_sum(vals), 1e8, 1));
}

TEST(ShareBandwidth, EmptySetGivesEmptyMap) {
  EXPECT_TRUE(share_bandwidth(1e8, {}).empty());
}

TEST(ShareBandwidth, ConservationProperty) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> total(1e6, 1e9);
  std::uniform_int_distribution<int> count(1, 200);
  for (int trial = 0; trial < 200; ++trial) {
    double t = total(rng);
    int n = count(rng);
    std::set<std::string> ues;
    for (int i = 0; i < n; ++i) ues.insert("ue_" + std::to_string(i));
    auto shares = share_bandwidth(t, ues);
    std::vector<double> vals;
    for (const auto& [id, hz] : shares) vals.push_back(hz);
    ASSERT_TRUE(within_ulps(neumaier_sum(vals), t, 1))
        << "n=" << n << " total=" << t;
  }
}

TEST(BitRate, ReferenceProducts) {
  EXPECT_NEAR(bit_rate_bps(1e7, 5.5547), 55.547e6, 1e-6);
  EXPECT_DOUBLE_EQ(bit_rate_bps(1e7, 0.0), 0.0);
  EXPECT_NEAR(bit_rate_bps(1.6e7, 5.5547), 88.8752e6, 1e-6);
}

TEST(Delays, TransmissionAndPropagation) {
  EXPECT_DOUBLE_EQ(transmission_delay(1e6, 1e6).seconds(), 1.0);
  EXPECT_DOUBLE_EQ(transmission_delay(0.0, 1e6).seconds(), 0.0);
  EXPECT_DOUBLE_EQ(propagation_delay(300.0).seconds(), 300.0 / 2.998e8);
  EXPECT_NEAR(propagation_delay(300.0).seconds(), 1.0006e-6, 1e-9);
  EXPECT_THROW(transmission_delay(1e6, 0.0), ConfigError);
}

TEST(DownlinkSaturation, TopEntryUpToTwoKilometers) {
  // Scenario radio parameters with the 10 MHz per-device share: the top
  // downlink entry must be selected at every distance up to 2 km.
  const auto& table = default_downlink_table();
  for (double d = 1.0; d <= 2000.0; d += 1.0) {
    LinkBudget b{50.0, 0.0, 0.0, 300.0, 33e9, d, 1e7};
    EXPECT_EQ(table.select(snr_db(b)).index, table.highest().index)
        << "distance " << d;
  }
}
