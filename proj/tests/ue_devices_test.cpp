#include <gtest/gtest.h>

#include <random>

#include "fogsim/devs/devs.hpp"
#include "fogsim/trace.hpp"
#include "fogsim/ue/controller.hpp"
#include "fogsim/ue/mobility.hpp"
#include "fogsim/ue/service.hpp"
#include "test_models.hpp"

using namespace fogsim;
using fogsim::testing::Recorder;
using fogsim::testing::ScriptedSource;
using devs::SimTime;

namespace {

ue::ServiceConfig default_service() {
  ue::ServiceConfig cfg;
  cfg.id = "adas";
  cfg.session_messages = 20;
  cfg.request_period_s = 1.0;
  cfg.message_bits = 1e6;
  cfg.create_timeout_s = 0.35;
  cfg.idle_time_s = 1.0;
  cfg.resource_share = 0.2;
  return cfg;
}

struct ServiceHarness {
  devs::Coupled root{"root"};
  ue::Service* svc = nullptr;
  Recorder<ue::UplinkMessage>* uplink = nullptr;
  Recorder<telemetry::Record>* telemetry = nullptr;

  ServiceHarness(ue::ServiceConfig cfg,
                 std::vector<std::pair<double, net::Payload>> responses,
                 double connect_at = 0.0) {
    svc = &root.add<ue::Service>("svc", "ue_0", std::move(cfg));
    auto& status = root.add<ScriptedSource<ue::AccessStatus>>(
        "status", std::vector<std::pair<double, ue::AccessStatus>>{
                      {connect_at, ue::AccessStatus{true, "ap_0"}}});
    auto& resp =
        root.add<ScriptedSource<net::Payload>>("resp", std::move(responses));
    uplink = &root.add<Recorder<ue::UplinkMessage>>("uplink");
    telemetry = &root.add<Recorder<telemetry::Record>>("telemetry");
    root.couple(status.out, svc->status_in);
    root.couple(resp.out, svc->response_in);
    root.couple(svc->uplink_out, uplink->in);
    root.couple(svc->telemetry, telemetry->in);
  }

  template <typename T>
  std::vector<std::pair<double, T>> sent() const {
    std::vector<std::pair<double, T>> out;
    for (const auto& [t, m] : uplink->records) {
      if (const auto* v = std::get_if<T>(&m.payload)) out.emplace_back(t, *v);
    }
    return out;
  }

  std::vector<telemetry::DelaySample> delays() const {
    std::vector<telemetry::DelaySample> out;
    for (const auto& [t, r] : telemetry->records) {
      if (const auto* d = std::get_if<telemetry::DelaySample>(&r)) {
        out.push_back(*d);
      }
    }
    return out;
  }
};

net::PhysicalPacket pss(const std::string& ap, double rx_dbm) {
  net::PhysicalPacket p;
  p.payload = net::PssBeacon{ap, 0, 0};
  p.size_bits = 1000;
  p.rx_power_dbm = rx_dbm;
  p.source = ap;
  p.destination = phy::kBroadcast;
  return p;
}

net::PhysicalPacket from_ap(net::Payload payload, const std::string& ap) {
  net::PhysicalPacket p;
  p.payload = std::move(payload);
  p.size_bits = 1000;
  p.rx_power_dbm = -60.0;
  p.source = ap;
  p.destination = "ue_0";
  return p;
}

struct ControllerHarness {
  devs::Coupled root{"root"};
  ue::UeController* ctl = nullptr;
  Recorder<net::PhysicalPacket>* pucch = nullptr;
  Recorder<net::PhysicalPacket>* pusch = nullptr;
  Recorder<ue::AccessStatus>* status = nullptr;

  ControllerHarness(std::vector<std::pair<double, net::PhysicalPacket>> radio,
                    std::vector<std::pair<double, ue::UplinkMessage>> uplink = {}) {
    ctl = &root.add<ue::UeController>("ctl", "ue_0",
                                      net::RadioParams::with_default_tables(),
                                      std::vector<std::string>{"adas"});
    auto& radio_src = root.add<ScriptedSource<net::PhysicalPacket>>(
        "radio_src", std::move(radio));
    auto& svc_src = root.add<ScriptedSource<ue::UplinkMessage>>(
        "svc_src", std::move(uplink));
    pucch = &root.add<Recorder<net::PhysicalPacket>>("pucch");
    pusch = &root.add<Recorder<net::PhysicalPacket>>("pusch");
    status = &root.add<Recorder<ue::AccessStatus>>("status");
    root.couple(radio_src.out, ctl->radio_in);
    root.couple(svc_src.out, ctl->service_in);
    root.couple(ctl->pucch_out, pucch->in);
    root.couple(ctl->pusch_out, pusch->in);
    root.couple(ctl->status_out, status->in);
  }
};

}  // namespace

TEST(Position, InterpolationAndClamping) {
  MobilityTrace trace("ue_0", {{0.0, 0.0, 0.0}, {10.0, 10.0, 0.0}});
  EXPECT_DOUBLE_EQ(trace.position_at(5.0).x_m, 5.0);
  EXPECT_DOUBLE_EQ(trace.position_at(5.0).y_m, 0.0);
  EXPECT_DOUBLE_EQ(trace.position_at(2.5).x_m, 2.5);
  EXPECT_DOUBLE_EQ(trace.position_at(-3.0).x_m, 0.0);  // clamp before
  EXPECT_DOUBLE_EQ(trace.position_at(99.0).x_m, 10.0); // clamp after
}

TEST(Position, InterpolatedPointsStayOnSegment) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<TraceSample> samples;
    double t = 0.0;
    for (int i = 0; i < 5; ++i) {
      t += 1.0 + static_cast<double>(rng() % 100) / 10.0;
      samples.push_back({t, static_cast<double>(rng() % 1000),
                         static_cast<double>(rng() % 1000)});
    }
    MobilityTrace trace("ue", samples);
    for (int i = 0; i + 1 < 5; ++i) {
      const auto& a = samples[i];
      const auto& b = samples[i + 1];
      const double mid = 0.5 * (a.t + b.t);
      const auto p = trace.position_at(mid);
      EXPECT_GE(p.x_m, std::min(a.x_m, b.x_m) - 1e-9);
      EXPECT_LE(p.x_m, std::max(a.x_m, b.x_m) + 1e-9);
      EXPECT_GE(p.y_m, std::min(a.y_m, b.y_m) - 1e-9);
      EXPECT_LE(p.y_m, std::max(a.y_m, b.y_m) + 1e-9);
    }
  }
}

TEST(Position, RejectsBadTraces) {
  EXPECT_THROW(MobilityTrace("ue", {}), ConfigError);
  EXPECT_THROW(MobilityTrace("ue", {{1.0, 0, 0}, {1.0, 1, 1}}), ConfigError);
  EXPECT_THROW(MobilityTrace("ue", {{2.0, 0, 0}, {1.0, 1, 1}}), ConfigError);
}

TEST(Mobility, EmitsOnlyWhileMoving) {
  devs::Coupled root("root");
  auto& mob = root.add<ue::Mobility>(
      "mob", MobilityTrace("ue_0", {{0.0, 0.0, 0.0}, {4.0, 8.0, 0.0}}), 1.0);
  auto& rec = root.add<Recorder<net::PositionUpdate>>("rec");
  root.couple(mob.position_out, rec.in);
  devs::simulate(root, SimTime(10.0));

  // t=0..4 while moving, then parked: no further updates
  ASSERT_EQ(rec.records.size(), 5u);
  EXPECT_DOUBLE_EQ(rec.records[0].second.x_m, 0.0);
  EXPECT_DOUBLE_EQ(rec.records[2].second.x_m, 4.0);
  EXPECT_DOUBLE_EQ(rec.records[4].first, 4.0);
  EXPECT_DOUBLE_EQ(rec.records[4].second.x_m, 8.0);
}

TEST(AccessController, NearerApWinsDiscovery) {
  ControllerHarness h({{0.10, pss("ap_far", -90.0)},
                       {0.10, pss("ap_near", -70.0)}});
  devs::simulate(h.root, SimTime(0.5));
  ASSERT_EQ(h.pucch->records.size(), 1u);
  const auto& p = h.pucch->records[0].second;
  EXPECT_EQ(p.destination, "ap_near");
  const auto* req = std::get_if<net::AccessRequest>(&p.payload);
  ASSERT_NE(req, nullptr);
  ASSERT_EQ(req->measurements.size(), 2u);  // both APs reported
  EXPECT_DOUBLE_EQ(h.pucch->records[0].first, 0.2);  // discovery window end
}

TEST(AccessController, DenyBacksOffThenRetries) {
  ControllerHarness h({{0.10, pss("ap_0", -70.0)},
                       {0.25, from_ap(net::AccessResponse{"ue_0", "ap_0", false},
                                      "ap_0")},
                       {1.30, pss("ap_0", -70.0)}});
  devs::simulate(h.root, SimTime(2.0));
  // request at 0.2, deny at 0.25, backoff 1 s, new window 0.2 -> 1.45
  std::vector<double> request_times;
  for (const auto& [t, p] : h.pucch->records) {
    if (std::get_if<net::AccessRequest>(&p.payload) != nullptr) {
      request_times.push_back(t);
    }
  }
  ASSERT_EQ(request_times.size(), 2u);
  EXPECT_DOUBLE_EQ(request_times[0], 0.2);
  EXPECT_DOUBLE_EQ(request_times[1], 1.45);
}

TEST(AccessController, GrantFromNonRequestedApIgnored) {
  ControllerHarness h({{0.10, pss("ap_0", -70.0)},
                       {0.30, from_ap(net::AccessResponse{"ue_0", "ap_9", true},
                                      "ap_9")}});
  devs::simulate(h.root, SimTime(1.0));
  EXPECT_FALSE(h.ctl->connected());
  EXPECT_TRUE(h.status->records.empty());
}

TEST(AccessController, DisconnectResponseDetaches) {
  ControllerHarness h(
      {{0.10, pss("ap_0", -70.0)},
       {0.30, from_ap(net::AccessResponse{"ue_0", "ap_0", true}, "ap_0")},
       {2.00, from_ap(net::DisconnectResponse{"ue_0", "ap_0"}, "ap_0")}});
  devs::simulate(h.root, SimTime(5.0));
  EXPECT_FALSE(h.ctl->connected());
  ASSERT_EQ(h.status->records.size(), 2u);
  EXPECT_TRUE(h.status->records[0].second.connected);
  EXPECT_FALSE(h.status->records[1].second.connected);
  // no RRC reports after detaching
  for (const auto& [t, p] : h.pucch->records) {
    if (std::get_if<net::RrcReport>(&p.payload) != nullptr) {
      EXPECT_LT(t, 2.0);
    }
  }
}

TEST(AccessController, HandoverKeepsSessionsAndAnswersTarget) {
  ControllerHarness h(
      {{0.10, pss("ap_0", -70.0)},
       {0.30, from_ap(net::AccessResponse{"ue_0", "ap_0", true}, "ap_0")},
       {0.35, from_ap(net::RadioConfig{"ue_0", "ap_0", 5e7, 14, "top", 7.4},
                      "ap_0")},
       {2.00, from_ap(net::HandoverCommand{"ue_0", "ap_0", "ap_1"}, "ap_0")}},
      {{3.0, ue::UplinkMessage{net::ServiceRequest{"ue_0", "adas", 1, "edc_0", ""},
                               1e6}}});
  devs::simulate(h.root, SimTime(4.0));

  EXPECT_EQ(h.ctl->serving_ap(), "ap_1");
  bool completed = false;
  for (const auto& [t, p] : h.pucch->records) {
    if (const auto* m = std::get_if<net::HandoverComplete>(&p.payload)) {
      completed = true;
      EXPECT_EQ(p.destination, "ap_1");
      EXPECT_EQ(m->prev_ap, "ap_0");
    }
  }
  EXPECT_TRUE(completed);
  // uplink after the handover flows to the new AP with the old grant
  ASSERT_EQ(h.pusch->records.size(), 1u);
  EXPECT_EQ(h.pusch->records[0].second.destination, "ap_1");
  EXPECT_DOUBLE_EQ(h.pusch->records[0].second.bandwidth_hz, 5e7);
}

TEST(AccessController, UplinkQueuedUntilGrant) {
  // service tries to send right after connecting, before any radio grant:
  // the message must wait, not drop
  ControllerHarness h(
      {{0.10, pss("ap_0", -70.0)},
       {0.30, from_ap(net::AccessResponse{"ue_0", "ap_0", true}, "ap_0")},
       {2.00, from_ap(net::RadioConfig{"ue_0", "ap_0", 1e7, 14, "top", 7.4},
                      "ap_0")}},
      {{1.0, ue::UplinkMessage{net::CreateSessionRequest{"ue_0", "adas", ""},
                               1000.0}}});
  devs::simulate(h.root, SimTime(3.0));
  ASSERT_EQ(h.pusch->records.size(), 1u);
  EXPECT_DOUBLE_EQ(h.pusch->records[0].first, 2.0);  // released by the grant
  EXPECT_DOUBLE_EQ(h.pusch->records[0].second.spectral_efficiency_bps_hz, 7.4);
}

TEST(Service, CreateAtIdleEndAndResendOnTimeout) {
  ServiceHarness h(default_service(), {});
  devs::simulate(h.root, SimTime(2.0));
  auto creates = h.sent<net::CreateSessionRequest>();
  // idle ends at 1.0; unanswered resends at 1.35, 1.70
  ASSERT_GE(creates.size(), 3u);
  EXPECT_DOUBLE_EQ(creates[0].first, 1.0);
  EXPECT_DOUBLE_EQ(creates[1].first, 1.35);
  EXPECT_DOUBLE_EQ(creates[2].first, 1.7);
}

TEST(Service, FullCycleTimingAndBinaryRate) {
  auto cfg = default_service();
  cfg.session_messages = 3;
  // grant immediately; answer every request 35 ms later; confirm removal
  std::vector<std::pair<double, net::Payload>> responses{
      {1.05, net::CreateSessionResponse{"ue_0", "adas", "edc_0", true}},
      {2.085, net::ServiceResponse{"ue_0", "adas", 1, "edc_0", true}},
      {3.085, net::ServiceResponse{"ue_0", "adas", 2, "edc_0", true}},
      {4.085, net::ServiceResponse{"ue_0", "adas", 3, "edc_0", true}},
      {4.20, net::RemoveSessionResponse{"ue_0", "adas", "edc_0", true}},
  };
  ServiceHarness h(cfg, std::move(responses));
  devs::simulate(h.root, SimTime(6.0));

  auto requests = h.sent<net::ServiceRequest>();
  ASSERT_EQ(requests.size(), 3u);
  // one message_bits request per period: the stream's binary rate
  EXPECT_DOUBLE_EQ(requests[0].first, 2.05);
  EXPECT_DOUBLE_EQ(requests[1].first, 3.05);
  EXPECT_DOUBLE_EQ(requests[2].first, 4.05);
  for (const auto& [t, m] : h.uplink->records) {
    if (std::get_if<net::ServiceRequest>(&m.payload) != nullptr) {
      EXPECT_DOUBLE_EQ(m.bits, 1e6);  // 1 Mbit every second: 1 Mbps
    }
  }

  auto removes = h.sent<net::RemoveSessionRequest>();
  ASSERT_EQ(removes.size(), 1u);
  EXPECT_DOUBLE_EQ(removes[0].first, 4.085);  // right after the last reply

  // the device starts the next cycle after idling again
  auto creates = h.sent<net::CreateSessionRequest>();
  ASSERT_GE(creates.size(), 2u);
  EXPECT_DOUBLE_EQ(creates[0].first, 1.0);
  EXPECT_DOUBLE_EQ(creates[1].first, 5.2);  // removal at 4.2 + 1 s idle
  EXPECT_EQ(h.svc->completed_cycles(), 1u);
}

TEST(Service, DelaySamplesMatchHandArithmetic) {
  auto cfg = default_service();
  cfg.session_messages = 3;
  std::vector<std::pair<double, net::Payload>> responses{
      {1.10, net::CreateSessionResponse{"ue_0", "adas", "edc_0", true}},
      {2.135, net::ServiceResponse{"ue_0", "adas", 1, "edc_0", true}},  // 35 ms
      {3.170, net::ServiceResponse{"ue_0", "adas", 2, "edc_0", true}},  // 70 ms
      {4.115, net::ServiceResponse{"ue_0", "adas", 3, "edc_0", true}},  // 15 ms
  };
  ServiceHarness h(cfg, std::move(responses));
  devs::simulate(h.root, SimTime(6.0));

  auto delays = h.delays();
  ASSERT_GE(delays.size(), 4u);
  EXPECT_EQ(delays[0].kind, "create");
  EXPECT_NEAR(delays[0].delay_s, 0.10, 1e-12);
  EXPECT_NEAR(delays[1].delay_s, 0.035, 1e-12);
  EXPECT_NEAR(delays[2].delay_s, 0.070, 1e-12);
  EXPECT_NEAR(delays[3].delay_s, 0.015, 1e-12);
  const double mean =
      (delays[1].delay_s + delays[2].delay_s + delays[3].delay_s) / 3.0;
  EXPECT_NEAR(mean, 0.04, 1e-12);  // hand arithmetic oracle
}

TEST(Service, UnknownReplyLoggedAndDropped) {
  auto cfg = default_service();
  std::vector<std::pair<double, net::Payload>> responses{
      {1.05, net::CreateSessionResponse{"ue_0", "adas", "edc_0", true}},
      {2.50, net::ServiceResponse{"ue_0", "adas", 777, "edc_0", true}},
  };
  ServiceHarness h(cfg, std::move(responses));
  devs::simulate(h.root, SimTime(3.0));

  bool warned = false;
  for (const auto& [t, r] : h.telemetry->records) {
    if (const auto* w = std::get_if<telemetry::Warning>(&r)) {
      if (w->text.find("unknown request") != std::string::npos) warned = true;
    }
  }
  EXPECT_TRUE(warned);
  for (const auto& d : h.delays()) EXPECT_NE(d.seq, 777u);
}

TEST(Service, NegativeResponseRecreatesSession) {
  auto cfg = default_service();
  std::vector<std::pair<double, net::Payload>> responses{
      {1.05, net::CreateSessionResponse{"ue_0", "adas", "edc_0", true}},
      {2.10, net::ServiceResponse{"ue_0", "adas", 1, "edc_0", false}},
  };
  ServiceHarness h(cfg, std::move(responses));
  devs::simulate(h.root, SimTime(4.0));

  auto creates = h.sent<net::CreateSessionRequest>();
  ASSERT_GE(creates.size(), 2u);
  EXPECT_DOUBLE_EQ(creates[0].first, 1.0);
  EXPECT_DOUBLE_EQ(creates[1].first, 3.1);  // lost at 2.1 + 1 s idle
}

TEST(Service, RejectedCreateRetriesAfterIdle) {
  auto cfg = default_service();
  std::vector<std::pair<double, net::Payload>> responses{
      {1.02, net::CreateSessionResponse{"ue_0", "adas", "edc_0", false}},
  };
  ServiceHarness h(cfg, std::move(responses));
  devs::simulate(h.root, SimTime(3.0));
  auto creates = h.sent<net::CreateSessionRequest>();
  ASSERT_GE(creates.size(), 2u);
  EXPECT_DOUBLE_EQ(creates[1].first, 2.02);
}
