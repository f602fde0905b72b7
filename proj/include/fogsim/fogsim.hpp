#pragma once

// Umbrella header: the DEVS kernel, the fog model layers, the offline
// placement tools and the scenario runner.

#include "fogsim/alloc/density.hpp"
#include "fogsim/alloc/kmeans.hpp"
#include "fogsim/alloc/sizing.hpp"
#include "fogsim/ap/access_point.hpp"
#include "fogsim/devs/devs.hpp"
#include "fogsim/devs/timed.hpp"
#include "fogsim/edge/edc.hpp"
#include "fogsim/errors.hpp"
#include "fogsim/net/amf.hpp"
#include "fogsim/net/crosshaul.hpp"
#include "fogsim/net/messages.hpp"
#include "fogsim/net/radio_channel.hpp"
#include "fogsim/net/sdn.hpp"
#include "fogsim/phy/bandwidth.hpp"
#include "fogsim/phy/delay.hpp"
#include "fogsim/phy/link.hpp"
#include "fogsim/phy/mcs.hpp"
#include "fogsim/scenario/builder.hpp"
#include "fogsim/scenario/config.hpp"
#include "fogsim/scenario/gps.hpp"
#include "fogsim/scenario/plot.hpp"
#include "fogsim/scenario/runner.hpp"
#include "fogsim/trace.hpp"
#include "fogsim/ue/ue.hpp"
