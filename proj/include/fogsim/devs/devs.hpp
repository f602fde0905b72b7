#pragma once

#include "fogsim/devs/atomic.hpp"
#include "fogsim/devs/component.hpp"
#include "fogsim/devs/coordinator.hpp"
#include "fogsim/devs/coupled.hpp"
#include "fogsim/devs/event_log.hpp"
#include "fogsim/devs/time.hpp"
