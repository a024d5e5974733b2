#pragma once

#include "simoco/cnp.hpp"
#include "simoco/config.hpp"
#include "simoco/energy.hpp"
#include "simoco/geometry.hpp"
#include "simoco/metrics.hpp"
#include "simoco/mobility.hpp"
#include "simoco/network.hpp"
#include "simoco/partition.hpp"
#include "simoco/routing.hpp"
#include "simoco/simulation.hpp"
